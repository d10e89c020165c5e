#include "tolbip/baselines.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tolbip/brute_force.hpp"
#include "tolbip/errors.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/rng.hpp"

namespace tolbip {

namespace {

constexpr double kEdgeSampleConstant = 3.0;  // c_e
constexpr double kPairCutConstant = 1.0;     // c_m
constexpr double kInducedConstant = 1.0;     // scales the derived induced-sample size

void check_epsilon(const Rat& epsilon, const char* who) {
    if (!(epsilon > Rat(0) && epsilon < Rat(1)))
        throw std::invalid_argument(std::string(who) + ": epsilon must lie in (0,1)");
}

long long choose2(long long n) { return n * (n - 1) / 2; }

std::pair<uint32_t, uint32_t> random_pair(Rng& rng, uint32_t n) {
    uint32_t a, b;
    do {
        a = static_cast<uint32_t>(rng.below(n));
        b = static_cast<uint32_t>(rng.below(n));
    } while (a == b);
    return {a, b};
}

} // namespace

Estimate estimate_edges(QueryOracle& o, const Rat& epsilon, uint64_t seed,
                        std::optional<uint64_t> samples_override) {
    check_epsilon(epsilon, "estimate_edges");
    uint32_t n = o.n();
    if (n < 2) throw std::invalid_argument("estimate_edges: need at least 2 vertices");
    uint64_t s = samples_override
                     ? *samples_override
                     : static_cast<uint64_t>(
                           std::ceil(kEdgeSampleConstant / (epsilon * epsilon).to_double()));
    if (s == 0) throw std::invalid_argument("estimate_edges: sample count must be positive");

    Rng rng(seed);
    uint64_t hits = 0;
    for (uint64_t l = 0; l < s; ++l) {
        auto [a, b] = random_pair(rng, n);
        if (o.query(a, b)) ++hits;
    }
    long long nn = static_cast<long long>(n) * n;
    Estimate e;
    e.value = Rat(choose2(n)) * Rat(static_cast<long long>(hits), static_cast<long long>(s));
    e.queries_used = s;
    e.additive_target = epsilon * Rat(nn);
    return e;
}

Estimate estimate_maxcut_pairs(QueryOracle& o, const Rat& epsilon, uint64_t seed) {
    check_epsilon(epsilon, "estimate_maxcut_pairs");
    uint32_t n = o.n();
    if (n < 2) throw std::invalid_argument("estimate_maxcut_pairs: need at least 2 vertices");
    if (n > kMaxcutEnumCap)
        throw CapacityError("estimate_maxcut_pairs: subset enumeration beyond cap");

    auto t = static_cast<uint64_t>(
        std::ceil(kPairCutConstant * n / (epsilon * epsilon).to_double()));
    if (t == 0) t = 1;

    Rng rng(seed);
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    std::vector<uint8_t> edge(t);
    pairs.reserve(t);
    for (uint64_t l = 0; l < t; ++l) {
        auto pr = random_pair(rng, n);
        pairs.push_back(pr);
        edge[l] = o.query(pr.first, pr.second) ? 1 : 0;
    }

    // Vertex 0 pinned to one side; S and its complement cut identically.
    uint64_t best = 0;
    uint64_t subsets = uint64_t{1} << (n - 1);
    for (uint64_t s = 0; s < subsets; ++s) {
        uint64_t side = s << 1;
        uint64_t crossing = 0;
        for (uint64_t l = 0; l < t; ++l)
            if (edge[l] && (((side >> pairs[l].first) ^ (side >> pairs[l].second)) & 1))
                ++crossing;
        if (crossing > best) best = crossing;
    }

    long long nn = static_cast<long long>(n) * n;
    Estimate e;
    e.value = Rat(choose2(n)) * Rat(static_cast<long long>(best), static_cast<long long>(t));
    e.queries_used = t;
    e.additive_target = epsilon * Rat(nn);
    return e;
}

Estimate estimate_maxcut_induced(QueryOracle& o, const Rat& epsilon,
                                 std::optional<uint32_t> t_override, uint64_t seed) {
    check_epsilon(epsilon, "estimate_maxcut_induced");
    uint32_t n = o.n();
    uint32_t t;
    if (t_override) {
        t = *t_override;
    } else {
        long double e = epsilon.to_long_double();
        long double raw = kInducedConstant / (e * e * e * e) * std::log2(1.0L / e);
        t = raw > 2.0L ? static_cast<uint32_t>(std::ceil(raw)) : 2;
    }
    if (t < 2) throw std::invalid_argument("estimate_maxcut_induced: need t >= 2");
    if (t > kMaxcutEnumCap)
        throw CapacityError("estimate_maxcut_induced: induced sample beyond MaxCut cap");
    if (t > n) throw CapacityError("estimate_maxcut_induced: induced sample exceeds n");

    Rng rng(seed);
    std::vector<uint32_t> verts = rng.sample_distinct(n, t);
    DenseGraph sub(t);
    for (uint32_t i = 0; i + 1 < t; ++i)
        for (uint32_t j = i + 1; j < t; ++j)
            if (o.query(verts[i], verts[j])) sub.add_edge(i, j);

    uint64_t m = exact_maxcut(sub);
    long long nn = static_cast<long long>(n) * n;
    Estimate e;
    e.value = Rat(nn) * Rat(static_cast<long long>(m), static_cast<long long>(t) * t);
    e.queries_used = static_cast<uint64_t>(choose2(t));
    e.additive_target = epsilon * Rat(nn);
    return e;
}

Estimate estimate_bip_distance(QueryOracle& o, const Rat& epsilon, uint64_t seed,
                               std::optional<uint32_t> t_override) {
    check_epsilon(epsilon, "estimate_bip_distance");
    Rat quarter = epsilon / Rat(4);
    Estimate edges = estimate_edges(o, quarter, derive_seed(seed, 1));
    Estimate maxcut = estimate_maxcut_induced(o, quarter, t_override, derive_seed(seed, 2));
    Estimate e;
    e.value = Rat(2) * (edges.value - maxcut.value);
    e.queries_used = edges.queries_used + maxcut.queries_used;
    long long nn = static_cast<long long>(o.n()) * o.n();
    e.additive_target = epsilon * Rat(nn);
    return e;
}

bool decide_from_estimate(const Rat& value, const Rat& epsilon, const Rat& k, uint32_t n) {
    long long nn = static_cast<long long>(n) * n;
    return value <= (Rat(1) + k / Rat(2)) * epsilon * Rat(nn);
}

BaselineDecision tolerant_decide_baseline(QueryOracle& o, const Rat& epsilon, const Rat& k,
                                          uint64_t seed, std::optional<uint32_t> t_override) {
    check_epsilon(epsilon, "tolerant_decide_baseline");
    if (!(k > Rat(0) && k <= Rat(100)))
        throw std::invalid_argument("tolerant_decide_baseline: k must lie in (0,100]");
    BaselineDecision d;
    d.estimate = estimate_bip_distance(o, k * epsilon / Rat(2), seed, t_override);
    long long nn = static_cast<long long>(o.n()) * o.n();
    d.threshold = (Rat(1) + k / Rat(2)) * epsilon * Rat(nn);
    d.accept = d.estimate.value <= d.threshold;
    return d;
}

} // namespace tolbip
