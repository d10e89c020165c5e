#include "tolbip/tester.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tolbip {

namespace {

long double derived_log(const Rat& k, const Rat& epsilon) {
    return std::log2(1.0L / (k * epsilon).to_long_double());
}

uint64_t ceil_at_least_one(long double v) {
    if (!(v > 0.0L)) return 1;
    return static_cast<uint64_t>(std::ceil(v));
}

} // namespace

void TesterParams::validate() const {
    if (!(epsilon > Rat(0) && epsilon < Rat(1)))
        throw std::invalid_argument("tester: epsilon must lie in (0,1)");
    if (!(k > Rat(0) && k <= Rat(100)))
        throw std::invalid_argument("tester: k must lie in (0,100]");
    if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0))
        throw std::invalid_argument("tester: constants must be positive");
    if (x_size_cap == 0) throw std::invalid_argument("tester: x_size_cap must be positive");
    if (t_override && *t_override == 0)
        throw std::invalid_argument("tester: t override must be positive");
    if (x_size_override && *x_size_override == 0)
        throw std::invalid_argument("tester: x_size override must be positive");
    if (z_size_override && *z_size_override == 0)
        throw std::invalid_argument("tester: z_size override must be positive");
}

uint32_t TesterParams::t() const {
    if (t_override) return *t_override;
    long double v = std::log2(c1 / (k * epsilon).to_long_double());
    return static_cast<uint32_t>(ceil_at_least_one(v));
}

uint32_t TesterParams::x_size() const {
    if (x_size_override) return *x_size_override;
    long double k3e = (k * k * k * epsilon).to_long_double();
    uint64_t raw = ceil_at_least_one((c2 / k3e) * derived_log(k, epsilon));
    return static_cast<uint32_t>(std::min<uint64_t>(raw, x_size_cap));
}

bool TesterParams::x_size_clamped() const {
    if (x_size_override) return false;
    long double k3e = (k * k * k * epsilon).to_long_double();
    return ceil_at_least_one((c2 / k3e) * derived_log(k, epsilon)) > x_size_cap;
}

uint64_t TesterParams::z_size() const {
    if (z_size_override) return *z_size_override;
    long double k5e2 = (k * k * k * k * k * epsilon * epsilon).to_long_double();
    return ceil_at_least_one((c3 / k5e2) * derived_log(k, epsilon));
}

Rat TesterParams::theta() const {
    return k * epsilon * Rat(static_cast<long long>(x_size()), 225000);
}

Rat TesterParams::zeta_threshold() const { return (Rat(2) + k / Rat(20)) * epsilon; }

SampledSets sample_sets(uint32_t n, uint32_t t, uint32_t x_size, uint64_t z_size, Rng& rng) {
    if (n < 2) throw std::invalid_argument("sample_sets: need at least 2 vertices");
    if (x_size > n) throw std::invalid_argument("sample_sets: x_size exceeds vertex count");

    SampledSets s;
    s.x_sets.reserve(t);
    for (uint32_t i = 0; i < t; ++i) s.x_sets.push_back(rng.sample_distinct(n, x_size));

    s.z_pairs.reserve(z_size);
    for (uint64_t l = 0; l < z_size; ++l) {
        uint32_t a, b;
        do {
            a = static_cast<uint32_t>(rng.below(n));
            b = static_cast<uint32_t>(rng.below(n));
        } while (a == b);
        s.z_pairs.emplace_back(a, b);
    }

    for (const auto& x : s.x_sets) s.c_vertices.insert(s.c_vertices.end(), x.begin(), x.end());
    std::sort(s.c_vertices.begin(), s.c_vertices.end());
    s.c_vertices.erase(std::unique(s.c_vertices.begin(), s.c_vertices.end()),
                       s.c_vertices.end());

    for (auto [a, b] : s.z_pairs) {
        s.z_vertices.push_back(a);
        s.z_vertices.push_back(b);
    }
    std::sort(s.z_vertices.begin(), s.z_vertices.end());
    s.z_vertices.erase(std::unique(s.z_vertices.begin(), s.z_vertices.end()),
                       s.z_vertices.end());
    return s;
}

uint64_t predicted_query_count(const SampledSets& sets) {
    std::unordered_set<uint64_t> block;
    block.reserve(sets.c_vertices.size() * sets.z_vertices.size());
    uint64_t count = 0;
    for (uint32_t c : sets.c_vertices)
        for (uint32_t z : sets.z_vertices) {
            if (c == z) continue;
            if (block.insert(pair_key(c, z)).second) ++count;
        }
    for (auto [a, b] : sets.z_pairs)
        if (!block.count(pair_key(a, b))) ++count;
    return count;
}

Side extend_label(uint64_t n_l, uint64_t n_r, const Rat& theta, TieBreak policy,
                  Side coin_side) {
    if (theta.is_negative()) throw std::invalid_argument("extend_label: negative margin");
    Rat l(static_cast<long long>(n_l));
    Rat r(static_cast<long long>(n_r));
    if (r > l + theta) return Side::L;
    if (l > r + theta) return Side::R;
    switch (policy) {
    case TieBreak::AlwaysL: return Side::L;
    case TieBreak::AlwaysR: return Side::R;
    case TieBreak::Coin: return coin_side;
    }
    throw std::logic_error("extend_label: unknown tie policy");
}

Rat compute_zeta(const std::vector<std::pair<uint32_t, uint32_t>>& z_pairs,
                 const std::vector<uint8_t>& z_edge_bits, const Bipartition& labels) {
    if (z_pairs.empty()) throw std::invalid_argument("compute_zeta: empty pair sample");
    if (z_pairs.size() != z_edge_bits.size())
        throw std::invalid_argument("compute_zeta: edge bits do not match pairs");
    uint64_t mono = 0;
    for (size_t l = 0; l < z_pairs.size(); ++l)
        if (z_edge_bits[l] && labels.side(z_pairs[l].first) == labels.side(z_pairs[l].second))
            ++mono;
    return Rat(static_cast<long long>(2 * mono), static_cast<long long>(z_pairs.size()));
}

Verdict run_tester(QueryOracle& o, const TesterParams& p) {
    p.validate();
    const uint32_t n = o.n();
    if (n < 2) throw std::invalid_argument("tester: need at least 2 vertices");
    const uint32_t t = p.t();
    const uint32_t xs = p.x_size();
    const uint64_t lambda = p.z_size();
    if (xs > n) throw std::invalid_argument("tester: x_size exceeds vertex count");
    if (xs > 25) throw std::invalid_argument("tester: x_size too large to enumerate");

    Rng rng(p.seed);
    Verdict v;
    v.clamped = p.x_size_clamped();
    v.zeta_threshold = p.zeta_threshold();
    v.sets = sample_sets(n, t, xs, lambda, rng);
    o.record_sampled_vertices(static_cast<uint64_t>(t) * xs);
    o.record_sampled_vertices(2 * lambda);
    SampledSets& sets = v.sets;

    // Gather every adjacency bit between C and the pair sample's vertices,
    // each distinct pair once; then the pair bits, reusing block answers.
    std::unordered_map<uint64_t, uint8_t> block;
    block.reserve(sets.c_vertices.size() * sets.z_vertices.size());
    for (uint32_t c : sets.c_vertices)
        for (uint32_t z : sets.z_vertices) {
            if (c == z) continue;
            uint64_t key = pair_key(c, z);
            if (block.find(key) == block.end()) block.emplace(key, o.query(c, z) ? 1 : 0);
        }
    sets.z_edge_bits.resize(sets.z_pairs.size());
    for (size_t l = 0; l < sets.z_pairs.size(); ++l) {
        auto [a, b] = sets.z_pairs[l];
        auto it = block.find(pair_key(a, b));
        sets.z_edge_bits[l] =
            it != block.end() ? it->second : static_cast<uint8_t>(o.query(a, b) ? 1 : 0);
    }
    v.ledger = o.ledger(); // frozen: the scan below queries nothing
    v.predicted_queries = predicted_query_count(sets);

    const Rat threshold = p.zeta_threshold();
    // For integer neighbor counts, diff > theta is diff >= floor(theta) + 1.
    const long long tie_gap = p.theta().floor() + 1;
    const size_t zc = sets.z_vertices.size();
    const uint64_t classes = uint64_t{1} << (xs - 1);

    std::vector<uint32_t> pa(sets.z_pairs.size()), pb(sets.z_pairs.size());
    auto z_index = [&](uint32_t vert) {
        return static_cast<uint32_t>(
            std::lower_bound(sets.z_vertices.begin(), sets.z_vertices.end(), vert) -
            sets.z_vertices.begin());
    };
    for (size_t l = 0; l < sets.z_pairs.size(); ++l) {
        pa[l] = z_index(sets.z_pairs[l].first);
        pb[l] = z_index(sets.z_pairs[l].second);
    }

    auto coin_bit = [&](uint32_t i, uint64_t j, uint32_t z) -> uint8_t {
        uint64_t state = p.seed ^ (static_cast<uint64_t>(i) + 1);
        uint64_t h = split_mix64(state);
        state = h ^ (j + 1);
        h = split_mix64(state);
        state = h ^ (static_cast<uint64_t>(z) + 1);
        return static_cast<uint8_t>(split_mix64(state) & 1);
    };

    std::vector<uint64_t> nbr(zc);
    std::vector<int32_t> xslot(zc);
    std::vector<uint8_t> lab(zc);

    auto scan = [&]() -> std::optional<Witness> {
        for (uint32_t i = 0; i < t; ++i) {
            const std::vector<uint32_t>& x = sets.x_sets[i];
            std::unordered_map<uint32_t, uint32_t> slot_of;
            for (uint32_t b = 0; b < xs; ++b) slot_of.emplace(x[b], b);
            for (size_t zi = 0; zi < zc; ++zi) {
                uint32_t z = sets.z_vertices[zi];
                auto it = slot_of.find(z);
                xslot[zi] = it == slot_of.end() ? -1 : static_cast<int32_t>(it->second);
                uint64_t mask = 0;
                for (uint32_t b = 0; b < xs; ++b)
                    if (x[b] != z && block.at(pair_key(x[b], z))) mask |= uint64_t{1} << b;
                nbr[zi] = mask;
            }
            for (uint64_t j = 0; j < classes; ++j) {
                const uint64_t r_mask = j << 1;
                for (size_t zi = 0; zi < zc; ++zi) {
                    if (xslot[zi] >= 0) {
                        lab[zi] = static_cast<uint8_t>((r_mask >> xslot[zi]) & 1);
                        continue;
                    }
                    auto n_l = static_cast<long long>(std::popcount(nbr[zi] & ~r_mask));
                    auto n_r = static_cast<long long>(std::popcount(nbr[zi] & r_mask));
                    if (n_r - n_l >= tie_gap) lab[zi] = 0;
                    else if (n_l - n_r >= tie_gap) lab[zi] = 1;
                    else {
                        switch (p.tie_break) {
                        case TieBreak::AlwaysL: lab[zi] = 0; break;
                        case TieBreak::AlwaysR: lab[zi] = 1; break;
                        case TieBreak::Coin: lab[zi] = coin_bit(i, j, sets.z_vertices[zi]); break;
                        }
                    }
                }
                uint64_t mono = 0;
                for (size_t l = 0; l < sets.z_pairs.size(); ++l)
                    if (sets.z_edge_bits[l] && lab[pa[l]] == lab[pb[l]]) ++mono;
                Rat zeta(static_cast<long long>(2 * mono), static_cast<long long>(lambda));
                if (zeta <= threshold) return Witness{i, j, zeta};
            }
        }
        return std::nullopt;
    };

    v.witness = scan();
    v.accept = v.witness.has_value();
    return v;
}

} // namespace tolbip
