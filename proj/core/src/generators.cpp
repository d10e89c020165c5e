#include "tolbip/generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tolbip/errors.hpp"
#include "tolbip/rng.hpp"

namespace tolbip {

namespace {

uint64_t choose2(uint64_t n) { return n * (n - 1) / 2; }

// Exact distance of K_m: every bipartition leaves 2(C(m,2) - cut) ordered
// monochromatic pairs, minimized by the balanced cut of size floor(m^2/4).
uint64_t complete_graph_distance(uint64_t m) {
    return 2 * (choose2(m) - m * m / 4);
}

} // namespace

Instance gen_planted_close(uint32_t n, const Rat& epsilon, double density,
                           const Rat& noise_fraction, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_planted_close: n must be at least 2");
    if (!(epsilon > Rat(0) && epsilon < Rat(1)))
        throw std::invalid_argument("gen_planted_close: epsilon must lie in (0,1)");
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("gen_planted_close: density must lie in (0,1]");
    if (noise_fraction.is_negative() || noise_fraction >= Rat(1))
        throw std::invalid_argument("gen_planted_close: noise_fraction must lie in [0,1)");

    Rng rng(seed);
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    Bipartition planted(n);
    uint32_t left = (n + 1) / 2;
    for (uint32_t i = 0; i < n; ++i)
        planted.set(order[i], i < left ? Side::L : Side::R);

    DenseGraph g(n);
    for (uint32_t u = 0; u + 1 < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            if (planted.side(u) != planted.side(v) && rng.bernoulli(density)) g.add_edge(u, v);

    Rat r_bound = noise_fraction * epsilon *
                  Rat(static_cast<long long>(n) * static_cast<long long>(n), 2);
    uint64_t r = static_cast<uint64_t>(r_bound.floor());

    std::vector<std::pair<uint32_t, uint32_t>> pool;
    for (uint32_t u = 0; u + 1 < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            if (planted.side(u) == planted.side(v)) pool.emplace_back(u, v);
    if (r > pool.size())
        throw CapacityError("gen_planted_close: same-side non-edge pool exhausted");
    for (uint32_t idx : rng.sample_distinct(static_cast<uint32_t>(pool.size()),
                                            static_cast<uint32_t>(r)))
        g.add_edge(pool[idx].first, pool[idx].second);

    Instance inst{std::move(g), std::move(planted), DistanceInterval{0, 2 * r},
                  "planted-close"};
    return inst;
}

Instance gen_far_dense(uint32_t n, double p, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_far_dense: n must be at least 2");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("gen_far_dense: p must lie in (0,1]");

    Rng rng(seed);
    DenseGraph g(n);
    if (p == 1.0) {
        for (uint32_t u = 0; u + 1 < n; ++u)
            for (uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    } else {
        for (uint32_t u = 0; u + 1 < n; ++u)
            for (uint32_t v = u + 1; v < n; ++v)
                if (rng.bernoulli(p)) g.add_edge(u, v);
    }

    uint64_t m = g.edge_count();
    DistanceInterval iv;
    if (p == 1.0) {
        iv.lo = iv.hi = complete_graph_distance(n);
    } else {
        // MaxCut <= m/2 + c*n^1.5 whp (c = 1/2), so d = 2(m - MaxCut) >= m - n^1.5.
        auto slack = static_cast<uint64_t>(
            std::ceil(std::pow(static_cast<long double>(n), 1.5L)));
        iv.lo = m > slack ? m - slack : 0;
        iv.hi = 2 * m;
    }

    Instance inst{std::move(g), std::nullopt, iv, "far-dense p=" + std::to_string(p)};
    return inst;
}

Instance gen_union_of_cliques(uint32_t n, uint32_t clique_size) {
    if (clique_size < 3)
        throw std::invalid_argument("gen_union_of_cliques: clique_size must be at least 3");
    if (n == 0 || n % clique_size != 0)
        throw std::invalid_argument("gen_union_of_cliques: clique_size must divide n");

    DenseGraph g(n);
    for (uint32_t base = 0; base < n; base += clique_size)
        for (uint32_t u = base; u + 1 < base + clique_size; ++u)
            for (uint32_t v = u + 1; v < base + clique_size; ++v) g.add_edge(u, v);

    uint64_t d = (n / clique_size) * complete_graph_distance(clique_size);
    Instance inst{std::move(g), std::nullopt, DistanceInterval{d, d},
                  "clique-union m=" + std::to_string(clique_size)};
    return inst;
}

} // namespace tolbip
