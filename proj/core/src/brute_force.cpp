#include "tolbip/brute_force.hpp"

#include <bit>
#include <string>
#include <vector>

#include "tolbip/errors.hpp"

namespace tolbip {
namespace {

std::vector<uint32_t> rows32(const DenseGraph& g) {
    std::vector<uint32_t> rows(g.n(), 0);
    for (uint32_t u = 0; u < g.n(); ++u)
        for (uint32_t v = 0; v < g.n(); ++v)
            if (v != u && g.has_edge(u, v)) rows[u] |= 1u << v;
    return rows;
}

} // namespace

DistanceWitness exact_bip_distance(const DenseGraph& g) {
    uint32_t n = g.n();
    if (n > kBipartitionEnumCap)
        throw CapacityError("exact_bip_distance: n=" + std::to_string(n) + " exceeds cap " +
                            std::to_string(kBipartitionEnumCap));
    if (n == 0) return {0, Bipartition(0)};
    std::vector<uint32_t> rows = rows32(g);
    uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    uint64_t best = UINT64_MAX;
    uint32_t best_mask = 0;
    // Vertex 0 stays on L: swapping sides leaves the distance unchanged.
    for (uint32_t s = 0; s < (1u << (n - 1)); ++s) {
        uint32_t r_mask = s << 1;
        uint32_t l_mask = ~r_mask & full;
        uint64_t d = 0;
        for (uint32_t v = 0; v < n; ++v)
            d += std::popcount(rows[v] & ((r_mask >> v) & 1u ? r_mask : l_mask));
        if (d < best) {
            best = d;
            best_mask = r_mask;
            if (best == 0) break;
        }
    }
    return {best, Bipartition::from_mask(n, best_mask)};
}

uint64_t exact_maxcut(const DenseGraph& g) {
    uint32_t n = g.n();
    if (n > kMaxcutEnumCap)
        throw CapacityError("exact_maxcut: n=" + std::to_string(n) + " exceeds cap " +
                            std::to_string(kMaxcutEnumCap));
    if (n <= 1) return 0;
    std::vector<uint32_t> rows = rows32(g);
    uint32_t full = (1u << n) - 1;
    uint64_t best = 0;
    for (uint32_t s = 0; s < (1u << (n - 1)); ++s) {
        uint32_t r_mask = s << 1;
        uint32_t l_mask = ~r_mask & full;
        uint64_t crossing2 = 0; // each cut edge counted from both sides
        for (uint32_t v = 0; v < n; ++v)
            crossing2 += std::popcount(rows[v] & ((r_mask >> v) & 1u ? l_mask : r_mask));
        best = std::max(best, crossing2 / 2);
    }
    return best;
}

} // namespace tolbip
