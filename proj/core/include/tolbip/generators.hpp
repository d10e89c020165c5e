#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tolbip/bipartition.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/rational.hpp"

namespace tolbip {

// Inclusive bounds on the ordered-pair bipartite distance of a graph.
struct DistanceInterval {
    uint64_t lo = 0;
    uint64_t hi = 0;

    bool contains(uint64_t d) const { return lo <= d && d <= hi; }
};

struct Instance {
    DenseGraph graph;
    std::optional<Bipartition> planted;
    std::optional<DistanceInterval> certified_distance;
    std::string family_tag;
};

// Balanced random bipartite graph (crossing density `density`) plus r
// monochromatic noise edges, r = floor(noise_fraction * epsilon * n^2 / 2),
// sampled without replacement among same-side non-edges. Certified
// distance [0, 2r]; planted records the construction sides.
// Throws CapacityError if the same-side pool cannot supply r edges.
Instance gen_planted_close(uint32_t n, const Rat& epsilon, double density,
                           const Rat& noise_fraction, uint64_t seed);

// Erdos-Renyi G(n,p). For p = 1 the distance is exact:
// 2(C(n,2) - floor(n^2/4)). Otherwise certified as
// [max(0, m - ceil(n^1.5)), 2m]; the lower bound uses the whp bound
// MaxCut <= m/2 + c*n^1.5 with slack constant c = 1/2.
Instance gen_far_dense(uint32_t n, double p, uint64_t seed);

// Disjoint union of n/clique_size copies of K_clique_size; distance is
// exact by additivity over components: (n/m) * 2 * (C(m,2) - floor(m^2/4)).
Instance gen_union_of_cliques(uint32_t n, uint32_t clique_size);

} // namespace tolbip
