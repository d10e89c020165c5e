#pragma once

#include <cstdint>

#include "tolbip/bipartition.hpp"
#include "tolbip/graph.hpp"

namespace tolbip {

// Hard caps for the exhaustive solvers; beyond these they throw
// CapacityError rather than burn hours.
inline constexpr uint32_t kBipartitionEnumCap = 24;
inline constexpr uint32_t kMaxcutEnumCap = 20;

struct DistanceWitness {
    uint64_t distance;    // ordered monochromatic pair count (always even)
    Bipartition labeling; // first minimizer in mask order, vertex 0 on L
};

// Minimum of bip_distance_wrt over all 2^(n-1) side-swap classes of full
// labelings, by enumeration. Deterministic witness: lowest mask wins.
DistanceWitness exact_bip_distance(const DenseGraph& g);

// Exact MaxCut value by enumeration (vertex 0 pinned to one side).
uint64_t exact_maxcut(const DenseGraph& g);

} // namespace tolbip
