#pragma once

#include <cstdint>
#include <optional>

#include "tolbip/oracle.hpp"
#include "tolbip/rational.hpp"

namespace tolbip {

struct Estimate {
    Rat value{0};           // exact rational output of the estimator
    uint64_t queries_used = 0;
    Rat additive_target{0}; // the epsilon*n^2 goal the estimator aims at
};

// Edge-count estimator: s = ceil(c_e/eps^2) uniform unordered pairs with
// replacement (c_e = 3), every sample queried; value = C(n,2) * hits / s.
Estimate estimate_edges(QueryOracle& o, const Rat& epsilon, uint64_t seed,
                        std::optional<uint64_t> samples_override = std::nullopt);

// MaxCut from sampled pairs: draws ceil(c_m*n/eps^2) pairs (c_m = 1), then
// maximizes C(n,2)/t * (sampled pairs that are edges crossing S) over every
// side-swap-inequivalent subset S. Exponential in n; capped at n <= 20.
Estimate estimate_maxcut_pairs(QueryOracle& o, const Rat& epsilon, uint64_t seed);

// MaxCut from one induced subgraph: t distinct vertices (derived
// t = ceil(eps^-4 * log2(1/eps)) unless overridden), all C(t,2) pairs
// queried, exact MaxCut on the induced graph, scaled by n^2/t^2.
// Throws CapacityError when the effective t exceeds 20 or n.
Estimate estimate_maxcut_induced(QueryOracle& o, const Rat& epsilon,
                                 std::optional<uint32_t> t_override, uint64_t seed);

// Distance estimator: 2 * (edge estimate - induced MaxCut estimate), both
// parts run at additive target eps*n^2/4 so the composite meets eps*n^2.
Estimate estimate_bip_distance(QueryOracle& o, const Rat& epsilon, uint64_t seed,
                               std::optional<uint32_t> t_override = std::nullopt);

// Midpoint threshold between the close and far hypotheses.
bool decide_from_estimate(const Rat& value, const Rat& epsilon, const Rat& k, uint32_t n);

struct BaselineDecision {
    bool accept = false;
    Estimate estimate;
    Rat threshold{0}; // (1 + k/2) * eps * n^2
};

// Tolerant decision via the distance estimator run at additive target
// k*eps*n^2/2; accepts iff the estimate is at most (1 + k/2)*eps*n^2.
BaselineDecision tolerant_decide_baseline(QueryOracle& o, const Rat& epsilon, const Rat& k,
                                          uint64_t seed,
                                          std::optional<uint32_t> t_override = std::nullopt);

} // namespace tolbip
