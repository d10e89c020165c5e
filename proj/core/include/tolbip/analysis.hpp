#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tolbip/bipartition.hpp"
#include "tolbip/classify.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/rational.hpp"

namespace tolbip {

// Vertices labeled heavy under f, in ascending order.
std::vector<uint32_t> heavy_set(const DenseGraph& g, const Bipartition& f,
                                const ClassificationParams& p);

// Pi = sum over balanced vertices outside x_set of their same-side
// neighbor count under f; a subset of the distance's summands.
uint64_t compute_pi(const DenseGraph& g, const Bipartition& f,
                    const std::vector<uint32_t>& x_set, const ClassificationParams& p);

// Fixture for the decomposition checks: a graph with a verified optimal
// labeling, a sample set, and a chosen subset of the heavy set.
// Construct through make(), which enforces the invariants.
struct ProofContext {
    DenseGraph graph;
    Bipartition f_opt;
    std::vector<uint32_t> x_set;
    ClassificationParams params;
    std::vector<uint32_t> h_prime;     // subset of heavy_set(graph, f_opt, params)
    std::vector<VertexClass> classes;  // classification under f_opt

    // Verifies f_opt attains the exact distance, x_set is a valid vertex
    // subset, and h_prime (default: the full heavy set) is heavy.
    static ProofContext make(DenseGraph g, Bipartition f_opt, std::vector<uint32_t> x_set,
                             ClassificationParams params,
                             std::optional<std::vector<uint32_t>> h_prime = std::nullopt);
};

enum class RestPolicy { CopyF, AdversarialWorst, Arbitrary };

// Full bipartition that copies f_opt on x_set, sends each h_prime vertex
// opposite its heavy side, and fills the rest per policy: CopyF copies
// f_opt; AdversarialWorst greedily gives each free vertex (ascending) the
// side with more same-side neighbors among already-assigned ones, ties to
// L; Arbitrary flips a seeded coin per free vertex.
Bipartition build_special_bipartition(const ProofContext& ctx, RestPolicy policy,
                                      uint64_t seed = 0);

// Does `candidate` agree with `f` on every listed vertex?
bool agrees_on(const Bipartition& candidate, const Bipartition& f,
               const std::vector<uint32_t>& verts);

// A full bipartition qualifies as derived from f on x_set iff it agrees
// with f there; the rest is unconstrained.
bool is_derived(const Bipartition& candidate, const Bipartition& f,
                const std::vector<uint32_t>& x_set);

struct DecompositionReport {
    uint64_t d_spl = 0; // distance of the special bipartition
    uint64_t d_a = 0;   // mono pairs with both endpoints in h_prime + x_set
    uint64_t d_b = 0;   // mono pairs touching a heavy vertex outside that set
    uint64_t d_c = 0;   // mono pairs touching a balanced vertex outside x_set
    uint64_t pi = 0;
    uint64_t d_f = 0;   // exact distance (attained by f_opt)
    Rat t1{0};          // 2 * (type-1 same-side sum off x_set) + k*eps*n^2/150
    Rat t2{0};          // (2 + k/200) * (type-2 same-side sum off x_set)
    bool covers = false;  // d_spl <= d_a + d_b + d_c
    bool a_bound = false; // d_a <= d_f - pi
    bool c_bound = false; // d_c <= t1 + t2

    bool all_hold() const { return covers && a_bound && c_bound; }
};

// Evaluates the distance decomposition of the special bipartition and the
// two per-term bounds. spl must be special for ctx (checked).
DecompositionReport check_decomposition(const ProofContext& ctx, const Bipartition& spl);

// For every brute-force optimal labeling: each L-heavy vertex must sit on
// R and vice versa (flipping a strict-majority violator would improve).
bool check_optimal_placement(const DenseGraph& g, const ClassificationParams& p);

struct HeavyMarginStat {
    uint32_t v = 0;
    bool l_heavy = false;
    long long in_sample_margin = 0; // heavy-side minus other-side neighbors within x_set
    Rat threshold{0};               // k^2 * eps * |x_set| / 225000
    bool meets = false;
};

// Realized in-sample margin of each heavy vertex against the scaled
// concentration threshold; purely observational (no pass count asserted).
std::vector<HeavyMarginStat> heavy_margin_statistic(const DenseGraph& g, const Bipartition& f,
                                                    const std::vector<uint32_t>& x_set,
                                                    const ClassificationParams& p);

// Exhaustive desk check: every labeled graph with up to max_n vertices,
// every sample set of size at most max_x_size, h_prime = the full heavy
// set, all three rest policies; counts decomposition-bound and optimal-
// placement failures. Keep the margin k*eps*max_n/150 at most 1: beyond
// that the c_bound inequality genuinely fails on small stars.
struct SweepOptions {
    uint32_t max_n = 6;
    uint32_t max_x_size = 3;
    Rat epsilon{1, 2};
    Rat k{1};
    uint32_t threads = 0; // 0: hardware concurrency
};

struct SweepStats {
    uint64_t graphs = 0;
    uint64_t contexts = 0;
    uint64_t decomposition_checks = 0;
    uint64_t cover_failures = 0;
    uint64_t a_bound_failures = 0;
    uint64_t c_bound_failures = 0;
    uint64_t placement_failures = 0;

    bool all_ok() const {
        return cover_failures == 0 && a_bound_failures == 0 && c_bound_failures == 0 &&
               placement_failures == 0;
    }
};

SweepStats run_decomposition_sweep(const SweepOptions& opt);

} // namespace tolbip
