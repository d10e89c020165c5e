#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tolbip/bipartition.hpp"
#include "tolbip/oracle.hpp"
#include "tolbip/rational.hpp"
#include "tolbip/rng.hpp"

namespace tolbip {

enum class TieBreak { AlwaysL, AlwaysR, Coin };

// Parameters of the tolerant bipartiteness tester. t, x_size and z_size
// are derived from (epsilon, k, c1..c3) unless overridden; the derived
// x_size is clamped to x_size_cap (overrides are taken as given).
struct TesterParams {
    Rat epsilon{1, 10}; // distance scale, in (0,1)
    Rat k{1};           // tolerance gap parameter, in (0,100]
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 1.0;
    std::optional<uint32_t> t_override;
    std::optional<uint32_t> x_size_override;
    std::optional<uint64_t> z_size_override;
    uint32_t x_size_cap = 16;
    TieBreak tie_break = TieBreak::AlwaysL;
    uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument on range violations

    uint32_t t() const;       // ceil(log2(c1/(k*eps))), at least 1
    uint32_t x_size() const;  // ceil((c2/(k^3 eps)) * log2(1/(k*eps))), clamped
    bool x_size_clamped() const;
    uint64_t z_size() const;  // ceil((c3/(k^5 eps^2)) * log2(1/(k*eps))), at least 1
    Rat theta() const;        // extension margin k*eps*x_size/225000
    Rat zeta_threshold() const; // accept bound (2 + k/20)*eps
};

// Step-1 sample: t vertex sets of x_size distinct vertices each, and
// z_size ordered pairs drawn with replacement (equal endpoints rejected).
struct SampledSets {
    std::vector<std::vector<uint32_t>> x_sets;
    std::vector<std::pair<uint32_t, uint32_t>> z_pairs;
    std::vector<uint32_t> c_vertices;  // sorted distinct union of x_sets
    std::vector<uint32_t> z_vertices;  // sorted distinct endpoints of z_pairs
    std::vector<uint8_t> z_edge_bits;  // adjacency of each z_pair, filled by the query phase
};

SampledSets sample_sets(uint32_t n, uint32_t t, uint32_t x_size, uint64_t z_size, Rng& rng);

// Exact query count of the plan on realized sets: one query per distinct
// unordered pair {c, z} with c in c_vertices, z in z_vertices, c != z;
// then one query per z_pair whose unordered pair was not in that block
// (repeated pairs are re-queried; only block answers are reused).
uint64_t predicted_query_count(const SampledSets& sets);

// Label a vertex from its neighbor counts inside a labeled sample set:
// L when n_r > n_l + theta, R when n_l > n_r + theta, else the tie
// policy's side (coin_side stands in for the seeded coin under Coin).
Side extend_label(uint64_t n_l, uint64_t n_r, const Rat& theta, TieBreak policy,
                  Side coin_side = Side::L);

// zeta = 2 * |{l : z_pair l is an edge with equal-side endpoints}| / lambda,
// an exact rational in [0, 2]. labels must cover every pair endpoint.
Rat compute_zeta(const std::vector<std::pair<uint32_t, uint32_t>>& z_pairs,
                 const std::vector<uint8_t>& z_edge_bits, const Bipartition& labels);

struct Witness {
    uint32_t set_index;        // i: which X_i accepted
    uint64_t bipartition_index; // j: swap-class index, X_i[0] pinned to L
    Rat zeta;
};

struct Verdict {
    bool accept = false;
    std::optional<Witness> witness; // present iff accept
    QueryLedger ledger;             // frozen after the query phase; nothing queries later
    bool clamped = false;           // derived x_size hit x_size_cap
    Rat zeta_threshold{0};
    uint64_t predicted_queries = 0;
    SampledSets sets;
};

// The tolerant tester: samples sets, gathers all needed adjacency bits,
// then scans (i, j) in ascending order, extending each labeling of X_i to
// the pair sample and accepting at the first zeta <= (2 + k/20)*epsilon.
Verdict run_tester(QueryOracle& o, const TesterParams& p);

} // namespace tolbip
