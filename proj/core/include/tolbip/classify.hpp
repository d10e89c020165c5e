#pragma once

#include <cstdint>
#include <vector>

#include "tolbip/bipartition.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/rational.hpp"

namespace tolbip {

/*
 * Parameters of the heavy/balanced vertex classification relative to a full
 * labeling f. margin() and ratio() are the two thresholds every class test
 * compares against; both are exact rationals.
 */
struct ClassificationParams {
    ClassificationParams(Rat epsilon_, Rat k_, uint32_t n_);
    Rat epsilon;
    Rat k; // in (0, 100]
    uint32_t n;
    Rat margin() const; // k * epsilon * n / 150
    Rat ratio() const;  // 1 + k/200
};

// Class flags; a vertex can carry several (Balanced1 and Balanced2 overlap).
using VertexClass = uint8_t;
inline constexpr VertexClass kLHeavy = 1;
inline constexpr VertexClass kRHeavy = 2;
inline constexpr VertexClass kBalanced1 = 4;
inline constexpr VertexClass kBalanced2 = 8;

inline bool is_heavy(VertexClass c) { return (c & (kLHeavy | kRHeavy)) != 0; }
inline bool is_balanced(VertexClass c) { return !is_heavy(c); }

/*
 * Classifies a vertex from its same-side/other-side neighbor counts
 * (n_l = neighbors labeled L, n_r = neighbors labeled R):
 *   L-heavy:   n_l >= n_r + margin, and, when n_r >= margin/ratio,
 *              additionally n_l >= ratio * n_r. R-heavy symmetric.
 *   Balanced1: |n_r - n_l| < margin.
 *   Balanced2: the counts are within a factor `ratio` of each other
 *              (min <= max < ratio*min, with equal counts qualifying
 *              vacuously so that isolated vertices land in both balanced
 *              classes).
 * Heavy labels are mutually exclusive; a vertex is heavy iff it carries no
 * balanced obligations, and every non-heavy vertex is Balanced1 or
 * Balanced2 (exhaustiveness is a consequence of the definitions, checked
 * by tests, not enforced here).
 */
VertexClass classify_counts(uint64_t n_l, uint64_t n_r, const ClassificationParams& p);

// Per-vertex classes of every vertex of g relative to full labeling f.
std::vector<VertexClass> classify(const DenseGraph& g, const Bipartition& f,
                                  const ClassificationParams& p);

} // namespace tolbip
