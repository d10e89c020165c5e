#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tolbip/graph.hpp"

namespace tolbip {

enum class Side : uint8_t { L = 0, R = 1 };

inline Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }
inline char side_char(Side s) { return s == Side::L ? 'L' : 'R'; }

/*
 * A (possibly partial) two-coloring of vertices 0..n-1. Partial maps carry
 * their domain implicitly: assigned(v) says whether v has a side.
 */
class Bipartition {
public:
    explicit Bipartition(uint32_t n) : side_(n, kUnset) {}

    // Full labeling from an R-side bitmask (bit v set -> R); n <= 64.
    static Bipartition from_mask(uint32_t n, uint64_t r_mask);
    // Full or partial labeling from characters 'L', 'R', '.' (unassigned).
    static Bipartition from_string(std::string_view text);

    uint32_t n() const { return static_cast<uint32_t>(side_.size()); }
    uint32_t assigned_count() const { return assigned_; }
    bool is_full() const { return assigned_ == side_.size(); }
    bool assigned(uint32_t v) const { return side_.at(v) != kUnset; }

    Side side(uint32_t v) const; // throws std::logic_error if unassigned

    void set(uint32_t v, Side s);
    void unset(uint32_t v);

    // Bit-packed mask of the vertices labeled `s`, `words` words long.
    std::vector<uint64_t> mask(Side s, size_t words) const;

    std::string to_string() const; // 'L', 'R', '.' per vertex

    bool operator==(const Bipartition& o) const { return side_ == o.side_; }

private:
    static constexpr int8_t kUnset = -1;
    std::vector<int8_t> side_;
    uint32_t assigned_ = 0;
};

// Number of ordered monochromatic adjacent pairs (u,v) under a full
// labeling: every same-side edge contributes 2. This is the distance from
// making f a proper 2-coloring, measured in single edge edits times two.
uint64_t bip_distance_wrt(const DenseGraph& g, const Bipartition& f);

} // namespace tolbip
