#include "tolbip/bipartition.hpp"

#include <stdexcept>

namespace tolbip {

Bipartition Bipartition::from_mask(uint32_t n, uint64_t r_mask) {
    if (n > 64) throw std::invalid_argument("from_mask: n exceeds 64");
    Bipartition b(n);
    for (uint32_t v = 0; v < n; ++v) b.set(v, (r_mask >> v) & 1u ? Side::R : Side::L);
    return b;
}

Bipartition Bipartition::from_string(std::string_view text) {
    Bipartition b(static_cast<uint32_t>(text.size()));
    for (uint32_t v = 0; v < text.size(); ++v) {
        switch (text[v]) {
            case 'L': b.set(v, Side::L); break;
            case 'R': b.set(v, Side::R); break;
            case '.': break;
            default: throw std::invalid_argument("from_string: expected 'L', 'R' or '.'");
        }
    }
    return b;
}

Side Bipartition::side(uint32_t v) const {
    int8_t s = side_.at(v);
    if (s == kUnset) throw std::logic_error("side(): vertex " + std::to_string(v) + " unassigned");
    return static_cast<Side>(s);
}

void Bipartition::set(uint32_t v, Side s) {
    int8_t& slot = side_.at(v);
    if (slot == kUnset) ++assigned_;
    slot = static_cast<int8_t>(s);
}

void Bipartition::unset(uint32_t v) {
    int8_t& slot = side_.at(v);
    if (slot != kUnset) --assigned_;
    slot = kUnset;
}

std::vector<uint64_t> Bipartition::mask(Side s, size_t words) const {
    std::vector<uint64_t> m(words, 0);
    for (uint32_t v = 0; v < side_.size(); ++v)
        if (side_[v] == static_cast<int8_t>(s)) m[v / 64] |= 1ULL << (v % 64);
    return m;
}

std::string Bipartition::to_string() const {
    std::string s;
    s.reserve(side_.size());
    for (int8_t v : side_) s += v == kUnset ? '.' : side_char(static_cast<Side>(v));
    return s;
}

uint64_t bip_distance_wrt(const DenseGraph& g, const Bipartition& f) {
    if (f.n() != g.n()) throw std::invalid_argument("bip_distance_wrt: size mismatch");
    if (!f.is_full()) throw std::invalid_argument("bip_distance_wrt: labeling not full");
    size_t words = g.words_per_row();
    std::vector<uint64_t> l_mask = f.mask(Side::L, words);
    std::vector<uint64_t> r_mask = f.mask(Side::R, words);
    uint64_t d = 0;
    for (uint32_t v = 0; v < g.n(); ++v)
        d += g.neighbors_in(v, f.side(v) == Side::L ? l_mask.data() : r_mask.data());
    return d;
}

} // namespace tolbip
