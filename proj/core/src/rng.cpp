#include "tolbip/rng.hpp"

#include <stdexcept>
#include <unordered_map>

namespace tolbip {

uint64_t split_mix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t master_seed, uint64_t index) {
    uint64_t state = master_seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL);
    return split_mix64(state);
}

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    // Rejection sampling over the top of the 64-bit range keeps the draw
    // exactly uniform.
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

double Rng::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<uint32_t> Rng::sample_distinct(uint32_t n, uint32_t count) {
    if (count > n) throw std::invalid_argument("sample_distinct: count exceeds population");
    // Virtual Fisher-Yates: only touched slots are materialized, so large n
    // with small count stays O(count).
    std::unordered_map<uint32_t, uint32_t> slot;
    auto read = [&](uint32_t i) {
        auto it = slot.find(i);
        return it == slot.end() ? i : it->second;
    };
    std::vector<uint32_t> out;
    out.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        uint32_t j = i + static_cast<uint32_t>(below(n - i));
        uint32_t vi = read(i), vj = read(j);
        out.push_back(vj);
        slot[j] = vi;
        slot[i] = vj;
    }
    return out;
}

} // namespace tolbip
