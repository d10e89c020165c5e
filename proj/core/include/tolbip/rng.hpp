#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tolbip {

// SplitMix64 step; the mixer behind seed derivation.
uint64_t split_mix64(uint64_t& state);

// Per-trial seed: mixes (master_seed, index) through SplitMix64 so that
// nearby indices give unrelated streams. seed_i = mix(master xor
// (index+1)*0x9E3779B97F4A7C15), documented so runs can be reproduced by
// other implementations.
uint64_t derive_seed(uint64_t master_seed, uint64_t index);

/*
 * Deterministic random source. std::mt19937_64's output sequence is pinned
 * by the standard, but std::uniform_int_distribution is not, so bounded
 * draws are implemented here (rejection sampling) to keep experiment
 * reruns byte-identical across standard libraries.
 */
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform integer in [0, bound); bound > 0.
    uint64_t below(uint64_t bound);

    // Uniform double in [0,1) with 53 random bits.
    double unit();

    bool bernoulli(double p) { return unit() < p; }

    bool coin() { return (next() & 1u) != 0; }

    // Uniformly random ordered sequence of `count` distinct values from
    // [0, n): a partial Fisher-Yates walk over a virtual identity array.
    std::vector<uint32_t> sample_distinct(uint32_t n, uint32_t count);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace tolbip
