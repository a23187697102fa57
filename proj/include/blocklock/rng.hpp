#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace blocklock {

// splitmix64 (Vigna's published constants). Every random draw in the
// library funnels through this generator, so any run is reproducible from
// its explicit seeds alone and behaves identically on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Index in [0, n); n must be positive.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    int next_bit() { return static_cast<int>(next() & 1ull); }

    // Real in [0, 1) with 53 random bits.
    double next_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Fisher-Yates over a SplitMix64 stream: for i = n-1 .. 1 swap a[i] with
// a[next_below(i+1)]. The exact draw order is part of the key-file
// compatibility contract.
inline std::vector<std::uint32_t> random_permutation(std::size_t n, SplitMix64& rng) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, SplitMix64& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_bit());
    return bits;
}

// Seeded shuffle of an index vector, same draw scheme as random_permutation.
template <typename T>
inline void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace blocklock
