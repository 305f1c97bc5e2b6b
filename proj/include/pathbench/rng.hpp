#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace pathbench {

// SplitMix64 (Steele, Lea & Flood, 2014). Chosen over std:: engines because
// the whole sequence, including the uniform-double derivation below, is
// defined by exact 64-bit integer arithmetic and therefore reproduces
// bit-identically on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unif(-h, h); returns exactly 0.0 when h == 0 while still consuming one
    // draw, so noise-free and noisy runs stay sample-aligned.
    double uniform_sym(double h) { return (2.0 * uniform01() - 1.0) * h; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::uint64_t state_;
};

// Derives an independent substream seed from a root seed and a path of
// indices (e.g. {run_index, phase}). Each element is absorbed through one
// SplitMix64 scramble so substreams do not overlap for distinct paths.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    SplitMix64 g(root);
    std::uint64_t s = g.next();
    for (std::uint64_t p : path) {
        SplitMix64 h(s ^ (p + 0x9e3779b97f4a7c15ull));
        s = h.next();
    }
    return s;
}

} // namespace pathbench
