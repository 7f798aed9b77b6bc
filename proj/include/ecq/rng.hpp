#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ecq {

// splitmix64: tiny deterministic generator. We roll our own instead of using
// <random> because sampled objectives are part of the reproducibility
// contract, and std distributions are not bit-stable across implementations.
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on the open interval (0,1); never returns an exact endpoint
    double uniform01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential() noexcept { return -std::log(uniform01()); }
};

// one point from the flat Dirichlet(1,...,1) simplex: normalized exponentials
inline std::vector<double> sample_simplex(splitmix64& rng, std::size_t dim) {
    std::vector<double> v(dim);
    double total = 0.0;
    for (auto& x : v) {
        x = rng.exponential();
        total += x;
    }
    for (auto& x : v) x /= total;
    return v;
}

}  // namespace ecq
