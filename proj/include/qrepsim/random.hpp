#pragma once

#include <cstdint>
#include <random>

namespace qrepsim {

// Deterministic random stream. Uses mt19937_64 with hand-rolled conversions so
// that a fixed seed produces identical draws on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in [0, 1) with 53 bits of entropy.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n). Modulo bias is O(n / 2^64), far below any
    // statistical tolerance used in this project.
    std::uint32_t uniform_int(std::uint32_t n) {
        return static_cast<std::uint32_t>(gen_() % n);
    }

private:
    std::mt19937_64 gen_;
};

// splitmix64, used to derive independent per-trajectory seeds from one master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_index) {
    return mix_seed(master ^ mix_seed(stream_index + 1));
}

} // namespace qrepsim
