#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace steerchess::util {

// splitmix64 step; used for seed derivation and hash-seeded tables.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    std::uint64_t x = splitmix64(s) ^ b;
    return splitmix64(x);
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives a per-item rng from a master seed, e.g. seed per game id.
inline std::mt19937_64 make_rng(std::uint64_t master_seed, std::string_view key = {}) {
    std::uint64_t s = key.empty() ? master_seed : mix_seed(master_seed, fnv1a64(key));
    return std::mt19937_64(s);
}

// Unbiased draw in [0, n). std::uniform_int_distribution is
// implementation-defined, so results would not reproduce across standard
// libraries; this rejection sampler does.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Uniform double in [0, 1) with 53 bits of randomness.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (std::normal_distribution is
// implementation-defined as well).
class NormalSampler {
public:
    double operator()(std::mt19937_64& rng) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform_unit(rng);
        } while (u1 <= 0.0);
        u2 = uniform_unit(rng);
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = mag * std::sin(two_pi * u2);
        have_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace steerchess::util
