#ifndef TAILCONES_RNG_HPP
#define TAILCONES_RNG_HPP

#include <cstdint>
#include <random>

namespace tailcones {

// SplitMix64 finalizer; used to derive independent-looking streams from a
// root seed and a stream identifier, so callers can split deterministically.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return mix64(mix64(root) ^ mix64(stream));
}

using Rng = std::mt19937_64;

// Uniform on (0,1), both endpoints excluded so logs stay finite.
inline double uniform_open(Rng& rng) {
    double u;
    do {
        u = (rng() >> 11) * 0x1.0p-53;
    } while (u <= 0.0 || u >= 1.0);
    return u;
}

inline double exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

// Standard Frechet via inversion: -1/log U.
inline double frechet(Rng& rng) { return -1.0 / std::log(uniform_open(rng)); }

}  // namespace tailcones

#endif
