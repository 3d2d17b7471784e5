/**
 * Counter-based random number generation.
 *
 * Every random entry in the library is a pure function of a key built from
 * (seed, indices...), so realizations are reproducible regardless of the
 * order in which entries are evaluated and safe to generate concurrently.
 * The mixer is the splitmix64 finalizer.
 */
#pragma once

#include "mimodof/matrix.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace mimodof::rng {

inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Collapse a tuple of index words into a single well-mixed key.
inline std::uint64_t hash_key(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t w : words) h = mix64(h ^ w);
    return h;
}

/// Map a hash to (0, 1]; never returns 0 so log() below stays finite.
inline double uniform_open01(std::uint64_t h) noexcept {
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

/// Circularly symmetric complex Gaussian with E|z|^2 = 1.
inline Complex complex_gaussian(std::uint64_t key) noexcept {
    const double u1 = uniform_open01(mix64(key ^ 0x5851f42d4c957f2dULL));
    const double u2 = uniform_open01(mix64(key ^ 0x14057b7ef767814fULL));
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Matrix of i.i.d. CN(0,1) entries; entry (r,c) depends only on (key, r, c).
inline ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t key) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = complex_gaussian(hash_key({key, static_cast<std::uint64_t>(r),
                                                 static_cast<std::uint64_t>(c)}));
    return m;
}

}  // namespace mimodof::rng
