#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "linml/constants.hpp"

// Seedable random streams. A (seed, stream_id) pair identifies a stream
// reproducibly: the same pair always yields the same deviate sequence, and
// distinct stream ids decorrelate via a splitmix64 mixing stage, so
// per-replicate streams can be consumed from any thread assignment without
// changing results.

namespace linml {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        std::uint64_t s = seed;
        detail::splitmix64(s);
        s ^= 0xd1b54a32d192ed03ULL * (stream_id + 1);
        eng_.seed(detail::splitmix64(s));
        has_cached_normal_ = false;
        cached_normal_ = 0.0;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform on [0, 1): 53-bit mantissa lattice.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_pos() { return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1): midpoint lattice, never returns
    /// an exact endpoint. Used wherever a draw feeds log, division or a trig
    /// argument that must stay away from its singular values.
    double uniform_open() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard exponential deviate (strictly positive).
    double exp1() { return -std::log(uniform_open()); }

    /// Standard normal deviate via Box-Muller, caching the second value.
    double normal() {
        if (has_cached_normal_) {
            has_cached_normal_ = false;
            return cached_normal_;
        }
        const double r = std::sqrt(2.0 * exp1());
        const double theta = 2.0 * constants::pi * uniform01();
        cached_normal_ = r * std::sin(theta);
        has_cached_normal_ = true;
        return r * std::cos(theta);
    }

  private:
    std::mt19937_64 eng_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    bool has_cached_normal_;
    double cached_normal_;
};

} // namespace linml
