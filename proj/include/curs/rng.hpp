#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace curs {

/**
 * Reproducible random stream.
 *
 * Wraps std::mt19937_64 but generates uniforms and normals itself so that a
 * given seed produces the same stream on every platform and standard library
 * (std::normal_distribution is implementation defined; this is not).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    /// Never returns 0 or 1, so log(uniform()) is always finite.
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard normal via Box-Muller; the second deviate of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t raw() { return gen_(); }

    /// Independent stream for a parallel worker. Derived from (seed, worker)
    /// through a splitmix64 finalizer so distinct workers never collide and a
    /// run is reproducible for a fixed seed and worker count.
    static Rng worker_stream(std::uint64_t seed, std::uint64_t worker) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (worker + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace curs
