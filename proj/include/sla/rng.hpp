#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace sla {

/// SplitMix64: a 64-bit counter-based generator (state advances by a fixed
/// odd constant, output is a bijective mix of the state). Streams derived
/// from different seeds are independent for Monte Carlo purposes, and the
/// sequence depends only on the seed, never on call interleaving.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1]; never returns 0, so log() is always finite.
    double next_open_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = 1, i.e. real and
    /// imaginary parts i.i.d. N(0, 1/2). Box-Muller in polar form.
    std::complex<double> next_complex_gaussian() {
        const double u1 = next_open_unit();
        const double u2 = next_open_unit();
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    std::uint64_t state_;
};

/// Stable seed derivation: hash-combine a base seed with stream labels so
/// per-trial / per-role streams never collide or depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t label) {
    SplitMix64 mixer(base ^ (0x632be59bd9b4e019ULL + label));
    std::uint64_t h = mixer.next_u64();
    return h ^ label;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t label_a,
                                 std::uint64_t label_b) {
    return derive_seed(derive_seed(base, label_a), label_b);
}

} // namespace sla
