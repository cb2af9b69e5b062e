// Deterministic initial-data families.
//
// The random family draws |c_n| ∝ ⟨n⟩^{-3/2} with uniform phases from a
// seeded mt19937_64 (the raw engine output is mapped to [0,1) directly so
// the stream is identical across standard libraries), which keeps the H¹
// norm bounded by construction. An optional post-normalization pins ‖u‖_{H¹}
// exactly.

#pragma once

#include <random>

#include "cnls/spectral.hpp"

namespace cnls {

inline SpectralField plane_wave_data(int band, int mode, Complex amplitude) {
    if (std::abs(mode) > band) throw InvalidArgument("plane_wave_data: mode outside band");
    SpectralField f(band);
    f.c(mode) = amplitude;
    return f;
}

inline SpectralField two_mode_data(int band, int mode_a, int mode_b, Complex amplitude) {
    if (std::abs(mode_a) > band || std::abs(mode_b) > band)
        throw InvalidArgument("two_mode_data: mode outside band");
    SpectralField f(band);
    f.c(mode_a) += amplitude;
    f.c(mode_b) += amplitude;
    return f;
}

inline SpectralField seeded_random_field(int band, std::uint64_t seed, double amplitude,
                                 double decay = 1.5) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng] {
        return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    };
    SpectralField f(band);
    for (int n = -band; n <= band; ++n) {
        const double mag =
            amplitude * std::pow(1.0 + static_cast<double>(n) * n, -decay / 2.0);
        f.c(n) = std::polar(mag, 2.0 * M_PI * unit());
    }
    return f;
}

// Spectrally smooth family: |c_n| ∝ e^{-rate·|n|} with seeded phases. The
// tail is below roundoff well inside the band, so products are fully
// resolved; useful where truncation effects must not mask scheme error.
inline SpectralField smooth_random_field(int band, std::uint64_t seed, double amplitude,
                                         double rate = 1.0) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng] {
        return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    };
    SpectralField f(band);
    for (int n = -band; n <= band; ++n) {
        const double mag = amplitude * std::exp(-rate * std::abs(n));
        f.c(n) = std::polar(mag, 2.0 * M_PI * unit());
    }
    return f;
}

inline SpectralField normalized_h1(SpectralField f, double target_h1) {
    const double h1 = sobolev_norm(f, 1.0);
    if (h1 <= 0.0) throw InvalidArgument("normalized_h1: zero field");
    f *= Complex{target_h1 / h1, 0.0};
    return f;
}

}  // namespace cnls
