// The four equations i u_t + Δu = g(u)·u on the circle, their conserved
// quantities, and an exact-substep Strang splitting integrator.
//
// Sign convention follows the equations literally: the linear substep is the
// phase e^{-i n² t} and the nonlinear substep is u ← u e^{-i g dt}. Every
// variant has a purely real phase function g, so |u| is pointwise invariant
// under the nonlinear substep and it is solved exactly with g frozen.
//
//   PowerNls            g = |u|^{2k}
//   Hartree             g = V * |u|²          (spectral: V̂(n)·(|u|²)_n)
//   PotentialCubic      g = |u|² + λ(x)
//   InhomogeneousCubic  g = λ(x)·|u|²

#pragma once

#include <functional>
#include <variant>

#include "cnls/multilinear.hpp"
#include "cnls/multiplier.hpp"
#include "cnls/spectral.hpp"

namespace cnls {

struct PowerNls {
    int k = 1;
};

struct Hartree {
    VhatTable v_hat;
};

struct PotentialCubic {
    SpectralField lambda;  // real-valued: Hermitian coefficients
};

struct InhomogeneousCubic {
    SpectralField lambda;  // real-valued and ≥ 0 on the grid
};

using EquationSpec = std::variant<PowerNls, Hartree, PotentialCubic, InhomogeneousCubic>;

inline bool is_hermitian(const SpectralField& f, double tol = 1e-12) {
    for (int n = 0; n <= f.band(); ++n)
        if (std::abs(f.c(-n) - std::conj(f.c(n))) > tol) return false;
    return true;
}

// Degree of the nonlinear product g·u (drives the dealias padding).
inline int nonlinearity_degree(const EquationSpec& eq) {
    if (const auto* p = std::get_if<PowerNls>(&eq)) return 2 * p->k + 1;
    return 3;
}

// Band of physical-space data multiplying into g (λ); 0 for PowerNls and
// Hartree (V̂ acts as a spectral multiplier and never widens the product).
inline int external_band(const EquationSpec& eq) {
    if (const auto* p = std::get_if<PotentialCubic>(&eq)) return p->lambda.band();
    if (const auto* p = std::get_if<InhomogeneousCubic>(&eq)) return p->lambda.band();
    return 0;
}

inline double mass(const SpectralField& field) {
    double s = 0.0;
    for (const auto& z : field.raw()) s += std::norm(z);
    return 2.0 * M_PI * s;
}

namespace detail {

inline double kinetic_energy(const SpectralField& field) {
    double s = 0.0;
    for (int n = -field.band(); n <= field.band(); ++n)
        s += static_cast<double>(n) * n * std::norm(field.c(n));
    return M_PI * s;
}

// (1/2π)∫ f dx for grid samples of an alias-free product.
inline Complex grid_mean(const std::vector<Complex>& v) {
    Complex s{0.0, 0.0};
    for (const auto& z : v) s += z;
    return s / static_cast<double>(v.size());
}

inline std::vector<double> real_samples(const SpectralField& f, std::size_t P) {
    PhysicalSamples s = synthesize(f, P);
    std::vector<double> out(P);
    for (std::size_t j = 0; j < P; ++j) out[j] = s.values[j].real();
    return out;
}

}  // namespace detail

inline double energy(const EquationSpec& eq, const SpectralField& field) {
    const int M = field.band();
    const double kin = detail::kinetic_energy(field);

    if (const auto* p = std::get_if<PowerNls>(&eq)) {
        const int deg = 2 * p->k + 2;
        const std::size_t P = next_fast_size(static_cast<std::size_t>(deg) * M + 1);
        PhysicalSamples s = synthesize(field, P);
        double mean = 0.0;
        for (const auto& z : s.values) mean += std::pow(std::norm(z), p->k + 1);
        mean /= static_cast<double>(P);
        return kin + 2.0 * M_PI * mean / static_cast<double>(deg);
    }
    if (const auto* p = std::get_if<Hartree>(&eq)) {
        // ¼∫(V*|u|²)|u|² = ¼·2π Σ_m V̂(m)|w_m|², w = coefficients of |u|².
        SpectralField w = abs2_coeffs(field, 2 * M);
        double s = 0.0;
        for (int m = -2 * M; m <= 2 * M; ++m) s += p->v_hat(m) * std::norm(w.c(m));
        return kin + 0.25 * 2.0 * M_PI * s;
    }
    if (const auto* p = std::get_if<PotentialCubic>(&eq)) {
        const int L = p->lambda.band();
        const std::size_t P =
            next_fast_size(static_cast<std::size_t>(std::max(4 * M, 2 * M + L)) + 1);
        PhysicalSamples s = synthesize(field, P);
        std::vector<double> lam = detail::real_samples(p->lambda, P);
        double quartic = 0.0, potential = 0.0;
        for (std::size_t j = 0; j < P; ++j) {
            const double a2 = std::norm(s.values[j]);
            quartic += a2 * a2;
            potential += lam[j] * a2;
        }
        quartic /= static_cast<double>(P);
        potential /= static_cast<double>(P);
        return kin + 0.25 * 2.0 * M_PI * quartic + 0.5 * 2.0 * M_PI * potential;
    }
    const auto& p = std::get<InhomogeneousCubic>(eq);
    const int L = p.lambda.band();
    const std::size_t P = next_fast_size(static_cast<std::size_t>(4 * M + L) + 1);
    PhysicalSamples s = synthesize(field, P);
    std::vector<double> lam = detail::real_samples(p.lambda, P);
    double mean = 0.0;
    for (std::size_t j = 0; j < P; ++j) {
        const double a2 = std::norm(s.values[j]);
        mean += lam[j] * a2 * a2;
    }
    mean /= static_cast<double>(P);
    return kin + 0.25 * 2.0 * M_PI * mean;
}

// Real phase function g with nonlinearity = g·u, sampled on the grid the
// samples live on. field_band is the band of the field the samples came
// from (the Hartree path needs it to run the convolution spectrally).
inline std::vector<double> nonlinear_phase(const EquationSpec& eq,
                                           const PhysicalSamples& samples, int field_band) {
    const std::size_t P = samples.grid_size();
    std::vector<double> g(P, 0.0);

    if (const auto* p = std::get_if<PowerNls>(&eq)) {
        for (std::size_t j = 0; j < P; ++j)
            g[j] = std::pow(std::norm(samples.values[j]), p->k);
        return g;
    }
    if (const auto* p = std::get_if<Hartree>(&eq)) {
        PhysicalSamples sq;
        sq.values.resize(P);
        for (std::size_t j = 0; j < P; ++j)
            sq.values[j] = Complex{std::norm(samples.values[j]), 0.0};
        const int wband = std::min(2 * field_band, p->v_hat.extent());
        if (P < 2 * static_cast<std::size_t>(wband) + 1)
            throw InvalidArgument("nonlinear_phase: grid too small for Hartree convolution");
        SpectralField w = analyze(sq, wband);
        for (int n = -wband; n <= wband; ++n) w.c(n) *= p->v_hat(n);
        PhysicalSamples conv = synthesize(w, P);
        for (std::size_t j = 0; j < P; ++j) g[j] = conv.values[j].real();
        return g;
    }
    if (const auto* p = std::get_if<PotentialCubic>(&eq)) {
        std::vector<double> lam = detail::real_samples(p->lambda, P);
        for (std::size_t j = 0; j < P; ++j)
            g[j] = std::norm(samples.values[j]) + lam[j];
        return g;
    }
    const auto& p = std::get<InhomogeneousCubic>(eq);
    std::vector<double> lam = detail::real_samples(p.lambda, P);
    for (std::size_t j = 0; j < P; ++j) g[j] = lam[j] * std::norm(samples.values[j]);
    return g;
}

struct StepperConfig {
    double dt;
    int pad_degree;  // degree of the g·u product; sets the dealias padding
};

inline StepperConfig make_stepper_config(const EquationSpec& eq, double dt) {
    if (dt == 0.0 || !std::isfinite(dt))
        throw InvalidArgument("StepperConfig: dt must be nonzero and finite");
    return StepperConfig{dt, nonlinearity_degree(eq)};
}

inline std::size_t stepper_grid_size(const EquationSpec& eq, const StepperConfig& cfg,
                                     int band) {
    const std::size_t need = static_cast<std::size_t>(cfg.pad_degree + 1) * band +
                             external_band(eq) + 1;
    return next_fast_size(need);
}

// One Strang step: half linear phase, exact nonlinear phase rotation on the
// padded grid, half linear phase, truncation back to the band.
inline SpectralField step(const EquationSpec& eq, const SpectralField& field,
                          const StepperConfig& cfg) {
    const int M = field.band();
    const double dt = cfg.dt;
    const std::size_t P = stepper_grid_size(eq, cfg, M);

    SpectralField f = field;
    for (int n = -M; n <= M; ++n)
        f.c(n) *= std::polar(1.0, -static_cast<double>(n) * n * dt / 2.0);

    PhysicalSamples s = synthesize(f, P);
    std::vector<double> g = nonlinear_phase(eq, s, M);
    for (std::size_t j = 0; j < P; ++j) s.values[j] *= std::polar(1.0, -g[j] * dt);
    f = analyze(s, M);

    for (int n = -M; n <= M; ++n)
        f.c(n) *= std::polar(1.0, -static_cast<double>(n) * n * dt / 2.0);
    return f;
}

// Deterministic fixed-dt trajectory; invokes record(t, field) at stride
// record_every, always including the first and last step. Aborts with
// BlowUpError when a non-finite value appears.
inline SpectralField evolve(const EquationSpec& eq, const SpectralField& initial,
                            const StepperConfig& cfg, double T, long record_every,
                            const std::function<void(double, const SpectralField&)>& record = {}) {
    const long n_steps = std::max(1L, std::lround(T / cfg.dt));
    if (record_every <= 0) record_every = n_steps;

    SpectralField u = initial;
    if (!u.all_finite()) throw BlowUpError(0.0);
    if (record) record(0.0, u);
    for (long k = 1; k <= n_steps; ++k) {
        u = step(eq, u, cfg);
        const double t = static_cast<double>(k) * cfg.dt;
        if (!u.all_finite()) throw BlowUpError(t);
        if (record && (k % record_every == 0 || k == n_steps)) record(t, u);
    }
    return u;
}

// Remark-4.1 orbit: α e^{-i V̂(0)|α|² t} e^{i(nx - n²t)} as a single
// coefficient c_n = α e^{-i(V̂(0)|α|² + n²) t}.
inline SpectralField hartree_plane_wave(Complex alpha, int n, double v_hat0, double t,
                                        int band) {
    if (std::abs(n) > band)
        throw InvalidArgument("hartree_plane_wave: mode outside band");
    SpectralField f(band);
    const double phase = (v_hat0 * std::norm(alpha) + static_cast<double>(n) * n) * t;
    f.c(n) = alpha * std::polar(1.0, -phase);
    return f;
}

// u ↦ e^{-i λ₀ t} u; relates the constant-λ potential equation to the cubic
// NLS.
inline SpectralField gauge_transform(const SpectralField& field, double lambda0, double t) {
    SpectralField out = field;
    out *= std::polar(1.0, -lambda0 * t);
    return out;
}

}  // namespace cnls
