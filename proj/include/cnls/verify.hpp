// The claims-verification suite: multiplier-bound certification, the E²/E¹
// equivalence scaling, the derivative identities against their oracles,
// exact-solution and gauge regressions, the Γ₆ resonance probe, conservation
// drift, and report-only monitoring of the increment inequalities and growth
// exponents.
//
// Hard checks gate the exit code; monitoring checks always report. A check
// that throws is recorded as failed and the suite continues.

#pragma once

#include <future>

#include "cnls/config.hpp"
#include "cnls/diagnostics.hpp"
#include "cnls/energy.hpp"
#include "cnls/fit.hpp"
#include "cnls/simulation_io.hpp"

namespace cnls {

struct CheckResult {
    std::string name;
    bool hard = true;
    bool passed = false;
    Json details;
};

struct SuiteOptions {
    std::vector<std::string> checks;  // empty → run all registered checks
    bool flip_psi_sign = false;       // test hook: breaks the Ψ sign convention
};

struct SuiteReport {
    std::vector<CheckResult> results;
    bool all_hard_passed = false;

    Json to_json() const {
        Json checks = Json::array();
        for (const auto& r : results)
            checks.push_back(Json{{"name", r.name},
                                  {"hard", r.hard},
                                  {"status", r.passed ? "pass" : (r.hard ? "fail" : "report")},
                                  {"details", r.details}});
        return Json{{"schema_version", 1},
                    {"all_hard_passed", all_hard_passed},
                    {"checks", checks}};
    }
};

namespace checks {

inline CheckResult exact_solution_hartree_plane_wave() {
    CheckResult r{"exact_solution_hartree_plane_wave", true, false, {}};
    const int M = 64;
    VhatTable vh = VhatTable::constant(1.0, 2 * M);
    EquationSpec eq = Hartree{vh};
    const Complex alpha{1.0, 0.0};
    const int mode = 3;
    SpectralField u0 = hartree_plane_wave(alpha, mode, vh(0), 0.0, M);
    StepperConfig cfg = make_stepper_config(eq, 1e-3);

    const std::vector<double> s_values{1.0, 2.0, 3.0};
    std::vector<double> h0;
    for (double s : s_values) h0.push_back(sobolev_norm(u0, s));

    double worst_l2 = 0.0, worst_hs = 0.0;
    evolve(eq, u0, cfg, 2.0, 100, [&](double t, const SpectralField& u) {
        SpectralField ref = hartree_plane_wave(alpha, mode, vh(0), t, M);
        worst_l2 = std::max(worst_l2, (u - ref).l2_norm());
        for (std::size_t i = 0; i < s_values.size(); ++i)
            worst_hs = std::max(worst_hs,
                                std::abs(sobolev_norm(u, s_values[i]) - h0[i]) / h0[i]);
    });
    r.passed = worst_l2 < 1e-10 && worst_hs < 1e-10;
    r.details = Json{{"sup_l2_error", worst_l2}, {"sup_hs_drift", worst_hs}};
    return r;
}

inline CheckResult gauge_reduction() {
    CheckResult r{"gauge_reduction", true, false, {}};
    const int M = 32;
    const double lambda0 = 2.0;
    SpectralField lam(0);
    lam.c(0) = lambda0;
    EquationSpec cubic = PowerNls{1};
    EquationSpec potential = PotentialCubic{lam};
    SpectralField u0 = seeded_random_field(M, 8, 0.5);
    StepperConfig cfg = make_stepper_config(cubic, 1e-3);

    std::vector<SpectralField> cubic_records;
    evolve(cubic, u0, cfg, 2.0, 100,
           [&](double, const SpectralField& u) { cubic_records.push_back(u); });
    std::size_t idx = 0;
    double worst = 0.0;
    evolve(potential, u0, make_stepper_config(potential, 1e-3), 2.0, 100,
           [&](double t, const SpectralField& u) {
               worst = std::max(
                   worst, (u - gauge_transform(cubic_records[idx++], lambda0, t)).l2_norm());
           });
    r.passed = worst < 1e-10;
    r.details = Json{{"sup_l2_discrepancy", worst}};
    return r;
}

inline CheckResult conservation() {
    CheckResult r{"conservation", true, false, {}};
    const int M = 64;
    const double T = 2.0;
    SpectralField lam(2);
    lam.c(0) = 1.0;
    lam.c(1) = lam.c(-1) = 0.1;
    std::vector<std::pair<std::string, EquationSpec>> eqs;
    eqs.emplace_back("power_nls_k2", PowerNls{2});
    eqs.emplace_back("hartree", Hartree{VhatTable::constant(1.0, 2 * M)});
    eqs.emplace_back("potential_cubic", PotentialCubic{lam});
    eqs.emplace_back("inhomogeneous_cubic", InhomogeneousCubic{lam});

    bool all = true;
    Json per_eq = Json::object();
    for (const auto& [name, eq] : eqs) {
        SpectralField u0 = seeded_random_field(M, 21, 0.3);
        const double m0 = mass(u0);
        const double e0 = energy(eq, u0);
        double dm = 0.0, de = 0.0;
        evolve(eq, u0, make_stepper_config(eq, 1e-3), T, 200,
               [&](double, const SpectralField& u) {
                   dm = std::max(dm, std::abs(mass(u) - m0) / std::abs(m0));
                   de = std::max(de, std::abs(energy(eq, u) - e0) / std::abs(e0));
               });
        const bool ok = dm < 1e-8 && de < 1e-6;
        all = all && ok;
        per_eq[name] = Json{{"mass_drift", dm}, {"energy_drift", de}, {"pass", ok}};
    }
    r.passed = all;
    r.details = per_eq;
    return r;
}

inline CheckResult strang_order() {
    CheckResult r{"strang_order", true, false, {}};
    EquationSpec eq = PowerNls{2};
    SpectralField u0 = smooth_random_field(16, 5, 0.8);
    auto run = [&](double dt) { return evolve(eq, u0, make_stepper_config(eq, dt), 0.5, 0); };
    SpectralField a = run(2e-3), b = run(1e-3), c = run(5e-4);
    const double order = std::log2((a - b).l2_norm() / (b - c).l2_norm());
    r.passed = order > 1.8 && order < 2.2;
    r.details = Json{{"observed_order", order}};
    return r;
}

inline CheckResult derivative_identities(bool flip_psi_sign) {
    CheckResult r{"derivative_identities", true, false, {}};
    SmoothingParams p(1.0, 4.0);
    DerivedConstants consts = calibrate_all(p);
    if (flip_psi_sign) consts.c_psi = -consts.c_psi;

    Json details = Json::object();
    details["c_psi"] = consts.c_psi;
    details["c_quintic"] = consts.c_quintic;
    bool all = true;

    const int M = 16;
    const double fd_tol = 1e-3;
    SpectralField lam(2);
    lam.c(0) = 1.5;
    lam.c(1) = lam.c(-1) = Complex{0.2, 0.1};
    lam.c(-1) = std::conj(lam.c(1));

    auto record = [&](const char* name, double worst, double tol) {
        const bool ok = worst < tol;
        all = all && ok;
        details[name] = Json{{"worst_relative_error", worst}, {"tol", tol}, {"pass", ok}};
    };

    {  // hartree: dE²/dt against the finite difference
        VhatTable vh = VhatTable::constant(1.0, 2 * M);
        EquationSpec eq = Hartree{vh};
        double worst = 0.0;
        for (std::uint64_t seed : {11u, 12u}) {
            SpectralField u = seeded_random_field(M, seed, 0.6);
            const double exact = d_e2_hartree(p, vh, u, consts);
            const double fd = flow_derivative_fd(eq, u, [&](const SpectralField& v) {
                return e2_hartree(p, vh, v, consts);
            });
            worst = std::max(worst, std::abs(fd - exact) /
                                        std::max(std::abs(fd), 1e-12));
        }
        record("d_e2_hartree_fd", worst, fd_tol);
    }
    {  // quintic: dE¹/dt against the finite difference
        EquationSpec eq = PowerNls{2};
        double worst = 0.0;
        for (std::uint64_t seed : {21u, 22u}) {
            SpectralField u = seeded_random_field(M, seed, 0.6);
            const double exact = d_e1_quintic(p, u, 2);
            const double fd = flow_derivative_fd(
                eq, u, [&](const SpectralField& v) { return e1(p, v); });
            worst = std::max(worst, std::abs(fd - exact) /
                                        std::max(std::abs(fd), 1e-12));
        }
        record("d_e1_quintic_fd", worst, fd_tol);
    }
    {  // potential: dE²/dt against the finite difference
        EquationSpec eq = PotentialCubic{lam};
        double worst = 0.0;
        for (std::uint64_t seed : {31u, 32u}) {
            SpectralField u = seeded_random_field(M, seed, 0.6);
            const double exact = d_e2_potential(p, lam, u, consts);
            const double fd = flow_derivative_fd(eq, u, [&](const SpectralField& v) {
                return e2_potential(p, v, consts);
            });
            worst = std::max(worst, std::abs(fd - exact) /
                                        std::max(std::abs(fd), 1e-12));
        }
        record("d_e2_potential_fd", worst, fd_tol);
    }
    {  // inhomogeneous: dE¹/dt against the finite difference
        SpectralField lam_pos(2);
        lam_pos.c(0) = 1.5;
        lam_pos.c(1) = lam_pos.c(-1) = 0.2;
        EquationSpec eq = InhomogeneousCubic{lam_pos};
        double worst = 0.0;
        for (std::uint64_t seed : {41u, 42u}) {
            SpectralField u = seeded_random_field(M, seed, 0.6);
            const double exact = d_e1_inhomogeneous(p, lam_pos, u);
            const double fd = flow_derivative_fd(
                eq, u, [&](const SpectralField& v) { return e1(p, v); });
            worst = std::max(worst, std::abs(fd - exact) /
                                        std::max(std::abs(fd), 1e-12));
        }
        record("d_e1_inhomogeneous_fd", worst, fd_tol);
    }

    {  // Γ₆ brute-force cross-checks at tiny band
        const int m = 4;
        SmoothingParams ps(1.0, 2.0);
        ThetaSqTable ts(ps, 3 * m);
        VhatTable vh = VhatTable::constant(1.0, 6 * m);
        SpectralField u = seeded_random_field(m, 41, 0.8);

        auto psi4 = [&](int a, int b, int cc, int d) {
            const std::int64_t den = 2 * (static_cast<std::int64_t>(a) + b) *
                                     (static_cast<std::int64_t>(a) + d);
            if (den == 0) return 0.0;
            return consts.c_psi * (ts(a) - ts(b) + ts(cc) - ts(d)) *
                   vh(static_cast<std::int64_t>(cc) + d) / static_cast<double>(den);
        };
        auto m6 = [&](int n1, int n2, int n3, int n4, int n5, int n6) {
            return psi4(n1 + n2 + n3, n4, n5, n6) * vh(n1 + n2) -
                   psi4(n1, n2 + n3 + n4, n5, n6) * vh(n2 + n3) +
                   psi4(n1, n2, n3 + n4 + n5, n6) * vh(n3 + n4) -
                   psi4(n1, n2, n3, n4 + n5 + n6) * vh(n4 + n5);
        };
        const double scan =
            (Complex{0.0, -1.0} * lambda6_reference_scan(m6, u)).real();
        const double fast = d_e2_hartree(ps, vh, u, consts);
        record("d_e2_hartree_scan", std::abs(fast - scan) / std::max(std::abs(scan), 1e-12),
               1e-9);

        auto alt6 = [&](int n1, int n2, int n3, int n4, int n5, int n6) {
            return ts(n1) - ts(n2) + ts(n3) - ts(n4) + ts(n5) - ts(n6);
        };
        const double scan_q =
            (Complex{0.0, 1.0} / 3.0 * lambda6_reference_scan(alt6, u)).real();
        const double fast_q = d_e1_quintic(ps, u, 2);
        record("d_e1_quintic_scan",
               std::abs(fast_q - scan_q) / std::max(std::abs(scan_q), 1e-12), 1e-9);
    }

    r.passed = all;
    r.details = details;
    return r;
}

inline CheckResult multiplier_certification() {
    CheckResult r{"multiplier_certification", true, false, {}};
    bool all = true;
    Json grid = Json::array();
    for (double s : {1.0, 1.5, 2.0}) {
        for (double N : {4.0, 8.0, 16.0}) {
            SmoothingParams p(s, N);
            VhatTable vh = VhatTable::constant(1.0, 128);
            BoundReport r32 = certify_psi_bound(p, vh, 32);
            BoundReport r64 = certify_psi_bound(p, vh, 64);
            const double ratio = r64.sup_ratio / r32.sup_ratio;
            const bool ok = std::isfinite(r32.sup_ratio) && std::isfinite(r64.sup_ratio) &&
                            r32.sup_ratio > 0.0 && ratio >= 0.8 && ratio <= 1.25;
            all = all && ok;
            grid.push_back(Json{{"s", s},
                                {"N", N},
                                {"sup_ratio_M32", r32.sup_ratio},
                                {"sup_ratio_M64", r64.sup_ratio},
                                {"doubling_ratio", ratio},
                                {"witness_M64", r64.witness},
                                {"pass", ok}});
        }
    }
    r.passed = all;
    r.details = Json{{"grid", grid}};
    return r;
}

inline CheckResult equivalence_scaling() {
    CheckResult r{"equivalence_scaling", true, false, {}};
    const int M = 128;
    DerivedConstants consts;
    consts.c_psi = 0.5;  // scaling is insensitive to the constant; calibrated elsewhere
    SpectralField u = normalized_h1(seeded_random_field(M, 7, 1.0), 1.0);

    std::vector<std::pair<double, double>> series;
    Json points = Json::array();
    double ratio_last = 0.0;
    for (double N : {8.0, 16.0, 32.0, 64.0}) {
        SmoothingParams p(2.0, N);
        const double ratio = equivalence_ratio(p, u, consts);
        series.emplace_back(N - 1.0, ratio);  // log(1+t) with t = N-1 gives log N
        points.push_back(Json{{"N", N}, {"ratio", ratio}});
        ratio_last = ratio;
    }
    double slope = 0.0;
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [x, y] : series) {
            const double lx = std::log(x + 1.0), ly = std::log(y);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double n = static_cast<double>(series.size());
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    r.passed = slope >= -1.3 && slope <= -0.7 && ratio_last < 0.5;
    r.details = Json{{"slope", slope}, {"ratio_at_largest_N", ratio_last}, {"points", points}};
    return r;
}

inline CheckResult resonance_probe_check() {
    CheckResult r{"resonance_probe", true, false, {}};
    ResonanceProbe probe = probe_gamma6({6, -2, 5, -3, 1, -7}, 2, 2.0);
    r.passed = probe.denominator == 0 && std::abs(probe.numerator + 9216.0) < 1e-9 &&
               probe.classification == ResonanceClass::resonant_nonzero_numerator;
    r.details = Json{{"tuple", probe.tuple},
                     {"denominator", probe.denominator},
                     {"numerator", probe.numerator},
                     {"classification", to_string(probe.classification)}};
    return r;
}

// Report-only: per-δ increments of E¹ (quintic) and E² (Hartree) against the
// N^{-1/2} and N^{-2} forms, plus fitted growth exponents of ‖u‖_{H²}
// against the theorem caps.
inline CheckResult monitoring(double T = 5.0) {
    CheckResult r{"monitoring", false, true, {}};
    const int M = 32;
    const double dt = 1e-3;
    const double delta = 0.1;
    const long stride = std::lround(delta / dt);
    SmoothingParams p(2.0, 8.0);
    DerivedConstants consts = calibrate_all(p);
    Json details = Json::object();

    {  // quintic: E¹ increments vs C/N^{1/2}, H² growth vs 2s+ε
        EquationSpec eq = PowerNls{2};
        SpectralField u0 = seeded_random_field(M, 3, 0.4);
        std::vector<double> e1_series;
        std::vector<std::pair<double, double>> h2_series;
        evolve(eq, u0, make_stepper_config(eq, dt), T, stride,
               [&](double t, const SpectralField& u) {
                   e1_series.push_back(e1(p, u));
                   h2_series.emplace_back(t, sobolev_norm(u, 2.0));
               });
        double worst_inc = 0.0;
        for (std::size_t i = 0; i + 1 < e1_series.size(); ++i)
            worst_inc = std::max(worst_inc,
                                 std::abs(e1_series[i + 1] - e1_series[i]) / e1_series[i]);
        GrowthFit fit = fit_growth(h2_series, 0.0, T);
        Json eps_caps = Json::object();
        for (double eps : {0.05, 0.1, 0.2})
            eps_caps[format_number(eps)] = 2.0 * p.s + eps;
        details["quintic"] =
            Json{{"max_e1_increment_ratio", worst_inc},
                 {"fitted_iteration_constant", worst_inc * std::sqrt(p.threshold)},
                 {"lemma_form", "C·N^{-1/2}"},
                 {"h2_growth_alpha", fit.exponent},
                 {"h2_growth_C", fit.constant},
                 {"theorem_cap_2s_plus_eps", eps_caps},
                 {"within_cap", fit.exponent <= 2.0 * p.s + 0.1}};
    }
    {  // hartree: E² increments vs C/N², H² growth vs s/2+ε
        VhatTable vh = VhatTable::constant(1.0, 2 * M);
        EquationSpec eq = Hartree{vh};
        SpectralField u0 = seeded_random_field(M, 4, 0.4);
        std::vector<double> e2_series;
        std::vector<std::pair<double, double>> h2_series;
        evolve(eq, u0, make_stepper_config(eq, dt), T, stride,
               [&](double t, const SpectralField& u) {
                   e2_series.push_back(e2_hartree(p, vh, u, consts));
                   h2_series.emplace_back(t, sobolev_norm(u, 2.0));
               });
        double worst_inc = 0.0;
        for (std::size_t i = 0; i + 1 < e2_series.size(); ++i)
            worst_inc = std::max(worst_inc,
                                 std::abs(e2_series[i + 1] - e2_series[i]) /
                                     std::abs(e2_series[i]));
        GrowthFit fit = fit_growth(h2_series, 0.0, T);
        Json eps_caps = Json::object();
        for (double eps : {0.05, 0.1, 0.2})
            eps_caps[format_number(eps)] = 0.5 * p.s + eps;
        details["hartree"] =
            Json{{"max_e2_increment_ratio", worst_inc},
                 {"fitted_iteration_constant", worst_inc * p.threshold * p.threshold},
                 {"lemma_form", "C·N^{-2}"},
                 {"h2_growth_alpha", fit.exponent},
                 {"h2_growth_C", fit.constant},
                 {"theorem_cap_halfs_plus_eps", eps_caps},
                 {"within_cap", fit.exponent <= 0.5 * p.s + 0.1}};
    }
    r.details = details;
    return r;
}

}  // namespace checks

inline SuiteReport verify_claims(const SuiteOptions& opt = {}) {
    using CheckFn = std::function<CheckResult()>;
    std::vector<std::pair<std::string, CheckFn>> registry;
    registry.emplace_back("exact_solution_hartree_plane_wave",
                          checks::exact_solution_hartree_plane_wave);
    registry.emplace_back("gauge_reduction", checks::gauge_reduction);
    registry.emplace_back("conservation", checks::conservation);
    registry.emplace_back("strang_order", checks::strang_order);
    registry.emplace_back("derivative_identities",
                          [&opt] { return checks::derivative_identities(opt.flip_psi_sign); });
    registry.emplace_back("multiplier_certification", checks::multiplier_certification);
    registry.emplace_back("equivalence_scaling", checks::equivalence_scaling);
    registry.emplace_back("resonance_probe", checks::resonance_probe_check);
    registry.emplace_back("monitoring", [] { return checks::monitoring(); });

    std::vector<std::pair<std::string, CheckFn>> selected;
    if (opt.checks.empty()) {
        selected = registry;
    } else {
        for (const auto& want : opt.checks) {
            bool found = false;
            for (const auto& entry : registry)
                if (entry.first == want) {
                    selected.push_back(entry);
                    found = true;
                }
            if (!found) throw ConfigError("checks", "unknown check '" + want + "'");
        }
    }

    // isolated workers, deterministic report order
    std::vector<std::future<CheckResult>> futures;
    futures.reserve(selected.size());
    for (auto& [name, fn] : selected) {
        futures.push_back(std::async(std::launch::async, [name = name, fn = fn] {
            try {
                return fn();
            } catch (const std::exception& e) {
                CheckResult crash{name, true, false, Json{{"exception", e.what()}}};
                return crash;
            }
        }));
    }

    SuiteReport report;
    report.all_hard_passed = true;
    for (auto& f : futures) {
        CheckResult r = f.get();
        if (r.hard && !r.passed) report.all_hard_passed = false;
        report.results.push_back(std::move(r));
    }
    return report;
}

}  // namespace cnls
