// Experiment runner: one config in, a CSV time series and a JSON run
// manifest out.
//
// CSV columns, in order: t, mass, energy, h1, hs_{s} for each configured s,
// e1, e2, lp_{N} for each dyadic block ≤ band. Missing values (e2 when the
// equation has no higher energy) are empty cells. All numbers print with
// %.17g, so identical config + build gives byte-identical output.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cnls/config.hpp"
#include "cnls/diagnostics.hpp"
#include "cnls/energy.hpp"
#include "cnls/simulation_io.hpp"

namespace cnls {

struct RunResult {
    std::filesystem::path csv_path;
    std::filesystem::path manifest_path;
    long records_written = 0;
    bool aborted = false;
    double abort_time = 0.0;
    std::optional<DerivedConstants> constants;
};

inline Json constants_to_json(const DerivedConstants& c) {
    auto prov = [](const CalibrationProvenance& p) {
        return Json{{"band", p.band},
                    {"n_fields", p.n_fields},
                    {"fd_step", p.fd_step},
                    {"fd_dt", p.fd_dt},
                    {"max_residual", p.max_residual},
                    {"seeds", p.seeds}};
    };
    return Json{{"c_psi", c.c_psi},
                {"c_quintic", c.c_quintic},
                {"psi_provenance", prov(c.psi_provenance)},
                {"quintic_provenance", prov(c.quintic_provenance)}};
}

inline RunResult run_simulation(const SimulationConfig& cfg,
                                const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    RunResult result;
    result.csv_path = out_dir / cfg.csv_name;
    result.manifest_path = out_dir / cfg.manifest_name;

    const SmoothingParams params(cfg.s_values.front(), cfg.threshold);
    DerivedConstants consts;
    if (cfg.compute_e2) {
        consts = calibrate_all(params);
        result.constants = consts;
    }

    DiagnosticsOptions diag_opt;
    diag_opt.hs_values = cfg.s_values;
    diag_opt.compute_e2 = cfg.compute_e2;

    SpectralField u0 = build_initial_data(cfg);
    StepperConfig step_cfg = make_stepper_config(cfg.equation, cfg.dt);

    // stiffness diagnostics for the manifest
    const double dt_m_sq = cfg.dt * static_cast<double>(cfg.band_limit) *
                           static_cast<double>(cfg.band_limit);
    double g_inf = 0.0;
    {
        const std::size_t P = stepper_grid_size(cfg.equation, step_cfg, cfg.band_limit);
        auto g = nonlinear_phase(cfg.equation, synthesize(u0, P), cfg.band_limit);
        for (double v : g) g_inf = std::max(g_inf, std::abs(v));
    }
    const bool accuracy_warning = cfg.dt * g_inf > 0.5;

    std::ofstream csv(result.csv_path);
    if (!csv) throw std::runtime_error("cannot open " + result.csv_path.string());
    csv << csv_header(cfg);

    auto flush_manifest = [&](bool aborted, double abort_time) {
        Json manifest{{"schema_version", 1},
                      {"config", cfg.echo},
                      {"build", build_info()},
                      {"records_written", result.records_written},
                      {"stiffness", {{"dt_band_sq", dt_m_sq},
                                     {"g_sup", g_inf},
                                     {"accuracy_warning", accuracy_warning}}},
                      {"aborted", aborted}};
        if (aborted) manifest["abort_time"] = abort_time;
        if (result.constants)
            manifest["derived_constants"] = constants_to_json(*result.constants);
        std::ofstream mf(result.manifest_path);
        mf << manifest.dump(2) << "\n";
    };

    try {
        evolve(cfg.equation, u0, step_cfg, cfg.T, cfg.record_stride,
               [&](double t, const SpectralField& u) {
                   DiagnosticsRecord rec = compute_diagnostics(
                       cfg.equation, params, consts, u, t, diag_opt);
                   if (!rec.all_finite()) throw BlowUpError(t);
                   csv << csv_row(rec, cfg);
                   ++result.records_written;
               });
    } catch (const BlowUpError& e) {
        csv.flush();
        result.aborted = true;
        result.abort_time = e.time();
        flush_manifest(true, e.time());
        throw;
    }
    csv.flush();
    flush_manifest(false, 0.0);
    return result;
}

}  // namespace cnls
