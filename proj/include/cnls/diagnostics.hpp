// Per-sample diagnostics: conserved quantities, H^s norms, modified energies,
// and the Littlewood–Paley spectrum (ℓ² mass per dyadic block).

#pragma once

#include <map>
#include <optional>

#include "cnls/dynamics.hpp"
#include "cnls/energy.hpp"

namespace cnls {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    std::map<double, double> hs_norms;       // s → ‖u‖_{H^s}
    double e1 = 0.0;
    std::optional<double> e2;                // absent for equations without E²
    std::map<int, double> lp_spectrum;       // dyadic block → Σ_{n∈block} |c_n|²

    bool all_finite() const {
        auto ok = [](double x) { return std::isfinite(x); };
        if (!ok(t) || !ok(mass) || !ok(energy) || !ok(e1)) return false;
        if (e2 && !ok(*e2)) return false;
        for (const auto& [s, v] : hs_norms)
            if (!ok(v)) return false;
        for (const auto& [b, v] : lp_spectrum)
            if (!ok(v)) return false;
        return true;
    }
};

inline std::vector<int> dyadic_blocks_for_band(int band) {
    std::vector<int> blocks;
    for (int b = 1; b <= std::max(1, band); b *= 2) blocks.push_back(b);
    return blocks;
}

inline std::map<int, double> lp_spectrum(const SpectralField& field) {
    std::map<int, double> out;
    for (int b : dyadic_blocks_for_band(field.band())) out[b] = 0.0;
    for (int n = -field.band(); n <= field.band(); ++n)
        out[dyadic_block_of(n)] += std::norm(field.c(n));
    return out;
}

struct DiagnosticsOptions {
    std::vector<double> hs_values{1.0};
    bool compute_e2 = true;
};

inline DiagnosticsRecord compute_diagnostics(const EquationSpec& eq,
                                             const SmoothingParams& params,
                                             const DerivedConstants& consts,
                                             const SpectralField& u, double t,
                                             const DiagnosticsOptions& opt) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.mass = mass(u);
    rec.energy = energy(eq, u);
    rec.hs_norms[1.0] = sobolev_norm(u, 1.0);  // the h1 column is always present
    for (double s : opt.hs_values) rec.hs_norms[s] = sobolev_norm(u, s);
    rec.e1 = e1(params, u);
    if (opt.compute_e2) {
        if (const auto* h = std::get_if<Hartree>(&eq))
            rec.e2 = e2_hartree(params, h->v_hat, u, consts);
        else if (std::holds_alternative<PotentialCubic>(eq))
            rec.e2 = e2_potential(params, u, consts);
    }
    rec.lp_spectrum = lp_spectrum(u);
    return rec;
}

}  // namespace cnls
