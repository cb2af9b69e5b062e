// Simulation configuration: JSON in, validated values out.
//
// The schema is documented in docs/config_schema.json. V̂ and λ arrive as
// explicit integer-indexed coefficient tables so runs are bit-exact
// reproducible from the config file alone.

#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "cnls/dynamics.hpp"
#include "cnls/errors.hpp"
#include "cnls/initial_data.hpp"

namespace cnls {

using Json = nlohmann::json;

struct InitialDataSpec {
    std::string family;  // plane_wave | two_mode | random | smooth_random
    std::uint64_t seed = 0;
    double amplitude = 1.0;
    double phase = 0.0;
    int mode = 1;
    std::vector<int> modes{1, 2};
    double smooth_rate = 1.0;
    std::optional<double> normalize_h1;
};

struct SimulationConfig {
    EquationSpec equation;
    std::string variant_name;
    int band_limit = 0;
    double dt = 0.0;
    double T = 0.0;
    long record_stride = 1;
    std::vector<double> s_values;  // H^s columns; s_values[0] drives E¹/E²
    double threshold = 0.0;        // the smoothing N
    bool compute_e2 = false;
    InitialDataSpec initial;
    std::string csv_name = "timeseries.csv";
    std::string manifest_name = "manifest.json";
    Json echo;  // the parsed config, echoed into the manifest
};

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + key, "missing");
    return *it;
}

inline double require_number(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_number()) throw ConfigError(where + key, "must be a number");
    return v.get<double>();
}

// λ table: entries [[n, re] or [n, re, im], ...]; Hermitian closure is
// enforced so λ is real-valued.
inline SpectralField parse_lambda_table(const Json& j, const std::string& where) {
    const Json& entries = require(j, "entries", where);
    if (!entries.is_array() || entries.empty())
        throw ConfigError(where + "entries", "must be a nonempty array");
    int band = 0;
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() < 2)
            throw ConfigError(where + "entries", "each entry is [n, re] or [n, re, im]");
        band = std::max(band, std::abs(e[0].get<int>()));
    }
    SpectralField lam(band);
    for (const auto& e : entries) {
        const int n = e[0].get<int>();
        const double re = e[1].get<double>();
        const double im = e.size() > 2 ? e[2].get<double>() : 0.0;
        lam.c(n) = Complex{re, im};
    }
    for (int n = 1; n <= band; ++n) {
        const Complex a = lam.c(n), b = lam.c(-n);
        if (a == Complex{0.0, 0.0} && b != Complex{0.0, 0.0})
            lam.c(n) = std::conj(b);
        else if (b == Complex{0.0, 0.0} && a != Complex{0.0, 0.0})
            lam.c(-n) = std::conj(a);
        else if (std::abs(b - std::conj(a)) > 1e-12)
            throw ConfigError(where + "entries",
                              "λ must be real-valued (entries at ±" + std::to_string(n) +
                                  " are not conjugate)");
    }
    return lam;
}

inline VhatTable parse_vhat(const Json& j, int band, const std::string& where) {
    if (j.contains("constant")) {
        const double value = require_number(j, "constant", where);
        int extent = 2 * band;
        if (j.contains("extent")) extent = j.at("extent").get<int>();
        if (extent < 0 || extent > 2 * band)
            throw ConfigError(where + "extent", "must lie in [0, 2·band_limit]");
        return VhatTable::constant(value, extent);
    }
    const Json& entries = require(j, "entries", where);
    if (!entries.is_array() || entries.empty())
        throw ConfigError(where + "entries", "must be a nonempty array of [n, value]");
    int extent = 0;
    for (const auto& e : entries) extent = std::max(extent, std::abs(e[0].get<int>()));
    if (extent > 2 * band)
        throw ConfigError(where + "entries", "table exceeds 2·band_limit");
    std::vector<double> values(2 * static_cast<std::size_t>(extent) + 1, 0.0);
    for (const auto& e : entries)
        values[static_cast<std::size_t>(e[0].get<int>() + extent)] = e[1].get<double>();
    try {
        return VhatTable::from_values(extent, std::move(values));
    } catch (const InvalidArgument& err) {
        throw ConfigError(where + "entries", err.what());
    }
}

inline void check_lambda_smoothness(const SpectralField& lam, int band,
                                    const std::string& where) {
    if (lam.band() > band)
        throw ConfigError(where, "λ table exceeds the band limit");
    for (int n = -lam.band(); n <= lam.band(); ++n)
        if (std::abs(n) > band / 2 && std::abs(lam.c(n)) >= 1e-12)
            throw ConfigError(where,
                              "λ is not smooth at this band: coefficient at n = " +
                                  std::to_string(n) + " is above 1e-12 past half the band");
}

inline void check_lambda_nonnegative(const SpectralField& lam, const std::string& where) {
    const std::size_t P = next_fast_size(8 * static_cast<std::size_t>(lam.band()) + 9);
    PhysicalSamples s = synthesize(lam, P);
    for (const auto& v : s.values)
        if (v.real() < -1e-12)
            throw ConfigError(where, "λ(x) must be nonnegative on the grid");
}

}  // namespace detail

inline SimulationConfig parse_simulation_config(const Json& j) {
    SimulationConfig cfg;
    cfg.echo = j;

    cfg.band_limit = static_cast<int>(detail::require_number(j, "band_limit", ""));
    if (cfg.band_limit < 1 || cfg.band_limit > 4096)
        throw ConfigError("band_limit", "must lie in [1, 4096]");
    cfg.dt = detail::require_number(j, "dt", "");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw ConfigError("dt", "must be positive and finite");
    cfg.T = detail::require_number(j, "T", "");
    if (!(cfg.T > 0.0)) throw ConfigError("T", "must be positive");
    cfg.record_stride = static_cast<long>(detail::require_number(j, "record_stride", ""));
    if (cfg.record_stride < 1) throw ConfigError("record_stride", "must be ≥ 1");

    const Json& sm = detail::require(j, "smoothing", "");
    const Json& sv = detail::require(sm, "s_values", "smoothing.");
    if (!sv.is_array() || sv.empty())
        throw ConfigError("smoothing.s_values", "must be a nonempty array");
    for (const auto& s : sv) {
        const double v = s.get<double>();
        if (!(v >= 1.0)) throw ConfigError("smoothing.s_values", "every s must be ≥ 1");
        cfg.s_values.push_back(v);
    }
    cfg.threshold = detail::require_number(sm, "threshold", "smoothing.");
    if (!(cfg.threshold > 1.0)) throw ConfigError("smoothing.threshold", "must be > 1");

    const Json& eq = detail::require(j, "equation", "");
    const std::string variant = detail::require(eq, "variant", "equation.").get<std::string>();
    cfg.variant_name = variant;
    if (variant == "power_nls") {
        const int k = static_cast<int>(detail::require_number(eq, "k", "equation."));
        if (k < 1 || k > 8) throw ConfigError("equation.k", "must lie in [1, 8]");
        cfg.equation = PowerNls{k};
    } else if (variant == "hartree") {
        cfg.equation = Hartree{detail::parse_vhat(detail::require(eq, "v_hat", "equation."),
                                                  cfg.band_limit, "equation.v_hat.")};
    } else if (variant == "potential_cubic") {
        SpectralField lam = detail::parse_lambda_table(
            detail::require(eq, "lambda", "equation."), "equation.lambda.");
        detail::check_lambda_smoothness(lam, cfg.band_limit, "equation.lambda");
        cfg.equation = PotentialCubic{std::move(lam)};
    } else if (variant == "inhomogeneous_cubic") {
        SpectralField lam = detail::parse_lambda_table(
            detail::require(eq, "lambda", "equation."), "equation.lambda.");
        detail::check_lambda_smoothness(lam, cfg.band_limit, "equation.lambda");
        detail::check_lambda_nonnegative(lam, "equation.lambda");
        cfg.equation = InhomogeneousCubic{std::move(lam)};
    } else {
        throw ConfigError("equation.variant", "unknown variant '" + variant + "'");
    }

    cfg.compute_e2 = std::holds_alternative<Hartree>(cfg.equation) ||
                     std::holds_alternative<PotentialCubic>(cfg.equation);
    if (j.contains("compute_e2")) cfg.compute_e2 = j.at("compute_e2").get<bool>();
    if (cfg.compute_e2 && !(std::holds_alternative<Hartree>(cfg.equation) ||
                            std::holds_alternative<PotentialCubic>(cfg.equation)))
        throw ConfigError("compute_e2",
                          "no higher modified energy exists for this equation");

    const Json& init = detail::require(j, "initial_data", "");
    cfg.initial.family = detail::require(init, "family", "initial_data.").get<std::string>();
    if (init.contains("seed")) cfg.initial.seed = init.at("seed").get<std::uint64_t>();
    if (init.contains("amplitude"))
        cfg.initial.amplitude = init.at("amplitude").get<double>();
    if (init.contains("phase")) cfg.initial.phase = init.at("phase").get<double>();
    if (init.contains("mode")) cfg.initial.mode = init.at("mode").get<int>();
    if (init.contains("modes")) {
        cfg.initial.modes.clear();
        for (const auto& m : init.at("modes")) cfg.initial.modes.push_back(m.get<int>());
        if (cfg.initial.modes.size() != 2)
            throw ConfigError("initial_data.modes", "expects exactly two modes");
    }
    if (init.contains("smooth_rate"))
        cfg.initial.smooth_rate = init.at("smooth_rate").get<double>();
    if (init.contains("normalize_h1"))
        cfg.initial.normalize_h1 = init.at("normalize_h1").get<double>();
    const std::string& fam = cfg.initial.family;
    if (fam != "plane_wave" && fam != "two_mode" && fam != "random" &&
        fam != "smooth_random")
        throw ConfigError("initial_data.family", "unknown family '" + fam + "'");

    if (j.contains("outputs")) {
        const Json& out = j.at("outputs");
        if (out.contains("csv")) cfg.csv_name = out.at("csv").get<std::string>();
        if (out.contains("manifest"))
            cfg.manifest_name = out.at("manifest").get<std::string>();
    }
    return cfg;
}

inline SpectralField build_initial_data(const SimulationConfig& cfg) {
    const InitialDataSpec& d = cfg.initial;
    SpectralField f(cfg.band_limit);
    if (d.family == "plane_wave") {
        f = plane_wave_data(cfg.band_limit, d.mode, std::polar(d.amplitude, d.phase));
    } else if (d.family == "two_mode") {
        f = two_mode_data(cfg.band_limit, d.modes[0], d.modes[1],
                          std::polar(d.amplitude, d.phase));
    } else if (d.family == "random") {
        f = seeded_random_field(cfg.band_limit, d.seed, d.amplitude);
    } else {
        f = smooth_random_field(cfg.band_limit, d.seed, d.amplitude, d.smooth_rate);
    }
    if (d.normalize_h1) f = normalized_h1(std::move(f), *d.normalize_h1);
    return f;
}

}  // namespace cnls
