// cnls — pseudospectral simulation and verification toolkit for periodic
// NLS-type equations.
//
// Subcommands:
//   simulate --config F --out DIR
//   verify --suite F --out DIR
//   certify-bound --s S --threshold N --band M
//   probe-resonance --base "6,-2,5,-3,1,-7" --scale K --s S
//   fit --input CSV --column NAME --t-min A --t-max B
//
// Exit codes: 0 success, 1 usage/config error, 2 verification failure,
// 3 numerical abort.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cnls/simulation.hpp"
#include "cnls/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNumerical = 3;

cnls::Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cnls::ConfigError(path, "cannot open file");
    try {
        return cnls::Json::parse(in);
    } catch (const std::exception& e) {
        throw cnls::ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
}

std::array<std::int64_t, 6> parse_base_tuple(const std::string& text) {
    std::array<std::int64_t, 6> base{};
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 6) throw cnls::InvalidArgument("base tuple needs exactly 6 entries");
        base[i++] = std::stoll(item);
    }
    if (i != 6) throw cnls::InvalidArgument("base tuple needs exactly 6 entries");
    return base;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    cnls::SimulationConfig cfg = cnls::parse_simulation_config(load_json(config_path));
    try {
        cnls::RunResult res = cnls::run_simulation(cfg, out_dir);
        std::cout << "wrote " << res.csv_path.string() << " (" << res.records_written
                  << " records) and " << res.manifest_path.string() << "\n";
        return kExitOk;
    } catch (const cnls::BlowUpError& e) {
        std::cerr << "numerical abort: " << e.what() << " (partial output flushed)\n";
        return kExitNumerical;
    }
}

int run_verify(const std::string& suite_path, const std::string& out_dir) {
    cnls::SuiteOptions opt;
    if (!suite_path.empty()) {
        cnls::Json j = load_json(suite_path);
        if (j.contains("checks"))
            for (const auto& c : j.at("checks")) opt.checks.push_back(c.get<std::string>());
        if (j.contains("hooks") && j.at("hooks").contains("flip_psi_sign"))
            opt.flip_psi_sign = j.at("hooks").at("flip_psi_sign").get<bool>();
    }
    cnls::SuiteReport report = cnls::verify_claims(opt);

    std::filesystem::create_directories(out_dir);
    const auto report_path = std::filesystem::path(out_dir) / "verification_report.json";
    std::ofstream out(report_path);
    out << report.to_json().dump(2) << "\n";

    for (const auto& r : report.results)
        std::cout << (r.passed ? "[pass] " : (r.hard ? "[FAIL] " : "[report] ")) << r.name
                  << "\n";
    std::cout << "report: " << report_path.string() << "\n";
    return report.all_hard_passed ? kExitOk : kExitVerification;
}

int run_certify(double s, double threshold, int band) {
    cnls::SmoothingParams p(s, threshold);
    cnls::VhatTable vh = cnls::VhatTable::constant(1.0, 2 * band);
    cnls::BoundReport r = cnls::certify_psi_bound(p, vh, band);
    cnls::Json j{{"s", r.s},
                 {"threshold", r.threshold},
                 {"band", r.band},
                 {"sup_ratio", r.sup_ratio},
                 {"witness", r.witness},
                 {"configs_checked", r.configs_checked},
                 {"majorant_form", "theta(N1*)theta(N2*)N3*N4*/(N1*)^2"},
                 {"v_hat", "constant 1 (delta potential)"}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int run_probe(const std::string& base_text, std::int64_t scale, double s) {
    cnls::ResonanceProbe probe = cnls::probe_gamma6(parse_base_tuple(base_text), scale, s);
    cnls::Json j{{"tuple", probe.tuple},
                 {"denominator", probe.denominator},
                 {"numerator", probe.numerator},
                 {"classification", cnls::to_string(probe.classification)}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int run_fit(const std::string& csv_path, const std::string& column, double t_min,
            double t_max) {
    std::ifstream in(csv_path);
    if (!in) throw cnls::ConfigError(csv_path, "cannot open file");
    std::string header;
    if (!std::getline(in, header)) throw cnls::ConfigError(csv_path, "empty file");

    std::vector<std::string> names;
    {
        std::stringstream ss(header);
        std::string item;
        while (std::getline(ss, item, ',')) names.push_back(item);
    }
    std::size_t col = names.size();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == column) col = i;
    if (col == names.size())
        throw cnls::ConfigError("column", "no column named '" + column + "'");

    std::vector<std::pair<double, double>> series;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string item;
        std::size_t i = 0;
        double t = 0.0, v = 0.0;
        bool have = false;
        while (std::getline(ss, item, ',')) {
            if (i == 0) t = std::stod(item);
            if (i == col && !item.empty()) {
                v = std::stod(item);
                have = true;
            }
            ++i;
        }
        if (have) series.emplace_back(t, v);
    }
    cnls::GrowthFit fit = cnls::fit_growth(series, t_min, t_max);
    cnls::Json j{{"column", column},   {"alpha", fit.exponent}, {"C", fit.constant},
                 {"t_min", fit.t_min}, {"t_max", fit.t_max},    {"points", fit.points},
                 {"residual_rms", fit.residual}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral NLS simulation and verification toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite_path, base_text, csv_path, column;
    double s = 1.0, threshold = 4.0, t_min = 0.0, t_max = 0.0;
    int band = 32;
    std::int64_t scale = 1;

    auto* simulate = app.add_subcommand("simulate", "run one configured trajectory");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--out", out_dir, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "run the claims verification suite");
    verify->add_option("--suite", suite_path, "JSON suite file (optional)");
    verify->add_option("--out", out_dir, "output directory")->required();

    auto* certify = app.add_subcommand("certify-bound",
                                       "brute-force certification of the psi bound");
    certify->add_option("--s", s, "smoothing exponent s >= 1")->required();
    certify->add_option("--threshold", threshold, "smoothing threshold N > 1")->required();
    certify->add_option("--band", band, "enumeration band M")->required();

    auto* probe = app.add_subcommand("probe-resonance", "Gamma_6 resonance probe");
    probe->add_option("--base", base_text, "comma-separated 6-tuple")->required();
    probe->add_option("--scale", scale, "positive integer scale")->required();
    probe->add_option("--s", s, "exponent s")->required();

    auto* fit = app.add_subcommand("fit", "growth-exponent fit on a CSV column");
    fit->add_option("--input", csv_path, "CSV time series")->required();
    fit->add_option("--column", column, "column name")->required();
    fit->add_option("--t-min", t_min, "window start")->required();
    fit->add_option("--t-max", t_max, "window end")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, out_dir);
        if (verify->parsed()) return run_verify(suite_path, out_dir);
        if (certify->parsed()) return run_certify(s, threshold, band);
        if (probe->parsed()) return run_probe(base_text, scale, s);
        if (fit->parsed()) return run_fit(csv_path, column, t_min, t_max);
    } catch (const cnls::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cnls::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cnls::BlowUpError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
