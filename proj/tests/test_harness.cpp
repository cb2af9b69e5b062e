#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cnls/fit.hpp"
#include "cnls/simulation.hpp"

using namespace cnls;

namespace {

Json hartree_plane_wave_config() {
    return Json{
        {"band_limit", 16},
        {"dt", 1e-3},
        {"T", 0.2},
        {"record_stride", 20},
        {"smoothing", {{"s_values", Json::array({2.0})}, {"threshold", 8.0}}},
        {"equation",
         {{"variant", "hartree"}, {"v_hat", {{"constant", 1.0}, {"extent", 32}}}}},
        {"initial_data",
         {{"family", "plane_wave"}, {"mode", 1}, {"amplitude", 1.0}}},
        {"compute_e2", false},
    };
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("fit recovers exact power laws") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.25 * i;
        series.emplace_back(t, std::sqrt(1.0 + t));
    }
    GrowthFit fit = fit_growth(series, 0.0, 10.0);
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.residual < 1e-12);
}

TEST_CASE("fit of a constant series is flat") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i <= 20; ++i) series.emplace_back(0.5 * i, 3.25);
    GrowthFit fit = fit_growth(series, 0.0, 10.0);
    CHECK(fit.exponent == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.constant == doctest::Approx(3.25));
}

TEST_CASE("fit tolerates multiplicative noise") {
    std::mt19937_64 rng(5);
    auto unit = [&rng] {
        return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
    };
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.5 * i;
        const double noise = 1.0 + 0.01 * (2.0 * unit() - 1.0);
        series.emplace_back(t, (1.0 + t) * noise);
    }
    GrowthFit fit = fit_growth(series, 0.0, 50.0);
    CHECK(fit.exponent > 0.9);
    CHECK(fit.exponent < 1.1);
}

TEST_CASE("fit refuses short windows and nonpositive values") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i < 5; ++i) series.emplace_back(i, 1.0);
    CHECK_THROWS_AS(fit_growth(series, 0.0, 10.0), InvalidArgument);
    series.emplace_back(5.0, -1.0);
    for (int i = 6; i < 12; ++i) series.emplace_back(i, 1.0);
    CHECK_THROWS_AS(fit_growth(series, 0.0, 12.0), InvalidArgument);
}

TEST_CASE("fit is scale invariant in the exponent") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i <= 30; ++i) {
        const double t = 0.3 * i;
        series.emplace_back(t, std::pow(1.0 + t, 0.7));
    }
    GrowthFit a = fit_growth(series, 0.0, 9.0);
    for (auto& [t, v] : series) v *= 137.0;
    GrowthFit b = fit_growth(series, 0.0, 9.0);
    CHECK(std::abs(a.exponent - b.exponent) < 1e-12);
    CHECK(b.constant == doctest::Approx(137.0 * a.constant).epsilon(1e-10));
}

TEST_CASE("config validation names the offending field") {
    Json cfg = hartree_plane_wave_config();
    cfg.erase("dt");
    try {
        parse_simulation_config(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "dt");
    }

    Json bad = hartree_plane_wave_config();
    bad["smoothing"]["threshold"] = 0.5;
    CHECK_THROWS_AS(parse_simulation_config(bad), ConfigError);

    Json badvar = hartree_plane_wave_config();
    badvar["equation"]["variant"] = "septic";
    CHECK_THROWS_AS(parse_simulation_config(badvar), ConfigError);
}

TEST_CASE("vhat entries must satisfy the potential hypotheses") {
    Json cfg = hartree_plane_wave_config();
    cfg["equation"]["v_hat"] = Json{{"entries", Json::array({Json::array({0, 1.0}),
                                                             Json::array({1, 2.0}),
                                                             Json::array({-1, 2.0})})}};
    CHECK_THROWS_AS(parse_simulation_config(cfg), ConfigError);  // |V̂(1)| > V̂(0)
}

TEST_CASE("lambda tables are closed to real-valued functions") {
    Json cfg = hartree_plane_wave_config();
    cfg["equation"] = Json{
        {"variant", "potential_cubic"},
        {"lambda",
         {{"entries", Json::array({Json::array({0, 2.0}), Json::array({1, 0.3, 0.1})})}}}};
    SimulationConfig parsed = parse_simulation_config(cfg);
    const auto& lam = std::get<PotentialCubic>(parsed.equation).lambda;
    CHECK(std::abs(lam.c(-1) - std::conj(lam.c(1))) < 1e-15);
}

TEST_CASE("inhomogeneous lambda must be nonnegative") {
    Json cfg = hartree_plane_wave_config();
    cfg["equation"] = Json{
        {"variant", "inhomogeneous_cubic"},
        {"lambda",
         {{"entries", Json::array({Json::array({0, 0.1}), Json::array({1, 1.0}),
                                   Json::array({-1, 1.0})})}}}};
    CHECK_THROWS_AS(parse_simulation_config(cfg), ConfigError);  // 0.1 + 2cos x < 0
}

TEST_CASE("smoothness surrogate rejects rough lambda tables") {
    Json cfg = hartree_plane_wave_config();
    cfg["equation"] = Json{
        {"variant", "potential_cubic"},
        {"lambda",
         {{"entries", Json::array({Json::array({0, 1.0}), Json::array({12, 0.5}),
                                   Json::array({-12, 0.5})})}}}};
    CHECK_THROWS_AS(parse_simulation_config(cfg), ConfigError);  // 12 > band/2
}

TEST_CASE("simulation writes the documented csv schema") {
    SimulationConfig cfg = parse_simulation_config(hartree_plane_wave_config());
    const auto dir = std::filesystem::temp_directory_path() / "cnls_test_run";
    std::filesystem::remove_all(dir);
    RunResult res = run_simulation(cfg, dir);
    CHECK(res.records_written == 11);

    std::ifstream csv(res.csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,mass,energy,h1,hs_2,e1,e2,lp_1,lp_2,lp_4,lp_8,lp_16");

    std::string first;
    std::getline(csv, first);
    // plane wave mode 1 amplitude 1: mass = 2π, h1 = √2, e2 cell empty
    std::stringstream ss(first);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 12);
    CHECK(std::stod(cells[0]) == 0.0);
    CHECK(std::stod(cells[1]) == doctest::Approx(2.0 * M_PI));
    CHECK(std::stod(cells[3]) == doctest::Approx(std::sqrt(2.0)));
    CHECK(cells[6].empty());
    CHECK(std::stod(cells[7]) == doctest::Approx(1.0));  // lp_1 holds the mode

    CHECK(std::filesystem::exists(res.manifest_path));
    Json manifest = Json::parse(slurp(res.manifest_path));
    CHECK(manifest["aborted"] == false);
    CHECK(manifest["records_written"] == 11);
    CHECK(manifest["stiffness"]["accuracy_warning"] == false);
    std::filesystem::remove_all(dir);
}

TEST_CASE("identical config gives byte-identical csv") {
    SimulationConfig cfg = parse_simulation_config(hartree_plane_wave_config());
    const auto dir1 = std::filesystem::temp_directory_path() / "cnls_det_1";
    const auto dir2 = std::filesystem::temp_directory_path() / "cnls_det_2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    RunResult r1 = run_simulation(cfg, dir1);
    RunResult r2 = run_simulation(cfg, dir2);
    CHECK(slurp(r1.csv_path) == slurp(r2.csv_path));
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("hartree plane wave run has constant norm columns with e2") {
    Json j = hartree_plane_wave_config();
    j["compute_e2"] = true;
    SimulationConfig cfg = parse_simulation_config(j);
    const auto dir = std::filesystem::temp_directory_path() / "cnls_pw_run";
    std::filesystem::remove_all(dir);
    RunResult res = run_simulation(cfg, dir);
    REQUIRE(res.constants.has_value());
    CHECK(res.constants->c_psi == doctest::Approx(0.5).epsilon(1e-6));

    std::ifstream csv(res.csv_path);
    std::string line;
    std::getline(csv, line);  // header
    std::vector<double> h1s, e2s;
    while (std::getline(csv, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        h1s.push_back(std::stod(cells[3]));
        e2s.push_back(std::stod(cells[6]));
    }
    for (double v : h1s) CHECK(v == doctest::Approx(h1s.front()).epsilon(1e-10));
    // single plane wave: E² = E¹ = 1 for mode 1 below threshold
    for (double v : e2s) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    std::filesystem::remove_all(dir);
}

TEST_CASE("blow-up aborts flush a flagged manifest") {
    Json j = hartree_plane_wave_config();
    // cubic with huge amplitude and dt → overflow to inf in a few steps
    j["equation"] = Json{{"variant", "power_nls"}, {"k", 8}};
    j["dt"] = 10.0;
    j["T"] = 1000.0;
    j["record_stride"] = 1;
    j["initial_data"] = Json{{"family", "random"}, {"seed", 1}, {"amplitude", 1e120}};
    SimulationConfig cfg = parse_simulation_config(j);
    const auto dir = std::filesystem::temp_directory_path() / "cnls_blowup";
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(run_simulation(cfg, dir), BlowUpError);
    Json manifest = Json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["aborted"] == true);
    CHECK(manifest.contains("abort_time"));
    std::filesystem::remove_all(dir);
}
