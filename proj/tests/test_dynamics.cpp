#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnls/dynamics.hpp"
#include "cnls/initial_data.hpp"

using namespace cnls;

namespace {

SpectralField real_even_lambda(int band, double mean, double c1) {
    SpectralField lam(band);
    lam.c(0) = mean;
    if (band >= 1) {
        lam.c(1) = c1 / 2.0;
        lam.c(-1) = c1 / 2.0;  // λ = mean + c1·cos x
    }
    return lam;
}

}  // namespace

TEST_CASE("mass closed forms") {
    SpectralField f(2);
    f.c(1) = 2.0;
    CHECK(mass(f) == doctest::Approx(8.0 * M_PI));
    CHECK(mass(SpectralField(4)) == 0.0);
}

TEST_CASE("mass equals grid integral") {
    SpectralField f = seeded_random_field(10, 77, 0.8);
    PhysicalSamples s = synthesize(f, 64);
    double grid = 0.0;
    for (const auto& z : s.values) grid += std::norm(z);
    grid *= 2.0 * M_PI / static_cast<double>(s.grid_size());
    CHECK(mass(f) == doctest::Approx(grid).epsilon(1e-12));
}

TEST_CASE("energy closed forms on plane waves") {
    SpectralField u(4);
    u.c(1) = 1.0;

    EquationSpec quintic = PowerNls{2};
    CHECK(energy(quintic, u) == doctest::Approx(M_PI + M_PI / 3.0).epsilon(1e-13));

    EquationSpec hartree = Hartree{VhatTable::constant(1.0, 8)};
    CHECK(energy(hartree, u) == doctest::Approx(M_PI + M_PI / 2.0).epsilon(1e-13));

    EquationSpec potential = PotentialCubic{real_even_lambda(2, 2.0, 0.0)};
    CHECK(energy(potential, u) ==
          doctest::Approx(M_PI + M_PI / 2.0 + 2.0 * M_PI).epsilon(1e-13));

    EquationSpec inhomog = InhomogeneousCubic{real_even_lambda(2, 2.0, 0.0)};
    CHECK(energy(inhomog, u) == doctest::Approx(M_PI + M_PI).epsilon(1e-13));
}

TEST_CASE("nonlinear phase closed forms") {
    SpectralField u(4);
    u.c(1) = 1.0;
    const std::size_t P = 32;
    PhysicalSamples s = synthesize(u, P);

    EquationSpec quintic = PowerNls{2};
    auto g = nonlinear_phase(quintic, s, 4);
    for (double v : g) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));

    EquationSpec hartree = Hartree{VhatTable::constant(0.7, 8)};
    auto gh = nonlinear_phase(hartree, s, 4);
    for (double v : gh) CHECK(v == doctest::Approx(0.7).epsilon(1e-13));

    EquationSpec inhomog = InhomogeneousCubic{real_even_lambda(2, 1.5, 0.0)};
    PhysicalSamples zero;
    zero.values.assign(P, Complex{0.0, 0.0});
    auto gz = nonlinear_phase(inhomog, zero, 4);
    for (double v : gz) CHECK(v == 0.0);
}

TEST_CASE("plane wave closed form under the stepper") {
    // α e^{inx} evolves to α e^{i(nx − n²t) − i|α|^{2k} t} exactly
    const Complex alpha{0.8, 0.3};
    const int n = 3;
    const int k = 2;
    EquationSpec eq = PowerNls{k};
    SpectralField u = plane_wave_data(8, n, alpha);
    StepperConfig cfg = make_stepper_config(eq, 1e-2);
    const double T = 1.0;
    SpectralField v = evolve(eq, u, cfg, T, 0);
    const double phase = (static_cast<double>(n) * n + std::pow(std::norm(alpha), k)) * T;
    const Complex expect = alpha * std::polar(1.0, -phase);
    for (int m = -8; m <= 8; ++m) {
        const Complex want = (m == n) ? expect : Complex{0.0, 0.0};
        CHECK(std::abs(v.c(m) - want) < 1e-12);
    }
}

TEST_CASE("zero field is a fixed point") {
    EquationSpec eq = PowerNls{1};
    SpectralField u(6);
    StepperConfig cfg = make_stepper_config(eq, 1e-2);
    SpectralField v = evolve(eq, u, cfg, 0.5, 0);
    CHECK(v.l2_norm() == 0.0);
}

TEST_CASE("strang splitting is second order") {
    EquationSpec eq = PowerNls{2};
    SpectralField u0 = smooth_random_field(16, 5, 0.8);
    const double T = 0.5;

    auto run = [&](double dt) {
        return evolve(eq, u0, make_stepper_config(eq, dt), T, 0);
    };
    SpectralField a = run(2e-3);
    SpectralField b = run(1e-3);
    SpectralField c = run(5e-4);
    const double e1 = (a - b).l2_norm();
    const double e2 = (b - c).l2_norm();
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("hartree plane wave regression against the closed form") {
    const Complex alpha{1.0, 0.0};
    const int n = 2;
    VhatTable vh = VhatTable::constant(1.0, 16);
    EquationSpec eq = Hartree{vh};
    SpectralField u0 = hartree_plane_wave(alpha, n, vh(0), 0.0, 16);
    StepperConfig cfg = make_stepper_config(eq, 1e-3);

    double worst = 0.0;
    evolve(eq, u0, cfg, 1.0, 100, [&](double t, const SpectralField& u) {
        SpectralField ref = hartree_plane_wave(alpha, n, vh(0), t, 16);
        worst = std::max(worst, (u - ref).l2_norm());
    });
    CHECK(worst < 1e-10);
}

TEST_CASE("hartree plane wave basics") {
    CHECK(std::abs(hartree_plane_wave({0.5, 0.5}, 3, 1.0, 0.0, 8).c(3) -
                   Complex{0.5, 0.5}) < 1e-15);
    // α = 1, n = 1, V̂(0) = 1, t = π → c₁ = e^{−2πi} = 1
    CHECK(std::abs(hartree_plane_wave({1.0, 0.0}, 1, 1.0, M_PI, 8).c(1) -
                   Complex{1.0, 0.0}) < 1e-12);
    // H^s norm constant in t
    for (double t : {0.0, 0.7, 3.1}) {
        SpectralField f = hartree_plane_wave({0.3, 0.4}, 5, 2.0, t, 8);
        CHECK(sobolev_norm(f, 2.0) == doctest::Approx(0.5 * std::pow(26.0, 1.0)));
    }
}

TEST_CASE("mass drift stays tiny over long runs") {
    EquationSpec eq = PowerNls{1};
    SpectralField u0 = seeded_random_field(64, 21, 0.3);
    StepperConfig cfg = make_stepper_config(eq, 1e-3);
    const double m0 = mass(u0);
    double worst = 0.0;
    evolve(eq, u0, cfg, 10.0, 1000, [&](double, const SpectralField& u) {
        worst = std::max(worst, std::abs(mass(u) - m0) / m0);
    });
    CHECK(worst < 1e-8);
}

TEST_CASE("time reversibility") {
    EquationSpec eq = PowerNls{2};
    SpectralField u0 = smooth_random_field(24, 31, 0.5);
    StepperConfig fwd = make_stepper_config(eq, 1e-3);
    StepperConfig bwd = make_stepper_config(eq, -1e-3);
    SpectralField mid = evolve(eq, u0, fwd, 1.0, 0);
    SpectralField back = evolve(eq, mid, bwd, -1.0, 0);
    CHECK((back - u0).l2_norm() < 1e-8);
}

TEST_CASE("gauge reduction to the cubic equation") {
    const double lambda0 = 2.0;
    EquationSpec cubic = PowerNls{1};
    EquationSpec potential = PotentialCubic{real_even_lambda(0, lambda0, 0.0)};
    SpectralField u0 = seeded_random_field(24, 8, 0.6);

    StepperConfig ccfg = make_stepper_config(cubic, 1e-3);
    StepperConfig pcfg = make_stepper_config(potential, 1e-3);

    std::vector<std::pair<double, SpectralField>> cubic_records;
    evolve(cubic, u0, ccfg, 1.0, 200, [&](double t, const SpectralField& u) {
        cubic_records.emplace_back(t, u);
    });
    std::size_t idx = 0;
    double worst = 0.0;
    evolve(potential, u0, pcfg, 1.0, 200, [&](double t, const SpectralField& u) {
        SpectralField expect = gauge_transform(cubic_records[idx].second, lambda0, t);
        worst = std::max(worst, (u - expect).l2_norm());
        ++idx;
    });
    CHECK(worst < 1e-10);
}

TEST_CASE("gauge transform basics") {
    SpectralField f = seeded_random_field(8, 2, 1.0);
    SpectralField g = gauge_transform(f, 3.0, 0.0);
    for (int n = -8; n <= 8; ++n) CHECK(std::abs(g.c(n) - f.c(n)) < 1e-15);
    SpectralField h = gauge_transform(f, 3.0, 1.7);
    for (double s : {0.0, 1.0, 2.5})
        CHECK(sobolev_norm(h, s) == doctest::Approx(sobolev_norm(f, s)).epsilon(1e-13));
}

TEST_CASE("evolve is bitwise deterministic") {
    EquationSpec eq = Hartree{VhatTable::constant(1.0, 32)};
    SpectralField u0 = seeded_random_field(16, 12, 0.5);
    StepperConfig cfg = make_stepper_config(eq, 1e-3);
    SpectralField a = evolve(eq, u0, cfg, 0.3, 0);
    SpectralField b = evolve(eq, u0, cfg, 0.3, 0);
    for (int n = -16; n <= 16; ++n) {
        CHECK(a.c(n).real() == b.c(n).real());
        CHECK(a.c(n).imag() == b.c(n).imag());
    }
}

TEST_CASE("blow-up guard reports the offending time") {
    EquationSpec eq = PowerNls{1};
    SpectralField u0(4);
    u0.c(0) = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    StepperConfig cfg = make_stepper_config(eq, 1e-2);
    CHECK_THROWS_AS(evolve(eq, u0, cfg, 0.1, 0), BlowUpError);
}

TEST_CASE("record stride includes endpoints") {
    EquationSpec eq = PowerNls{1};
    SpectralField u0 = plane_wave_data(4, 1, {1.0, 0.0});
    StepperConfig cfg = make_stepper_config(eq, 0.01);
    std::vector<double> times;
    evolve(eq, u0, cfg, 0.05, 2, [&](double t, const SpectralField&) {
        times.push_back(t);
    });
    REQUIRE(times.size() == 4);
    CHECK(times.front() == 0.0);
    CHECK(times[1] == doctest::Approx(0.02));
    CHECK(times[2] == doctest::Approx(0.04));
    CHECK(times.back() == doctest::Approx(0.05));
}
