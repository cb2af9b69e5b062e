#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnls/initial_data.hpp"
#include "cnls/multilinear.hpp"
#include "cnls/multiplier.hpp"

using namespace cnls;

namespace {
const auto one = [](int, int, int, int) { return 1.0; };
}

TEST_CASE("lambda4 single plane wave") {
    SpectralField u(4);
    u.c(1) = 1.0;
    const Complex v = lambda4(one, u);
    CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-14);
}

TEST_CASE("lambda4 with raw psi on a plane wave vanishes") {
    SmoothingParams p(1.0, 2.0);
    VhatTable vh = VhatTable::constant(1.0, 8);
    SpectralField u(4);
    u.c(1) = 1.0;
    auto psi = [&](int n1, int n2, int n3, int n4) {
        return psi_hartree(p, vh, {n1, n2, n3, n4});
    };
    CHECK(std::abs(lambda4(psi, u)) < 1e-15);
}

TEST_CASE("lambda4 two-mode field matches the reference scan") {
    SpectralField u(4);
    u.c(1) = 1.0;
    u.c(2) = 1.0;
    const Complex fast = lambda4(one, u);
    const Complex slow = lambda4_reference_scan(one, u);
    CHECK(std::abs(fast - slow) < 1e-13);
    // by hand: tuples combining modes 1, 2 in u-slots and −1, −2 in ū-slots
    CHECK(fast.real() == doctest::Approx(6.0));
}

TEST_CASE("lambda4 production loop agrees with the scan on random fields") {
    SmoothingParams p(1.5, 4.0);
    VhatTable vh = VhatTable::constant(1.0, 64);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SpectralField u = seeded_random_field(12, seed, 0.8);
        auto psi = [&](int n1, int n2, int n3, int n4) {
            return psi_hartree(p, vh, {n1, n2, n3, n4});
        };
        const Complex fast = lambda4(psi, u);
        const Complex slow = lambda4_reference_scan(psi, u);
        CHECK(std::abs(fast - slow) <= 1e-10 * (1.0 + std::abs(slow)));
    }
}

TEST_CASE("lambda4 of the constant multiplier is the quartic integral") {
    SpectralField u = seeded_random_field(10, 42, 0.9);
    const Complex v = lambda4(one, u);
    // (1/2π)∫|u|⁴ dx on a padded grid
    PhysicalSamples s = synthesize(u, 64);
    double mean = 0.0;
    for (const auto& z : s.values) mean += std::norm(z) * std::norm(z);
    mean /= static_cast<double>(s.grid_size());
    CHECK(v.real() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-14);
}

TEST_CASE("lambda4_general handles a wide collapsed slot") {
    SpectralField u = seeded_random_field(4, 9, 1.0);
    SpectralField w = product_coeffs({{&u, false}, {&u, true}, {&u, false}}, 12);
    SlotArray ws = u_slot(w), ub = ubar_slot(u), us = u_slot(u);
    const Complex fast = lambda4_general(one, ws, ub, us, ub);
    const Complex slow = lambda4_reference_scan(one, ws, ub, us, ub);
    CHECK(std::abs(fast - slow) <= 1e-11 * (1.0 + std::abs(slow)));
}

TEST_CASE("product coefficients match direct convolution") {
    SpectralField u = seeded_random_field(5, 13, 1.0);
    SpectralField w = abs2_coeffs(u, 10);
    for (int m = -10; m <= 10; ++m) {
        Complex direct{0.0, 0.0};
        for (int a = -5; a <= 5; ++a) {
            const int b = m - a;  // u(a) · conj-view(b) with a + b = m
            if (b < -5 || b > 5) continue;
            direct += u.c(a) * std::conj(u.c(-b));
        }
        CHECK(std::abs(w.c(m) - direct) < 1e-13);
    }
}

TEST_CASE("abs2 coefficients are hermitian and real at zero") {
    SpectralField u = seeded_random_field(6, 3, 1.0);
    SpectralField w = abs2_coeffs(u, 12);
    CHECK(std::abs(w.c(0).imag()) < 1e-14);
    for (int m = 0; m <= 12; ++m)
        CHECK(std::abs(w.c(-m) - std::conj(w.c(m))) < 1e-13);
}

TEST_CASE("lambda6 scan is gated") {
    SpectralField u = seeded_random_field(8, 4, 1.0);
    auto m6 = [](int, int, int, int, int, int) { return 1.0; };
    CHECK_THROWS_AS(lambda6_reference_scan(m6, u), InvalidArgument);
}

TEST_CASE("lambda6 scan on a plane wave") {
    SpectralField u(3);
    u.c(1) = 2.0;
    auto m6 = [](int, int, int, int, int, int) { return 1.0; };
    // single tuple (1,-1,1,-1,1,-1) with |c|⁶ = 64
    const Complex v = lambda6_reference_scan(m6, u);
    CHECK(v.real() == doctest::Approx(64.0));
    CHECK(std::abs(v.imag()) < 1e-12);
}
