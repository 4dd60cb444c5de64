#include "deltapair/integrate.hpp"
#include "deltapair/validation.hpp"
#include "deltapair/quadrature.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace deltapair;

TEST_CASE("Gauss-Kronrod on known integrals") {
    const Tolerance tol{1e-12, 0.0, 100'000};
    auto r = integrate_interval([](double x) { return std::sqrt(x); }, 0.0, 1.0, tol);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    r = integrate_interval([](double x) { return 1.0 / (1.0 + x * x); }, -50.0, 50.0, tol);
    CHECK(r.value == doctest::Approx(2.0 * std::atan(50.0)).epsilon(1e-12));
    r = integrate_interval([](double x) { return std::cos(40.0 * x); }, 0.0, 3.0, tol);
    CHECK(r.value == doctest::Approx(std::sin(120.0) / 40.0).epsilon(1e-10));
}

TEST_CASE("budget exhaustion is reported") {
    const Tolerance tol{1e-15, 0.0, 200};
    const auto r = integrate_interval([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tol);
    CHECK_FALSE(r.converged);
}

TEST_CASE("Genz-Malik on boxes") {
    const Tolerance tol{1e-10, 0.0, 2'000'000};
    const auto r2 = integrate_box<2>([](const std::array<double, 2> &p) { return std::exp(p[0] + 2.0 * p[1]); },
                                     {0.0, 0.0}, {1.0, 1.0}, tol);
    CHECK(r2.value == doctest::Approx((std::exp(1.0) - 1.0) * (std::exp(2.0) - 1.0) / 2.0).epsilon(1e-10));
    const auto r3 = integrate_box<3>(
        [](const std::array<double, 3> &p) { return 1.0 / (1.0 + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); },
        {-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, Tolerance{1e-8, 0.0, 5'000'000});
    CHECK(r3.converged);
    // Independent value by nested Gauss-Kronrod.
    const Tolerance inner{1e-11, 0.0, 1'000'000};
    const double nested = integrate_interval(
                              [&](double x) {
                                  return integrate_interval(
                                             [&](double y) {
                                                 const double c = 1.0 + x * x + y * y;
                                                 return 2.0 * std::atan(1.0 / std::sqrt(c)) / std::sqrt(c);
                                             },
                                             -1.0, 1.0, inner)
                                      .value;
                              },
                              -1.0, 1.0, inner)
                              .value;
    CHECK(r3.value == doctest::Approx(nested).epsilon(1e-8));
}

TEST_CASE("spherical Bessel functions") {
    // j0 = sin x / x, j1 = sin x / x^2 - cos x / x.
    for (const double x : {1e-3, 0.5, 3.0, 17.0, 250.0, 1e4}) {
        CHECK(FilonLegendre::spherical_bessel(0, x) == doctest::Approx(std::sin(x) / x).epsilon(1e-13));
        CHECK(FilonLegendre::spherical_bessel(1, x) ==
              doctest::Approx(std::sin(x) / (x * x) - std::cos(x) / x).epsilon(1e-10).scale(1e-3));
    }
    // j_15(0.1) ~ x^15 / (31!!).
    double dfact = 1.0;
    for (int k = 1; k <= 31; k += 2) {
        dfact *= k;
    }
    CHECK(FilonLegendre::spherical_bessel(15, 0.1) == doctest::Approx(std::pow(0.1, 15) / dfact).epsilon(1e-3));
    CHECK(FilonLegendre::spherical_bessel(5, 0.0) == 0.0);
    CHECK(FilonLegendre::spherical_bessel(0, 0.0) == 1.0);
}

TEST_CASE("Filon-Legendre handles fast oscillation") {
    const FilonLegendre rule(16);
    for (const double omega : {0.0, 3.0, 200.0, 1e5}) {
        std::vector<std::complex<double>> f;
        for (const double t : rule.nodes()) {
            f.emplace_back(std::exp(0.3 * t), 0.0);
        }
        // int_{-1}^{1} exp((0.3 + i omega) t) dt.
        const std::complex<double> z(0.3, omega);
        const std::complex<double> exact = (std::exp(z) - std::exp(-z)) / z;
        const auto r = rule.integrate(f, omega);
        CHECK(std::abs(r.value - exact) <= 1e-13 * std::abs(std::exp(0.3)));
    }
}

TEST_CASE("tolerance spec validation") {
    const PulseTrain train = single_pulse_train({5.0, 0.0});
    IntegrationSpec s;
    CHECK_NOTHROW(s.validate(train));
    CHECK(s.cutoff_for(train) == doctest::Approx(48.0));
    s.q_max = 4.0;
    CHECK_THROWS_AS(s.validate(train), std::invalid_argument);
    s = IntegrationSpec{};
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(s.validate(train), std::invalid_argument);
    s = IntegrationSpec{};
    s.u_margin = 0.3;
    CHECK_THROWS_AS(s.validate(train), std::invalid_argument);
}

TEST_CASE("empty train integrates to zero") {
    const SpectralModel model(PulseTrain{}, PhotonProbe{});
    const IntegrationSpec spec;
    for (const IntegralEstimate e : {total_probability(model, spec), integrate_qperp(model, 0.4, spec),
                                     integrate_qperp_plane(model, 0.4, spec), integrate_u(model, {1.0, 0.0}, spec)}) {
        CHECK(e.value == 0.0);
        CHECK(e.error == 0.0);
        CHECK(e.converged);
    }
}

TEST_CASE("transverse integral of a single pulse against a dense Riemann sum") {
    const SpectralModel model(single_pulse_train({5.0, 0.0}), PhotonProbe{});
    const double u = 0.5;
    // 2048^2 midpoint sum over [-L, L]^2; the peaks are O(1) wide and the
    // spectrum decays like |q|^-4, so L = 400 leaves ~1e-6 outside.
    constexpr int n = 2048;
    constexpr double half = 400.0;
    const double h = 2.0 * half / n;
    CompensatedSum sum;
    for (int i = 0; i < n; ++i) {
        const double x = -half + (i + 0.5) * h;
        CompensatedSum row;
        for (int j = 0; j < n; ++j) {
            row.add(model.density(u, {x, -half + (j + 0.5) * h}));
        }
        sum.add(row.value());
    }
    const double riemann = sum.value() * h * h;
    const IntegralEstimate plane = integrate_qperp_plane(model, u, IntegrationSpec{});
    const IntegralEstimate disc = integrate_qperp(model, u, IntegrationSpec{});
    CHECK(plane.value == doctest::Approx(riemann).epsilon(1e-4));
    CHECK(disc.value == doctest::Approx(riemann).epsilon(1e-4));
    CHECK(std::abs(disc.value - plane.value) <= disc.error);
}

TEST_CASE("whole-plane and disc transverse integrals agree within the disc error") {
    const std::array<Jump, 3> raw{{{0.0, {2.0, 0.5}}, {0.8, {-1.0, 1.0}}, {1.5, {0.5, -2.0}}}};
    const SpectralModel model(PulseTrain::normalize(raw), PhotonProbe{{0.3, -0.4}});
    for (const double u : {0.2, 0.5, 0.7}) {
        const IntegralEstimate plane = integrate_qperp_plane(model, u, IntegrationSpec{});
        const IntegralEstimate disc = integrate_qperp(model, u, IntegrationSpec{});
        CHECK(plane.converged);
        CHECK(std::abs(disc.value - plane.value) <= disc.error + 1e-7 * std::abs(plane.value));
    }
}

TEST_CASE("single pulse transverse integral is translation invariant") {
    const IntegralEstimate a = integrate_qperp_plane(SpectralModel(single_pulse_train({3.0, 0.0}, 0.0), PhotonProbe{}), 0.3, IntegrationSpec{});
    const IntegralEstimate b = integrate_qperp_plane(SpectralModel(single_pulse_train({3.0, 0.0}, 7.25), PhotonProbe{}), 0.3, IntegrationSpec{});
    CHECK(a.value == b.value);
}

TEST_CASE("lightfront integral at fixed q_perp") {
    const SpectralModel model(opposite_sign_train(2.0, 0.5), PhotonProbe{{0.2, 0.0}});
    IntegrationSpec spec;
    spec.rel_tol = 1e-7;
    const IntegralEstimate r = integrate_u(model, {1.0, 0.3}, spec);
    CHECK(std::isfinite(r.value));
    CHECK(r.value > 0.0);
    CHECK(r.converged);
    // Plain adaptive quadrature of the density over [1e-9, 1 - 1e-9] agrees
    // to the level the endpoint oscillation allows.
    const auto direct = integrate_interval([&](double u) { return model.density(u, {1.0, 0.3}); }, 1e-3, 1.0 - 1e-3,
                                           Tolerance{1e-10, 0.0, 2'000'000});
    CHECK(r.value == doctest::Approx(direct.value).epsilon(2e-3));
}

TEST_CASE("weak-field scaling and vanishing pair") {
    const auto weak = check_weak_field_scaling();
    CHECK_MESSAGE(weak.passed, weak.detail);
    // The pair cancels only where Theta ~ theta / (u(1-u)) is small, so the
    // total falls like theta log(1/theta) rather than theta^2.
    const double one =
        total_probability(SpectralModel(single_pulse_train({2.0, 0.0}), PhotonProbe{}), IntegrationSpec{}).value;
    double previous = INFINITY;
    for (const double theta : {1e-2, 1e-4, 1e-6}) {
        const double p =
            total_probability(SpectralModel(opposite_sign_train(2.0, theta), PhotonProbe{}), IntegrationSpec{}).value;
        CHECK(p > 0.0);
        CHECK(p < previous);
        CHECK(p < 200.0 * theta * std::log(1.0 / theta) * one);
        previous = p;
    }
    CHECK(previous < 1e-3 * one);
}

TEST_CASE("doubling the cutoff moves the total by less than the tail bound") {
    const SpectralModel model(single_pulse_train({1.0, 0.0}), PhotonProbe{});
    IntegrationSpec spec;
    spec.transverse = TransverseMethod::cutoff;
    spec.rel_tol = 1e-7;
    spec.q_max = 6.0;
    const IntegralEstimate a = total_probability(model, spec);
    spec.q_max = 12.0;
    const IntegralEstimate b = total_probability(model, spec);
    CHECK(a.tail_bound > b.tail_bound);
    CHECK(std::abs(b.value - a.value) <= a.tail_bound);
    const IntegralEstimate plane = total_probability(model, IntegrationSpec{});
    CHECK(std::abs(plane.value - b.value) <= b.error + 1e-7 * plane.value);
}

TEST_CASE("grid scans do not depend on the thread count") {
    const SpectralModel model(alternating_four_train(3.0, 0.7), PhotonProbe{{0.1, 0.2}});
    const GridAxis q1{-2.0, 5.0, 61};
    const GridAxis q2{-3.0, 3.0, 37};
    const GridScan serial = grid_scan(model, 0.4, q1, q2, true, 1);
    const GridScan parallel = grid_scan(model, 0.4, q1, q2, true, 4);
    REQUIRE(serial.cells.size() == parallel.cells.size());
    bool identical = true;
    for (std::size_t k = 0; k < serial.cells.size(); ++k) {
        identical = identical && serial.cells[k].value == parallel.cells[k].value &&
                    serial.cells[k].diagonal == parallel.cells[k].diagonal;
    }
    CHECK(identical);
    CHECK(serial.at(3, 5).value == model.density(0.4, {q1.at(3), q2.at(5)}));
}
