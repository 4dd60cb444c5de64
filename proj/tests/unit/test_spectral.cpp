#include "deltapair/spectral.hpp"
#include "deltapair/validation.hpp"

#include <doctest.h>

#include <array>
#include <numbers>
#include <random>

using namespace deltapair;

namespace {
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;
}

TEST_CASE("single-jump kernel") {
    const double expected = 1.0 + 1.0 / 676.0 + 2.0 * 11.5 / 26.0;
    CHECK(f_kernel(1.0, 26.0, 25.0, 0.5) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(f_kernel(1.0, 26.0, 25.0, 0.5) == doctest::Approx(1.8860947).epsilon(1e-7));
    CHECK(f_kernel(26.0, 1.0, 25.0, 0.5) == f_kernel(1.0, 26.0, 25.0, 0.5));
    for (const double lam : {0.7, 1.0, 3.0, 1e4}) {
        CHECK(f_kernel(lam, lam, 0.0, 0.3) == 0.0);
    }
}

TEST_CASE("single pulse density at the symmetric point") {
    const PhotonProbe probe{};
    const SpectrumPoint point(0.5, {0.0, 0.0});
    const DensityResult r = master_density(single_pulse_train({5.0, 0.0}), probe, point);
    CHECK(r.f_total == doctest::Approx(1.8860947).epsilon(1e-7));
    CHECK(r.prefactor == doctest::Approx(kDefaultAlpha / kFourPiSq).epsilon(1e-15));
    CHECK(r.value == doctest::Approx(3.487e-4).epsilon(1e-3));
    CHECK(r.value == doctest::Approx(density_single({5.0, 0.0}, probe, point)).epsilon(1e-14));
    REQUIRE(r.diagonal.size() == 1);
    CHECK(r.cross.empty());
}

TEST_CASE("empty train gives zero") {
    const DensityResult r = master_density(PulseTrain{}, PhotonProbe{}, SpectrumPoint(0.4, {1.0, 2.0}));
    CHECK(r.value == 0.0);
    CHECK(r.f_total == 0.0);
    CHECK(r.diagonal.empty());
    CHECK(r.cross.empty());
}

TEST_CASE("opposite-sign pair at the worked point") {
    const PhotonProbe probe{};
    const SpectrumPoint point(0.5, {0.0, 0.0});
    const double s = std::sin(52.0);
    const double expected = 4.0 * s * s * density_single({5.0, 0.0}, probe, point);
    CHECK(density_opposite(5.0, 1.0, probe, point) == doctest::Approx(expected).epsilon(1e-14));
    const DensityResult r = master_density(opposite_sign_train(5.0, 1.0), probe, point);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
    REQUIRE(r.cross.size() == 1);
    CHECK(r.cross[0].phase_difference == 104.0);
}

TEST_CASE("vanishing separation") {
    const PhotonProbe probe{{0.2, 0.1}};
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> comp(-8.0, 8.0);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    for (int k = 0; k < 1000; ++k) {
        const SpectrumPoint p(frac(rng), {comp(rng), comp(rng)});
        CHECK(density_opposite(4.0, 0.0, probe, p) == 0.0);
        CHECK(density_fourpulse(4.0, 0.0, probe, p) == 0.0);
        CHECK(density_samesign(4.0, 0.0, probe, p) == density_single({4.0, 0.0}, probe, p));
        // Two coincident half pulses are one pulse.
        CHECK(master_density(same_sign_train(4.0, 0.0), probe, p).value ==
              doctest::Approx(density_single({4.0, 0.0}, probe, p)).epsilon(1e-14));
    }
}

TEST_CASE("four-pulse factor") {
    CHECK(fourpulse_factor(std::numbers::pi / 2.0, 0.0) == doctest::Approx(0.0).epsilon(1e-30).scale(1.0));
    CHECK(fourpulse_factor(std::numbers::pi / 4.0, 0.0) == doctest::Approx(4.0).epsilon(1e-15));
    for (const double t : {0.1, 0.4, 1.3, 2.0, 7.7}) {
        const double c = std::cos(t);
        const double s4 = std::sin(4.0 * t);
        CHECK(fourpulse_factor(t, t) == doctest::Approx(s4 * s4 / (c * c)).epsilon(1e-12));
        CHECK(fourpulse_factor(ExtendedPhase(t), ExtendedPhase(t)) == doctest::Approx(fourpulse_factor(t, t)).epsilon(1e-15));
    }
}

TEST_CASE("fringe zeros of the opposite-sign pair are pi apart in Theta") {
    const PhotonProbe probe{};
    const double u = 0.5;
    const double theta = 1.0;
    auto density = [&](double q1) { return density_opposite(5.0, theta, probe, SpectrumPoint(u, {q1, 0.0})); };
    auto big_theta = [&](double q1) {
        return interference_angle(theta, lf_dot(probe, u, {q1 - 5.0, 0.0}), u).value();
    };
    constexpr int kSteps = 200'000;
    const double lo = 5.5;
    const double hi = 7.5;
    std::vector<double> zeros;
    for (int k = 1; k < kSteps; ++k) {
        const double step = (hi - lo) / kSteps;
        const double q = lo + step * k;
        if (density(q) < density(q - step) && density(q) <= density(q + step)) {
            zeros.push_back(big_theta(q));
        }
    }
    REQUIRE(zeros.size() >= 4);
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        CHECK(std::abs(std::remainder(zeros[k], std::numbers::pi)) < 1e-2);
        if (k > 0) {
            CHECK(zeros[k] - zeros[k - 1] == doctest::Approx(std::numbers::pi).epsilon(1e-2));
        }
    }
}

TEST_CASE("master formula invariants on small samples") {
    CHECK(check_single_reduction(2000, 1).passed);
    CHECK(check_opposite_reduction(2000, 2).passed);
    CHECK(check_samesign_reduction(2000, 3).passed);
    CHECK(check_fourpulse_reduction(2000, 4).passed);
    CHECK(check_nonnegativity(20'000, 5).passed);
    CHECK(check_reflection(2000, 6).passed);
    CHECK(check_diagonal_sum(2000, 7).passed);
    CHECK(check_drift_identity(300, 8).passed);
}

TEST_CASE("stable and breakdown evaluations agree") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> comp(-6.0, 6.0);
    std::uniform_real_distribution<double> frac(0.02, 0.98);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Jump> raw;
        for (int k = 0; k < 4; ++k) {
            raw.push_back({0.5 * k + 0.1 * comp(rng), {comp(rng), comp(rng)}});
        }
        const SpectralModel model(PulseTrain::normalize(raw), PhotonProbe{{0.1 * comp(rng), 0.1 * comp(rng)}});
        const SpectrumPoint p(frac(rng), {comp(rng), comp(rng)});
        const DensityResult r = model.evaluate(p, true);
        double sum = r.diagonal_sum();
        for (const auto &c : r.cross) {
            sum += c.value;
        }
        CHECK(std::abs(sum - r.f_total) <= 1e-12 * r.magnitude);
        CHECK(r.value == doctest::Approx(r.prefactor * r.f_total).epsilon(1e-13).scale(r.prefactor * r.magnitude));
    }
}

TEST_CASE("ordering: negated train equals time-reversed order") {
    // Swapping the order of the two opposite kicks is the same as negating them.
    const std::array<Jump, 2> reversed{{{-1.0, {5.0, 0.0}}, {1.0, {-5.0, 0.0}}}};
    CHECK(PulseTrain::normalize(reversed).jumps() == opposite_sign_train(5.0, 1.0).negated().jumps());
}

TEST_CASE("endpoint limits of the regrouped density") {
    // Single pulse: (1-u)/u f -> g_out g_in |da|^2 / 2 at either endpoint,
    // with g evaluated at p - u l for the endpoint u.
    const PhotonProbe probe{{0.4, -0.3}};
    const Vec2 da{3.0, 1.0};
    const SpectralModel model(single_pulse_train(da), probe);
    const Vec2 q{1.2, 0.5};
    for (const double u0 : {0.0, 1.0}) {
        const double u = u0 == 0.0 ? 1e-9 : 1.0 - 1e-9;
        const double g_out = 2.0 / (1.0 + norm2(q - u0 * probe.lperp));
        const double g_in = 2.0 / (1.0 + norm2(q - da - u0 * probe.lperp));
        const double limit = 0.5 * g_out * g_in * norm2(da);
        const double s = model.scaled_density(u, q);
        CHECK(std::isfinite(s));
        CHECK(s == doctest::Approx(limit).epsilon(1e-6));
        CHECK(std::isfinite(model.density(u, q)));
    }
}

TEST_CASE("u <-> 1-u symmetry at half the kick") {
    const Vec2 da{5.0, 0.0};
    const SpectralModel model(single_pulse_train(da), PhotonProbe{});
    for (const double u : {0.01, 0.1, 0.3, 0.45}) {
        CHECK(model.density(u, 0.5 * da) == doctest::Approx(model.density(1.0 - u, 0.5 * da)).epsilon(1e-13));
    }
}
