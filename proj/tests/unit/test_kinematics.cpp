#include "deltapair/kinematics.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace deltapair;

TEST_CASE("lf_dot worked values") {
    const PhotonProbe head_on{};
    CHECK(lf_dot(head_on, 0.5, {0.0, 0.0}) == 1.0);
    CHECK(lf_dot(head_on, 0.5, {-5.0, 0.0}) == 26.0);
    CHECK(lf_dot(PhotonProbe{{1.0, 0.0}}, 0.5, {1.0, 0.0}) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("lf_dot rejects the u endpoints") {
    const PhotonProbe p{};
    CHECK_THROWS_AS(lf_dot(p, 0.0, {}), std::domain_error);
    CHECK_THROWS_AS(lf_dot(p, 1.0, {}), std::domain_error);
    CHECK_THROWS_AS(SpectrumPoint(1.0, {}), std::domain_error);
    CHECK_THROWS_AS(SpectrumPoint(0.5, {NAN, 0.0}), std::domain_error);
}

TEST_CASE("h factor") {
    CHECK(h_factor(0.5) == -0.5);
    CHECK(h_factor(0.2) == doctest::Approx(-1.0625).epsilon(1e-14));
    CHECK(h_factor(0.8) == doctest::Approx(-1.0625).epsilon(1e-14));
    CHECK(h_factor(1e-6) == doctest::Approx(-2.5e5).epsilon(1e-5));
    CHECK(std::isfinite(h_factor(1e-9)));
    CHECK_THROWS_AS(h_factor(0.0), std::domain_error);

    // u on the 2^-53 lattice, where 1-u and 1-(1-u) are exact.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> lattice(1, (std::uint64_t{1} << 53) - 1);
    for (int k = 0; k < 10'000; ++k) {
        const double u = std::ldexp(static_cast<double>(lattice(rng)), -53);
        CHECK(h_factor(u) == h_factor(1.0 - u));
        CHECK(scaled_h_factor(u) == doctest::Approx(scaled_h_factor(1.0 - u)).epsilon(1e-15));
    }
}

TEST_CASE("lf_dot agrees with a full 4-vector contraction") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> comp(-4.0, 4.0);
    std::uniform_real_distribution<double> frac(0.01, 0.99);
    std::uniform_real_distribution<double> logscale(-3.0, 3.0);
    for (int k = 0; k < 10'000; ++k) {
        const PhotonProbe probe{{comp(rng), comp(rng)}};
        const double u = frac(rng);
        const Vec2 p{comp(rng), comp(rng)};
        const double s = std::pow(10.0, logscale(rng));
        const FourVector l = photon_momentum(probe, s);
        const FourVector q = onshell_momentum(u, p, s);
        const double contracted = minkowski_dot(l, q);
        const double direct = lf_dot(probe, u, p);
        // Cartesian components cancel in t^2 - z^2 for boosted vectors; the
        // round-off scale is the sum of the products being cancelled.
        const double scale = std::abs(l.t * q.t) + std::abs(l.z * q.z) + std::abs(l.x * q.x) + std::abs(l.y * q.y);
        CHECK(std::abs(contracted - direct) <= 1e-13 * scale);
        if (s >= 0.5 && s <= 2.0 && u > 0.1) {
            CHECK(contracted == doctest::Approx(direct).epsilon(1e-11));
        }
    }
}

TEST_CASE("lf_dot is positive") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> comp(-50.0, 50.0);
    std::uniform_real_distribution<double> frac(1e-9, 1.0 - 1e-9);
    int bad = 0;
    for (int k = 0; k < 100'000; ++k) {
        const double u = frac(rng);
        bad += lf_dot(PhotonProbe{{comp(rng), comp(rng)}}, u, {comp(rng), comp(rng)}) > 0.0 ? 0 : 1;
    }
    CHECK(bad == 0);
}

TEST_CASE("lightfront components") {
    const FourVector v = from_lightfront(3.0, 5.0, {1.0, 2.0});
    CHECK(v.minus() == 3.0);
    CHECK(v.plus() == 5.0);
    CHECK(minkowski_dot(v, v) == doctest::Approx(3.0 * 5.0 - 5.0));
    const FourVector p = onshell_momentum(0.3, {0.4, -1.2}, 2.0);
    CHECK(minkowski_dot(p, p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.minus() == doctest::Approx(0.6));
}

TEST_CASE("probe validation") {
    CHECK_NOTHROW(PhotonProbe{{1.0, 2.0}, 1000.0}.validate());
    CHECK_THROWS_AS((PhotonProbe{{1.0, 2.0}, -1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PhotonProbe{{INFINITY, 0.0}}.validate()), std::invalid_argument);
}
