#include "deltapair/pulse_train.hpp"
#include "deltapair/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

using namespace deltapair;

TEST_CASE("normalize merges, sorts and drops") {
    SUBCASE("coincident jumps merge") {
        const std::array<Jump, 2> raw{{{0.0, {2.0, 0.0}}, {0.0, {3.0, 0.0}}}};
        const PulseTrain t = PulseTrain::normalize(raw);
        REQUIRE(t.size() == 1);
        CHECK(t.jumps()[0] == Jump{0.0, {5.0, 0.0}});
        CHECK(t.merged_count() == 1);
        CHECK(t.input_count() == 2);
    }
    SUBCASE("sorted with cumulative potentials") {
        const double xi = 3.5;
        const std::array<Jump, 2> raw{{{1.0, {xi, 0.0}}, {-1.0, {-xi, 0.0}}}};
        const PulseTrain t = PulseTrain::normalize(raw);
        REQUIRE(t.size() == 2);
        CHECK(t.jumps()[0] == Jump{-1.0, {-xi, 0.0}});
        CHECK(t.jumps()[1] == Jump{1.0, {xi, 0.0}});
        const std::vector<Vec2> expected{{0.0, 0.0}, {-xi, 0.0}, {0.0, 0.0}};
        CHECK(t.potentials() == expected);
        CHECK(t.max_potential() == xi);
    }
    SUBCASE("zero jumps vanish") {
        const std::array<Jump, 1> raw{{{0.0, {0.0, 0.0}}}};
        const PulseTrain t = PulseTrain::normalize(raw);
        CHECK(t.empty());
        CHECK(t.dropped_count() == 1);
        CHECK(t.potentials().size() == 1);
    }
    SUBCASE("cancelling coincident jumps vanish") {
        const std::array<Jump, 2> raw{{{0.5, {1.0, -2.0}}, {0.5, {-1.0, 2.0}}}};
        CHECK(PulseTrain::normalize(raw).empty());
    }
    SUBCASE("non-finite input") {
        const std::array<Jump, 1> raw{{{NAN, {1.0, 0.0}}}};
        CHECK_THROWS_AS(PulseTrain::normalize(raw), std::invalid_argument);
    }
}

TEST_CASE("normalize is permutation invariant") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pos(-4, 4);
    std::uniform_real_distribution<double> comp(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Jump> raw;
        for (int k = 0; k < 8; ++k) {
            // Integer components keep merged sums exact in any order.
            raw.push_back({0.25 * pos(rng), {std::round(comp(rng)), std::round(comp(rng))}});
        }
        const PulseTrain a = PulseTrain::normalize(raw);
        std::shuffle(raw.begin(), raw.end(), rng);
        const PulseTrain b = PulseTrain::normalize(raw);
        CHECK(a.jumps() == b.jumps());
    }
}

TEST_CASE("segment momenta") {
    const PhotonProbe probe{};
    SUBCASE("single jump") {
        const auto t = segment_momenta(single_pulse_train({5.0, 0.0}), probe, SpectrumPoint(0.5, {0.0, 0.0}));
        CHECK(t.pperp == std::vector<Vec2>{{-5.0, 0.0}, {0.0, 0.0}});
        CHECK(t.lambda == std::vector<double>{26.0, 1.0});
    }
    SUBCASE("opposite-sign pair") {
        const Vec2 q{0.7, -1.3};
        const auto t = segment_momenta(opposite_sign_train(2.0, 1.0), probe, SpectrumPoint(0.3, q));
        CHECK(t.pperp == std::vector<Vec2>{q, q - Vec2{2.0, 0.0}, q});
    }
    SUBCASE("empty train") {
        const Vec2 q{0.2, 0.1};
        const auto t = segment_momenta(PulseTrain{}, probe, SpectrumPoint(0.3, q));
        CHECK(t.pperp == std::vector<Vec2>{q});
    }
    SUBCASE("first segment carries the net work, last is q") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> comp(-5.0, 5.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Jump> raw;
            for (int k = 0; k < 5; ++k) {
                raw.push_back({static_cast<double>(k), {comp(rng), comp(rng)}});
            }
            const PulseTrain train = PulseTrain::normalize(raw);
            const Vec2 q{comp(rng), comp(rng)};
            const auto t = segment_momenta(train, probe, SpectrumPoint(0.4, q));
            CHECK(t.pperp.front() == q - train.potentials().back());
            CHECK(t.pperp.back() == q);
            CHECK(t.lambda.back() == lf_dot(probe, 0.4, q));
        }
    }
}

TEST_CASE("accumulated phases") {
    const PhotonProbe probe{};
    const SpectrumPoint point(0.5, {0.0, 0.0});
    SUBCASE("opposite-sign pair at theta = 1") {
        const PulseTrain train = opposite_sign_train(5.0, 1.0);
        const auto table = segment_momenta(train, probe, point);
        const auto phases = accumulated_phases(train, table, point);
        REQUIRE(phases.size() == 2);
        CHECK(phases[0] == 0.0);
        CHECK(phases[1] == 104.0);
        CHECK(classical_drift(train, table, probe, point, 0, 1) == doctest::Approx(52.0).epsilon(1e-14));
    }
    SUBCASE("single jump") {
        const PulseTrain train = single_pulse_train({5.0, 0.0});
        CHECK(accumulated_phases(train, segment_momenta(train, probe, point), point) == std::vector<double>{0.0});
    }
    SUBCASE("four-pulse middle interval is Theta0") {
        const double theta = 0.75;
        const PulseTrain train = alternating_four_train(3.0, theta);
        const SpectrumPoint p(0.3, {0.4, 1.1});
        const auto table = segment_momenta(train, probe, p);
        const double expected = interference_angle(theta, lf_dot(probe, 0.3, p.qperp()), 0.3).value();
        CHECK(classical_drift(train, table, probe, p, 1, 2) == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("drift vanishes with the separation") {
        const std::array<Jump, 2> raw{{{0.0, {1.0, 0.0}}, {1e-300, {2.0, 0.0}}}};
        const PulseTrain train = PulseTrain::normalize(raw);
        REQUIRE(train.size() == 2);
        const auto table = segment_momenta(train, probe, point);
        CHECK(std::abs(classical_drift(train, table, probe, point, 0, 1)) < 1e-290);
    }
}

TEST_CASE("phase differences are translation invariant") {
    // Dyadic positions and shifts keep every difference exact.
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> pos(-256, 256);
    std::uniform_real_distribution<double> comp(-5.0, 5.0);
    const PhotonProbe probe{{0.3, -0.2}};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Jump> raw;
        for (int k = 0; k < 5; ++k) {
            raw.push_back({pos(rng) / 64.0, {comp(rng), comp(rng)}});
        }
        const PulseTrain train = PulseTrain::normalize(raw);
        const PulseTrain moved = train.shifted(pos(rng) / 8.0);
        const SpectrumPoint p(0.37, {comp(rng), comp(rng)});
        const auto a = accumulated_phases(train, segment_momenta(train, probe, p), p);
        const auto b = accumulated_phases(moved, segment_momenta(moved, probe, p), p);
        CHECK(a == b);
    }
}

TEST_CASE("classical drift is independent of the photon scale") {
    const PulseTrain train = alternating_four_train(2.0, 0.5);
    const PhotonProbe probe{{0.5, 0.25}};
    const SpectrumPoint p(0.6, {1.0, -0.5});
    const auto table = segment_momenta(train, probe, p);
    const double ref = classical_drift(train, table, probe, p, 0, 3);
    for (const double s : {0.125, 0.5, 2.0, 8.0}) {
        CHECK(classical_drift(train, table, probe, p, 0, 3, s) == doctest::Approx(ref).epsilon(1e-12));
    }
    // Extreme scales lose digits to t - z cancellation in Cartesian components.
    for (const double s : {1e-3, 1e3}) {
        CHECK(classical_drift(train, table, probe, p, 0, 3, s) == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK_THROWS_AS(classical_drift(train, table, probe, p, 2, 2), std::out_of_range);
}
