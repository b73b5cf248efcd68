#include <random>

#include <catch_amalgamated.hpp>

#include "mixquant/measures.hpp"

using namespace mixquant;
using Catch::Approx;

TEST_CASE("component invariants") {
    const auto models = {circle_diameter_measure(), disconnected_measure(), connected_measure()};
    for (const auto& m : models) {
        double total = 0.0;
        for (const auto& c : m.components()) {
            // integrated density over the geometry recovers the weight
            CHECK(c.density * geometry_length(c.geometry) == Approx(c.weight).margin(1e-12));
            total += c.weight;
        }
        CHECK(total == Approx(1.0).margin(1e-12));
    }
    CHECK_THROWS_AS(MixedMeasure({Component(Interval(0, 1), 0.5)}, 1), InvalidArg);
    CHECK_THROWS_AS(Interval(1.0, 1.0), InvalidArg);
}

TEST_CASE("means of the three mixtures") {
    const Point2 mc = mean(circle_diameter_measure());
    CHECK(mc.x == Approx(0.0).margin(1e-14));
    CHECK(mc.y == Approx(0.0).margin(1e-14));
    CHECK(mean(disconnected_measure()).x == Approx(13.0 / 32).margin(1e-15));
    CHECK(mean(connected_measure()).x == Approx(3.0 / 8).margin(1e-15));
    // single component sanity
    const MixedMeasure u({Component(Interval(0.0, 1.0), 1.0)}, 1);
    CHECK(mean(u).x == Approx(0.5).margin(1e-15));
}

TEST_CASE("variances") {
    CHECK(variance(circle_diameter_measure()) == Approx(2.0 / 3).margin(1e-14));
    CHECK(variance(disconnected_measure()) == Approx(277.0 / 3072).margin(1e-15));
    CHECK(variance(connected_measure()) == Approx(13.0 / 192).margin(1e-15));
}

TEST_CASE("distortion of known codebooks") {
    // disconnected {1/4, 7/8} -> 13/768
    CHECK(distortion(disconnected_measure(), {{0.25, 0}, {0.875, 0}}) ==
          Approx(13.0 / 768).margin(1e-15));
    // one point at the mean gives the variance
    CHECK(distortion(circle_diameter_measure(), {{0.0, 0.0}}) == Approx(2.0 / 3).margin(1e-12));
    CHECK(distortion(connected_measure(), {{0.375, 0}}) == Approx(13.0 / 192).margin(1e-15));
}

TEST_CASE("conditional means") {
    // left half of the diameter plus the left half-circle -> (-1/4 - 1/pi, 0)
    const auto cd = circle_diameter_measure();
    Region r;
    r.ranges.resize(2);
    for (std::size_t i = 0; i < cd.components().size(); ++i) {
        if (cd.components()[i].is_interval()) continue;
        if (std::holds_alternative<Arc>(cd.components()[i].geometry))
            r.ranges[i] = {{kPi / 2, 3 * kPi / 2}};
        else
            r.ranges[i] = {{0.0, 1.0}};  // segment parametrized by arc length from (-1,0)
    }
    const Point2 p = conditional_mean(cd, r);
    CHECK(p.x == Approx(-0.25 - 1.0 / kPi).margin(1e-12));
    CHECK(p.y == Approx(0.0).margin(1e-12));

    // U[0,1] restricted to [0,1/2] -> 1/4
    const MixedMeasure u({Component(Interval(0.0, 1.0), 1.0)}, 1);
    Region r2;
    r2.ranges = {{{0.0, 0.5}}};
    CHECK(conditional_mean(u, r2).x == Approx(0.25).margin(1e-15));

    // connected model, straddle cell of the n=16 solution -> a_10 = 0.485893
    const auto cm = connected_measure();
    const double a9 = 0.434746, a10 = 0.485893, b1 = 0.564986;
    Region r3;
    r3.ranges = {{{0.5 * (a9 + a10), 0.5}}, {{0.5, 0.5 * (a10 + b1)}}};
    CHECK(conditional_mean(cm, r3).x == Approx(0.485893).margin(1e-5));

    Region empty;
    empty.ranges = {{}, {}};
    CHECK_THROWS_AS(conditional_mean(cd, empty), ZeroMass);
}

TEST_CASE("distortion properties on random codebooks") {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> ux(-1.2, 1.2), u01(0.0, 1.0);
    const auto models = {circle_diameter_measure(), disconnected_measure(), connected_measure()};
    for (const auto& m : models) {
        const double var = variance(m);
        const Point2 mu = mean(m);
        CHECK(distortion(m, {mu}) == Approx(var).margin(1e-10));
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 6);
            Codebook cb;
            for (int i = 0; i < n; ++i) {
                if (m.ambient_dim() == 1) cb.push_back({u01(rng), 0.0});
                else cb.push_back({ux(rng), ux(rng)});
            }
            double exact;
            try {
                exact = distortion(m, cb);
            } catch (const InvalidArg&) {
                continue;  // duplicate sample
            }
            CHECK(exact >= 0.0);
            // independent quadrature route
            const double quad = distortion_quadrature(m, cb, 1e-10);
            CHECK(exact == Approx(quad).margin(1e-8));
            // adding a point never increases distortion
            Codebook bigger = cb;
            bigger.push_back(m.ambient_dim() == 1 ? Point2{u01(rng), 0.0}
                                                  : Point2{ux(rng), ux(rng)});
            try {
                CHECK(distortion(m, bigger) <= exact + 1e-12);
            } catch (const InvalidArg&) {
            }
        }
    }
}
