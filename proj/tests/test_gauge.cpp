#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace funk;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gauge reduces to reciprocal ray parameters") {
    auto disk = testsupport::unit_disk();
    CHECK_THAT(minkowski_gauge(disk, {0.0, 0.0}, {1.0, 0.0}), WithinAbs(1.0, 1e-15));
    CHECK_THAT(minkowski_gauge(disk, {0.0, 0.0}, {0.0, -1.0}), WithinAbs(1.0, 1e-15));

    auto half = testsupport::upper_halfplane();
    CHECK(minkowski_gauge(half, {0.0, 1.0}, {1.0, 0.0}) == 0.0);  // contained ray

    // Boundary hit at (1,0) from (0.5,0): t* = 0.5, gauge 2. Bisection oracle
    // on the raw membership predicate agrees.
    CHECK_THAT(minkowski_gauge(disk, {0.5, 0.0}, {1.0, 0.0}), WithinAbs(2.0, 1e-13));
    auto oracle = testsupport::bisect_boundary(
        [&](const Vec& p) { return contains(disk, p); }, {0.5, 0.0}, {1.0, 0.0});
    REQUIRE(oracle.has_value());
    CHECK_THAT(minkowski_gauge(disk, {0.5, 0.0}, {1.0, 0.0}), WithinRel(1.0 / *oracle, 1e-9));

    CHECK(minkowski_gauge(disk, {0.5, 0.0}, {0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(minkowski_gauge(disk, {2.0, 0.0}, {1.0, 0.0}), GeometryError);
}

TEST_CASE("half-space closed form") {
    Vec nu{0.0, -1.0};
    CHECK_THAT(gauge_halfspace_closed(nu, 0.0, {0.0, 1.0}, {0.0, -1.0}), WithinAbs(1.0, 1e-15));
    CHECK(gauge_halfspace_closed(nu, 0.0, {0.0, 1.0}, {0.0, 1.0}) == 0.0);
    CHECK_THAT(gauge_halfspace_closed(nu, 0.0, {0.0, 2.0}, {0.0, -1.0}), WithinAbs(0.5, 1e-15));
    CHECK_THROWS_AS(gauge_halfspace_closed(nu, 0.0, {0.0, -1.0}, {0.0, -1.0}), GeometryError);

    SECTION("matches the generic gauge to 1e-9 relative") {
        auto half = testsupport::upper_halfplane();
        Rng rng(41);
        for (int i = 0; i < 10000; ++i) {
            Vec x{rng.uniform(-5.0, 5.0), rng.uniform(0.05, 8.0)};
            Vec xi = rng.gaussian_vector(2);
            double closed = gauge_halfspace_closed(nu, 0.0, x, xi);
            double generic = minkowski_gauge(half, x, xi);
            if (closed == 0.0)
                CHECK(generic == 0.0);
            else
                CHECK_THAT(generic, WithinRel(closed, 1e-9));
        }
    }
}

TEST_CASE("ball closed form") {
    CHECK_THAT(gauge_ball_closed(1.0, {0.0, 0.0}, {3.0, 4.0}), WithinAbs(5.0, 1e-14));
    CHECK_THAT(gauge_ball_closed(1.0, {0.5, 0.0}, {1.0, 0.0}), WithinAbs(2.0, 1e-14));
    CHECK_THAT(gauge_ball_closed(1.0, {0.5, 0.0}, {-1.0, 0.0}), WithinAbs(2.0 / 3.0, 1e-14));
    CHECK_THROWS_AS(gauge_ball_closed(1.0, {1.5, 0.0}, {1.0, 0.0}), GeometryError);

    SECTION("matches the bisection oracle to 1e-9 relative") {
        auto disk = testsupport::unit_disk();
        auto implicit = testsupport::wrap_implicit(disk, 2.0);
        Rng rng(42);
        for (int i = 0; i < 10000; ++i) {
            Vec x = sample_interior(disk, rng, 0.95);
            Vec xi = rng.gaussian_vector(2);
            if (norm(xi) < 1e-9) continue;
            double closed = gauge_ball_closed(1.0, x, xi);
            double bisected = minkowski_gauge(implicit, x, xi);
            CHECK_THAT(bisected, WithinRel(closed, 1e-9));
        }
    }
}

TEST_CASE("gauge weak-norm properties over mixed bodies") {
    Rng rng(43);
    std::vector<ConvexBody> bodies{testsupport::unit_disk(), testsupport::unit_square(),
                                   testsupport::random_polygon(44), testsupport::random_ellipse(45),
                                   testsupport::upper_halfplane()};
    SECTION("positive homogeneity at 1e-12 relative") {
        for (const auto& body : bodies)
            for (int i = 0; i < 2000; ++i) {
                Vec x = sample_interior(body, rng);
                Vec xi = rng.gaussian_vector(2);
                double lambda = std::exp(rng.uniform(-6.0, 6.0));
                double g = minkowski_gauge(body, x, xi);
                double gl = minkowski_gauge(body, x, scaled(xi, lambda));
                CHECK(std::abs(gl - lambda * g) <= 1e-12 * std::max(1.0, lambda * g));
            }
    }
    SECTION("subadditivity at 1e-9") {
        for (const auto& body : bodies)
            for (int i = 0; i < 2000; ++i) {
                Vec x = sample_interior(body, rng);
                Vec xi = rng.gaussian_vector(2);
                Vec eta = rng.gaussian_vector(2);
                CHECK(minkowski_gauge(body, x, add(xi, eta)) <=
                      minkowski_gauge(body, x, xi) + minkowski_gauge(body, x, eta) + 1e-9);
            }
    }
    SECTION("unit sublevel set reconstructs the body") {
        for (const auto& body : {testsupport::unit_disk(), testsupport::unit_square(),
                                 testsupport::random_ellipse(46)})
            for (int i = 0; i < 2000; ++i) {
                Vec x = sample_interior(body, rng);
                Vec u = rng.unit_vector(2);
                double t = ray_boundary(body, x, u).t;
                Vec xi = scaled(u, t * rng.uniform(0.0, 2.0));
                double g = minkowski_gauge(body, x, xi);
                if (std::abs(g - 1.0) <= 1e-6) continue;
                CHECK(contains(body, add(x, xi)) == (g < 1.0));
            }
    }
}

TEST_CASE("minkowski weak metric from the origin") {
    CHECK_THAT(minkowski_weak_metric(testsupport::unit_disk(), {0.0, 0.0}, {3.0, 4.0}),
               WithinAbs(5.0, 1e-14));

    ConvexBody shifted(HalfSpaceBody{{0.0, -1.0}, 1.0});
    CHECK_THAT(minkowski_weak_metric(shifted, {0.0, 0.0}, {0.0, -2.0}), WithinAbs(2.0, 1e-14));
    CHECK_THAT(minkowski_weak_metric(shifted, {0.0, 0.0}, {0.0, -2.0}),
               WithinRel(minkowski_gauge(shifted, {0.0, 0.0}, {0.0, -2.0}), 1e-12));

    CHECK(minkowski_weak_metric(testsupport::unit_square(), {0.3, 0.3}, {0.3, 0.3}) == 0.0);

    SECTION("triangle inequality and zero diagonal on arbitrary points") {
        Rng rng(47);
        auto body = testsupport::random_polygon(48);
        for (int i = 0; i < 3000; ++i) {
            Vec x = rng.gaussian_vector(2);
            Vec y = rng.gaussian_vector(2);
            Vec z = rng.gaussian_vector(2);
            double xy = minkowski_weak_metric(body, x, y);
            double yz = minkowski_weak_metric(body, y, z);
            double xz = minkowski_weak_metric(body, x, z);
            CHECK(xz <= xy + yz + 1e-9);
            CHECK(minkowski_weak_metric(body, x, x) == 0.0);
        }
    }

    SECTION("origin on the boundary yields +inf in exiting directions") {
        ConvexBody tangent_half(HalfSpaceBody{{0.0, -1.0}, 0.0});  // origin on its boundary
        CHECK(minkowski_weak_metric(tangent_half, {0.0, 0.0}, {0.0, 1.0}) == 0.0);
        CHECK(std::isinf(minkowski_weak_metric(tangent_half, {0.0, 0.0}, {0.0, -1.0})));
        CHECK(std::isinf(minkowski_weak_metric(tangent_half, {0.0, 0.0}, {1.0, 0.0})));
        ConvexBody off(BallBody{{2.0, 0.0}, 1.0});
        CHECK_THROWS_AS(minkowski_weak_metric(off, {0.0, 0.0}, {1.0, 0.0}), GeometryError);
    }
}

TEST_CASE("classification flags match the structural truth table") {
    auto flags = classify_minkowski(testsupport::unit_disk());
    CHECK(flags.finite);
    CHECK(flags.symmetric);
    CHECK(flags.strongly_separating);
    CHECK(flags.weakly_separating);

    flags = classify_minkowski(ConvexBody(HalfSpaceBody{{0.0, -1.0}, 1.0}));
    CHECK(flags.finite);
    CHECK_FALSE(flags.symmetric);
    CHECK_FALSE(flags.strongly_separating);
    CHECK_FALSE(flags.weakly_separating);

    flags = classify_minkowski(testsupport::horizontal_strip());
    CHECK(flags.finite);
    CHECK(flags.symmetric);
    CHECK_FALSE(flags.strongly_separating);
    CHECK_FALSE(flags.weakly_separating);

    SECTION("strip line containment has a direct probe witness") {
        auto strip = testsupport::horizontal_strip();
        CHECK(radial_sup(strip, {0.0, 0.0}, {1.0, 0.0}).contained);
        CHECK(radial_sup(strip, {0.0, 0.0}, {-1.0, 0.0}).contained);
    }

    SECTION("strongly separating implies weakly separating") {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            auto f = classify_minkowski(testsupport::random_polygon(seed));
            if (f.strongly_separating) CHECK(f.weakly_separating);
        }
    }

    SECTION("off-center ball is finite only when the origin is interior") {
        auto inside = classify_minkowski(ConvexBody(BallBody{{0.5, 0.0}, 1.0}));
        CHECK(inside.finite);
        CHECK_FALSE(inside.symmetric);
        auto boundary = classify_minkowski(ConvexBody(BallBody{{1.0, 0.0}, 1.0}));
        CHECK_FALSE(boundary.finite);
    }
}
