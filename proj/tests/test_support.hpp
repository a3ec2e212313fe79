#pragma once

// Shared fixtures and independent oracles for the test suites. The bisection
// oracle here deliberately works on a raw membership predicate so it shares
// no code path with the radial queries it checks.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "funk/funk.hpp"

namespace testsupport {

using funk::ConvexBody;
using funk::Vec;

// Largest t with pred(x + t*dir) true, found by doubling plus bisection on
// the raw predicate. Returns nothing when the ray appears to stay inside.
inline std::optional<double> bisect_boundary(const std::function<bool(const Vec&)>& pred,
                                             const Vec& x, const Vec& dir,
                                             double rel_tol = 1e-13) {
    double lo = 0, hi = 1.0 / funk::norm(dir);
    int grow = 0;
    while (pred(funk::axpy(x, hi, dir))) {
        lo = hi;
        hi *= 2;
        if (++grow > 70) return std::nullopt;
    }
    while (hi - lo > rel_tol * hi) {
        double mid = 0.5 * (lo + hi);
        (pred(funk::axpy(x, mid, dir)) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline ConvexBody unit_disk() { return funk::BallBody{{0.0, 0.0}, 1.0}; }

inline ConvexBody upper_halfplane() { return funk::HalfSpaceBody{{0.0, -1.0}, 0.0}; }

// The open square (0,1)^2; facet order fixes the corner tie-break.
inline funk::HPolytopeBody unit_square_data() {
    funk::HPolytopeBody p;
    p.facets = {{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}, {{-1.0, 0.0}, 0.0}, {{0.0, -1.0}, 0.0}};
    p.interior_witness = {0.5, 0.5};
    return p;
}

inline ConvexBody unit_square() { return unit_square_data(); }

// The open slab {|x2| < 1}.
inline ConvexBody horizontal_strip() {
    funk::HPolytopeBody p;
    p.facets = {{{0.0, 1.0}, 1.0}, {{0.0, -1.0}, 1.0}};
    p.interior_witness = {0.0, 0.0};
    return p;
}

// Jittered regular k-gon around the origin in H-representation.
inline ConvexBody random_polygon(std::uint64_t seed, int k = 12) {
    funk::Rng rng(seed);
    funk::HPolytopeBody p;
    for (int j = 0; j < k; ++j) {
        double angle = 2.0 * std::numbers::pi * j / k + rng.uniform(-0.1, 0.1);
        p.facets.push_back({{std::cos(angle), std::sin(angle)}, rng.uniform(0.8, 1.2)});
    }
    p.interior_witness = {0.0, 0.0};
    return p;
}

// Rotated ellipse around the origin with semi-axes in [0.6, 1.6].
inline ConvexBody random_ellipse(std::uint64_t seed) {
    funk::Rng rng(seed);
    double a = rng.uniform(0.6, 1.6), b = rng.uniform(0.6, 1.6);
    double phi = rng.uniform(0.0, std::numbers::pi);
    double c = std::cos(phi), s = std::sin(phi);
    double da = 1.0 / (a * a), db = 1.0 / (b * b);
    funk::Matrix q(2);
    q.at(0, 0) = da * c * c + db * s * s;
    q.at(0, 1) = q.at(1, 0) = (da - db) * c * s;
    q.at(1, 1) = da * s * s + db * c * c;
    return funk::EllipsoidBody{{0.0, 0.0}, q};
}

inline ConvexBody wrap_implicit(const ConvexBody& body, double bounding_radius) {
    funk::ImplicitBody ib;
    ib.membership = [body](const Vec& p) { return funk::contains(body, p); };
    ib.interior_witness = body.witness();
    ib.bounding_radius = bounding_radius;
    ib.strictly_convex = funk::is_strictly_convex(body);
    return ib;
}

}  // namespace testsupport
