#pragma once

// The Funk weak metric of an open convex body: closed-form distance,
// geodesic chains, flat-facet polygonal geodesics, right/left metric spheres
// and their homothety structure, intersection and convergence checks.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "funk/finsler.hpp"

namespace funk {

struct FunkDistanceResult {
    double value = 0;
    std::optional<Vec> boundary_point;  // exit point a+ of the ray, absent for contained rays
};

// F(x, y) = log(t1 / t2) where t1, t2 are the boundary parameters of the ray
// through x and y measured from x and from y; zero when the ray stays inside.
// Evaluating both parameters from their own base points keeps the ratio
// accurate when y sits close to the boundary.
inline FunkDistanceResult funk_distance(const ConvexBody& body, const Vec& x, const Vec& y) {
    const int n = body.dimension();
    check_dim(x, n, "point");
    check_dim(y, n, "point");
    if (!contains(body, x) || !contains(body, y))
        throw GeometryError("point is not inside the domain");
    Vec d = sub(y, x);
    if (norm2(d) == 0) return {};
    RadialResult from_x = radial_sup(body, x, d);
    if (from_x.contained) return {};
    RadialResult from_y = radial_sup(body, y, d);
    if (from_y.contained || !(from_y.t > 0))
        throw GeometryError("inconsistent radial answers along the distance ray");
    FunkDistanceResult out;
    out.value = std::log(from_x.t / from_y.t);
    out.boundary_point = axpy(y, from_y.t, d);
    return out;
}

// max{log(x2/y2), 0} on the upper half-plane {p : p2 > 0}.
inline double funk_upper_halfplane(const Vec& x, const Vec& y) {
    check_dim(x, 2, "point");
    check_dim(y, 2, "point");
    if (!(x[1] > 0) || !(y[1] > 0))
        throw GeometryError("upper half-plane points need a positive second coordinate");
    return std::max(std::log(x[1] / y[1]), 0.0);
}

// True when the chained distances telescope to the direct distance.
inline bool is_geodesic_chain(const ConvexBody& body, const std::vector<Vec>& points,
                              double tol = 1e-9) {
    if (points.size() < 2) throw GeometryError("a geodesic chain needs at least two points");
    double total = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        total += funk_distance(body, points[i], points[i + 1]).value;
    double direct = funk_distance(body, points.front(), points.back()).value;
    return std::abs(total - direct) <= tol;
}

namespace detail {

inline bool on_common_facet(const HPolytopeBody& poly, const std::vector<Vec>& points,
                            double tol) {
    for (const auto& f : poly.facets) {
        bool all = true;
        for (const Vec& p : points)
            if (facet_residual(f, p) > tol) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

}  // namespace detail

// Off-segment middle point y between x and z whose chain x -> y -> z is
// additive: y steps from the midpoint of [x, z] toward the chosen facet along
// its normal (half the remaining distance each time) until the exit points of
// all three rays share one flat facet.
inline Path polygonal_geodesic_witness(const ConvexBody& body, const Vec& x, const Vec& z,
                                       std::size_t facet_index) {
    const auto* poly = std::get_if<HPolytopeBody>(&body.repr());
    if (!poly) throw GeometryError("polygonal witness requires an H-polytope body");
    if (body.dimension() != 2) throw GeometryError("polygonal witness requires a planar body");
    if (facet_index >= poly->facets.size()) throw GeometryError("facet index out of range");
    check_dim(x, 2, "point");
    check_dim(z, 2, "point");
    if (!contains(body, x) || !contains(body, z))
        throw GeometryError("point is not inside the domain");
    Vec chord = sub(z, x);
    if (norm2(chord) == 0) throw GeometryError("endpoints coincide");

    RadialResult direct = radial_sup(body, x, chord);
    if (direct.contained) throw GeometryError("the ray through the endpoints stays inside");
    Vec exit_direct = axpy(x, direct.t, chord);

    const HalfSpaceBody facet = detail::unit_halfspace(poly->facets[facet_index].normal,
                                                       poly->facets[facet_index].offset);
    Vec mid = lerp(x, z, 0.5);
    double facet_gap = facet.offset - dot(facet.normal, mid);
    if (!(facet_gap > 0)) throw GeometryError("midpoint is not strictly inside the chosen facet");

    const double scale = std::max({1.0, norm(x), norm(z)});
    const double tol = kBoundaryTol * scale;
    double step = 0.5 * facet_gap;
    for (int k = 0; k < 60; ++k, step *= 0.5) {
        Vec y = axpy(mid, step, facet.normal);
        if (!contains(body, y)) continue;
        if (point_segment_distance(y, x, z) <= 1e-12 * scale) continue;
        Vec dxy = sub(y, x);
        Vec dyz = sub(z, y);
        if (norm2(dxy) == 0 || norm2(dyz) == 0) continue;
        RadialResult rxy = radial_sup(body, x, dxy);
        RadialResult ryz = radial_sup(body, y, dyz);
        if (rxy.contained || ryz.contained) continue;
        Vec exit_xy = axpy(x, rxy.t, dxy);
        Vec exit_yz = axpy(y, ryz.t, dyz);
        if (detail::on_common_facet(*poly, {exit_direct, exit_xy, exit_yz}, tol))
            return Path::polyline({x, y, z});
    }
    throw GeometryError("no off-segment witness: the rays never share a flat facet");
}

enum class SphereSide { Forward, Backward };

struct SphereSample {
    Vec center;
    double delta = 0;
    SphereSide side = SphereSide::Forward;
    std::vector<Vec> points;
    bool truncated = false;  // backward: candidates clipped by the body; any side: contained rays skipped
};

// Right sphere S(x, delta): the boundary scaled about x by 1 - e^{-delta}.
// Directions whose ray never exits are skipped and flagged.
inline SphereSample forward_sphere(const ConvexBody& body, const Vec& x, double delta,
                                   int num_dirs = 0) {
    const int n = body.dimension();
    check_dim(x, n, "sphere center");
    if (!contains(body, x)) throw GeometryError("sphere center is not inside the body");
    if (!(delta >= 0)) throw GeometryError("sphere radius must be nonnegative");
    if (num_dirs <= 0) num_dirs = default_sphere_direction_count(n);
    const double factor = -std::expm1(-delta);  // 1 - e^{-delta}
    SphereSample out{x, delta, SphereSide::Forward, {}, false};
    out.points.reserve(num_dirs);
    for (const Vec& u : sphere_directions(n, num_dirs)) {
        RadialResult r = radial_sup(body, x, u);
        if (r.contained) {
            out.truncated = true;
            continue;
        }
        out.points.push_back(axpy(x, factor * r.t, u));
    }
    return out;
}

// Left sphere S'(x, delta): the boundary scaled about x by e^{delta} - 1 and
// centrally reflected through x, clipped to the body.
inline SphereSample backward_sphere(const ConvexBody& body, const Vec& x, double delta,
                                    int num_dirs = 0) {
    const int n = body.dimension();
    check_dim(x, n, "sphere center");
    if (!contains(body, x)) throw GeometryError("sphere center is not inside the body");
    if (!(delta >= 0)) throw GeometryError("sphere radius must be nonnegative");
    if (num_dirs <= 0) num_dirs = default_sphere_direction_count(n);
    const double factor = std::expm1(delta);  // e^{delta} - 1
    SphereSample out{x, delta, SphereSide::Backward, {}, false};
    out.points.reserve(num_dirs);
    for (const Vec& u : sphere_directions(n, num_dirs)) {
        RadialResult r = radial_sup(body, x, negated(u));
        if (r.contained) {
            out.truncated = true;
            continue;
        }
        Vec candidate = axpy(x, factor * r.t, u);
        if (contains(body, candidate))
            out.points.push_back(std::move(candidate));
        else
            out.truncated = true;
    }
    return out;
}

// Sampled certificate: the left sphere is compact iff no candidate fell
// outside the body.
inline bool backward_sphere_is_compact(const ConvexBody& body, const Vec& x, double delta,
                                       int num_dirs = 0) {
    if (!is_bounded(body)) throw GeometryError("compactness probe requires a bounded body");
    return !backward_sphere(body, x, delta, num_dirs).truncated;
}

// Distance on the intersection of two bodies versus the max of the two
// individual distances; the pair should agree.
inline std::pair<double, double> funk_intersection_check(const ConvexBody& b1,
                                                         const ConvexBody& b2, const Vec& x,
                                                         const Vec& y) {
    if (b1.dimension() != b2.dimension())
        throw GeometryError("bodies live in different dimensions");
    if (!contains(b1, x) || !contains(b2, x) || !contains(b1, y) || !contains(b2, y))
        throw GeometryError("point is not inside both bodies");
    ConvexBody inter(IntersectionBody{{b1, b2}, x});
    double lhs = funk_distance(inter, x, y).value;
    double rhs = std::max(funk_distance(b1, x, y).value, funk_distance(b2, x, y).value);
    return {lhs, rhs};
}

struct ConvergenceReport {
    std::vector<double> forward;    // F(x, x_k)
    std::vector<double> backward;   // F(x_k, x)
    std::vector<double> euclidean;  // |x - x_k|

    // The three notions of convergence agree: the tails drop below eps together.
    bool co_converges(double eps = 1e-6) const {
        return !forward.empty() && forward.back() < eps && backward.back() < eps &&
               euclidean.back() < eps;
    }

    double max_forward() const {
        return forward.empty() ? 0.0 : *std::max_element(forward.begin(), forward.end());
    }

    double max_backward() const {
        return backward.empty() ? 0.0 : *std::max_element(backward.begin(), backward.end());
    }

    // Boundary-bound sequences: the forward distances blow up while the
    // backward distances stay bounded.
    bool diverges_one_sided(double forward_above, double backward_bound) const {
        return max_forward() > forward_above && max_backward() <= backward_bound;
    }
};

inline ConvergenceReport convergence_probe(const ConvexBody& body, const Vec& x,
                                           const std::vector<Vec>& points) {
    if (!is_bounded(body)) throw GeometryError("convergence probe requires a bounded body");
    if (!contains(body, x)) throw GeometryError("point is not inside the domain");
    ConvergenceReport out;
    out.forward.reserve(points.size());
    out.backward.reserve(points.size());
    out.euclidean.reserve(points.size());
    for (const Vec& p : points) {
        out.forward.push_back(funk_distance(body, x, p).value);
        out.backward.push_back(funk_distance(body, p, x).value);
        out.euclidean.push_back(dist(x, p));
    }
    return out;
}

namespace detail {

inline double diameter_estimate(const ConvexBody& body) {
    const int n = body.dimension();
    double best = 0;
    for (const Vec& d : sphere_directions(n, std::max(64, 16 * n))) {
        RadialResult fwd = radial_sup(body, body.witness(), d);
        RadialResult bwd = radial_sup(body, body.witness(), negated(d));
        if (fwd.contained || bwd.contained) return kInf;
        best = std::max(best, fwd.t + bwd.t);
    }
    return best;
}

}  // namespace detail

// Strict triangle inequality probe on a bounded strictly convex body. Points
// closer to the segment [x, z] than 5% of the sampled diameter report false;
// otherwise the detour gap must exceed the margin.
inline bool strict_triangle_check(const ConvexBody& body, const Vec& x, const Vec& y,
                                  const Vec& z, double margin = 1e-12) {
    if (!is_strictly_convex(body)) throw GeometryError("body is not strictly convex");
    if (!is_bounded(body)) throw GeometryError("body is not bounded");
    const int n = body.dimension();
    check_dim(x, n, "point");
    check_dim(y, n, "point");
    check_dim(z, n, "point");
    if (!contains(body, x) || !contains(body, y) || !contains(body, z))
        throw GeometryError("point is not inside the domain");
    double diam = detail::diameter_estimate(body);
    if (point_segment_distance(y, x, z) < 0.05 * diam) return false;
    double gap = funk_distance(body, x, y).value + funk_distance(body, y, z).value -
                 funk_distance(body, x, z).value;
    return gap > margin;
}

}  // namespace funk
