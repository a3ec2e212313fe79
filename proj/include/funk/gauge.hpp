#pragma once

// Radial and Minkowski functions of a convex body, their closed forms for
// balls and half-spaces, and the translation-invariant weak metric with its
// classification flags.

#include <cmath>
#include <string>

#include "funk/body.hpp"

namespace funk {

// Gauge value from a radial answer: 0 for contained rays, +inf when the ray
// exits immediately (base point on the boundary), 1/t otherwise. Never NaN.
inline double gauge_from_radial(const RadialResult& r) {
    if (r.contained) return 0.0;
    if (!(r.t > 0)) return kInf;
    return 1.0 / r.t;
}

// Minkowski function of the body with respect to an interior base point.
inline double minkowski_gauge(const ConvexBody& body, const Vec& x, const Vec& xi) {
    check_dim(x, body.dimension(), "gauge base point");
    check_dim(xi, body.dimension(), "gauge direction");
    if (!contains(body, x)) throw GeometryError("gauge base point is not inside the body");
    if (norm2(xi) == 0) return 0.0;
    return gauge_from_radial(radial_sup(body, x, xi));
}

inline double gauge_halfspace_closed(const Vec& nu, double s, const Vec& x, const Vec& xi) {
    check_dim(xi, dim_of(nu), "gauge direction");
    check_dim(x, dim_of(nu), "gauge base point");
    double slack = s - dot(nu, x);
    if (!(slack > 0)) throw GeometryError("base point is not inside the half-space");
    if (norm2(xi) == 0) return 0.0;
    return std::max(dot(nu, xi) / slack, 0.0);
}

// Ball of radius R centered at the origin.
inline double gauge_ball_closed(double R, const Vec& x, const Vec& xi) {
    if (!(R > 0)) throw GeometryError("ball radius must be positive");
    check_dim(xi, dim_of(x), "gauge direction");
    double d = R * R - norm2(x);
    if (!(d > 0)) throw GeometryError("base point is not inside the open ball");
    if (norm2(xi) == 0) return 0.0;
    double xx = dot(xi, x);
    return (std::sqrt(xx * xx + d * norm2(xi)) + xx) / d;
}

// Weak metric delta(x, y) of the body's gauge based at the origin; the origin
// must lie in the closure of the body. Values can be +inf when the origin is
// a boundary point.
inline double minkowski_weak_metric(const ConvexBody& body, const Vec& x, const Vec& y) {
    const int n = body.dimension();
    check_dim(x, n, "point");
    check_dim(y, n, "point");
    Vec origin(n, 0.0);
    if (!in_closure(body, origin))
        throw GeometryError("the origin is not in the closure of the body");
    Vec d = sub(y, x);
    if (norm2(d) == 0) return 0.0;
    return gauge_from_radial(radial_sup(body, origin, d));
}

struct WeakMetricClassification {
    bool finite = false;
    bool symmetric = false;
    bool strongly_separating = false;
    bool weakly_separating = false;
    std::string finite_note;
    std::string symmetric_note;
    std::string strongly_note;
    std::string weakly_note;
};

namespace detail {

inline std::string dir_string(const Vec& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

inline bool gauges_equal(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
    return std::abs(a - b) <= 1e-9 * std::max({1.0, a, b});
}

// Directions to probe for full-line containment: axes, a deterministic
// spread, reversed facet normals and (in the plane) their perpendiculars.
inline std::vector<Vec> line_probe_directions(const ConvexBody& body, const SampleOptions& opts) {
    return recession_probe_directions(body, opts);
}

}  // namespace detail

// Flags of the weak metric delta(x,y) = gauge(y - x) based at the origin.
// Ball and half-space answers are structural; the rest are sampled
// certificates over a seeded direction set.
inline WeakMetricClassification classify_minkowski(const ConvexBody& body,
                                                   const SampleOptions& opts = {}) {
    const int n = body.dimension();
    Vec origin(n, 0.0);
    if (!in_closure(body, origin))
        throw GeometryError("the origin is not in the closure of the body");

    WeakMetricClassification out;

    out.finite = contains(body, origin);
    out.finite_note = out.finite ? "origin is interior" : "origin lies on the boundary";

    const bool origin_interior = out.finite;

    if (const auto* ball = std::get_if<BallBody>(&body.repr())) {
        out.symmetric = norm2(ball->center) == 0;
        out.symmetric_note = out.symmetric ? "ball centered at the origin" : "ball center off the origin";
    } else if (const auto* ell = std::get_if<EllipsoidBody>(&body.repr())) {
        out.symmetric = norm2(ell->center) == 0;
        out.symmetric_note = out.symmetric ? "ellipsoid centered at the origin" : "center off the origin";
    } else if (std::holds_alternative<HalfSpaceBody>(body.repr())) {
        out.symmetric = false;
        out.symmetric_note = "a half-space is never centrally symmetric";
    } else if (!origin_interior) {
        out.symmetric = false;
        out.symmetric_note = "origin on the boundary: gauge blows up one-sidedly";
    } else {
        out.symmetric = true;
        std::vector<Vec> dirs = axis_directions(n);
        for (const Vec& d : sphere_directions(n, opts.count_for(n), opts.seed)) dirs.push_back(d);
        for (const Vec& d : dirs) {
            double g1 = gauge_from_radial(radial_sup(body, origin, d));
            double g2 = gauge_from_radial(radial_sup(body, origin, negated(d)));
            if (!detail::gauges_equal(g1, g2)) {
                out.symmetric = false;
                out.symmetric_note = "gauge differs along " + detail::dir_string(d);
                break;
            }
        }
        if (out.symmetric)
            out.symmetric_note = "sampled gauge symmetry over " + std::to_string(dirs.size()) +
                                 " directions";
    }

    out.strongly_separating = is_bounded(body, opts);
    out.strongly_note = out.strongly_separating ? "body is bounded"
                                                : "recession direction found";

    if (out.strongly_separating) {
        out.weakly_separating = true;
        out.weakly_note = "bounded body contains no line";
    } else if (std::holds_alternative<HalfSpaceBody>(body.repr())) {
        out.weakly_separating = n < 2;
        out.weakly_note = out.weakly_separating ? "a 1-d half-space is a ray"
                                                : "boundary-parallel lines are contained";
    } else {
        out.weakly_separating = true;
        for (const Vec& d : detail::line_probe_directions(body, opts)) {
            if (radial_sup(body, body.witness(), d).contained &&
                radial_sup(body, body.witness(), negated(d)).contained) {
                out.weakly_separating = false;
                out.weakly_note = "contains the line through the witness along " +
                                  detail::dir_string(d);
                break;
            }
        }
        if (out.weakly_separating) out.weakly_note = "no sampled direction yields a contained line";
    }

    return out;
}

}  // namespace funk
