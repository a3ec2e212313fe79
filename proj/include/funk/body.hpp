#pragma once

// Open convex subsets of R^n: representations, membership, ray/boundary
// queries, support hyperplanes, structural predicates and affine slices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "funk/rng.hpp"
#include "funk/vec.hpp"

namespace funk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative tolerance of the bisection used for implicit bodies.
inline constexpr double kImplicitRelTol = 1e-12;

// Absolute tolerance (in scaled coordinates) for boundary-point preconditions.
inline constexpr double kBoundaryTol = 1e-9;

// Sampling controls for the probe-based semi-decisions (boundedness,
// symmetry, line containment). directions == 0 means 360 * dimension.
struct SampleOptions {
    int directions = 0;
    std::uint64_t seed = 1729;

    int count_for(int n) const { return directions > 0 ? directions : 360 * n; }
};

// Outcome of shooting the ray x + t*dir, t >= 0, at the boundary.
struct RadialResult {
    bool contained = false;  // the whole ray stays inside
    double t = 0;            // boundary parameter, meaningful when !contained

    static RadialResult hit(double t) { return RadialResult{false, t}; }
    static RadialResult contained_ray() { return RadialResult{true, 0}; }
};

// Open set {p : <normal,p> < offset}.
struct HalfSpaceBody {
    Vec normal;
    double offset = 0;
};

struct BallBody {
    Vec center;
    double radius = 1.0;
};

// Open set {p : (p-center)^T shape (p-center) < 1}, shape symmetric positive definite.
struct EllipsoidBody {
    Vec center;
    Matrix shape;
};

struct HPolytopeBody {
    std::vector<HalfSpaceBody> facets;
    Vec interior_witness;
};

struct ImplicitBody {
    std::function<bool(const Vec&)> membership;  // must be re-entrant
    Vec interior_witness;
    double bounding_radius = kInf;  // bracketing hint around the witness, +inf when unknown
    bool strictly_convex = false;   // declared by the constructor of the set
};

class ConvexBody;

struct IntersectionBody {
    std::vector<ConvexBody> members;
    Vec interior_witness;
};

// Immutable value type; copies share the representation.
class ConvexBody {
  public:
    using Repr = std::variant<HalfSpaceBody, BallBody, EllipsoidBody, HPolytopeBody,
                              ImplicitBody, IntersectionBody>;

    ConvexBody(HalfSpaceBody h);  // NOLINT(google-explicit-constructor)
    ConvexBody(BallBody b);
    ConvexBody(EllipsoidBody e);
    ConvexBody(HPolytopeBody p);
    ConvexBody(ImplicitBody i);
    ConvexBody(IntersectionBody i);

    int dimension() const { return dim_; }

    // A point strictly inside the set.
    const Vec& witness() const { return witness_; }

    const Repr& repr() const { return *repr_; }

  private:
    std::shared_ptr<const Repr> repr_;
    Vec witness_;
    int dim_ = 0;
};

namespace detail {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace detail

// ---------------------------------------------------------------------------
// Membership

inline bool contains(const ConvexBody& body, const Vec& p) {
    check_dim(p, body.dimension(), "point");
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody& h) { return dot(h.normal, p) < h.offset; },
            [&](const BallBody& b) { return norm2(sub(p, b.center)) < b.radius * b.radius; },
            [&](const EllipsoidBody& e) { return quadform(e.shape, sub(p, e.center)) < 1.0; },
            [&](const HPolytopeBody& poly) {
                for (const auto& f : poly.facets)
                    if (!(dot(f.normal, p) < f.offset)) return false;
                return true;
            },
            [&](const ImplicitBody& i) { return i.membership(p); },
            [&](const IntersectionBody& i) {
                for (const auto& m : i.members)
                    if (!contains(m, p)) return false;
                return true;
            },
        },
        body.repr());
}

// Closure membership up to an absolute tolerance in scaled coordinates.
inline bool in_closure(const ConvexBody& body, const Vec& p, double tol = kBoundaryTol) {
    check_dim(p, body.dimension(), "point");
    const double scale = std::max(1.0, norm(p));
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody& h) {
                return dot(h.normal, p) - h.offset <= tol * scale * norm(h.normal);
            },
            [&](const BallBody& b) {
                return norm(sub(p, b.center)) <= b.radius + tol * scale;
            },
            [&](const EllipsoidBody& e) {
                Vec w = sub(p, e.center);
                double grad = 2.0 * norm(matvec(e.shape, w));
                return quadform(e.shape, w) - 1.0 <= tol * scale * std::max(1.0, grad);
            },
            [&](const HPolytopeBody& poly) {
                for (const auto& f : poly.facets)
                    if (dot(f.normal, p) - f.offset > tol * scale * norm(f.normal)) return false;
                return true;
            },
            [&](const ImplicitBody& i) {
                if (i.membership(p)) return true;
                Vec toward = sub(i.interior_witness, p);
                double len = norm(toward);
                if (len <= 0) return true;
                return i.membership(axpy(p, 2.0 * tol * scale / len, toward));
            },
            [&](const IntersectionBody& i) {
                for (const auto& m : i.members)
                    if (!in_closure(m, p, tol)) return false;
                return true;
            },
        },
        body.repr());
}

// ---------------------------------------------------------------------------
// Radial queries
//
// radial_sup computes sup{t >= 0 : x + t*dir in the open set} for a base
// point x in the closure of the set. The empty set of admissible t yields
// hit(0): the ray exits immediately. Callers with interior base points can
// rely on a strictly positive hit parameter.

namespace detail {

inline RadialResult radial_halfspace(const Vec& normal, double offset, const Vec& x,
                                     const Vec& dir) {
    double g = dot(normal, dir);
    double slack = std::max(offset - dot(normal, x), 0.0);
    if (g <= 0) {
        if (slack > 0 || g < 0) return RadialResult::contained_ray();
        return RadialResult::hit(0);  // sliding along the boundary hyperplane
    }
    return RadialResult::hit(slack / g);
}

// Positive root of a t^2 + 2 b t + c = 0 with a > 0 and c <= 0 for points in
// the closure; the formula avoids cancellation for both signs of b.
inline RadialResult radial_quadratic(double a, double b, double c) {
    double disc = b * b - a * c;
    if (disc <= 0) return RadialResult::hit(0);
    double s = std::sqrt(disc);
    if (c < 0) return RadialResult::hit(b > 0 ? -c / (b + s) : (s - b) / a);
    return RadialResult::hit(std::max((s - b) / a, 0.0));
}

inline RadialResult radial_implicit(const ImplicitBody& body, const Vec& x, const Vec& dir) {
    if (!body.membership(x))
        throw GeometryError("implicit radial query requires an interior base point");
    const double dlen = norm(dir);
    double lo = 0;
    double hi;
    if (std::isfinite(body.bounding_radius)) {
        hi = std::max((body.bounding_radius + dist(x, body.interior_witness)) / dlen, 1e-6);
    } else {
        hi = 1.0 / dlen;
    }
    const double cap = std::ldexp(1.0, 60);
    while (body.membership(axpy(x, hi, dir))) {
        lo = hi;
        hi *= 2;
        if (hi > cap) return RadialResult::contained_ray();
    }
    for (int iter = 0; iter < 200 && hi - lo > kImplicitRelTol * hi; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (body.membership(axpy(x, mid, dir)))
            lo = mid;
        else
            hi = mid;
    }
    return RadialResult::hit(0.5 * (lo + hi));
}

}  // namespace detail

inline RadialResult radial_sup(const ConvexBody& body, const Vec& x, const Vec& dir) {
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody& h) { return detail::radial_halfspace(h.normal, h.offset, x, dir); },
            [&](const BallBody& b) {
                Vec w = sub(x, b.center);
                // (|w| - R)(|w| + R) keeps full relative accuracy for points
                // close to the boundary, where squaring first would not.
                double len = norm(w);
                return detail::radial_quadratic(norm2(dir), dot(w, dir),
                                                (len - b.radius) * (len + b.radius));
            },
            [&](const EllipsoidBody& e) {
                Vec w = sub(x, e.center);
                return detail::radial_quadratic(quadform(e.shape, dir), bilinear(e.shape, w, dir),
                                                quadform(e.shape, w) - 1.0);
            },
            [&](const HPolytopeBody& poly) {
                double best = kInf;
                for (const auto& f : poly.facets) {
                    RadialResult r = detail::radial_halfspace(f.normal, f.offset, x, dir);
                    if (!r.contained) best = std::min(best, r.t);
                }
                if (best == kInf) return RadialResult::contained_ray();
                return RadialResult::hit(best);
            },
            [&](const ImplicitBody& i) { return detail::radial_implicit(i, x, dir); },
            [&](const IntersectionBody& inter) {
                double best = kInf;
                for (const auto& m : inter.members) {
                    RadialResult r = radial_sup(m, x, dir);
                    if (!r.contained) best = std::min(best, r.t);
                }
                if (best == kInf) return RadialResult::contained_ray();
                return RadialResult::hit(best);
            },
        },
        body.repr());
}

inline RadialResult ray_boundary(const ConvexBody& body, const Vec& x, const Vec& dir) {
    check_dim(x, body.dimension(), "ray origin");
    check_dim(dir, body.dimension(), "ray direction");
    if (norm2(dir) == 0) throw GeometryError("ray direction must be nonzero");
    if (!contains(body, x)) throw GeometryError("ray origin is not inside the body");
    return radial_sup(body, x, dir);
}

// ---------------------------------------------------------------------------
// Structural predicates

inline bool is_strictly_convex(const ConvexBody& body) {
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody&) { return false; },
            [&](const BallBody&) { return true; },
            [&](const EllipsoidBody&) { return true; },
            [&](const HPolytopeBody&) { return body.dimension() < 2; },
            [&](const ImplicitBody& i) { return i.strictly_convex; },
            [&](const IntersectionBody& i) {
                // Conservative: strictness of one member carries over.
                for (const auto& m : i.members)
                    if (is_strictly_convex(m)) return true;
                return false;
            },
        },
        body.repr());
}

namespace detail {

inline void collect_outward_normals(const ConvexBody& body, std::vector<Vec>& out) {
    std::visit(Overloaded{
                   [&](const HalfSpaceBody& h) { out.push_back(h.normal); },
                   [&](const BallBody&) {},
                   [&](const EllipsoidBody&) {},
                   [&](const HPolytopeBody& poly) {
                       for (const auto& f : poly.facets) out.push_back(f.normal);
                   },
                   [&](const ImplicitBody&) {},
                   [&](const IntersectionBody& i) {
                       for (const auto& m : i.members) collect_outward_normals(m, out);
                   },
               },
               body.repr());
}

// Candidate recession directions: coordinate axes, a deterministic spread of
// unit directions, and combinations of the facet normals (their negations,
// pairwise sums, and in the plane their perpendiculars).
inline std::vector<Vec> recession_probe_directions(const ConvexBody& body,
                                                   const SampleOptions& opts) {
    const int n = body.dimension();
    std::vector<Vec> dirs = axis_directions(n);
    for (const Vec& d : sphere_directions(n, opts.count_for(n), opts.seed)) dirs.push_back(d);
    std::vector<Vec> normals;
    collect_outward_normals(body, normals);
    for (const Vec& nu : normals) dirs.push_back(normalized(negated(nu)));
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = i + 1; j < normals.size(); ++j) {
            Vec s = add(normals[i], normals[j]);
            if (norm(s) > 1e-9) dirs.push_back(normalized(negated(s)));
        }
    if (n == 2)
        for (const Vec& nu : normals) {
            Vec perp = normalized(Vec{-nu[1], nu[0]});
            dirs.push_back(perp);
            dirs.push_back(negated(perp));
        }
    return dirs;
}

inline bool probe_bounded(const ConvexBody& body, const SampleOptions& opts) {
    for (const Vec& d : recession_probe_directions(body, opts))
        if (radial_sup(body, body.witness(), d).contained) return false;
    return true;
}

}  // namespace detail

// Sampled certificate for polytopes and intersections; exact for the other
// representations. A false answer always carries a genuine recession
// direction; true answers are trusted up to the direction sample.
inline bool is_bounded(const ConvexBody& body, const SampleOptions& opts = {}) {
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody&) { return false; },
            [&](const BallBody&) { return true; },
            [&](const EllipsoidBody&) { return true; },
            [&](const HPolytopeBody&) { return detail::probe_bounded(body, opts); },
            [&](const ImplicitBody& i) { return std::isfinite(i.bounding_radius); },
            [&](const IntersectionBody& i) {
                for (const auto& m : i.members)
                    if (is_bounded(m, opts)) return true;
                return detail::probe_bounded(body, opts);
            },
        },
        body.repr());
}

// ---------------------------------------------------------------------------
// Support hyperplanes

namespace detail {

inline double facet_residual(const HalfSpaceBody& f, const Vec& b) {
    return std::abs(dot(f.normal, b) - f.offset) / norm(f.normal);
}

inline HalfSpaceBody unit_halfspace(const Vec& normal, double offset) {
    double len = norm(normal);
    return HalfSpaceBody{scaled(normal, 1.0 / len), offset / len};
}

inline HalfSpaceBody support_implicit(const ConvexBody& body, const ImplicitBody& ib,
                                      const Vec& b) {
    const int n = dim_of(b);
    const Vec& w = ib.interior_witness;
    Vec u = sub(b, w);
    double len = norm(u);
    if (len <= 0) throw GeometryError("support point coincides with the witness");
    u = scaled(u, 1.0 / len);
    const double scale = std::max(1.0, norm(b));
    const double eps = kBoundaryTol * scale;
    if (!ib.membership(axpy(b, -eps, u)) || ib.membership(axpy(b, eps, u)))
        throw GeometryError("support point is not on the boundary within tolerance");

    // Estimate the tangent plane from boundary points hit by slightly tilted
    // rays out of the witness, then take the orthogonal complement.
    std::vector<Vec> tangent_basis;
    for (int i = 0; i < n && static_cast<int>(tangent_basis.size()) < n - 1; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        e = axpy(e, -dot(e, u), u);
        for (const Vec& q : tangent_basis) e = axpy(e, -dot(e, q), q);
        if (norm(e) > 1e-8) tangent_basis.push_back(normalized(e));
    }
    const double tilt = 1e-5;
    std::vector<Vec> spans;
    for (const Vec& tg : tangent_basis) {
        Vec dp = normalized(axpy(u, tilt, tg));
        Vec dm = normalized(axpy(u, -tilt, tg));
        RadialResult rp = radial_sup(body, w, dp);
        RadialResult rm = radial_sup(body, w, dm);
        if (rp.contained || rm.contained) continue;
        spans.push_back(sub(axpy(w, rp.t, dp), axpy(w, rm.t, dm)));
    }
    std::vector<Vec> q;
    for (Vec v : spans) {
        for (const Vec& e : q) v = axpy(v, -dot(v, e), e);
        if (norm(v) > 1e-12 * scale) q.push_back(normalized(v));
    }
    Vec nu = u;
    for (const Vec& e : q) nu = axpy(nu, -dot(nu, e), e);
    if (norm(nu) < 1e-10) nu = u;  // locally flat along the probe plane
    nu = normalized(nu);
    if (dot(nu, u) < 0) nu = negated(nu);
    return HalfSpaceBody{nu, dot(nu, b)};
}

}  // namespace detail

// Returns a half-space containing the body whose boundary hyperplane passes
// through the boundary point b, with unit normal. Polytope corners break ties
// toward the lowest facet index.
inline HalfSpaceBody support_hyperplane(const ConvexBody& body, const Vec& b) {
    check_dim(b, body.dimension(), "support point");
    const double scale = std::max(1.0, norm(b));
    const double tol = kBoundaryTol * scale;
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody& h) {
                if (detail::facet_residual(h, b) > tol)
                    throw GeometryError("support point is not on the boundary within tolerance");
                return detail::unit_halfspace(h.normal, h.offset);
            },
            [&](const BallBody& ball) {
                Vec u = sub(b, ball.center);
                if (std::abs(norm(u) - ball.radius) > tol)
                    throw GeometryError("support point is not on the boundary within tolerance");
                Vec nu = normalized(u);
                return HalfSpaceBody{nu, dot(nu, b)};
            },
            [&](const EllipsoidBody& e) {
                Vec w = sub(b, e.center);
                Vec grad = matvec(e.shape, w);
                double res = std::abs(quadform(e.shape, w) - 1.0) /
                             std::max(2.0 * norm(grad), 1e-30);
                if (res > tol)
                    throw GeometryError("support point is not on the boundary within tolerance");
                Vec nu = normalized(grad);
                return HalfSpaceBody{nu, dot(nu, b)};
            },
            [&](const HPolytopeBody& poly) {
                for (const auto& f : poly.facets)
                    if (dot(f.normal, b) - f.offset > tol * norm(f.normal))
                        throw GeometryError("support point lies outside the polytope");
                for (const auto& f : poly.facets)
                    if (detail::facet_residual(f, b) <= tol)
                        return detail::unit_halfspace(f.normal, f.offset);
                throw GeometryError("support point is not on the boundary within tolerance");
            },
            [&](const ImplicitBody& i) { return detail::support_implicit(body, i, b); },
            [&](const IntersectionBody& inter) {
                for (const auto& m : inter.members)
                    if (!contains(m, b)) return support_hyperplane(m, b);
                // Rounding can leave b a hair inside every member; fall back
                // to the first member whose boundary is within tolerance.
                for (const auto& m : inter.members) {
                    try {
                        return support_hyperplane(m, b);
                    } catch (const GeometryError&) {
                    }
                }
                throw GeometryError("support point is interior to the intersection");
            },
        },
        body.repr());
}

// ---------------------------------------------------------------------------
// Affine slices

// Restriction of the body to base + span(frame), expressed in the frame
// coordinates as an implicit body with witness at the slice origin.
inline ConvexBody affine_slice(const ConvexBody& body, const Vec& base,
                               const std::vector<Vec>& frame) {
    const int n = body.dimension();
    check_dim(base, n, "slice base");
    if (frame.empty()) throw GeometryError("slice frame is empty");
    for (const Vec& f : frame) check_dim(f, n, "slice frame vector");
    if (!contains(body, base)) throw GeometryError("slice base point is not inside the body");

    std::vector<Vec> q;
    for (const Vec& f : frame) {
        Vec v = f;
        for (const Vec& e : q) v = axpy(v, -dot(v, e), e);
        if (norm(v) <= 1e-10 * std::max(1.0, norm(f)))
            throw GeometryError("slice frame vectors are linearly dependent");
        q.push_back(normalized(v));
    }

    const int k = static_cast<int>(frame.size());
    auto map_point = [base, frame](const Vec& u) {
        Vec p = base;
        for (std::size_t i = 0; i < frame.size(); ++i) p = axpy(p, u[i], frame[i]);
        return p;
    };

    ImplicitBody slice;
    slice.membership = [body, map_point](const Vec& u) { return contains(body, map_point(u)); };
    slice.interior_witness = Vec(k, 0.0);
    slice.strictly_convex = is_strictly_convex(body);
    slice.bounding_radius = kInf;

    if (is_bounded(body)) {
        ConvexBody rough(slice);
        double far = 0;
        std::vector<Vec> dirs = axis_directions(k);
        for (const Vec& d : sphere_directions(k, 32, 77)) dirs.push_back(d);
        for (const Vec& d : dirs) {
            RadialResult r = radial_sup(rough, slice.interior_witness, d);
            if (!r.contained) far = std::max(far, r.t);
        }
        slice.bounding_radius = std::max(1.0, 4.0 * far);
    }
    return ConvexBody(std::move(slice));
}

// ---------------------------------------------------------------------------
// ConvexBody constructors (placed after the free functions they validate with)

inline ConvexBody::ConvexBody(HalfSpaceBody h) {
    dim_ = dim_of(h.normal);
    if (dim_ < 1 || !all_finite(h.normal) || !std::isfinite(h.offset))
        throw GeometryError("half-space: invalid data");
    double nn = norm2(h.normal);
    if (!(nn > 0)) throw GeometryError("half-space: zero normal");
    witness_ = scaled(h.normal, (h.offset - 1.0) / nn);
    repr_ = std::make_shared<const Repr>(std::move(h));
}

inline ConvexBody::ConvexBody(BallBody b) {
    dim_ = dim_of(b.center);
    if (dim_ < 1 || !all_finite(b.center) || !(b.radius > 0) || !std::isfinite(b.radius))
        throw GeometryError("ball: invalid data");
    witness_ = b.center;
    repr_ = std::make_shared<const Repr>(std::move(b));
}

inline ConvexBody::ConvexBody(EllipsoidBody e) {
    dim_ = dim_of(e.center);
    if (dim_ < 1 || !all_finite(e.center)) throw GeometryError("ellipsoid: invalid center");
    if (e.shape.n != dim_) throw GeometryError("ellipsoid: shape matrix dimension mismatch");
    double maxabs = 0;
    for (double v : e.shape.a) {
        if (!std::isfinite(v)) throw GeometryError("ellipsoid: non-finite shape entry");
        maxabs = std::max(maxabs, std::abs(v));
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j) {
            if (std::abs(e.shape.at(i, j) - e.shape.at(j, i)) > 1e-12 * std::max(1.0, maxabs))
                throw GeometryError("ellipsoid: shape matrix is not symmetric");
            double avg = 0.5 * (e.shape.at(i, j) + e.shape.at(j, i));
            e.shape.at(i, j) = e.shape.at(j, i) = avg;
        }
    if (!is_positive_definite(e.shape))
        throw GeometryError("ellipsoid: shape matrix is not positive definite");
    witness_ = e.center;
    repr_ = std::make_shared<const Repr>(std::move(e));
}

inline ConvexBody::ConvexBody(HPolytopeBody p) {
    if (p.facets.empty()) throw GeometryError("polytope: empty facet list");
    dim_ = dim_of(p.interior_witness);
    if (dim_ < 1 || !all_finite(p.interior_witness))
        throw GeometryError("polytope: invalid witness");
    for (const auto& f : p.facets) {
        if (dim_of(f.normal) != dim_) throw GeometryError("polytope: facet dimension mismatch");
        if (!all_finite(f.normal) || !std::isfinite(f.offset) || !(norm2(f.normal) > 0))
            throw GeometryError("polytope: invalid facet");
        if (!(dot(f.normal, p.interior_witness) < f.offset))
            throw GeometryError("polytope: witness is not strictly interior");
    }
    witness_ = p.interior_witness;
    repr_ = std::make_shared<const Repr>(std::move(p));
}

inline ConvexBody::ConvexBody(ImplicitBody i) {
    dim_ = dim_of(i.interior_witness);
    if (dim_ < 1 || !all_finite(i.interior_witness))
        throw GeometryError("implicit body: invalid witness");
    if (!i.membership) throw GeometryError("implicit body: missing membership predicate");
    if (!(i.bounding_radius > 0)) throw GeometryError("implicit body: invalid bounding radius");
    if (!i.membership(i.interior_witness))
        throw GeometryError("implicit body: witness is not a member");
    witness_ = i.interior_witness;
    repr_ = std::make_shared<const Repr>(std::move(i));
}

inline ConvexBody::ConvexBody(IntersectionBody i) {
    if (i.members.empty()) throw GeometryError("intersection: empty member list");
    dim_ = i.members.front().dimension();
    for (const auto& m : i.members)
        if (m.dimension() != dim_) throw GeometryError("intersection: member dimension mismatch");
    check_dim(i.interior_witness, dim_, "intersection witness");
    for (const auto& m : i.members)
        if (!contains(m, i.interior_witness))
            throw GeometryError("intersection: witness is not interior to every member");
    witness_ = i.interior_witness;
    repr_ = std::make_shared<const Repr>(std::move(i));
}

}  // namespace funk
