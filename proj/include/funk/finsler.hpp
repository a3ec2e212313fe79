#pragma once

// The tautological weak Finsler structure of a convex body: its Lagrangian,
// path-length integration, the chord closed form, a randomized minimality
// probe and the pointwise-max combinator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "funk/gauge.hpp"

namespace funk {

struct TautologicalStructure {
    ConvexBody body;

    int dimension() const { return body.dimension(); }
};

// Finsler norm of the tangent vector xi at x: the Minkowski gauge of the body
// with respect to x.
inline double lagrangian(const TautologicalStructure& s, const Vec& x, const Vec& xi) {
    return minkowski_gauge(s.body, x, xi);
}

struct PathSample {
    double t = 0;
    Vec point;
    Vec velocity;
};

// Piecewise-C1 curve: either a polyline (constant chord velocity per segment)
// or a sampled curve with per-sample velocities, interpolated cubically.
class Path {
  public:
    static Path polyline(std::vector<Vec> vertices) {
        if (vertices.size() < 2) throw GeometryError("polyline needs at least two vertices");
        const int n = dim_of(vertices.front());
        for (const Vec& v : vertices) {
            check_dim(v, n, "polyline vertex");
            if (!all_finite(v)) throw GeometryError("polyline vertex is not finite");
        }
        Path p;
        p.data_ = std::move(vertices);
        return p;
    }

    static Path sampled(std::vector<PathSample> samples) {
        if (samples.size() < 2) throw GeometryError("sampled path needs at least two samples");
        const int n = dim_of(samples.front().point);
        double prev = -kInf;
        for (const PathSample& s : samples) {
            check_dim(s.point, n, "path sample point");
            check_dim(s.velocity, n, "path sample velocity");
            if (!std::isfinite(s.t) || !all_finite(s.point) || !all_finite(s.velocity))
                throw GeometryError("path sample is not finite");
            if (!(s.t > prev)) throw GeometryError("path sample times must be strictly increasing");
            prev = s.t;
        }
        Path p;
        p.data_ = std::move(samples);
        return p;
    }

    bool is_polyline() const { return std::holds_alternative<std::vector<Vec>>(data_); }

    const std::vector<Vec>& vertices() const { return std::get<std::vector<Vec>>(data_); }

    const std::vector<PathSample>& samples() const { return std::get<std::vector<PathSample>>(data_); }

    int dimension() const {
        return is_polyline() ? dim_of(vertices().front()) : dim_of(samples().front().point);
    }

    const Vec& front() const { return is_polyline() ? vertices().front() : samples().front().point; }
    const Vec& back() const { return is_polyline() ? vertices().back() : samples().back().point; }

  private:
    Path() = default;
    std::variant<std::vector<Vec>, std::vector<PathSample>> data_;
};

// Fixed-order Gauss-Legendre panels per segment. Lengths are reported after
// one halving refinement together with the relative difference it produced.
struct QuadratureSpec {
    int subdivisions = 64;
    static constexpr int order = 8;
};

struct PathLength {
    double value = 0;             // refined estimate (doubled panel count)
    double refinement_delta = 0;  // relative difference between the two passes
};

namespace detail {

inline constexpr double kGl8Node[4] = {
    0.18343464249564980, 0.52553240991632899, 0.79666647741362674, 0.96028985649753623};
inline constexpr double kGl8Weight[4] = {
    0.36268378337836198, 0.31370664587788729, 0.22238103445337447, 0.10122853629037626};

template <class F>
double gl8_panels(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double r = 0.5 * h;
        double acc = 0;
        for (int j = 0; j < 4; ++j) {
            const double dx = r * kGl8Node[j];
            acc += kGl8Weight[j] * (f(mid - dx) + f(mid + dx));
        }
        total += acc * r;
    }
    return total;
}

inline double gauge_on_path(const ConvexBody& body, const Vec& p, const Vec& v) {
    if (!contains(body, p)) throw GeometryError("path leaves the domain");
    if (norm2(v) == 0) return 0.0;
    double g = gauge_from_radial(radial_sup(body, p, v));
    if (!std::isfinite(g)) throw GeometryError("path touches the boundary");
    return g;
}

inline double polyline_quadrature(const ConvexBody& body, const std::vector<Vec>& verts,
                                  int panels) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
        const Vec& a = verts[i];
        const Vec& b = verts[i + 1];
        Vec chord = sub(b, a);
        if (norm2(chord) == 0) continue;
        total += gl8_panels(
            [&](double t) { return gauge_on_path(body, lerp(a, b, t), chord); }, 0.0, 1.0, panels);
    }
    return total;
}

// Cubic Hermite interpolation of position and velocity across one sample
// interval, integrated in the original time parameter.
inline double sampled_quadrature(const ConvexBody& body, const std::vector<PathSample>& samples,
                                 int panels) {
    double total = 0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const PathSample& s0 = samples[i];
        const PathSample& s1 = samples[i + 1];
        const double dt = s1.t - s0.t;
        auto eval = [&](double tau, Vec& point, Vec& velocity) {
            const double t2 = tau * tau, t3 = t2 * tau;
            const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + tau;
            const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
            const double g00 = 6 * t2 - 6 * tau, g10 = 3 * t2 - 4 * tau + 1;
            const double g01 = -6 * t2 + 6 * tau, g11 = 3 * t2 - 2 * tau;
            const std::size_t n = s0.point.size();
            point.resize(n);
            velocity.resize(n);
            for (std::size_t c = 0; c < n; ++c) {
                point[c] = h00 * s0.point[c] + h10 * dt * s0.velocity[c] + h01 * s1.point[c] +
                           h11 * dt * s1.velocity[c];
                velocity[c] = (g00 * s0.point[c] + g10 * dt * s0.velocity[c] +
                               g01 * s1.point[c] + g11 * dt * s1.velocity[c]) /
                              dt;
            }
        };
        Vec point, velocity;
        total += gl8_panels(
            [&](double t) {
                eval((t - s0.t) / dt, point, velocity);
                return gauge_on_path(body, point, velocity);
            },
            s0.t, s1.t, panels);
    }
    return total;
}

inline double path_quadrature(const ConvexBody& body, const Path& path, int panels) {
    return path.is_polyline() ? polyline_quadrature(body, path.vertices(), panels)
                              : sampled_quadrature(body, path.samples(), panels);
}

}  // namespace detail

inline PathLength path_length_detailed(const TautologicalStructure& s, const Path& path,
                                       const QuadratureSpec& spec = {}) {
    if (path.dimension() != s.dimension())
        throw GeometryError("path dimension does not match the structure");
    if (spec.subdivisions < 1) throw GeometryError("quadrature needs at least one subdivision");
    double coarse = detail::path_quadrature(s.body, path, spec.subdivisions);
    double fine = detail::path_quadrature(s.body, path, 2 * spec.subdivisions);
    PathLength out;
    out.value = fine;
    out.refinement_delta = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
    return out;
}

inline double path_length(const TautologicalStructure& s, const Path& path,
                          const QuadratureSpec& spec = {}) {
    return path_length_detailed(s, path, spec).value;
}

// Length of the Euclidean segment [x, y]: log(t1/t2) where t1, t2 are the
// boundary parameters of the ray through x and y measured from x and from y.
// Contained rays cost nothing.
inline double segment_length_closed(const TautologicalStructure& s, const Vec& x, const Vec& y) {
    const int n = s.dimension();
    check_dim(x, n, "segment endpoint");
    check_dim(y, n, "segment endpoint");
    if (!contains(s.body, x) || !contains(s.body, y))
        throw GeometryError("segment endpoint is not inside the body");
    Vec d = sub(y, x);
    if (norm2(d) == 0) return 0.0;
    RadialResult from_x = radial_sup(s.body, x, d);
    if (from_x.contained) return 0.0;
    RadialResult from_y = radial_sup(s.body, y, d);
    if (from_y.contained || !(from_y.t > 0))
        throw GeometryError("inconsistent radial answers along the segment ray");
    return std::log(from_x.t / from_y.t);
}

namespace detail {

inline double inradius_estimate(const ConvexBody& body) {
    const int n = body.dimension();
    double best = kInf;
    std::vector<Vec> dirs = axis_directions(n);
    for (const Vec& d : sphere_directions(n, 32, 4242)) dirs.push_back(d);
    for (const Vec& d : dirs) {
        RadialResult r = radial_sup(body, body.witness(), d);
        if (!r.contained) best = std::min(best, r.t);
    }
    return std::isfinite(best) ? best : 1.0;
}

}  // namespace detail

// Minimum length over the straight segment and `trials` random interior
// polyline perturbations of it. Polyline lengths are evaluated with the chord
// closed form per segment, which the quadrature suite independently pins to
// the integral.
inline double infimum_estimate(const TautologicalStructure& s, const Vec& x, const Vec& y,
                               int trials, std::uint64_t seed) {
    const int n = s.dimension();
    check_dim(x, n, "endpoint");
    check_dim(y, n, "endpoint");
    if (!contains(s.body, x) || !contains(s.body, y))
        throw GeometryError("endpoint is not inside the body");
    double best = segment_length_closed(s, x, y);
    if (norm2(sub(y, x)) == 0) return best;

    const double sigma = 0.1 * detail::inradius_estimate(s.body);
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const int mids = rng.uniform_int(1, 4);
        std::vector<Vec> verts;
        verts.push_back(x);
        for (int i = 1; i <= mids; ++i) {
            Vec base = lerp(x, y, static_cast<double>(i) / (mids + 1));
            Vec cand = base;
            for (int attempt = 0; attempt < 100; ++attempt) {
                cand = axpy(base, sigma, rng.gaussian_vector(n));
                if (contains(s.body, cand)) break;
                cand = base;  // interior by convexity
            }
            verts.push_back(cand);
        }
        verts.push_back(y);
        double len = 0;
        for (std::size_t i = 0; i + 1 < verts.size(); ++i)
            len += segment_length_closed(s, verts[i], verts[i + 1]);
        best = std::min(best, len);
    }
    return best;
}

// Pointwise maximum of two tautological Lagrangians; coincides with the
// Lagrangian of the intersection body.
struct MaxLagrangian {
    TautologicalStructure first;
    TautologicalStructure second;

    int dimension() const { return first.dimension(); }

    double operator()(const Vec& x, const Vec& xi) const {
        return std::max(lagrangian(first, x, xi), lagrangian(second, x, xi));
    }
};

inline MaxLagrangian structure_intersection(TautologicalStructure a, TautologicalStructure b) {
    if (a.dimension() != b.dimension())
        throw GeometryError("structures live in different dimensions");
    return MaxLagrangian{std::move(a), std::move(b)};
}

}  // namespace funk
