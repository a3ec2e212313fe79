#pragma once

// Property suites over a body: weak-metric axioms, length-structure
// consistency, sphere homotheties and geodesic checks, reported as a
// pass/fail table with the worst observed value per property.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "funk/emit.hpp"
#include "funk/funk_metric.hpp"

namespace funk {

enum class Suite { All, Axioms, Theorem, Spheres, Geodesics };

inline std::optional<Suite> suite_from_name(const std::string& name) {
    if (name == "all") return Suite::All;
    if (name == "axioms") return Suite::Axioms;
    if (name == "theorem") return Suite::Theorem;
    if (name == "spheres") return Suite::Spheres;
    if (name == "geodesics") return Suite::Geodesics;
    return std::nullopt;
}

struct PropertyResult {
    std::string name;
    bool pass = true;
    bool skipped = false;
    double worst = 0;
    double threshold = 0;
    std::string note;
};

struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<PropertyResult> results;
    double wall_seconds = 0;

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

// Radial rejection-free interior sampling along a random ray out of the witness.
inline Vec sample_interior(const ConvexBody& body, Rng& rng, double shrink = 0.97) {
    const int n = body.dimension();
    const Vec& w = body.witness();
    Vec u = rng.unit_vector(n);
    RadialResult r = radial_sup(body, w, u);
    double tmax = r.contained ? 4.0 * std::max(1.0, norm(w)) : r.t;
    double rho = shrink * tmax * std::pow(rng.uniform(), 1.0 / n);
    return axpy(w, rho, u);
}

namespace detail {

struct Recorder {
    std::vector<PropertyResult>* out;

    void add(std::string name, bool pass, double worst, double threshold,
             std::string note = "") {
        out->push_back({std::move(name), pass, false, worst, threshold, std::move(note)});
    }

    void skip(std::string name, std::string why) {
        out->push_back({std::move(name), true, true, 0, 0, std::move(why)});
    }
};

inline double funk_value(const ConvexBody& body, const Vec& x, const Vec& y) {
    return funk_distance(body, x, y).value;
}

// A point in the relative interior of a 2-d polytope facet, or nothing when
// the facet carries no edge of the body.
inline std::optional<Vec> facet_relint_point(const HPolytopeBody& poly, std::size_t facet_idx,
                                             Rng& rng) {
    const HalfSpaceBody f = unit_halfspace(poly.facets[facet_idx].normal,
                                           poly.facets[facet_idx].offset);
    Vec base = scaled(f.normal, f.offset);
    Vec tau{-f.normal[1], f.normal[0]};
    // Unbounded facet lines get a finite sampling window around the base.
    const double window = 8.0 * std::max(1.0, norm(poly.interior_witness) + std::abs(f.offset));
    double lo = -window, hi = window;
    for (std::size_t g = 0; g < poly.facets.size(); ++g) {
        if (g == facet_idx) continue;
        const auto& other = poly.facets[g];
        double a = dot(other.normal, tau);
        double c = other.offset - dot(other.normal, base);
        if (std::abs(a) < 1e-14) {
            if (c < 0) return std::nullopt;
            continue;
        }
        if (a > 0)
            hi = std::min(hi, c / a);
        else
            lo = std::max(lo, c / a);
    }
    if (!(hi - lo > 1e-9)) return std::nullopt;
    return axpy(base, lo + (hi - lo) * rng.uniform(0.15, 0.85), tau);
}

inline void axioms_suite(const ConvexBody& body, std::uint64_t seed, int samples, Recorder rec) {
    const int n = body.dimension();
    const bool bounded = is_bounded(body);

    {
        Rng rng(seed + 1);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            Vec x = sample_interior(body, rng);
            worst = std::max(worst, std::abs(funk_value(body, x, x)));
        }
        rec.add("zero diagonal", worst == 0, worst, 0);
    }
    {
        Rng rng(seed + 2);
        double worst = kInf;
        for (int i = 0; i < samples; ++i) {
            Vec x = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            worst = std::min(worst, funk_value(body, x, y));
        }
        rec.add("nonnegativity", worst >= 0, worst, 0);
    }
    {
        Rng rng(seed + 3);
        double worst = -kInf;
        for (int i = 0; i < samples; ++i) {
            Vec x = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            Vec z = sample_interior(body, rng);
            worst = std::max(worst, funk_value(body, x, z) - funk_value(body, x, y) -
                                        funk_value(body, y, z));
        }
        rec.add("triangle inequality", worst <= 1e-9, worst, 1e-9);
    }
    {
        Rng rng(seed + 4);
        bool found = false;
        std::string note;
        double best = 0;
        for (int i = 0; i < 200 && !found; ++i) {
            Vec x = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            double gap = std::abs(funk_value(body, x, y) - funk_value(body, y, x));
            best = std::max(best, gap);
            if (gap > 1e-6) {
                found = true;
                note = "pair " + format_point(x) + " -> " + format_point(y);
            }
        }
        rec.add("asymmetry witness", found, best, 1e-6, note);
    }
    {
        Rng rng(seed + 5);
        double worst = 0;
        for (int i = 0; i < samples; ++i) {
            Vec x = sample_interior(body, rng);
            Vec xi = rng.gaussian_vector(n);
            double lambda = std::exp(rng.uniform(-6.9, 6.9));
            double g = minkowski_gauge(body, x, xi);
            double gl = minkowski_gauge(body, x, scaled(xi, lambda));
            worst = std::max(worst, std::abs(gl - lambda * g) / std::max(1.0, lambda * g));
        }
        rec.add("gauge positive homogeneity", worst <= 1e-12, worst, 1e-12);
    }
    {
        Rng rng(seed + 6);
        double worst = -kInf;
        for (int i = 0; i < samples; ++i) {
            Vec x = sample_interior(body, rng);
            Vec xi = rng.gaussian_vector(n);
            Vec eta = rng.gaussian_vector(n);
            worst = std::max(worst, minkowski_gauge(body, x, add(xi, eta)) -
                                        minkowski_gauge(body, x, xi) -
                                        minkowski_gauge(body, x, eta));
        }
        rec.add("gauge subadditivity", worst <= 1e-9, worst, 1e-9);
    }
    if (bounded) {
        Rng rng(seed + 7);
        int bad = 0, used = 0;
        for (int i = 0; i < samples; ++i) {
            Vec x = sample_interior(body, rng);
            Vec u = rng.unit_vector(n);
            RadialResult r = radial_sup(body, x, u);
            Vec xi = scaled(u, r.t * rng.uniform(0.0, 2.0));
            double g = minkowski_gauge(body, x, xi);
            if (std::abs(g - 1.0) <= 1e-6) continue;
            ++used;
            if (contains(body, add(x, xi)) != (g < 1.0)) ++bad;
        }
        rec.add("sublevel reconstruction", bad == 0, bad, 0,
                std::to_string(used) + " decisive samples");
    } else {
        rec.skip("sublevel reconstruction", "unbounded body");
    }
    if (is_strictly_convex(body) && bounded) {
        Rng rng(seed + 8);
        double diam = diameter_estimate(body);
        double worst = kInf;
        int found = 0;
        for (int i = 0; i < 50 * samples && found < samples / 10 + 1; ++i) {
            Vec x = sample_interior(body, rng);
            Vec z = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            if (point_segment_distance(y, x, z) < 0.05 * diam) continue;
            ++found;
            worst = std::min(worst, funk_value(body, x, y) + funk_value(body, y, z) -
                                        funk_value(body, x, z));
        }
        rec.add("strict triangle inequality", worst > 1e-12, worst, 1e-12,
                std::to_string(found) + " admissible triples");
    } else {
        rec.skip("strict triangle inequality", "needs a bounded strictly convex body");
    }
}

inline void theorem_suite(const ConvexBody& body, std::uint64_t seed, int samples, Recorder rec) {
    TautologicalStructure structure{body};
    const int n = body.dimension();
    const bool bounded = is_bounded(body);

    {
        Rng rng(seed + 11);
        const int pairs = std::max(30, samples / 20);
        double worst = 0;
        for (int i = 0; i < pairs; ++i) {
            Vec x = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            double f = funk_value(body, x, y);
            double q = path_length(structure, Path::polyline({x, y}));
            worst = std::max(worst, std::abs(f - q) / std::max(f, 1e-12));
        }
        rec.add("distance equals straight-segment length", worst <= 1e-6, worst, 1e-6,
                std::to_string(pairs) + " pairs");
    }
    {
        Rng rng(seed + 12);
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            std::vector<Vec> verts;
            for (int v = 0; v < 4; ++v) verts.push_back(sample_interior(body, rng, 0.9));
            double closed = 0;
            for (std::size_t k = 0; k + 1 < verts.size(); ++k)
                closed += segment_length_closed(structure, verts[k], verts[k + 1]);
            double quad = path_length(structure, Path::polyline(verts));
            worst = std::max(worst, std::abs(closed - quad) / std::max(closed, 1e-12));
        }
        rec.add("polyline length equals chord sum", worst <= 1e-6, worst, 1e-6);
    }
    {
        Rng rng(seed + 13);
        const int pairs = std::max(50, samples / 10);
        double worst = kInf;
        int used = 0;
        for (int i = 0; i < pairs; ++i) {
            Vec x = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            FunkDistanceResult f = funk_distance(body, x, y);
            if (!f.boundary_point) continue;
            ++used;
            HalfSpaceBody h = support_hyperplane(body, *f.boundary_point);
            double fh = funk_value(ConvexBody(h), x, y);
            worst = std::min(worst, f.value - fh);
        }
        rec.add("support half-space lower bound", worst >= -1e-9, worst, -1e-9,
                std::to_string(used) + " pairs with an exit point");
    }
    {
        Rng rng(seed + 14);
        double worst = kInf;
        for (int i = 0; i < 20; ++i) {
            Vec x = sample_interior(body, rng);
            Vec y = sample_interior(body, rng);
            double f = funk_value(body, x, y);
            double inf_est = infimum_estimate(structure, x, y, 25, seed + 1400 + i);
            worst = std::min(worst, inf_est - f);
        }
        rec.add("segment minimality probe", worst >= -1e-9, worst, -1e-9);
    }
    if (n >= 2) {
        Rng rng(seed + 15);
        double worst = 0;
        int used = 0;
        for (int s = 0; s < 5; ++s) {
            Vec base = sample_interior(body, rng, 0.7);
            std::vector<Vec> frame;
            for (int k = 0; k < (n == 2 ? 1 : n - 1); ++k) frame.push_back(rng.unit_vector(n));
            ConvexBody slice = [&]() {
                for (;;) {
                    try {
                        return affine_slice(body, base, frame);
                    } catch (const GeometryError&) {
                        frame.back() = rng.unit_vector(n);
                    }
                }
            }();
            Rng inner(seed + 150 + s);
            for (int i = 0; i < 40; ++i) {
                Vec u = sample_interior(slice, inner, 0.9);
                Vec v = sample_interior(slice, inner, 0.9);
                Vec pu = base, pv = base;
                for (std::size_t k = 0; k < frame.size(); ++k) {
                    pu = axpy(pu, u[k], frame[k]);
                    pv = axpy(pv, v[k], frame[k]);
                }
                double ambient = funk_value(body, pu, pv);
                if (ambient > std::log(100.0)) continue;  // bisection accuracy guard
                ++used;
                worst = std::max(worst, std::abs(funk_value(slice, u, v) - ambient));
            }
        }
        rec.add("affine slice induces the same distances", worst <= 1e-9, worst, 1e-9,
                std::to_string(used) + " pairs");
    } else {
        rec.skip("affine slice induces the same distances", "needs dimension >= 2");
    }
    if (bounded) {
        Rng rng(seed + 16);
        Vec x = body.witness();
        Vec p = sample_interior(body, rng, 0.9);
        bool ok = true;
        for (int k = 10; k <= 40; k += 10) {
            Vec xk = lerp(x, p, std::ldexp(1.0, -k));
            double f = funk_value(body, x, xk);
            double b = funk_value(body, xk, x);
            double e = dist(x, xk);
            if (!(f < 1e-2 && b < 1e-2 && e < 1e-2)) ok = false;
        }
        Vec u = rng.unit_vector(n);
        RadialResult r = radial_sup(body, x, u);
        RadialResult rb = radial_sup(body, x, negated(u));
        double backward_limit = std::log((r.t + rb.t) / rb.t);
        double worst_backward = 0;
        double last_forward = 0;
        for (int k = 1; k <= 40; ++k) {
            Vec xk = axpy(x, (1.0 - std::ldexp(1.0, -k)) * r.t, u);
            last_forward = funk_value(body, x, xk);
            worst_backward = std::max(worst_backward, funk_value(body, xk, x));
        }
        bool diverges = last_forward >= 39 * std::log(2.0) - 1e-6 &&
                        worst_backward <= backward_limit + 1e-6;
        rec.add("convergence and one-sided divergence", ok && diverges,
                worst_backward - backward_limit, 1e-6);
    } else {
        rec.skip("convergence and one-sided divergence", "unbounded body");
    }
}

inline void spheres_suite(const ConvexBody& body, std::uint64_t seed, int samples, Recorder rec) {
    (void)samples;
    const bool bounded = is_bounded(body);
    Rng rng(seed + 21);
    Vec x = body.witness();
    const int dirs = body.dimension() <= 2 ? 720 : 512;
    const double deltas[3] = {0.1, std::log(2.0), 2.0};

    {
        double worst = 0;
        for (double delta : deltas) {
            SphereSample s = forward_sphere(body, x, delta, dirs);
            for (const Vec& y : s.points)
                worst = std::max(worst, std::abs(funk_value(body, x, y) - delta));
        }
        rec.add("forward sphere distance residual", worst < 1e-9, worst, 1e-9);
    }
    {
        const double d1 = std::log(2.0), d2 = 1.0;
        SphereSample s1 = forward_sphere(body, x, d1, dirs);
        SphereSample s2 = forward_sphere(body, x, d2, dirs);
        double ratio = (-std::expm1(-d1)) / (-std::expm1(-d2));
        double worst = 0;
        if (s1.points.size() == s2.points.size()) {
            for (std::size_t i = 0; i < s1.points.size(); ++i) {
                double a = dist(s1.points[i], x);
                double b = dist(s2.points[i], x);
                worst = std::max(worst, std::abs(a - ratio * b) / std::max(a, 1e-300));
            }
            rec.add("forward spheres are homothetic", worst <= 1e-12, worst, 1e-12);
        } else {
            rec.add("forward spheres are homothetic", false, 0, 0, "direction sets differ");
        }
    }
    {
        double worst = 0;
        for (double delta : {0.1, std::log(2.0)}) {
            SphereSample s = backward_sphere(body, x, delta, dirs);
            for (const Vec& y : s.points)
                worst = std::max(worst, std::abs(funk_value(body, y, x) - delta));
        }
        rec.add("backward sphere distance residual", worst < 1e-9, worst, 1e-9);
    }
    if (bounded) {
        double rmin = kInf, rmax = 0;
        for (const Vec& u : sphere_directions(body.dimension(), 256)) {
            RadialResult r = radial_sup(body, x, u);
            rmin = std::min(rmin, r.t);
            rmax = std::max(rmax, r.t);
        }
        double small = std::log1p(0.1 * rmin / rmax);
        double big = std::log1p(2.0 * rmax / rmin);
        bool small_compact = backward_sphere_is_compact(body, x, small, dirs);
        bool big_compact = backward_sphere_is_compact(body, x, big, dirs);
        rec.add("backward sphere compactness flips with radius", small_compact && !big_compact,
                small_compact ? 1 : 0, 1,
                "compact at delta=" + format_shortest(small) + ", clipped at delta=" +
                    format_shortest(big));
    } else {
        rec.skip("backward sphere compactness flips with radius", "unbounded body");
    }
}

inline void geodesics_suite(const ConvexBody& body, std::uint64_t seed, int samples,
                            Recorder rec) {
    {
        Rng rng(seed + 31);
        double worst = 0;
        for (int i = 0; i < samples; ++i) {
            Vec x = sample_interior(body, rng);
            Vec p = sample_interior(body, rng);
            if (norm2(sub(p, x)) == 0) continue;
            double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
            if (t1 > t2) std::swap(t1, t2);
            Vec y = lerp(x, p, t1);
            Vec z = lerp(x, p, t2);
            worst = std::max(worst, std::abs(detail::funk_value(body, x, y) +
                                             detail::funk_value(body, y, z) -
                                             detail::funk_value(body, x, z)));
        }
        rec.add("collinear additivity", worst <= 1e-9, worst, 1e-9);
    }
    {
        Rng rng(seed + 32);
        int bad = 0;
        for (int i = 0; i < 50; ++i) {
            Vec x = sample_interior(body, rng);
            Vec p = sample_interior(body, rng);
            std::vector<Vec> chain;
            for (int k = 0; k <= 4; ++k) chain.push_back(lerp(x, p, k / 4.0));
            if (!is_geodesic_chain(body, chain, 1e-9)) ++bad;
        }
        rec.add("euclidean segments are geodesic chains", bad == 0, bad, 0);
    }
    if (const auto* poly = std::get_if<HPolytopeBody>(&body.repr());
        poly != nullptr && body.dimension() == 2) {
        Rng rng(seed + 33);
        double worst = 0;
        int built = 0;
        for (int i = 0; i < 200 && built < 25; ++i) {
            std::size_t facet = static_cast<std::size_t>(rng.uniform_int(
                0, static_cast<int>(poly->facets.size()) - 1));
            auto b = detail::facet_relint_point(*poly, facet, rng);
            if (!b) continue;
            Vec x = sample_interior(body, rng, 0.9);
            Vec z = lerp(x, *b, rng.uniform(0.3, 0.7));
            try {
                Path witness = polygonal_geodesic_witness(body, x, z, facet);
                const auto& pts = witness.vertices();
                double gap = std::abs(detail::funk_value(body, pts[0], pts[1]) +
                                      detail::funk_value(body, pts[1], pts[2]) -
                                      detail::funk_value(body, pts[0], pts[2]));
                worst = std::max(worst, gap);
                ++built;
            } catch (const GeometryError&) {
            }
        }
        rec.add("polygonal flat-facet geodesics", built >= 25 && worst <= 1e-9, worst, 1e-9,
                std::to_string(built) + " witnesses");
    } else {
        rec.skip("polygonal flat-facet geodesics", "needs a planar H-polytope");
    }
    if (is_strictly_convex(body) && is_bounded(body)) {
        Rng rng(seed + 34);
        Vec x = body.witness();
        const double delta = 1.0;
        int bad = 0;
        int found = 0;
        while (found < 30) {
            Vec a = sample_interior(body, rng);
            Vec b = sample_interior(body, rng);
            if (detail::funk_value(body, x, a) >= delta || detail::funk_value(body, x, b) >= delta)
                continue;
            ++found;
            for (int k = 0; k <= 16; ++k)
                if (detail::funk_value(body, x, lerp(a, b, k / 16.0)) >= delta + 1e-9) ++bad;
        }
        rec.add("forward balls are geodesically convex", bad == 0, bad, 0);
    } else {
        rec.skip("forward balls are geodesically convex", "needs a bounded strictly convex body");
    }
}

}  // namespace detail

inline RunReport run_verification(const ConvexBody& body, Suite suite, std::uint64_t seed,
                                  int samples) {
    if (samples < 10) throw GeometryError("verification needs at least 10 samples");
    auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.seed = seed;
    report.samples = samples;
    detail::Recorder rec{&report.results};
    if (suite == Suite::All || suite == Suite::Axioms)
        detail::axioms_suite(body, seed, samples, rec);
    if (suite == Suite::All || suite == Suite::Theorem)
        detail::theorem_suite(body, seed, samples, rec);
    if (suite == Suite::All || suite == Suite::Spheres)
        detail::spheres_suite(body, seed, samples, rec);
    if (suite == Suite::All || suite == Suite::Geodesics)
        detail::geodesics_suite(body, seed, samples, rec);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline std::string render_report(const RunReport& report) {
    std::string out;
    out += "command:  " + report.command + "\n";
    out += "seed:     " + std::to_string(report.seed) + "\n";
    out += "samples:  " + std::to_string(report.samples) + "\n";
    out += "\n";
    std::size_t width = 0;
    for (const auto& r : report.results) width = std::max(width, r.name.size());
    for (const auto& r : report.results) {
        std::string line = r.name;
        line.resize(width + 2, ' ');
        line += r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
        if (!r.skipped) {
            line += "  worst=" + format_shortest(r.worst);
            line += "  threshold=" + format_shortest(r.threshold);
        }
        if (!r.note.empty()) line += "  (" + r.note + ")";
        out += line + "\n";
    }
    out += "\n";
    out += "wall time: " + format_sig12(report.wall_seconds) + " s\n";
    out += report.all_pass() ? "ALL PASS\n" : "FAILURES PRESENT\n";
    return out;
}

}  // namespace funk
