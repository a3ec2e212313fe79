#pragma once

// Serialization of sphere samples to JSON, CSV and SVG, and the number
// formats shared by the command-line surface: shortest round-trip decimals
// for machine output, 12 significant digits for human output.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "funk/funk_metric.hpp"

namespace funk {

inline std::string format_shortest(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_sig12(double v) {
    if (v == 0) return "0";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%#.12g", v);
    return buf;
}

inline std::string format_point(const Vec& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += format_shortest(p[i]);
    }
    return s + ")";
}

inline const char* side_name(SphereSide side) {
    return side == SphereSide::Forward ? "forward" : "backward";
}

inline nlohmann::json sphere_to_json(const SphereSample& sample) {
    nlohmann::json points = nlohmann::json::array();
    for (const Vec& p : sample.points) points.push_back(p);
    return nlohmann::json{{"center", sample.center},
                          {"delta", sample.delta},
                          {"side", side_name(sample.side)},
                          {"points", std::move(points)},
                          {"truncated", sample.truncated}};
}

// One point per row, comma-separated coordinates.
inline std::string sphere_to_csv(const SphereSample& sample) {
    std::string out;
    for (const Vec& p : sample.points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out += ',';
            out += format_shortest(p[i]);
        }
        out += '\n';
    }
    return out;
}

// Boundary polyline of a planar body, sampled by rays out of the witness.
// Directions whose ray never exits break the polyline into pieces.
inline std::vector<std::vector<Vec>> boundary_polylines(const ConvexBody& body, int dirs = 720) {
    if (body.dimension() != 2) throw GeometryError("boundary sampling requires a planar body");
    std::vector<std::vector<Vec>> pieces(1);
    const Vec& w = body.witness();
    for (const Vec& u : sphere_directions(2, dirs)) {
        RadialResult r = radial_sup(body, w, u);
        if (r.contained) {
            if (!pieces.back().empty()) pieces.emplace_back();
            continue;
        }
        pieces.back().push_back(axpy(w, r.t, u));
    }
    if (pieces.back().empty()) pieces.pop_back();
    return pieces;
}

namespace detail {

inline void svg_polyline(std::string& out, const std::vector<Vec>& pts, const char* color,
                         const char* fill, double stroke) {
    out += "  <polyline fill=\"";
    out += fill;
    out += "\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"" + format_shortest(stroke) + "\" points=\"";
    for (const Vec& p : pts) {
        out += format_shortest(p[0]);
        out += ',';
        out += format_shortest(-p[1]);  // svg y grows downward
        out += ' ';
    }
    out += "\"/>\n";
}

}  // namespace detail

// Draws the sampled body boundary and the sphere polyline in one viewBox.
inline std::string sphere_to_svg(const SphereSample& sample, const ConvexBody& body,
                                 int boundary_dirs = 720, bool fill_region = false) {
    auto boundary = boundary_polylines(body, boundary_dirs);
    double lo_x = sample.center[0], hi_x = sample.center[0];
    double lo_y = sample.center[1], hi_y = sample.center[1];
    auto grow = [&](const Vec& p) {
        lo_x = std::min(lo_x, p[0]);
        hi_x = std::max(hi_x, p[0]);
        lo_y = std::min(lo_y, p[1]);
        hi_y = std::max(hi_y, p[1]);
    };
    for (const auto& piece : boundary)
        for (const Vec& p : piece) grow(p);
    for (const Vec& p : sample.points) grow(p);

    const double pad = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    lo_x -= pad;
    hi_x += pad;
    lo_y -= pad;
    hi_y += pad;
    const double stroke = 0.004 * std::max(hi_x - lo_x, hi_y - lo_y);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += format_shortest(lo_x) + " " + format_shortest(-hi_y) + " " +
           format_shortest(hi_x - lo_x) + " " + format_shortest(hi_y - lo_y) + "\">\n";
    const bool full_loop =
        boundary.size() == 1 && boundary.front().size() == static_cast<std::size_t>(boundary_dirs);
    for (const auto& piece : boundary)
        if (piece.size() >= 2) {
            std::vector<Vec> closed = piece;
            if (full_loop) closed.push_back(piece.front());
            detail::svg_polyline(out, closed, "#555555", "none", stroke);
        }
    if (sample.points.size() >= 2) {
        std::vector<Vec> closed = sample.points;
        if (!sample.truncated) closed.push_back(sample.points.front());
        detail::svg_polyline(out, closed, "#cc3333", fill_region ? "#cc333333" : "none", stroke);
    }
    out += "  <circle cx=\"" + format_shortest(sample.center[0]) + "\" cy=\"" +
           format_shortest(-sample.center[1]) + "\" r=\"" + format_shortest(2.0 * stroke) +
           "\" fill=\"#cc3333\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace funk
