#pragma once

// JSON schema for bodies and paths.
//
// Body documents: {"dimension": n, "body": {...}} with body objects
//   {"type": "ball",         "center": [...], "radius": r}
//   {"type": "halfspace",    "normal": [...], "offset": s}
//   {"type": "ellipsoid",    "center": [...], "shape": [[...], ...]}
//   {"type": "hpolytope",    "facets": [{"normal": [...], "offset": s}, ...],
//                            "witness": [...]}
//   {"type": "intersection", "members": [body, ...], "witness": [...]}
//
// Path documents: either a bare array of vertices or {"vertices": [...]}.

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "funk/finsler.hpp"

namespace funk {

namespace detail {

inline Vec vec_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a coordinate array");
    Vec v;
    v.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number()) throw ParseError(what + ": coordinates must be numbers");
        v.push_back(c.get<double>());
    }
    if (!all_finite(v)) throw ParseError(what + ": coordinates must be finite");
    return v;
}

inline const nlohmann::json& require(const nlohmann::json& j, const char* key,
                                     const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing field \"" + key + "\"");
    return *it;
}

}  // namespace detail

inline ConvexBody body_from_json(const nlohmann::json& j, int expected_dim) {
    if (!j.is_object()) throw ParseError("body: expected an object");
    const std::string type = detail::require(j, "type", "body").get<std::string>();
    try {
        if (type == "ball") {
            BallBody b;
            b.center = detail::vec_from_json(detail::require(j, "center", "ball"), "ball center");
            b.radius = detail::require(j, "radius", "ball").get<double>();
            check_dim(b.center, expected_dim, "ball center");
            return ConvexBody(std::move(b));
        }
        if (type == "halfspace") {
            HalfSpaceBody h;
            h.normal =
                detail::vec_from_json(detail::require(j, "normal", "halfspace"), "halfspace normal");
            h.offset = detail::require(j, "offset", "halfspace").get<double>();
            check_dim(h.normal, expected_dim, "halfspace normal");
            return ConvexBody(std::move(h));
        }
        if (type == "ellipsoid") {
            EllipsoidBody e;
            e.center =
                detail::vec_from_json(detail::require(j, "center", "ellipsoid"), "ellipsoid center");
            check_dim(e.center, expected_dim, "ellipsoid center");
            const auto& rows = detail::require(j, "shape", "ellipsoid");
            if (!rows.is_array() || static_cast<int>(rows.size()) != expected_dim)
                throw ParseError("ellipsoid shape: expected " + std::to_string(expected_dim) +
                                 " rows");
            e.shape = Matrix(expected_dim);
            for (int r = 0; r < expected_dim; ++r) {
                Vec row = detail::vec_from_json(rows[r], "ellipsoid shape row");
                check_dim(row, expected_dim, "ellipsoid shape row");
                for (int c = 0; c < expected_dim; ++c) e.shape.at(r, c) = row[c];
            }
            return ConvexBody(std::move(e));
        }
        if (type == "hpolytope") {
            HPolytopeBody p;
            const auto& facets = detail::require(j, "facets", "hpolytope");
            if (!facets.is_array() || facets.empty())
                throw ParseError("hpolytope: expected a nonempty facet array");
            for (const auto& fj : facets) {
                HalfSpaceBody f;
                f.normal =
                    detail::vec_from_json(detail::require(fj, "normal", "facet"), "facet normal");
                f.offset = detail::require(fj, "offset", "facet").get<double>();
                check_dim(f.normal, expected_dim, "facet normal");
                p.facets.push_back(std::move(f));
            }
            p.interior_witness =
                detail::vec_from_json(detail::require(j, "witness", "hpolytope"), "witness");
            check_dim(p.interior_witness, expected_dim, "hpolytope witness");
            return ConvexBody(std::move(p));
        }
        if (type == "intersection") {
            IntersectionBody inter;
            const auto& members = detail::require(j, "members", "intersection");
            if (!members.is_array() || members.empty())
                throw ParseError("intersection: expected a nonempty member array");
            for (const auto& mj : members) inter.members.push_back(body_from_json(mj, expected_dim));
            inter.interior_witness =
                detail::vec_from_json(detail::require(j, "witness", "intersection"), "witness");
            check_dim(inter.interior_witness, expected_dim, "intersection witness");
            return ConvexBody(std::move(inter));
        }
    } catch (const GeometryError& e) {
        throw ParseError(std::string("invalid body: ") + e.what());
    }
    throw ParseError("body: unknown type \"" + type + "\"");
}

inline ConvexBody body_from_document(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("body document: expected an object");
    const auto& dim = detail::require(doc, "dimension", "body document");
    if (!dim.is_number_integer() || dim.get<int>() < 1)
        throw ParseError("body document: dimension must be a positive integer");
    return body_from_json(detail::require(doc, "body", "body document"), dim.get<int>());
}

inline ConvexBody load_body_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open body file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("cannot parse " + path + ": " + e.what());
    }
    return body_from_document(doc);
}

inline nlohmann::json body_to_json(const ConvexBody& body) {
    using nlohmann::json;
    return std::visit(
        detail::Overloaded{
            [&](const HalfSpaceBody& h) {
                return json{{"type", "halfspace"}, {"normal", h.normal}, {"offset", h.offset}};
            },
            [&](const BallBody& b) {
                return json{{"type", "ball"}, {"center", b.center}, {"radius", b.radius}};
            },
            [&](const EllipsoidBody& e) {
                json rows = json::array();
                for (int r = 0; r < e.shape.n; ++r) {
                    json row = json::array();
                    for (int c = 0; c < e.shape.n; ++c) row.push_back(e.shape.at(r, c));
                    rows.push_back(std::move(row));
                }
                return json{{"type", "ellipsoid"}, {"center", e.center}, {"shape", std::move(rows)}};
            },
            [&](const HPolytopeBody& p) {
                json facets = json::array();
                for (const auto& f : p.facets)
                    facets.push_back(json{{"normal", f.normal}, {"offset", f.offset}});
                return json{{"type", "hpolytope"},
                            {"facets", std::move(facets)},
                            {"witness", p.interior_witness}};
            },
            [&](const ImplicitBody&) -> json {
                throw GeometryError("implicit bodies have no JSON form");
            },
            [&](const IntersectionBody& i) {
                json members = json::array();
                for (const auto& m : i.members) members.push_back(body_to_json(m));
                return json{{"type", "intersection"},
                            {"members", std::move(members)},
                            {"witness", i.interior_witness}};
            },
        },
        body.repr());
}

inline nlohmann::json body_document(const ConvexBody& body) {
    return nlohmann::json{{"dimension", body.dimension()}, {"body", body_to_json(body)}};
}

inline Path path_from_json(const nlohmann::json& doc) {
    const nlohmann::json* verts = &doc;
    if (doc.is_object()) verts = &detail::require(doc, "vertices", "path document");
    if (!verts->is_array() || verts->size() < 2)
        throw ParseError("path document: expected at least two vertices");
    std::vector<Vec> out;
    out.reserve(verts->size());
    for (const auto& v : *verts) out.push_back(detail::vec_from_json(v, "path vertex"));
    try {
        return Path::polyline(std::move(out));
    } catch (const GeometryError& e) {
        throw ParseError(std::string("invalid path: ") + e.what());
    }
}

inline Path load_path_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open path file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("cannot parse " + path + ": " + e.what());
    }
    return path_from_json(doc);
}

}  // namespace funk
