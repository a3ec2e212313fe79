#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "funk/errors.hpp"

namespace funk {

using Vec = std::vector<double>;

inline int dim_of(const Vec& v) { return static_cast<int>(v.size()); }

inline void check_dim(const Vec& v, int n, const char* what) {
    if (dim_of(v) != n)
        throw GeometryError(std::string(what) + ": dimension mismatch (" +
                            std::to_string(dim_of(v)) + " vs " + std::to_string(n) + ")");
}

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm2(v)); }

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scaled(const Vec& v, double s) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

// a + s*b
inline Vec axpy(const Vec& a, double s, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline Vec negated(const Vec& v) { return scaled(v, -1.0); }

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec lerp(const Vec& a, const Vec& b, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

inline Vec normalized(const Vec& v) {
    double n = norm(v);
    if (n <= 0) throw GeometryError("cannot normalize a zero vector");
    return scaled(v, 1.0 / n);
}

// Euclidean distance from p to the segment [a,b].
inline double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
    Vec ab = sub(b, a);
    double den = norm2(ab);
    if (den <= 0) return dist(p, a);
    double t = dot(sub(p, a), ab) / den;
    t = std::min(1.0, std::max(0.0, t));
    return dist(p, axpy(a, t, ab));
}

// Dense square matrix, row-major.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Matrix identity(int size) {
        Matrix m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline Vec matvec(const Matrix& m, const Vec& v) {
    Vec r(v.size(), 0.0);
    for (int i = 0; i < m.n; ++i) {
        double s = 0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

// v^T M v
inline double quadform(const Matrix& m, const Vec& v) { return dot(v, matvec(m, v)); }

// v^T M w
inline double bilinear(const Matrix& m, const Vec& v, const Vec& w) { return dot(v, matvec(m, w)); }

// In-place Cholesky attempt; reports whether the matrix is positive definite.
inline bool is_positive_definite(Matrix m) {
    for (int j = 0; j < m.n; ++j) {
        double d = m.at(j, j);
        for (int k = 0; k < j; ++k) d -= m.at(j, k) * m.at(j, k);
        if (!(d > 0) || !std::isfinite(d)) return false;
        double l = std::sqrt(d);
        m.at(j, j) = l;
        for (int i = j + 1; i < m.n; ++i) {
            double s = m.at(i, j);
            for (int k = 0; k < j; ++k) s -= m.at(i, k) * m.at(j, k);
            m.at(i, j) = s / l;
        }
    }
    return true;
}

}  // namespace funk
