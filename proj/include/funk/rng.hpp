#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "funk/vec.hpp"

namespace funk {

// Deterministic draws. Distributions are hand-rolled on top of mt19937_64 so
// streams are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Inclusive integer range.
    int uniform_int(int lo, int hi) {
        int span = hi - lo + 1;
        int k = static_cast<int>(uniform() * span);
        return lo + std::min(k, span - 1);
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec gaussian_vector(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian();
        return v;
    }

    Vec unit_vector(int n) {
        for (;;) {
            Vec v = gaussian_vector(n);
            double len = norm(v);
            if (len > 1e-12) return scaled(v, 1.0 / len);
        }
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0;
};

inline std::vector<Vec> axis_directions(int n) {
    std::vector<Vec> dirs;
    dirs.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    return dirs;
}

// Deterministic spread of `count` unit directions: uniform angles in the
// plane, a Fibonacci lattice on the 2-sphere, seeded Gaussian samples above.
inline std::vector<Vec> sphere_directions(int n, int count, std::uint64_t seed = 9001) {
    std::vector<Vec> dirs;
    dirs.reserve(count);
    if (n == 1) {
        for (int i = 0; i < count; ++i) dirs.push_back(Vec{i % 2 == 0 ? 1.0 : -1.0});
        return dirs;
    }
    if (n == 2) {
        for (int i = 0; i < count; ++i) {
            double a = 2.0 * std::numbers::pi * i / count;
            dirs.push_back(Vec{std::cos(a), std::sin(a)});
        }
        return dirs;
    }
    if (n == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < count; ++i) {
            double z = 1.0 - (2.0 * i + 1.0) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double a = golden * i;
            dirs.push_back(Vec{r * std::cos(a), r * std::sin(a), z});
        }
        return dirs;
    }
    Rng rng(seed);
    for (int i = 0; i < count; ++i) dirs.push_back(rng.unit_vector(n));
    return dirs;
}

inline int default_sphere_direction_count(int n) { return n <= 2 ? 720 : 2048; }

}  // namespace funk
