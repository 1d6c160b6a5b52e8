// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace plenopt {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInvPi = 1.0 / kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
inline T clamp(T x, T lo, T hi) {
    return x < lo ? lo : (x > hi ? hi : x);
}

inline double lerp(double a, double b, double t) { return a + (b - a) * t; }

inline double sqr(double x) { return x * x; }

inline double deg_to_rad(double d) { return d * kPi / 180.0; }

struct Vec2 {
    double x = 0, y = 0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
    explicit Vec3(double s) : x(s), y(s), z(s) {}

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) {
        return i == 0 ? x : (i == 1 ? y : z);
    }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator*(const Vec3& o) const { return {x * o.x, y * o.y, z * o.z}; }

    Vec3& operator+=(const Vec3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Vec3& operator*=(double s) {
        x *= s; y *= s; z *= s;
        return *this;
    }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length_squared(const Vec3& v) { return dot(v, v); }
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalize(const Vec3& v) {
    double len = length(v);
    return v / len;
}

inline Vec3 min(const Vec3& a, const Vec3& b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 max(const Vec3& a, const Vec3& b) {
    return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

inline double max_component(const Vec3& v) { return std::max(v.x, std::max(v.y, v.z)); }
inline double mean_component(const Vec3& v) { return (v.x + v.y + v.z) / 3.0; }

inline Vec3 reflect(const Vec3& w, const Vec3& n) {
    // Both w and the result point away from the surface.
    return n * (2.0 * dot(w, n)) - w;
}

inline Vec3 clamp(const Vec3& v, double lo, double hi) {
    return {clamp(v.x, lo, hi), clamp(v.y, lo, hi), clamp(v.z, lo, hi)};
}

inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Linear RGB radiance / reflectance triple.
using Rgb = Vec3;

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unit length

    Vec3 at(double t) const { return origin + dir * t; }
};

struct Box3 {
    Vec3 lo{kInf, kInf, kInf};
    Vec3 hi{-kInf, -kInf, -kInf};

    Box3() = default;
    Box3(const Vec3& lo_, const Vec3& hi_) : lo(lo_), hi(hi_) {}

    Vec3 extent() const { return hi - lo; }
    Vec3 center() const { return (lo + hi) * 0.5; }
    double diagonal() const { return length(hi - lo); }

    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y &&
               p.z >= lo.z && p.z <= hi.z;
    }

    void grow(const Vec3& p) {
        lo = min(lo, p);
        hi = max(hi, p);
    }
    void grow(const Box3& b) {
        lo = min(lo, b.lo);
        hi = max(hi, b.hi);
    }

    double surface_area() const {
        Vec3 e = extent();
        return 2.0 * (e.x * e.y + e.y * e.z + e.z * e.x);
    }

    // Slab test; returns entry/exit parameters clipped to [t0, t1].
    std::optional<std::pair<double, double>> intersect(const Ray& r, double t0,
                                                       double t1) const {
        for (int a = 0; a < 3; ++a) {
            double inv = 1.0 / r.dir[a];
            double tn = (lo[a] - r.origin[a]) * inv;
            double tf = (hi[a] - r.origin[a]) * inv;
            if (inv < 0.0) std::swap(tn, tf);
            t0 = tn > t0 ? tn : t0;
            t1 = tf < t1 ? tf : t1;
            if (t1 < t0) return std::nullopt;
        }
        return std::make_pair(t0, t1);
    }

    // Squared distance from a point to the box (0 inside).
    double distance_squared(const Vec3& p) const {
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) {
            double v = p[a];
            if (v < lo[a]) d2 += sqr(lo[a] - v);
            else if (v > hi[a]) d2 += sqr(v - hi[a]);
        }
        return d2;
    }
};

// Orthonormal frame around a unit z axis (Duff et al. branchless basis).
struct Frame {
    Vec3 t, b, n;

    static Frame from_z(const Vec3& n) {
        double sign = std::copysign(1.0, n.z);
        double a = -1.0 / (sign + n.z);
        double c = n.x * n.y * a;
        Frame f;
        f.t = Vec3{1.0 + sign * n.x * n.x * a, sign * c, -sign * n.x};
        f.b = Vec3{c, sign + n.y * n.y * a, -n.y};
        f.n = n;
        return f;
    }

    Vec3 to_world(const Vec3& local) const { return t * local.x + b * local.y + n * local.z; }
    Vec3 to_local(const Vec3& w) const { return {dot(w, t), dot(w, b), dot(w, n)}; }
};

// Rigid world-from-camera transform stored as rotation columns + translation.
struct RigidTransform {
    Vec3 col_x{1, 0, 0}, col_y{0, 1, 0}, col_z{0, 0, 1};
    Vec3 translation{0, 0, 0};

    Vec3 apply(const Vec3& p) const {
        return col_x * p.x + col_y * p.y + col_z * p.z + translation;
    }
    Vec3 apply_vector(const Vec3& v) const {
        return col_x * v.x + col_y * v.y + col_z * v.z;
    }
    // Inverse of a rigid transform (rotation transpose).
    Vec3 apply_inverse(const Vec3& p) const {
        Vec3 q = p - translation;
        return {dot(q, col_x), dot(q, col_y), dot(q, col_z)};
    }

    std::array<double, 16> to_matrix_rows() const {
        return {col_x.x, col_y.x, col_z.x, translation.x,
                col_x.y, col_y.y, col_z.y, translation.y,
                col_x.z, col_y.z, col_z.z, translation.z,
                0, 0, 0, 1};
    }
    static RigidTransform from_matrix_rows(const std::array<double, 16>& m) {
        RigidTransform t;
        t.col_x = {m[0], m[4], m[8]};
        t.col_y = {m[1], m[5], m[9]};
        t.col_z = {m[2], m[6], m[10]};
        t.translation = {m[3], m[7], m[11]};
        return t;
    }
};

}  // namespace plenopt
