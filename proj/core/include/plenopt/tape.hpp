// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal reverse-mode automatic differentiation on a per-evaluation tape.
// Var records into a thread_local active tape; a Var with idx < 0 is a
// constant and costs no tape node. Nodes are topologically ordered by
// construction, so backward() is a single reverse sweep.

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace plenopt::ad {

class Tape {
public:
    struct Node {
        double da, db;
        int32_t a, b;
    };

    int32_t leaf() {
        nodes_.push_back({0.0, 0.0, -1, -1});
        return static_cast<int32_t>(nodes_.size() - 1);
    }
    int32_t unary(int32_t a, double da) {
        nodes_.push_back({da, 0.0, a, -1});
        return static_cast<int32_t>(nodes_.size() - 1);
    }
    int32_t binary(int32_t a, double da, int32_t b, double db) {
        nodes_.push_back({da, db, a, b});
        return static_cast<int32_t>(nodes_.size() - 1);
    }

    size_t size() const { return nodes_.size(); }
    void clear() { nodes_.clear(); }
    void reserve(size_t n) { nodes_.reserve(n); }

    // d(node root)/d(node i) for all i, seeded with droot = 1.
    void backward(int32_t root, std::vector<double>& adjoint) const {
        assert(root >= 0 && root < static_cast<int32_t>(nodes_.size()));
        adjoint.assign(nodes_.size(), 0.0);
        adjoint[root] = 1.0;
        for (int32_t i = root; i >= 0; --i) {
            double g = adjoint[i];
            if (g == 0.0) continue;
            const Node& n = nodes_[i];
            if (n.a >= 0) adjoint[n.a] += n.da * g;
            if (n.b >= 0) adjoint[n.b] += n.db * g;
        }
    }

    static Tape*& active() {
        thread_local Tape* t = nullptr;
        return t;
    }

private:
    std::vector<Node> nodes_;
};

// RAII activation of a tape on the current thread.
class TapeScope {
public:
    explicit TapeScope(Tape& t) : prev_(Tape::active()) { Tape::active() = &t; }
    ~TapeScope() { Tape::active() = prev_; }
    TapeScope(const TapeScope&) = delete;
    TapeScope& operator=(const TapeScope&) = delete;

private:
    Tape* prev_;
};

struct Var {
    double v = 0.0;
    int32_t idx = -1;

    Var() = default;
    Var(double value) : v(value), idx(-1) {}  // NOLINT: implicit constant
    Var(double value, int32_t i) : v(value), idx(i) {}

    // Independent variable registered on the active tape.
    static Var leaf(double value) { return Var(value, Tape::active()->leaf()); }

    bool is_const() const { return idx < 0; }
};

inline double value_of(double x) { return x; }
inline double value_of(const Var& x) { return x.v; }

namespace detail {
inline Var unary(double v, const Var& a, double da) {
    if (a.is_const()) return Var(v);
    return Var(v, Tape::active()->unary(a.idx, da));
}
inline Var binary(double v, const Var& a, double da, const Var& b, double db) {
    if (a.is_const() && b.is_const()) return Var(v);
    if (a.is_const()) return Var(v, Tape::active()->unary(b.idx, db));
    if (b.is_const()) return Var(v, Tape::active()->unary(a.idx, da));
    return Var(v, Tape::active()->binary(a.idx, da, b.idx, db));
}
}  // namespace detail

inline Var operator+(const Var& a, const Var& b) {
    return detail::binary(a.v + b.v, a, 1.0, b, 1.0);
}
inline Var operator-(const Var& a, const Var& b) {
    return detail::binary(a.v - b.v, a, 1.0, b, -1.0);
}
inline Var operator*(const Var& a, const Var& b) {
    return detail::binary(a.v * b.v, a, b.v, b, a.v);
}
inline Var operator/(const Var& a, const Var& b) {
    double inv = 1.0 / b.v;
    return detail::binary(a.v * inv, a, inv, b, -a.v * inv * inv);
}
inline Var operator-(const Var& a) { return detail::unary(-a.v, a, -1.0); }

inline Var& operator+=(Var& a, const Var& b) { a = a + b; return a; }
inline Var& operator-=(Var& a, const Var& b) { a = a - b; return a; }
inline Var& operator*=(Var& a, const Var& b) { a = a * b; return a; }

inline bool operator<(const Var& a, const Var& b) { return a.v < b.v; }
inline bool operator>(const Var& a, const Var& b) { return a.v > b.v; }
inline bool operator<=(const Var& a, const Var& b) { return a.v <= b.v; }
inline bool operator>=(const Var& a, const Var& b) { return a.v >= b.v; }

inline Var exp(const Var& a) {
    double e = std::exp(a.v);
    return detail::unary(e, a, e);
}
inline Var log(const Var& a) { return detail::unary(std::log(a.v), a, 1.0 / a.v); }
inline Var sqrt(const Var& a) {
    double s = std::sqrt(a.v);
    return detail::unary(s, a, 0.5 / s);
}
inline Var sin(const Var& a) { return detail::unary(std::sin(a.v), a, std::cos(a.v)); }
inline Var cos(const Var& a) { return detail::unary(std::cos(a.v), a, -std::sin(a.v)); }
inline Var atan(const Var& a) {
    return detail::unary(std::atan(a.v), a, 1.0 / (1.0 + a.v * a.v));
}
inline Var asin(const Var& a) {
    return detail::unary(std::asin(a.v), a, 1.0 / std::sqrt(1.0 - a.v * a.v));
}
inline Var acos(const Var& a) {
    return detail::unary(std::acos(a.v), a, -1.0 / std::sqrt(1.0 - a.v * a.v));
}
inline Var pow(const Var& a, double p) {
    return detail::unary(std::pow(a.v, p), a, p * std::pow(a.v, p - 1.0));
}
inline Var abs(const Var& a) {
    return detail::unary(std::fabs(a.v), a, a.v >= 0.0 ? 1.0 : -1.0);
}
inline Var sigmoid(const Var& a) {
    double s = 1.0 / (1.0 + std::exp(-a.v));
    return detail::unary(s, a, s * (1.0 - s));
}
// Branch derivatives: the selected argument carries the gradient.
inline Var max(const Var& a, const Var& b) { return a.v >= b.v ? a : b; }
inline Var min(const Var& a, const Var& b) { return a.v <= b.v ? a : b; }
inline Var clamp(const Var& a, double lo, double hi) {
    if (a.v < lo) return Var(lo);
    if (a.v > hi) return Var(hi);
    return a;
}

// Generic 3-vector over double or Var; the shading core is templated on the
// scalar so the plain renderer and the differentiable path share one body.
template <typename T>
struct GVec3 {
    T x{}, y{}, z{};

    GVec3() = default;
    GVec3(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

    GVec3 operator+(const GVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    GVec3 operator-(const GVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    GVec3 operator-() const { return {-x, -y, -z}; }
    GVec3 operator*(const T& s) const { return {x * s, y * s, z * s}; }
    GVec3 operator*(const GVec3& o) const { return {x * o.x, y * o.y, z * o.z}; }
    GVec3& operator+=(const GVec3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
};

template <typename T>
inline GVec3<T> operator*(const T& s, const GVec3<T>& v) { return v * s; }

template <typename T>
inline T dot(const GVec3<T>& a, const GVec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
inline GVec3<T> cross(const GVec3<T>& a, const GVec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
inline T length(const GVec3<T>& v) {
    using std::sqrt;
    return sqrt(dot(v, v));
}

template <typename T>
inline GVec3<T> normalize(const GVec3<T>& v) {
    T inv = T(1.0) / length(v);
    return v * inv;
}

using VarVec3 = GVec3<Var>;

}  // namespace plenopt::ad
