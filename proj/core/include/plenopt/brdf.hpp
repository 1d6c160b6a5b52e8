// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0
//
// GGX microfacet reflectance (Cook-Torrance, Smith height-correlated
// masking-shadowing, Schlick Fresnel, metalness workflow) and the
// material-aware cone generator that turns the BRDF lobes into a small set
// of weighted cones.

#pragma once

#include <stdexcept>
#include <vector>

#include "plenopt/math.hpp"
#include "plenopt/rng.hpp"
#include "plenopt/tape.hpp"

namespace plenopt {

struct MaterialParams {
    Rgb albedo{0.5, 0.5, 0.5};
    double roughness = 0.5;
    double metallic = 0.0;

    // Delta-lobe guard for sampling and for the lobe half-angle solve.
    static constexpr double kRoughnessFloor = 0.01;

    MaterialParams clamped() const {
        MaterialParams m;
        m.albedo = clamp(albedo, 0.0, 1.0);
        m.roughness = clamp(roughness, kRoughnessFloor, 1.0);
        m.metallic = clamp(metallic, 0.0, 1.0);
        return m;
    }
};

struct Cone {
    Vec3 origin;
    Vec3 axis;          // unit length
    double half_angle;  // radians in [0, pi/2]
};

enum class LobeKind { Diffuse, Specular };

struct LobeSample {
    Cone cone;
    Rgb weight;  // estimator throughput; sum over a sample set approximates
                 // directional reflectance
    LobeKind kind;
};

// --- GGX distribution math ------------------------------------------------

// Isotropic GGX normal distribution with alpha = roughness^2, evaluated at
// cos(theta_m). Integrates to 1 against cos(theta) over the hemisphere.
double ggx_ndf(double cos_theta_m, double roughness);

// Joint microfacet-normal density over (theta, phi):
//   p_m = r^4 cos sin / (pi ((r^4-1) cos^2 + 1)^2)
double pdf_theta_phi(double theta, double roughness);

// Closed-form CDF of the theta marginal. roughness == 1 is handled by the
// analytic limit sin^2(theta).
double cdf_theta(double theta_m, double roughness);

// Solves cdf_theta == beta: theta_m = arctan(r^2 sqrt(beta / (1 - beta))).
double lobe_half_angle(double roughness, double beta = 0.9);

// Specular cone apex angle from the lobe half-angle (mirror doubling rule).
double cone_apex_angle(double theta_m);

// Inverse-CDF sample of a microfacet normal in the given shading frame.
Vec3 sample_microfacet_normal(Rng& rng, double roughness, const Frame& shading_frame);

// Full BRDF evaluation; returns zero if either direction is below the
// hemisphere of `normal`.
Rgb eval_brdf(const Vec3& w_in, const Vec3& w_out, const Vec3& normal,
              const MaterialParams& material);

// 8 diffuse + 4 specular cones by default; the weighted sum of per-cone
// radiances estimates the rendering-equation integral.
std::vector<LobeSample> sample_cones(const Vec3& w_out, const Vec3& normal,
                                     const MaterialParams& material, int n_diffuse,
                                     int n_specular, Rng& rng, double beta = 0.9);

// Deterministic equal-energy partition of the cosine hemisphere; axes and
// half-angles are expressed in the local frame (z = normal).
struct DiffuseCell {
    Vec3 axis_local;
    double half_angle;
};
std::vector<DiffuseCell> cosine_hemisphere_partition(int n);

// --- scalar-generic implementation ----------------------------------------
// The same bodies serve the plain renderer (T = double) and the
// differentiable material-learning path (T = ad::Var).

template <typename T>
struct TMaterial {
    ad::GVec3<T> albedo;
    T roughness;
    T metallic;
};

template <typename T>
struct TLobeSample {
    ad::GVec3<T> axis;
    T half_angle;
    ad::GVec3<T> weight;
    LobeKind kind;
};

namespace brdf_detail {

template <typename T>
ad::GVec3<T> promote(const Vec3& v) {
    return {T(v.x), T(v.y), T(v.z)};
}

template <typename T>
ad::GVec3<T> schlick_fresnel(const ad::GVec3<T>& f0, const T& cos_theta) {
    using std::max;
    using ad::max;
    using std::min;
    using ad::min;
    T m = max(T(1.0) - cos_theta, T(0.0));
    T m2 = m * m;
    T w = m2 * m2 * m;  // (1 - cos)^5
    // Grazing reflectance fades out with very small F0 so a zero Fresnel
    // base yields a truly black specular lobe.
    T f90 = min((f0.x + f0.y + f0.z) * T(50.0 / 3.0), T(1.0));
    return f0 * (T(1.0) - w) + ad::GVec3<T>{f90, f90, f90} * w;
}

template <typename T>
ad::GVec3<T> fresnel_f0(const TMaterial<T>& m) {
    // Metalness workflow: F0 = lerp(0.04, albedo, metallic).
    T base = T(0.04) * (T(1.0) - m.metallic);
    return {base + m.albedo.x * m.metallic, base + m.albedo.y * m.metallic,
            base + m.albedo.z * m.metallic};
}

template <typename T>
T ggx_d(const T& cos_m, const T& roughness) {
    T alpha = roughness * roughness;
    T a2 = alpha * alpha;
    T c2 = cos_m * cos_m;
    T d = (a2 - T(1.0)) * c2 + T(1.0);
    return a2 / (T(kPi) * d * d);
}

// Smith Lambda for GGX; expects cos > 0.
template <typename T>
T smith_lambda(const T& cos_theta, const T& roughness) {
    using std::sqrt;
    using ad::sqrt;
    T alpha = roughness * roughness;
    T c2 = cos_theta * cos_theta;
    T tan2 = (T(1.0) - c2) / c2;
    return (sqrt(T(1.0) + alpha * alpha * tan2) - T(1.0)) * T(0.5);
}

template <typename T>
T smith_g2(const T& cos_i, const T& cos_o, const T& roughness) {
    return T(1.0) / (T(1.0) + smith_lambda(cos_i, roughness) + smith_lambda(cos_o, roughness));
}

template <typename T>
ad::GVec3<T> eval_brdf_t(const ad::GVec3<T>& w_in, const ad::GVec3<T>& w_out,
                         const ad::GVec3<T>& n, const TMaterial<T>& mat) {
    using ad::dot;
    using ad::normalize;
    T cos_i = dot(n, w_in);
    T cos_o = dot(n, w_out);
    ad::GVec3<T> zero{T(0.0), T(0.0), T(0.0)};
    if (ad::value_of(cos_i) <= 0.0 || ad::value_of(cos_o) <= 0.0) return zero;

    ad::GVec3<T> h = normalize(w_in + w_out);
    T cos_h_i = dot(h, w_in);
    T cos_h_n = dot(h, n);

    ad::GVec3<T> f0 = fresnel_f0(mat);
    ad::GVec3<T> f = schlick_fresnel(f0, cos_h_i);

    T d = ggx_d(cos_h_n, mat.roughness);
    T g = smith_g2(cos_i, cos_o, mat.roughness);
    T spec_scale = d * g / (T(4.0) * cos_i * cos_o);
    ad::GVec3<T> specular = f * spec_scale;

    ad::GVec3<T> one{T(1.0), T(1.0), T(1.0)};
    T kd = (T(1.0) - mat.metallic) * T(kInvPi);
    ad::GVec3<T> diffuse = (one - f) * mat.albedo * kd;

    return diffuse + specular;
}

// Scales all weights so that no channel of the summed set exceeds 1; keeps
// the white-furnace bound while leaving typical sample sets untouched. The
// Monte Carlo reference applies the same cap.
template <typename T>
void apply_reflectance_cap(std::vector<TLobeSample<T>>& lobes) {
    ad::GVec3<T> sum{T(0.0), T(0.0), T(0.0)};
    for (const auto& l : lobes) sum += l.weight;
    double sx = ad::value_of(sum.x), sy = ad::value_of(sum.y), sz = ad::value_of(sum.z);
    double peak = std::max(sx, std::max(sy, sz));
    if (peak <= 1.0) return;
    const T& top = (sx >= sy && sx >= sz) ? sum.x : (sy >= sz ? sum.y : sum.z);
    T scale = T(1.0) / top;
    for (auto& l : lobes) l.weight = l.weight * scale;
}

// Generates the lobe sample set. Specular axes, half-angles, and all weights
// are differentiable with respect to the material; the random numbers drawn
// from `rng` do not depend on T, so a fixed seed yields a deterministic,
// finite-difference-checkable function of the material.
template <typename T>
std::vector<TLobeSample<T>> sample_lobes_t(const Vec3& w_out, const Vec3& normal,
                                           const TMaterial<T>& mat, int n_diffuse,
                                           int n_specular, Rng& rng, double beta) {
    using ad::dot;
    using ad::normalize;
    using std::atan;
    using ad::atan;
    using std::acos;
    using ad::acos;
    using std::sqrt;
    using ad::sqrt;
    using std::cos;
    using ad::cos;
    using std::sin;
    using ad::sin;
    using std::min;
    using ad::min;

    if (std::abs(length(normal) - 1.0) > 1e-4)
        throw std::invalid_argument("sample_lobes: degenerate shading normal");

    std::vector<TLobeSample<T>> lobes;
    lobes.reserve(static_cast<size_t>(n_diffuse + n_specular));
    Frame frame = Frame::from_z(normal);
    ad::GVec3<T> n_t = promote<T>(normal);
    ad::GVec3<T> w_out_t = promote<T>(w_out);
    ad::GVec3<T> f0 = fresnel_f0(mat);
    ad::GVec3<T> one{T(1.0), T(1.0), T(1.0)};

    // Diffuse: midpoint cubature over an equal-energy partition of the
    // cosine hemisphere. Each cell carries cosine mass pi / n_diffuse, so the
    // per-cone weight is (1 - metallic)(1 - F) albedo / n_diffuse; a fully
    // metallic surface zeroes the whole set.
    if (n_diffuse > 0) {
        const auto cells = cosine_hemisphere_partition(n_diffuse);
        for (const auto& cell : cells) {
            Vec3 axis = frame.to_world(cell.axis_local);
            Vec3 h = normalize(axis + w_out);
            ad::GVec3<T> f = schlick_fresnel(f0, T(dot(h, axis)));
            T kd = (T(1.0) - mat.metallic) * T(1.0 / n_diffuse);
            TLobeSample<T> lobe;
            lobe.axis = promote<T>(axis);
            lobe.half_angle = T(cell.half_angle);
            lobe.weight = (one - f) * mat.albedo * kd;
            lobe.kind = LobeKind::Diffuse;
            lobes.push_back(lobe);
        }
    }

    // Specular: GGX importance-sampled microfacet normals; each cone covers
    // 1/n_specular of the lobe solid angle.
    if (n_specular > 0) {
        T r = mat.roughness;
        T r2 = r * r;
        T theta_m = atan(r2 * T(std::sqrt(beta / (1.0 - beta))));
        T theta_c = min(theta_m * T(2.0), T(kPi / 2.0));
        // Split the apex solid angle: 1 - cos(h) = (1 - cos(theta_c)) / n.
        T cone_cos = T(1.0) - (T(1.0) - cos(theta_c)) * T(1.0 / n_specular);
        T half = acos(min(cone_cos, T(1.0 - 1e-12)));

        T cos_o = dot(n_t, w_out_t);
        for (int k = 0; k < n_specular; ++k) {
            double u1 = rng.next_double();
            double u2 = rng.next_double();
            // Inverse CDF of the theta marginal (Eq. form: arctan(r^2 sqrt(u/(1-u)))).
            T tan_theta = r2 * T(std::sqrt(u1 / std::max(1.0 - u1, 1e-12)));
            T theta = atan(tan_theta);
            double phi = kTwoPi * u2;
            T st = sin(theta);
            T ct = cos(theta);
            ad::GVec3<T> m_local{st * T(std::cos(phi)), st * T(std::sin(phi)), ct};
            ad::GVec3<T> t_t = promote<T>(frame.t);
            ad::GVec3<T> b_t = promote<T>(frame.b);
            ad::GVec3<T> m = t_t * m_local.x + b_t * m_local.y + n_t * m_local.z;

            T m_dot_o = dot(m, w_out_t);
            TLobeSample<T> lobe;
            lobe.kind = LobeKind::Specular;
            lobe.half_angle = half;
            if (ad::value_of(m_dot_o) <= 1e-9) {
                // Backfacing microfacet; keep the slot with zero weight.
                lobe.axis = promote<T>(reflect(w_out, normal));
                lobe.weight = {T(0.0), T(0.0), T(0.0)};
                lobes.push_back(lobe);
                continue;
            }
            ad::GVec3<T> w_in = m * (T(2.0) * m_dot_o) - w_out_t;
            T cos_i = dot(n_t, w_in);
            if (ad::value_of(cos_i) <= 1e-9) {
                lobe.axis = promote<T>(reflect(w_out, normal));
                lobe.weight = {T(0.0), T(0.0), T(0.0)};
                lobes.push_back(lobe);
                continue;
            }
            T cos_m = dot(n_t, m);
            ad::GVec3<T> f = schlick_fresnel(f0, m_dot_o);
            T g = smith_g2(cos_i, cos_o, r);
            // f_r * cos_i / pdf with pdf = D cos_m / (4 (m . w_out)).
            T w = g * m_dot_o / (cos_o * cos_m) * T(1.0 / n_specular);
            lobe.axis = normalize(w_in);
            lobe.weight = f * w;
            lobes.push_back(lobe);
        }
    }

    apply_reflectance_cap(lobes);
    return lobes;
}

}  // namespace brdf_detail

}  // namespace plenopt
