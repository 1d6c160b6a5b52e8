// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "plenopt/brdf.hpp"

#include <cmath>

namespace plenopt {

double ggx_ndf(double cos_theta_m, double roughness) {
    if (cos_theta_m < -1e-9 || cos_theta_m > 1.0 + 1e-9)
        throw std::domain_error("ggx_ndf: cos_theta_m outside [0, 1]");
    cos_theta_m = clamp(cos_theta_m, 0.0, 1.0);
    if (roughness <= 0.0 || roughness > 1.0)
        throw std::domain_error("ggx_ndf: roughness outside (0, 1]");
    return brdf_detail::ggx_d(cos_theta_m, roughness);
}

double pdf_theta_phi(double theta, double roughness) {
    if (theta < 0.0 || theta > kPi / 2.0 + 1e-12)
        throw std::domain_error("pdf_theta_phi: theta outside [0, pi/2]");
    if (roughness <= 0.0 || roughness > 1.0)
        throw std::domain_error("pdf_theta_phi: roughness outside (0, 1]");
    double r4 = sqr(sqr(roughness));
    double c = std::cos(theta), s = std::sin(theta);
    double d = (r4 - 1.0) * c * c + 1.0;
    return r4 * c * s / (kPi * d * d);
}

double cdf_theta(double theta_m, double roughness) {
    if (theta_m < 0.0 || theta_m > kPi / 2.0 + 1e-12)
        throw std::domain_error("cdf_theta: theta_m outside [0, pi/2]");
    double r4 = sqr(sqr(roughness));
    double c2 = sqr(std::cos(theta_m));
    if (std::abs(r4 - 1.0) < 1e-6) {
        // Analytic limit of the closed form at roughness -> 1.
        return 1.0 - c2;
    }
    double k = r4 - 1.0;
    return r4 / (k * (k * c2 + 1.0)) - 1.0 / k;
}

double lobe_half_angle(double roughness, double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("lobe_half_angle: beta outside (0, 1)");
    return std::atan(sqr(roughness) * std::sqrt(beta / (1.0 - beta)));
}

double cone_apex_angle(double theta_m) {
    // A microfacet normal tilted by theta_m deviates the mirror direction by
    // up to 2 theta_m; clamp at the hemisphere boundary.
    return std::min(2.0 * theta_m, kPi / 2.0);
}

Vec3 sample_microfacet_normal(Rng& rng, double roughness, const Frame& shading_frame) {
    double u1 = rng.next_double();
    double u2 = rng.next_double();
    double r2 = sqr(roughness);
    double theta = std::atan(r2 * std::sqrt(u1 / std::max(1.0 - u1, 1e-12)));
    double phi = kTwoPi * u2;
    double st = std::sin(theta), ct = std::cos(theta);
    return shading_frame.to_world({st * std::cos(phi), st * std::sin(phi), ct});
}

Rgb eval_brdf(const Vec3& w_in, const Vec3& w_out, const Vec3& normal,
              const MaterialParams& material) {
    TMaterial<double> m{{material.albedo.x, material.albedo.y, material.albedo.z},
                        material.roughness,
                        material.metallic};
    auto f = brdf_detail::eval_brdf_t<double>({w_in.x, w_in.y, w_in.z},
                                              {w_out.x, w_out.y, w_out.z},
                                              {normal.x, normal.y, normal.z}, m);
    return {f.x, f.y, f.z};
}

std::vector<DiffuseCell> cosine_hemisphere_partition(int n) {
    std::vector<DiffuseCell> cells;
    if (n <= 0) return cells;
    cells.reserve(static_cast<size_t>(n));

    // Rings of equal cosine mass; the CDF of the cosine lobe over theta is
    // sin^2(theta), so ring boundaries are uniform in sin^2.
    int rings = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
    std::vector<int> counts(static_cast<size_t>(rings), n / rings);
    for (int r = 0; r < n % rings; ++r) counts[static_cast<size_t>(rings - 1 - r)] += 1;

    int assigned = 0;
    for (int r = 0; r < rings; ++r) {
        int c = counts[static_cast<size_t>(r)];
        if (c == 0) continue;
        double mass_lo = static_cast<double>(assigned) / n;
        double mass_hi = static_cast<double>(assigned + c) / n;
        assigned += c;
        double theta_lo = std::asin(std::sqrt(mass_lo));
        double theta_hi = std::asin(std::sqrt(mass_hi));
        double theta_c = std::asin(std::sqrt(0.5 * (mass_lo + mass_hi)));
        // Match each cell's solid angle with the cone's: 2 pi (1 - cos h).
        double cell_solid = (std::cos(theta_lo) - std::cos(theta_hi)) / c;
        double half = std::acos(clamp(1.0 - cell_solid, -1.0, 1.0));
        double phi_off = (r % 2) * kPi / c;
        for (int j = 0; j < c; ++j) {
            double phi = kTwoPi * (j + 0.5) / c + phi_off;
            DiffuseCell cell;
            cell.axis_local = {std::sin(theta_c) * std::cos(phi),
                               std::sin(theta_c) * std::sin(phi), std::cos(theta_c)};
            cell.half_angle = half;
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<LobeSample> sample_cones(const Vec3& w_out, const Vec3& normal,
                                     const MaterialParams& material, int n_diffuse,
                                     int n_specular, Rng& rng, double beta) {
    if (n_diffuse < 0 || n_specular < 0)
        throw std::invalid_argument("sample_cones: negative cone count");
    MaterialParams mc = material.clamped();
    TMaterial<double> m{{mc.albedo.x, mc.albedo.y, mc.albedo.z}, mc.roughness, mc.metallic};
    auto lobes = brdf_detail::sample_lobes_t<double>(w_out, normal, m, n_diffuse,
                                                     n_specular, rng, beta);
    std::vector<LobeSample> out;
    out.reserve(lobes.size());
    for (const auto& l : lobes) {
        LobeSample s;
        s.cone.origin = Vec3{0, 0, 0};
        s.cone.axis = {l.axis.x, l.axis.y, l.axis.z};
        s.cone.half_angle = l.half_angle;
        s.weight = {l.weight.x, l.weight.y, l.weight.z};
        s.kind = l.kind;
        out.push_back(s);
    }
    return out;
}

}  // namespace plenopt
