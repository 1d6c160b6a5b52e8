// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0
//
// Glue between the AD tape and the trainable parameter arrays: fetching a
// parameter in Var mode registers a tape leaf plus a binding that says which
// array slot the leaf's adjoint belongs to.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "plenopt/tape.hpp"

namespace plenopt {

enum class ParamArray : uint32_t {
    SdfValues = 0,
    SdfAlbedo,
    SdfSh,
    SdfSharpness,
    EnvRgb,
    EnvSigma,
    MatAlbedo,
    MatRoughness,
    MatMetallic,
    ResidualTable,
    TerminalTable,
    Count
};

constexpr size_t kNumParamArrays = static_cast<size_t>(ParamArray::Count);

constexpr uint32_t param_bit(ParamArray a) { return 1u << static_cast<uint32_t>(a); }

struct LeafRecorder {
    uint32_t trainable_mask = 0xffffffffu;

    struct Binding {
        int32_t node;
        ParamArray array;
        int64_t index;
    };
    std::vector<Binding> bindings;

    bool trainable(ParamArray a) const {
        return (trainable_mask & param_bit(a)) != 0;
    }

    ad::Var fetch(ParamArray a, const std::vector<double>& values, int64_t i) {
        if (!trainable(a)) return ad::Var(values[i]);
        ad::Var leaf = ad::Var::leaf(values[i]);
        bindings.push_back({leaf.idx, a, i});
        return leaf;
    }

    ad::Var fetch_scalar(ParamArray a, double value) {
        if (!trainable(a)) return ad::Var(value);
        ad::Var leaf = ad::Var::leaf(value);
        bindings.push_back({leaf.idx, a, 0});
        return leaf;
    }

    void clear() { bindings.clear(); }
};

// Scalar-generic parameter access: double mode reads straight through, Var
// mode records leaves on the active tape.
template <typename T>
struct ParamFetch;

template <>
struct ParamFetch<double> {
    double fetch(ParamArray, const std::vector<double>& values, int64_t i) const {
        return values[i];
    }
    double fetch_scalar(ParamArray, double value) const { return value; }
};

template <>
struct ParamFetch<ad::Var> {
    LeafRecorder* recorder = nullptr;
    ad::Var fetch(ParamArray a, const std::vector<double>& values, int64_t i) const {
        return recorder->fetch(a, values, i);
    }
    ad::Var fetch_scalar(ParamArray a, double value) const {
        return recorder->fetch_scalar(a, value);
    }
};

// Per-array gradient accumulation buffers sized like the parameter arrays.
struct GradientBuffers {
    std::array<std::vector<double>, kNumParamArrays> grads;

    std::vector<double>& operator[](ParamArray a) {
        return grads[static_cast<size_t>(a)];
    }
    const std::vector<double>& operator[](ParamArray a) const {
        return grads[static_cast<size_t>(a)];
    }

    void add_scaled(const GradientBuffers& other, double s) {
        for (size_t i = 0; i < kNumParamArrays; ++i) {
            const auto& src = other.grads[i];
            auto& dst = grads[i];
            for (size_t j = 0; j < src.size(); ++j) dst[j] += s * src[j];
        }
    }

    void zero() {
        for (auto& g : grads)
            std::fill(g.begin(), g.end(), 0.0);
    }
};

inline void scatter_gradients(const LeafRecorder& rec, const std::vector<double>& adjoint,
                              GradientBuffers& out, double scale = 1.0) {
    for (const auto& b : rec.bindings) {
        double g = adjoint[static_cast<size_t>(b.node)];
        if (g != 0.0) out[b.array][static_cast<size_t>(b.index)] += scale * g;
    }
}

}  // namespace plenopt
