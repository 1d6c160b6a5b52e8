// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "plenopt/math.hpp"

namespace plenopt {

// splitmix64; used to derive independent stream seeds from (seed, tag) pairs.
inline uint64_t hash_mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t seed, uint64_t v) {
    return hash_mix(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline uint64_t hash_str(std::string_view s, uint64_t seed = 0) {
    uint64_t h = seed;
    for (char c : s) h = hash_combine(h, static_cast<uint64_t>(static_cast<unsigned char>(c)));
    return h;
}

// PCG32 (Melissa O'Neill). Hand-rolled so streams are identical across
// platforms and standard library implementations.
class Rng {
public:
    Rng() : Rng(0x853c49e6748fea9bULL) {}
    explicit Rng(uint64_t seed, uint64_t stream = 1) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    uint32_t next_u32() {
        uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
        uint32_t rot = static_cast<uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    uint32_t next_u32(uint32_t bound) {
        // Bounded rejection-free-enough variant (bias negligible for bound << 2^32).
        return static_cast<uint32_t>((static_cast<uint64_t>(next_u32()) * bound) >> 32);
    }

    // Uniform in [0, 1).
    double next_double() {
        return next_u32() * (1.0 / 4294967296.0);
    }

    Vec2 next_vec2() {
        double a = next_double();
        double b = next_double();
        return {a, b};
    }

private:
    uint64_t state_;
    uint64_t inc_;
};

}  // namespace plenopt
