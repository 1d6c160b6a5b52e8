// Copyright 2026 The plenopt Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "plenopt/tape.hpp"

using plenopt::ad::Tape;
using plenopt::ad::TapeScope;
using plenopt::ad::Var;

namespace {

// Evaluates f on Vars, backpropagates, and compares every input gradient
// against central differences of the same function on doubles.
template <typename F>
void check_gradients(F f, std::vector<double> x, double h = 1e-6, double tol = 1e-6) {
    Tape tape;
    TapeScope scope(tape);
    std::vector<Var> vars;
    vars.reserve(x.size());
    for (double v : x) vars.push_back(Var::leaf(v));
    Var y = f(vars);
    REQUIRE(!y.is_const());
    std::vector<double> adj;
    tape.backward(y.idx, adj);

    for (size_t i = 0; i < x.size(); ++i) {
        auto eval = [&](double xi) {
            std::vector<Var> args;
            for (size_t j = 0; j < x.size(); ++j)
                args.push_back(Var(j == i ? xi : x[j]));
            return plenopt::ad::value_of(f(args));
        };
        double fd = oracles::central_difference(eval, x[i], h);
        double an = adj[vars[i].idx];
        CHECK(an == doctest::Approx(fd).epsilon(tol).scale(1.0));
    }
}

}  // namespace

TEST_CASE("tape gradients on polynomial expressions are exact") {
    check_gradients(
        [](const std::vector<Var>& v) {
            return v[0] * v[0] * 3.0 + v[0] * v[1] - v[1] * v[1] * v[1];
        },
        {1.3, -0.7}, 1e-5, 1e-8);
}

TEST_CASE("tape gradients through transcendental chains") {
    check_gradients(
        [](const std::vector<Var>& v) {
            using namespace plenopt::ad;
            return exp(sin(v[0]) * v[1]) + log(v[1] + 2.0) / sqrt(v[0] + 3.0) +
                   atan(v[0] * v[1]) + pow(v[1] + 1.5, 2.5);
        },
        {0.4, 0.9});
}

TEST_CASE("tape handles constants without nodes") {
    Tape tape;
    TapeScope scope(tape);
    Var c = 2.5;
    Var d = c * 3.0 + 1.0;
    CHECK(d.is_const());
    CHECK(tape.size() == 0);
    Var x = Var::leaf(2.0);
    Var y = x * d;
    CHECK(plenopt::ad::value_of(y) == doctest::Approx(17.0));
    std::vector<double> adj;
    tape.backward(y.idx, adj);
    CHECK(adj[x.idx] == doctest::Approx(8.5));
}

TEST_CASE("tape branch functions pick the active side") {
    check_gradients(
        [](const std::vector<Var>& v) {
            using namespace plenopt::ad;
            return max(v[0] * 2.0, v[1]) + min(v[0], v[1] * v[1]) + abs(v[0] - 0.1);
        },
        {0.8, 0.3});
}

TEST_CASE("tape sigmoid and division") {
    check_gradients(
        [](const std::vector<Var>& v) {
            using namespace plenopt::ad;
            return sigmoid(v[0] * 4.0 - v[1]) / (v[1] + 1.2);
        },
        {0.25, 0.6});
}

TEST_CASE("tape vector helpers differentiate") {
    using plenopt::ad::GVec3;
    check_gradients(
        [](const std::vector<Var>& v) {
            using namespace plenopt::ad;
            GVec3<Var> a{v[0], v[1], v[2]};
            GVec3<Var> b{v[2], Var(0.5), v[0]};
            return dot(normalize(a), b) + length(cross(a, b));
        },
        {0.7, -0.4, 1.2});
}

TEST_CASE("tape reuse via clear") {
    Tape tape;
    for (int rep = 0; rep < 3; ++rep) {
        tape.clear();
        TapeScope scope(tape);
        Var x = Var::leaf(1.0 + rep);
        Var y = x * x;
        std::vector<double> adj;
        tape.backward(y.idx, adj);
        CHECK(adj[x.idx] == doctest::Approx(2.0 * (1.0 + rep)));
    }
}
