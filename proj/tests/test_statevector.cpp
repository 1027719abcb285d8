// Copyright 2026 The qkad developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qkad/statevector.hpp"
#include "support/oracles.hpp"

using qkad::StateVector;
using qkad::overlap;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_CASE("zero state has amplitude 1 at index 0") {
    const StateVector two(2);
    REQUIRE(two.dimension() == 4);
    CHECK(two.amplitude(0) == std::complex<double>{1.0, 0.0});
    CHECK(two.amplitude(1) == std::complex<double>{0.0, 0.0});
    CHECK(two.amplitude(2) == std::complex<double>{0.0, 0.0});
    CHECK(two.amplitude(3) == std::complex<double>{0.0, 0.0});

    const StateVector one(1);
    REQUIRE(one.dimension() == 2);
    CHECK(one.amplitude(0) == std::complex<double>{1.0, 0.0});

    const StateVector ten(10);
    REQUIRE(ten.dimension() == 1024);
    CHECK(ten.amplitude(0) == std::complex<double>{1.0, 0.0});
}

TEST_CASE("qubit count is range checked") {
    CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(-3), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(13), std::invalid_argument);
    CHECK_NOTHROW(StateVector(12));
}

TEST_CASE("ry on a single qubit matches the matrix rows") {
    StateVector flip(1);
    flip.apply_ry(0, kPi);
    CHECK(std::abs(flip.amplitude(0)) < 1e-15);
    CHECK(std::abs(flip.amplitude(1) - std::complex<double>{1.0, 0.0}) < 1e-15);

    StateVector still(1);
    still.apply_ry(0, 0.0);
    CHECK(still.amplitude(0) == std::complex<double>{1.0, 0.0});

    StateVector half(1);
    half.apply_ry(0, kPi / 2.0);
    CHECK(std::abs(half.amplitude(0).real() - std::cos(kPi / 4.0)) < 1e-15);
    CHECK(std::abs(half.amplitude(1).real() - std::sin(kPi / 4.0)) < 1e-15);
}

TEST_CASE("ry on qubit 0 of |00> touches only indices 0 and 1") {
    StateVector state(2);
    state.apply_ry(0, 1.234);
    CHECK(std::abs(state.amplitude(0)) > 0.0);
    CHECK(std::abs(state.amplitude(1)) > 0.0);
    CHECK(std::abs(state.amplitude(2)) == 0.0);
    CHECK(std::abs(state.amplitude(3)) == 0.0);
}

TEST_CASE("ry rejects out-of-range qubits") {
    StateVector state(2);
    CHECK_THROWS_AS(state.apply_ry(2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(state.apply_ry(-1, 0.5), std::invalid_argument);
}

TEST_CASE("cnot follows the truth table with qubit 0 as control") {
    // |q1 q0> = |01>: control (qubit 0) is set, so the target flips.
    StateVector state(2);
    state.apply_ry(0, kPi); // |01>
    state.apply_cnot(0, 1);
    CHECK(std::abs(state.amplitude(3) - std::complex<double>{1.0, 0.0}) < 1e-15);

    StateVector zeros(2);
    zeros.apply_cnot(0, 1);
    CHECK(zeros.amplitude(0) == std::complex<double>{1.0, 0.0});
    zeros.apply_cnot(1, 0);
    CHECK(zeros.amplitude(0) == std::complex<double>{1.0, 0.0});
}

TEST_CASE("cnot is an involution") {
    qkad::testing::TestRng rng(71);
    StateVector state(3);
    for (int q = 0; q < 3; ++q) {
        state.apply_ry(q, rng.uniform(-kPi, kPi));
    }
    const std::vector<std::complex<double>> before(state.amplitudes().begin(),
                                                   state.amplitudes().end());
    state.apply_cnot(0, 2);
    state.apply_cnot(0, 2);
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(std::abs(state.amplitude(i) - before[i]) < 1e-10);
    }
}

TEST_CASE("cnot rejects equal or out-of-range wires") {
    StateVector state(2);
    CHECK_THROWS_AS(state.apply_cnot(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(state.apply_cnot(0, 2), std::invalid_argument);
}

TEST_CASE("overlap basics") {
    StateVector a(1);
    CHECK(std::abs(overlap(a, a) - std::complex<double>{1.0, 0.0}) < 1e-12);

    StateVector b(1);
    b.apply_ry(0, kPi);
    CHECK(std::abs(overlap(a, b)) < 1e-15);

    StateVector c(1);
    c.apply_ry(0, kPi / 2.0);
    CHECK(std::abs(overlap(c, a).real() - std::cos(kPi / 4.0)) < 1e-12);

    StateVector wide(2);
    CHECK_THROWS_AS(overlap(a, wide), std::invalid_argument);
}

TEST_CASE("norm is preserved by random gate sequences") {
    qkad::testing::TestRng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(1, 6);
        StateVector state(n);
        for (int step = 0; step < 20; ++step) {
            if (n > 1 && rng.uniform() < 0.4) {
                int control = rng.uniform_int(0, n - 1);
                int target = rng.uniform_int(0, n - 2);
                if (target >= control) {
                    ++target;
                }
                state.apply_cnot(control, target);
            } else {
                state.apply_ry(rng.uniform_int(0, n - 1), rng.uniform(-2.0 * kPi, 2.0 * kPi));
            }
        }
        CHECK(std::abs(state.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("ry followed by its inverse restores the state") {
    qkad::testing::TestRng rng(5);
    StateVector state(4);
    for (int q = 0; q < 4; ++q) {
        state.apply_ry(q, rng.uniform(-kPi, kPi));
    }
    const std::vector<std::complex<double>> before(state.amplitudes().begin(),
                                                   state.amplitudes().end());
    const double theta = rng.uniform(-kPi, kPi);
    state.apply_ry(2, theta);
    state.apply_ry(2, -theta);
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(std::abs(state.amplitude(i) - before[i]) < 1e-10);
    }
}

TEST_CASE("gates agree with dense Kronecker-product matrices") {
    using namespace qkad::testing;
    TestRng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform_int(1, 4);
        StateVector state(n);
        std::vector<Complex> reference(std::size_t{1} << n, Complex{0.0, 0.0});
        reference[0] = Complex{1.0, 0.0};
        for (int step = 0; step < 12; ++step) {
            if (n > 1 && rng.uniform() < 0.4) {
                int control = rng.uniform_int(0, n - 1);
                int target = rng.uniform_int(0, n - 2);
                if (target >= control) {
                    ++target;
                }
                state.apply_cnot(control, target);
                reference = matvec(dense_cnot(n, control, target), reference);
            } else {
                const int qubit = rng.uniform_int(0, n - 1);
                const double theta = rng.uniform(-2.0 * kPi, 2.0 * kPi);
                state.apply_ry(qubit, theta);
                reference = matvec(dense_ry(n, qubit, theta), reference);
            }
        }
        for (std::size_t i = 0; i < reference.size(); ++i) {
            CHECK(std::abs(state.amplitude(i) - reference[i]) < 1e-10);
        }
    }
}
