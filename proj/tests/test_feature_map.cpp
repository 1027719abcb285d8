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
#include <limits>
#include <numbers>
#include <vector>

#include "qkad/feature_map.hpp"
#include "qkad/gram.hpp"
#include "support/oracles.hpp"

using qkad::FeatureMapKind;
using qkad::FeatureMapSpec;
using qkad::encode;
using qkad::gate_counts;
using qkad::quantum_kernel;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_features(qkad::testing::TestRng& rng, int d) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (double& v : x) {
        v = rng.uniform(0.0, kPi);
    }
    return x;
}

/// Closed form of the single-layer kernel: the trailing entangler
/// cancels inside the fidelity and both uploads stack, leaving
/// prod_j cos^2(scale_j (x_j - y_j)).
double product_kernel(const FeatureMapSpec& spec, const std::vector<double>& x,
                      const std::vector<double>& y) {
    double value = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double c = std::cos(spec.angle_scales[j] * (x[j] - y[j]));
        value *= c * c;
    }
    return value;
}

} // namespace

TEST_CASE("single-qubit single-layer encoding stacks two rotations") {
    const auto spec = FeatureMapSpec::make(FeatureMapKind::Qk1, 1, 1);
    const std::vector<double> x = {kPi};
    const auto state = encode(spec, x);
    // Ry(pi)Ry(pi)|0> = Ry(2pi)|0> = [-1, 0]
    CHECK(std::abs(state.amplitude(0).real() + 1.0) < 1e-12);
    CHECK(std::abs(state.amplitude(1)) < 1e-12);
}

TEST_CASE("zero features encode to the zero state") {
    const auto spec = FeatureMapSpec::make(FeatureMapKind::Qk2, 2, 2);
    const std::vector<double> x = {0.0, 0.0};
    const auto state = encode(spec, x);
    CHECK(std::abs(state.amplitude(0) - std::complex<double>{1.0, 0.0}) < 1e-12);
}

TEST_CASE("encode validates dimensions and finiteness") {
    const auto spec = FeatureMapSpec::make(FeatureMapKind::Qk1, 3);
    const std::vector<double> wrong = {0.1, 0.2};
    CHECK_THROWS_AS(encode(spec, wrong), std::invalid_argument);
    const std::vector<double> inf = {0.1, std::numeric_limits<double>::infinity(), 0.2};
    CHECK_THROWS_AS(encode(spec, inf), std::invalid_argument);
}

TEST_CASE("encoded circuits match the dense matrix oracle") {
    using namespace qkad::testing;
    TestRng rng(1234);
    for (const auto kind : {FeatureMapKind::Qk1, FeatureMapKind::Qk2}) {
        for (int d = 1; d <= 4; ++d) {
            for (int layers = 1; layers <= 2; ++layers) {
                const auto spec = FeatureMapSpec::make(kind, d, layers);
                const auto x = random_features(rng, d);

                // Dense route: initial rotation layer, then per layer a
                // rotation layer and the entangler.
                std::vector<Complex> reference(std::size_t{1} << d, Complex{0.0, 0.0});
                reference[0] = Complex{1.0, 0.0};
                auto rotation_layer = [&] {
                    for (int q = 0; q < d; ++q) {
                        reference = matvec(
                            dense_ry(d, q,
                                     spec.angle_scales[static_cast<std::size_t>(q)] *
                                         x[static_cast<std::size_t>(q)]),
                            reference);
                    }
                };
                auto entangler = [&] {
                    if (kind == FeatureMapKind::Qk1) {
                        for (int j = 0; j + 1 < d; ++j) {
                            reference = matvec(dense_cnot(d, j, j + 1), reference);
                        }
                    } else {
                        for (int i = 0; i < d; ++i) {
                            for (int j = i + 1; j < d; ++j) {
                                reference = matvec(dense_cnot(d, i, j), reference);
                            }
                        }
                    }
                };
                rotation_layer();
                for (int layer = 0; layer < layers; ++layer) {
                    rotation_layer();
                    entangler();
                }

                const auto state = encode(spec, x);
                for (std::size_t i = 0; i < reference.size(); ++i) {
                    CHECK(std::abs(state.amplitude(i) - reference[i]) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("self-kernel is one") {
    qkad::testing::TestRng rng(7);
    const auto spec = FeatureMapSpec::make(FeatureMapKind::Qk2, 4, 2);
    const auto x = random_features(rng, 4);
    CHECK(std::abs(quantum_kernel(spec, x, x) - 1.0) < 1e-10);
}

TEST_CASE("single-qubit kernel closed form") {
    // Both uploads stack: kernel(x, y) = cos^2(x - y).
    const auto spec = FeatureMapSpec::make(FeatureMapKind::Qk1, 1, 1);
    const std::vector<double> x = {0.0};
    const std::vector<double> quarter = {kPi / 4.0};
    const std::vector<double> half = {kPi / 2.0};
    CHECK(quantum_kernel(spec, x, quarter) == Catch::Approx(0.5).margin(1e-12));
    CHECK(quantum_kernel(spec, x, half) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("kernel is symmetric") {
    qkad::testing::TestRng rng(31);
    for (const auto kind : {FeatureMapKind::Qk1, FeatureMapKind::Qk2}) {
        const auto spec = FeatureMapSpec::make(kind, 4, 2);
        for (int trial = 0; trial < 100; ++trial) {
            const auto x = random_features(rng, 4);
            const auto y = random_features(rng, 4);
            CHECK(std::abs(quantum_kernel(spec, x, y) - quantum_kernel(spec, y, x)) < 1e-12);
        }
    }
}

TEST_CASE("single layer collapses both kinds to the product kernel") {
    qkad::testing::TestRng rng(404);
    for (const int d : {2, 5}) {
        const auto qk1 = FeatureMapSpec::make(FeatureMapKind::Qk1, d, 1);
        const auto qk2 = FeatureMapSpec::make(FeatureMapKind::Qk2, d, 1);
        for (int trial = 0; trial < 50; ++trial) {
            const auto x = random_features(rng, d);
            const auto y = random_features(rng, d);
            const double expected = product_kernel(qk1, x, y);
            CHECK(std::abs(quantum_kernel(qk1, x, y) - expected) < 1e-10);
            CHECK(std::abs(quantum_kernel(qk2, x, y) - expected) < 1e-10);
        }
    }
}

TEST_CASE("two layers activate the entanglers") {
    qkad::testing::TestRng rng(777);
    const auto qk1 = FeatureMapSpec::make(FeatureMapKind::Qk1, 3, 2);
    const auto qk2 = FeatureMapSpec::make(FeatureMapKind::Qk2, 3, 2);
    int distinct = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_features(rng, 3);
        const auto y = random_features(rng, 3);
        if (std::abs(quantum_kernel(qk1, x, y) - quantum_kernel(qk2, x, y)) > 1e-3) {
            ++distinct;
        }
    }
    CHECK(distinct >= 1);
}

TEST_CASE("gate counts") {
    const auto qk1 = FeatureMapSpec::make(FeatureMapKind::Qk1, 5, 1);
    CHECK(gate_counts(qk1).cnots == 4);
    CHECK(gate_counts(qk1).rotations == 10);

    const auto qk2 = FeatureMapSpec::make(FeatureMapKind::Qk2, 5, 1);
    CHECK(gate_counts(qk2).cnots == 10);
    CHECK(gate_counts(qk2).rotations == 10);

    const auto single = FeatureMapSpec::make(FeatureMapKind::Qk1, 1, 1);
    CHECK(gate_counts(single).cnots == 0);

    const auto deep = FeatureMapSpec::make(FeatureMapKind::Qk2, 4, 3);
    CHECK(gate_counts(deep).cnots == 3 * 6);
    CHECK(gate_counts(deep).rotations == 4 * 4);
}

TEST_CASE("quantum Gram matrices are positive semidefinite") {
    qkad::testing::TestRng rng(2718);
    const int d = 4;
    std::vector<std::vector<double>> xs;
    for (int i = 0; i < 12; ++i) {
        xs.push_back(random_features(rng, d));
    }
    for (const auto kind : {FeatureMapKind::Qk1, FeatureMapKind::Qk2}) {
        const auto spec = FeatureMapSpec::make(kind, d, 2);
        const auto gram = qkad::build_gram(xs.size(), 1, [&](std::size_t i, std::size_t j) {
            return quantum_kernel(spec, xs[i], xs[j]);
        });
        CHECK(gram.max_asymmetry() < 1e-12);
        CHECK(gram.min_eigenvalue() >= -1e-8);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(FeatureMapSpec::make(FeatureMapKind::Qk1, 0), std::invalid_argument);
    CHECK_THROWS_AS(FeatureMapSpec::make(FeatureMapKind::Qk1, 13), std::invalid_argument);
    CHECK_THROWS_AS(FeatureMapSpec::make(FeatureMapKind::Qk1, 3, 0), std::invalid_argument);
    FeatureMapSpec bad = FeatureMapSpec::make(FeatureMapKind::Qk1, 3);
    bad.angle_scales.pop_back();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
