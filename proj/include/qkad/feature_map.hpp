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

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkad/statevector.hpp"

namespace qkad {

/// QK1 entangles nearest neighbours with a CNOT chain (n-1 gates per
/// layer); QK2 entangles every qubit pair (n(n-1)/2 gates per layer).
enum class FeatureMapKind { Qk1, Qk2 };

inline std::string to_string(FeatureMapKind kind) {
    return kind == FeatureMapKind::Qk1 ? "qk1" : "qk2";
}

/// Encoding circuit family. One qubit per feature; `angle_scales[j]`
/// converts feature j into a rotation angle (radians per unit feature).
///
/// Circuit layout: an initial rotation layer Ry(scale_j * x_j), then per
/// layer a rotation layer followed by the entangler, so the circuit ends
/// on an entangler block. With a single layer the entangler is the last
/// block and cancels inside the fidelity, which collapses both kinds to
/// the product kernel prod_j cos^2(scale_j (x_j - y_j)); two or more
/// layers put entanglers between data uploads and QK1/QK2 genuinely
/// diverge.
struct FeatureMapSpec {
    FeatureMapKind kind = FeatureMapKind::Qk1;
    int n_qubits = 1;
    int layers = 2;
    std::vector<double> angle_scales; // one per qubit

    static FeatureMapSpec make(FeatureMapKind kind, int n_qubits, int layers = 2) {
        FeatureMapSpec spec;
        spec.kind = kind;
        spec.n_qubits = n_qubits;
        spec.layers = layers;
        spec.angle_scales.assign(static_cast<std::size_t>(n_qubits > 0 ? n_qubits : 0), 1.0);
        spec.validate();
        return spec;
    }

    void validate() const {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw std::invalid_argument("FeatureMapSpec: n_qubits out of range");
        }
        if (layers < 1) {
            throw std::invalid_argument("FeatureMapSpec: layers must be >= 1");
        }
        if (angle_scales.size() != static_cast<std::size_t>(n_qubits)) {
            throw std::invalid_argument("FeatureMapSpec: angle_scales length must equal n_qubits");
        }
    }
};

struct GateCounts {
    std::int64_t rotations = 0;
    std::int64_t cnots = 0;
};

namespace detail {

inline void apply_rotation_layer(StateVector& state, const FeatureMapSpec& spec,
                                 std::span<const double> x) {
    for (int q = 0; q < spec.n_qubits; ++q) {
        state.apply_ry(q, spec.angle_scales[static_cast<std::size_t>(q)] *
                              x[static_cast<std::size_t>(q)]);
    }
}

inline void apply_entangler(StateVector& state, const FeatureMapSpec& spec) {
    const int n = spec.n_qubits;
    if (spec.kind == FeatureMapKind::Qk1) {
        for (int j = 0; j + 1 < n; ++j) {
            state.apply_cnot(j, j + 1);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                state.apply_cnot(i, j);
            }
        }
    }
}

} // namespace detail

/// |phi(x)>: the feature map applied to |0...0>.
inline StateVector encode(const FeatureMapSpec& spec, std::span<const double> x) {
    spec.validate();
    if (x.size() != static_cast<std::size_t>(spec.n_qubits)) {
        throw std::invalid_argument("encode: feature dimension " + std::to_string(x.size()) +
                                    " does not match n_qubits " + std::to_string(spec.n_qubits));
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!std::isfinite(spec.angle_scales[j] * x[j])) {
            throw std::invalid_argument("encode: non-finite rotation angle at feature " +
                                        std::to_string(j));
        }
    }
    StateVector state(spec.n_qubits);
    detail::apply_rotation_layer(state, spec, x);
    for (int layer = 0; layer < spec.layers; ++layer) {
        detail::apply_rotation_layer(state, spec, x);
        detail::apply_entangler(state, spec);
    }
    return state;
}

/// Fidelity kernel |<phi(x)|phi(y)>|^2, symmetric, in [0, 1].
inline double quantum_kernel(const FeatureMapSpec& spec, std::span<const double> x,
                             std::span<const double> y) {
    const StateVector sx = encode(spec, x);
    const StateVector sy = encode(spec, y);
    return std::norm(overlap(sx, sy));
}

inline GateCounts gate_counts(const FeatureMapSpec& spec) {
    spec.validate();
    const std::int64_t n = spec.n_qubits;
    const std::int64_t layers = spec.layers;
    GateCounts counts;
    counts.rotations = (layers + 1) * n;
    counts.cnots = spec.kind == FeatureMapKind::Qk1 ? layers * (n - 1)
                                                    : layers * n * (n - 1) / 2;
    return counts;
}

/// Encodes every sample once; pairwise overlaps then cost O(2^n) each
/// instead of a circuit run per pair.
inline std::vector<StateVector> encode_all(const FeatureMapSpec& spec,
                                           const std::vector<std::vector<double>>& xs) {
    std::vector<StateVector> states;
    states.reserve(xs.size());
    for (const auto& x : xs) {
        states.push_back(encode(spec, x));
    }
    return states;
}

} // namespace qkad
