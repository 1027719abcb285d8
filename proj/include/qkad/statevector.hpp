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

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkad {

/// Hard cap on register width; keeps a single state under 64 KiB.
inline constexpr int kMaxQubits = 12;

/// Pure n-qubit state restricted to the gate set the feature maps need:
/// Ry rotations and CNOT. Qubit q maps to bit q of the amplitude index
/// (qubit 0 is the least significant bit). Gates update amplitudes in
/// place over strided pairs, O(2^n) per gate, no matrices are built.
class StateVector {
  public:
    /// Constructs |0...0>: amplitude 1 at index 0.
    explicit StateVector(int n_qubits)
        : n_qubits_(n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw std::invalid_argument("StateVector: qubit count must be in [1, " +
                                        std::to_string(kMaxQubits) + "], got " +
                                        std::to_string(n_qubits));
        }
        amplitudes_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
        amplitudes_[0] = {1.0, 0.0};
    }

    int num_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }

    std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }
    std::complex<double> amplitude(std::size_t index) const { return amplitudes_.at(index); }

    /// Ry(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on `qubit`.
    void apply_ry(int qubit, double theta) {
        check_qubit(qubit);
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        const std::size_t stride = std::size_t{1} << qubit;
        const std::size_t dim = amplitudes_.size();
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t low = 0; low < stride; ++low) {
                const std::size_t i0 = base + low;
                const std::size_t i1 = i0 + stride;
                const std::complex<double> a0 = amplitudes_[i0];
                const std::complex<double> a1 = amplitudes_[i1];
                amplitudes_[i0] = c * a0 - s * a1;
                amplitudes_[i1] = s * a0 + c * a1;
            }
        }
    }

    /// Flips the target bit on every basis state whose control bit is set.
    void apply_cnot(int control, int target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw std::invalid_argument("apply_cnot: control and target must differ");
        }
        const std::size_t cmask = std::size_t{1} << control;
        const std::size_t tmask = std::size_t{1} << target;
        const std::size_t dim = amplitudes_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cmask) != 0 && (i & tmask) == 0) {
                std::swap(amplitudes_[i], amplitudes_[i | tmask]);
            }
        }
    }

    double norm() const {
        double sum = 0.0;
        for (const auto& a : amplitudes_) {
            sum += std::norm(a);
        }
        return std::sqrt(sum);
    }

  private:
    void check_qubit(int qubit) const {
        if (qubit < 0 || qubit >= n_qubits_) {
            throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                        " out of range for " + std::to_string(n_qubits_) +
                                        " qubits");
        }
    }

    int n_qubits_;
    std::vector<std::complex<double>> amplitudes_;
};

/// <a|b>, conjugate-linear in the first argument.
inline std::complex<double> overlap(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("overlap: qubit counts differ");
    }
    std::complex<double> acc{0.0, 0.0};
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) {
        acc += std::conj(av[i]) * bv[i];
    }
    return acc;
}

} // namespace qkad
