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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qkad/parallel.hpp"

namespace qkad {

/// Dense symmetric kernel matrix K_ij over one sample set.
class GramMatrix {
  public:
    GramMatrix() = default;

    explicit GramMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    double& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

    const std::vector<double>& entries() const { return entries_; }

    double max_asymmetry() const {
        double worst = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
            }
        }
        return worst;
    }

    /// Smallest eigenvalue by cyclic Jacobi sweeps. Fine for the matrix
    /// sizes here (tens of samples); used to validate positive
    /// semidefiniteness of kernel matrices.
    double min_eigenvalue() const {
        if (n_ == 0) {
            throw std::invalid_argument("min_eigenvalue: empty matrix");
        }
        std::vector<double> a(entries_);
        auto elem = [&](std::size_t i, std::size_t j) -> double& { return a[i * n_ + j]; };
        for (int sweep = 0; sweep < 100; ++sweep) {
            double off = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                for (std::size_t j = i + 1; j < n_; ++j) {
                    off += elem(i, j) * elem(i, j);
                }
            }
            if (off < 1e-24) {
                break;
            }
            for (std::size_t p = 0; p < n_; ++p) {
                for (std::size_t q = p + 1; q < n_; ++q) {
                    const double apq = elem(p, q);
                    if (std::abs(apq) < 1e-18) {
                        continue;
                    }
                    const double app = elem(p, p);
                    const double aqq = elem(q, q);
                    const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                    const double c = std::cos(theta);
                    const double s = std::sin(theta);
                    for (std::size_t k = 0; k < n_; ++k) {
                        const double akp = elem(k, p);
                        const double akq = elem(k, q);
                        elem(k, p) = c * akp - s * akq;
                        elem(k, q) = s * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < n_; ++k) {
                        const double apk = elem(p, k);
                        const double aqk = elem(q, k);
                        elem(p, k) = c * apk - s * aqk;
                        elem(q, k) = s * apk + c * aqk;
                    }
                }
            }
        }
        double min_eig = elem(0, 0);
        for (std::size_t i = 1; i < n_; ++i) {
            min_eig = std::min(min_eig, elem(i, i));
        }
        return min_eig;
    }

  private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// Fills K_ij = kernel(i, j) for i <= j and mirrors; rows are assembled
/// in parallel into disjoint cells.
template <typename PairKernel>
GramMatrix build_gram(std::size_t n, int threads, PairKernel&& kernel) {
    GramMatrix gram(n);
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) {
            const double value = kernel(i, j);
            gram.at(i, j) = value;
            gram.at(j, i) = value;
        }
    });
    return gram;
}

} // namespace qkad
