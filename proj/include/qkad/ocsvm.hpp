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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkad/gram.hpp"

namespace qkad {

/// nu one-class SVM over a precomputed kernel. Dual problem:
///   minimize (1/2) a^T K a   s.t.  0 <= a_i <= 1/(nu n),  sum a = 1.
/// Decision function f(x) = sum_i a_i k(x_i, x) - rho; negative scores
/// flag anomalies.
struct OcSvmModel {
    double nu = 0.1;
    std::vector<double> dual_weights;
    double rho = 0.0;
    std::vector<std::size_t> support_indices;
    std::string training_feature_ref;
    /// Set when the training Gram had min eigenvalue below -1e-8. The
    /// solver proceeds anyway; negative eigen-directions are not clipped.
    bool conditioning_warning = false;

    /// Tolerance deciding support membership and box-interior status.
    static constexpr double kAlphaTolerance = 1e-8;
};

struct OcSvmOptions {
    double kkt_tolerance = 1e-6;
    std::size_t max_iterations = 100000;
    bool check_conditioning = true;
};

namespace detail {

inline void validate_gram(const GramMatrix& gram) {
    if (gram.size() == 0) {
        throw std::invalid_argument("ocsvm: empty Gram matrix");
    }
    if (gram.max_asymmetry() > 1e-10) {
        throw std::invalid_argument("ocsvm: Gram matrix is not symmetric");
    }
}

} // namespace detail

/// Sequential pairwise coordinate descent (SMO style). Starts from the
/// uniform feasible point a_i = 1/n and transfers mass between the
/// lowest- and highest-gradient coordinates until the maximum KKT
/// violation drops below tolerance. Fully deterministic: ties break
/// toward the lowest index.
inline OcSvmModel train_one_class_svm(const GramMatrix& gram, double nu,
                                      const OcSvmOptions& options = {}) {
    detail::validate_gram(gram);
    const std::size_t n = gram.size();
    if (!(nu >= 1.0 / static_cast<double>(n)) || !(nu <= 1.0)) {
        throw std::invalid_argument("ocsvm: nu must satisfy 1/n <= nu <= 1, got " +
                                    std::to_string(nu));
    }
    const bool conditioning_warning =
        options.check_conditioning && gram.min_eigenvalue() < -1e-8;

    const double box = 1.0 / (nu * static_cast<double>(n));
    constexpr double tol = OcSvmModel::kAlphaTolerance;

    std::vector<double> alpha(n, 1.0 / static_cast<double>(n));
    std::vector<double> gradient(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += gram.at(i, j) * alpha[j];
        }
        gradient[i] = acc;
    }

    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        std::size_t up = n;
        std::size_t down = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (alpha[i] < box - tol && (up == n || gradient[i] < gradient[up])) {
                up = i;
            }
            if (alpha[i] > tol && (down == n || gradient[i] > gradient[down])) {
                down = i;
            }
        }
        if (up == n || down == n) {
            break;
        }
        const double violation = gradient[down] - gradient[up];
        if (violation < options.kkt_tolerance) {
            break;
        }
        const double curvature =
            gram.at(up, up) + gram.at(down, down) - 2.0 * gram.at(up, down);
        double step = curvature > 1e-15 ? violation / curvature
                                        : std::min(box - alpha[up], alpha[down]);
        step = std::min({step, box - alpha[up], alpha[down]});
        alpha[up] += step;
        alpha[down] -= step;
        for (std::size_t i = 0; i < n; ++i) {
            gradient[i] += step * (gram.at(i, up) - gram.at(i, down));
        }
    }

    OcSvmModel model;
    model.nu = nu;
    model.dual_weights = alpha;
    model.conditioning_warning = conditioning_warning;

    // rho averages (K alpha)_i over margin support vectors (alphas
    // strictly inside the box); degenerate problems without interior
    // alphas fall back to averaging over all support vectors.
    double rho_acc = 0.0;
    std::size_t rho_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > tol) {
            model.support_indices.push_back(i);
        }
        if (alpha[i] > tol && alpha[i] < box - tol) {
            rho_acc += gradient[i];
            ++rho_count;
        }
    }
    if (model.support_indices.empty()) {
        throw std::invalid_argument("ocsvm: no support vectors (infeasible state)");
    }
    if (rho_count == 0) {
        for (std::size_t i : model.support_indices) {
            rho_acc += gradient[i];
        }
        rho_count = model.support_indices.size();
    }
    model.rho = rho_acc / static_cast<double>(rho_count);
    return model;
}

/// f(x) = sum_i a_i k(x_i, x) - rho for a row of kernel values against
/// the training samples.
inline double decision(const OcSvmModel& model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.dual_weights.size()) {
        throw std::invalid_argument("decision: kernel row length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < kernel_row.size(); ++i) {
        acc += model.dual_weights[i] * kernel_row[i];
    }
    return acc - model.rho;
}

enum class Prediction { Normal, Anomaly };

/// Anomaly iff the decision score is strictly negative; an exact zero
/// counts as normal.
inline Prediction predict(const OcSvmModel& model, std::span<const double> kernel_row) {
    return decision(model, kernel_row) < 0.0 ? Prediction::Anomaly : Prediction::Normal;
}

/// Dual objective (1/2) a^T K a of a trained model; used by tests to
/// compare against an independent QP solution.
inline double dual_objective(const GramMatrix& gram, std::span<const double> alpha) {
    const std::size_t n = gram.size();
    if (alpha.size() != n) {
        throw std::invalid_argument("dual_objective: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc += alpha[i] * gram.at(i, j) * alpha[j];
        }
    }
    return 0.5 * acc;
}

} // namespace qkad
