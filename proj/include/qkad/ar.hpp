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
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkad/errors.hpp"

namespace qkad {

/// Sweep bounds for the AR feature count.
inline constexpr int kMinArOrder = 2;
inline constexpr int kMaxArOrder = 10;

struct Signal {
    int sample_rate_hz = 0;
    std::vector<double> samples;

    void validate() const {
        if (sample_rate_hz <= 0) {
            throw std::invalid_argument("Signal: sample rate must be positive");
        }
        if (samples.empty()) {
            throw std::invalid_argument("Signal: empty sample array");
        }
        for (double s : samples) {
            if (!std::isfinite(s)) {
                throw std::invalid_argument("Signal: non-finite sample");
            }
        }
    }
};

/// AR(p) fit: y_t = sum_i coefficients[i-1] * y_{t-i} + e_t after mean
/// removal, with e_t of variance noise_variance.
struct ArFit {
    int order = 0;
    std::vector<double> coefficients;
    double noise_variance = 0.0;
};

/// Splits into consecutive non-overlapping segments of
/// floor(segment_seconds * rate) samples; the trailing remainder is
/// dropped.
inline std::vector<Signal> segment(const Signal& signal, double segment_seconds) {
    signal.validate();
    if (!(segment_seconds > 0.0)) {
        throw std::invalid_argument("segment: segment_seconds must be positive");
    }
    const std::size_t len =
        static_cast<std::size_t>(segment_seconds * signal.sample_rate_hz);
    if (len == 0 || signal.samples.size() < len) {
        throw std::invalid_argument("segment: signal shorter than one segment");
    }
    std::vector<Signal> segments;
    for (std::size_t start = 0; start + len <= signal.samples.size(); start += len) {
        Signal seg;
        seg.sample_rate_hz = signal.sample_rate_hz;
        seg.samples.assign(signal.samples.begin() + static_cast<std::ptrdiff_t>(start),
                           signal.samples.begin() + static_cast<std::ptrdiff_t>(start + len));
        segments.push_back(std::move(seg));
    }
    return segments;
}

/// Mean-removed biased estimator r_k = (1/N) sum_t y~_t y~_{t-k}.
/// The biased form keeps the implied Toeplitz matrix positive
/// semidefinite, which keeps the Levinson-Durbin recursion stable.
inline std::vector<double> autocorrelation(const Signal& signal, int max_lag) {
    signal.validate();
    const std::size_t n = signal.samples.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw std::invalid_argument("autocorrelation: max_lag must be in [0, N)");
    }
    const double mean =
        std::accumulate(signal.samples.begin(), signal.samples.end(), 0.0) /
        static_cast<double>(n);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) {
        centered[i] = signal.samples[i] - mean;
    }
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            acc += centered[t] * centered[t - static_cast<std::size_t>(k)];
        }
        r[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
    }
    return r;
}

/// Solves the Yule-Walker system T(r) phi = r_{1..p} in O(p^2). The
/// recursion's prediction-error variances are non-increasing; a
/// reflection coefficient of magnitude >= 1 means the autocorrelation
/// is not positive definite and raises ConditioningError.
inline ArFit levinson_durbin(std::span<const double> r, int order) {
    if (order < 1) {
        throw std::invalid_argument("levinson_durbin: order must be >= 1");
    }
    if (r.size() < static_cast<std::size_t>(order) + 1) {
        throw std::invalid_argument("levinson_durbin: need at least order+1 autocorrelations");
    }
    if (!(r[0] > 0.0)) {
        throw DegenerateSignalError("levinson_durbin: zero-power signal (r_0 <= 0)");
    }
    std::vector<double> phi(static_cast<std::size_t>(order), 0.0);
    std::vector<double> prev(static_cast<std::size_t>(order), 0.0);
    double error = r[0];
    for (int m = 1; m <= order; ++m) {
        double acc = r[static_cast<std::size_t>(m)];
        for (int i = 1; i < m; ++i) {
            acc -= phi[static_cast<std::size_t>(i - 1)] * r[static_cast<std::size_t>(m - i)];
        }
        const double reflection = acc / error;
        if (!(std::abs(reflection) < 1.0)) {
            throw ConditioningError("levinson_durbin: reflection coefficient " +
                                    std::to_string(reflection) + " at stage " +
                                    std::to_string(m));
        }
        prev = phi;
        phi[static_cast<std::size_t>(m - 1)] = reflection;
        for (int i = 1; i < m; ++i) {
            phi[static_cast<std::size_t>(i - 1)] =
                prev[static_cast<std::size_t>(i - 1)] -
                reflection * prev[static_cast<std::size_t>(m - 1 - i)];
        }
        error *= 1.0 - reflection * reflection;
    }
    ArFit fit;
    fit.order = order;
    fit.coefficients = std::move(phi);
    fit.noise_variance = error;
    return fit;
}

/// Feature vector for one segment: the d coefficients of an AR(d) fit.
inline std::vector<double> extract_features(const Signal& seg, int d) {
    if (d < kMinArOrder || d > kMaxArOrder) {
        throw std::invalid_argument("extract_features: order must be in [" +
                                    std::to_string(kMinArOrder) + ", " +
                                    std::to_string(kMaxArOrder) + "], got " +
                                    std::to_string(d));
    }
    const std::vector<double> r = autocorrelation(seg, d);
    return levinson_durbin(r, d).coefficients;
}

/// Per-feature affine map fit on training data only: training values
/// land in [0, pi], later values are clipped to [-pi/2, 3pi/2], and a
/// degenerate feature (max == min) maps to pi/2.
struct Scaler {
    std::vector<double> min;
    std::vector<double> max;
};

inline Scaler fit_scaler(const std::vector<std::vector<double>>& training_features) {
    if (training_features.empty()) {
        throw std::invalid_argument("fit_scaler: empty training set");
    }
    const std::size_t dim = training_features.front().size();
    Scaler scaler;
    scaler.min.assign(dim, std::numeric_limits<double>::infinity());
    scaler.max.assign(dim, -std::numeric_limits<double>::infinity());
    for (const auto& row : training_features) {
        if (row.size() != dim) {
            throw std::invalid_argument("fit_scaler: inconsistent feature dimensions");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            scaler.min[j] = std::min(scaler.min[j], row[j]);
            scaler.max[j] = std::max(scaler.max[j], row[j]);
        }
    }
    return scaler;
}

inline std::vector<double> apply_scaler(const Scaler& scaler, std::span<const double> x) {
    if (x.size() != scaler.min.size()) {
        throw std::invalid_argument("apply_scaler: dimension mismatch");
    }
    constexpr double pi = std::numbers::pi;
    std::vector<double> scaled(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double range = scaler.max[j] - scaler.min[j];
        if (range > 0.0) {
            const double v = pi * (x[j] - scaler.min[j]) / range;
            scaled[j] = std::clamp(v, -pi / 2.0, 3.0 * pi / 2.0);
        } else {
            scaled[j] = pi / 2.0;
        }
    }
    return scaled;
}

inline std::vector<std::vector<double>>
apply_scaler(const Scaler& scaler, const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(apply_scaler(scaler, row));
    }
    return out;
}

} // namespace qkad
