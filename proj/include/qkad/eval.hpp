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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkad/ar.hpp"
#include "qkad/detector.hpp"
#include "qkad/synth.hpp"

namespace qkad {

/// Confusion counts with the anomaly class as positive.
struct EvalReport {
    int tp = 0;
    int fp = 0;
    int tn = 0;
    int fn = 0;
    double accuracy = 0.0;
    double f1 = 0.0;
};

/// Prediction rule: anomaly iff score < 0 (an exact zero is normal).
/// F1 is defined as zero when precision + recall is zero.
inline EvalReport metrics(const std::vector<bool>& anomaly_labels,
                          std::span<const double> scores) {
    if (anomaly_labels.empty() || anomaly_labels.size() != scores.size()) {
        throw std::invalid_argument("metrics: labels and scores must be non-empty and equal");
    }
    EvalReport report;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted_anomaly = scores[i] < 0.0;
        if (anomaly_labels[i]) {
            predicted_anomaly ? ++report.tp : ++report.fn;
        } else {
            predicted_anomaly ? ++report.fp : ++report.tn;
        }
    }
    const double total = static_cast<double>(anomaly_labels.size());
    report.accuracy = (report.tp + report.tn) / total;
    const double precision =
        report.tp + report.fp > 0 ? static_cast<double>(report.tp) / (report.tp + report.fp)
                                  : 0.0;
    const double recall =
        report.tp + report.fn > 0 ? static_cast<double>(report.tp) / (report.tp + report.fn)
                                  : 0.0;
    report.f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall)
                                         : 0.0;
    return report;
}

struct SweepConfig {
    int d_min = kMinArOrder;
    int d_max = kMaxArOrder;
    double nu = 0.1;
    int layers = 2;
    double gamma = 0.0; // 0 = 1/d rule
    std::vector<std::string> kernels = {"qk1", "qk2", "rbf"};
    int train_count = 20; // normal segments used for training
    int threads = 1;

    void validate() const {
        if (d_min < kMinArOrder || d_max > kMaxArOrder || d_min > d_max) {
            throw std::invalid_argument("SweepConfig: d range must lie within [" +
                                        std::to_string(kMinArOrder) + ", " +
                                        std::to_string(kMaxArOrder) + "]");
        }
        if (kernels.empty()) {
            throw std::invalid_argument("SweepConfig: no kernels selected");
        }
        if (train_count < 2) {
            throw std::invalid_argument("SweepConfig: train_count must be >= 2");
        }
    }

    KernelConfig kernel_config(const std::string& name) const {
        KernelConfig config = KernelConfig::from_name(name);
        config.layers = layers;
        config.gamma = gamma;
        return config;
    }
};

struct SweepCell {
    std::string kernel;
    int d = 0;
    EvalReport report;
};

struct SweepResult {
    std::string regime;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<SweepCell> cells; // kernel-major, d ascending within

    const SweepCell& cell(const std::string& kernel, int d) const {
        for (const auto& c : cells) {
            if (c.kernel == kernel && c.d == d) {
                return c;
            }
        }
        throw std::invalid_argument("SweepResult: missing cell " + kernel + "/" +
                                    std::to_string(d));
    }
};

/// Deterministic train/test split over manifest order: the first
/// `train_count` normal segments train the detector; the remaining
/// normals and every anomaly segment form the test set.
struct DatasetSplit {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

inline DatasetSplit split_dataset(std::span<const SegmentLabel> labels, int train_count) {
    DatasetSplit split;
    int normals_taken = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == SegmentLabel::Normal && normals_taken < train_count) {
            split.train_indices.push_back(i);
            ++normals_taken;
        } else {
            split.test_indices.push_back(i);
        }
    }
    if (normals_taken < train_count) {
        throw std::invalid_argument("split_dataset: fewer normal segments than train_count");
    }
    if (split.test_indices.empty()) {
        throw std::invalid_argument("split_dataset: empty test set");
    }
    return split;
}

/// Full protocol for one regime: per feature count d, fit AR(d)
/// features, fit the scaler on training normals, build the Gram, train
/// the one-class SVM and score the test set, for every kernel.
inline SweepResult sweep(const std::vector<LabeledSegment>& dataset,
                         const SweepConfig& config) {
    config.validate();
    if (dataset.empty()) {
        throw std::invalid_argument("sweep: empty dataset");
    }

    std::vector<SegmentLabel> labels;
    labels.reserve(dataset.size());
    for (const auto& seg : dataset) {
        labels.push_back(seg.label);
    }
    const DatasetSplit split = split_dataset(labels, config.train_count);

    // Lag-k autocorrelation does not depend on the requested maximum
    // lag, so one pass at d_max serves every AR order in the sweep.
    std::vector<std::vector<double>> autocorr(dataset.size());
    parallel_for(dataset.size(), config.threads, [&](std::size_t i) {
        autocorr[i] = autocorrelation(dataset[i].signal, config.d_max);
    });

    SweepResult result;
    result.regime = to_string(dataset.front().regime);
    for (const auto& kernel_name : config.kernels) {
        const KernelConfig kernel = config.kernel_config(kernel_name);
        for (int d = config.d_min; d <= config.d_max; ++d) {
            std::vector<std::vector<double>> features(dataset.size());
            for (std::size_t i = 0; i < dataset.size(); ++i) {
                features[i] = levinson_durbin(
                                  std::span<const double>(autocorr[i].data(),
                                                          static_cast<std::size_t>(d) + 1),
                                  d)
                                  .coefficients;
            }
            std::vector<std::vector<double>> train;
            train.reserve(split.train_indices.size());
            for (std::size_t i : split.train_indices) {
                train.push_back(features[i]);
            }
            ModelBundle bundle = train_detector(train, kernel, config.nu, config.threads);

            std::vector<bool> test_labels;
            std::vector<double> test_scores;
            test_labels.reserve(split.test_indices.size());
            for (std::size_t i : split.test_indices) {
                test_labels.push_back(labels[i] != SegmentLabel::Normal);
                const auto scaled = apply_scaler(bundle.scaler, features[i]);
                test_scores.push_back(
                    decision(bundle.svm, kernel_row(kernel, bundle.training_features, scaled)));
            }
            SweepCell cell;
            cell.kernel = kernel_name;
            cell.d = d;
            cell.report = metrics(test_labels, test_scores);
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

/// Metric series over d for one kernel, in ascending d; the paired
/// t-test input for a kernel-vs-kernel comparison.
inline std::vector<double> metric_series(const SweepResult& result,
                                         const std::string& kernel,
                                         const std::string& metric) {
    std::vector<double> series;
    for (const auto& cell : result.cells) {
        if (cell.kernel != kernel) {
            continue;
        }
        if (metric == "f1") {
            series.push_back(cell.report.f1);
        } else if (metric == "accuracy") {
            series.push_back(cell.report.accuracy);
        } else {
            throw std::invalid_argument("metric_series: unknown metric " + metric);
        }
    }
    if (series.empty()) {
        throw std::invalid_argument("metric_series: kernel " + kernel + " not in sweep");
    }
    return series;
}

// ---------------------------------------------------------------------------
// Decision-surface grid over the first two features
// ---------------------------------------------------------------------------

struct GridBounds {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

struct DecisionGrid {
    int d1 = 0;
    int d2 = 1;
    int resolution = 0;
    GridBounds bounds;
    std::vector<double> fixed_values; // scaled-space slice; d1/d2 vary
    std::vector<double> scores;       // index = iy * resolution + ix
    double score_min = 0.0;
    double score_max = 0.0;

    struct SamplePoint {
        double x = 0.0;
        double y = 0.0;
        SegmentLabel label = SegmentLabel::Normal;
        bool training = false;
    };
    std::vector<SamplePoint> samples;

    double x_at(int ix) const {
        return bounds.x_min + (bounds.x_max - bounds.x_min) * ix / (resolution - 1);
    }
    double y_at(int iy) const {
        return bounds.y_min + (bounds.y_max - bounds.y_min) * iy / (resolution - 1);
    }
};

/// Decision scores over a (d1, d2) plane in scaled feature space, with
/// every other feature pinned at the training mean. Overlay points are
/// the scaled coordinates of the provided segments. Default bounds
/// cover the overlay with a 5% margin per side.
inline DecisionGrid decision_grid(const ModelBundle& bundle,
                                  const std::vector<std::vector<double>>& raw_features,
                                  std::span<const SegmentLabel> labels, int d1, int d2,
                                  int resolution,
                                  std::optional<GridBounds> bounds = std::nullopt,
                                  int threads = 1) {
    if (resolution < 2) {
        throw std::invalid_argument("decision_grid: resolution must be >= 2");
    }
    const std::size_t dim = bundle.scaler.min.size();
    if (d1 < 0 || d2 < 0 || static_cast<std::size_t>(d1) >= dim ||
        static_cast<std::size_t>(d2) >= dim || d1 == d2) {
        throw std::invalid_argument("decision_grid: invalid projection axes");
    }
    if (raw_features.size() != labels.size()) {
        throw std::invalid_argument("decision_grid: features/labels length mismatch");
    }

    DecisionGrid grid;
    grid.d1 = d1;
    grid.d2 = d2;
    grid.resolution = resolution;

    grid.fixed_values.assign(dim, 0.0);
    for (const auto& row : bundle.training_features) {
        for (std::size_t j = 0; j < dim; ++j) {
            grid.fixed_values[j] += row[j];
        }
    }
    for (double& v : grid.fixed_values) {
        v /= static_cast<double>(bundle.training_features.size());
    }

    for (std::size_t i = 0; i < raw_features.size(); ++i) {
        const auto scaled = apply_scaler(bundle.scaler, raw_features[i]);
        DecisionGrid::SamplePoint point;
        point.x = scaled[static_cast<std::size_t>(d1)];
        point.y = scaled[static_cast<std::size_t>(d2)];
        point.label = labels[i];
        point.training = false;
        grid.samples.push_back(point);
    }
    for (std::size_t t = 0; t < bundle.training_features.size(); ++t) {
        DecisionGrid::SamplePoint point;
        point.x = bundle.training_features[t][static_cast<std::size_t>(d1)];
        point.y = bundle.training_features[t][static_cast<std::size_t>(d2)];
        point.label = SegmentLabel::Normal;
        point.training = true;
        grid.samples.push_back(point);
    }

    if (bounds) {
        grid.bounds = *bounds;
    } else {
        double x_lo = grid.samples.front().x, x_hi = x_lo;
        double y_lo = grid.samples.front().y, y_hi = y_lo;
        for (const auto& s : grid.samples) {
            x_lo = std::min(x_lo, s.x);
            x_hi = std::max(x_hi, s.x);
            y_lo = std::min(y_lo, s.y);
            y_hi = std::max(y_hi, s.y);
        }
        const double x_pad = 0.05 * (x_hi - x_lo);
        const double y_pad = 0.05 * (y_hi - y_lo);
        grid.bounds = GridBounds{x_lo - x_pad, x_hi + x_pad, y_lo - y_pad, y_hi + y_pad};
    }
    if (!(grid.bounds.x_max > grid.bounds.x_min) ||
        !(grid.bounds.y_max > grid.bounds.y_min)) {
        throw std::invalid_argument("decision_grid: degenerate bounds");
    }

    grid.scores.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
    parallel_for(static_cast<std::size_t>(resolution), threads, [&](std::size_t iy) {
        std::vector<double> point = grid.fixed_values;
        for (int ix = 0; ix < resolution; ++ix) {
            point[static_cast<std::size_t>(d1)] = grid.x_at(ix);
            point[static_cast<std::size_t>(d2)] = grid.y_at(static_cast<int>(iy));
            grid.scores[iy * static_cast<std::size_t>(resolution) +
                        static_cast<std::size_t>(ix)] =
                decision(bundle.svm, kernel_row(bundle.kernel, bundle.training_features, point));
        }
    });
    const auto [lo, hi] = std::minmax_element(grid.scores.begin(), grid.scores.end());
    grid.score_min = *lo;
    grid.score_max = *hi;
    return grid;
}

} // namespace qkad
