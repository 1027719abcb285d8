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

#include <json.hpp>

#include "qkad/ar.hpp"
#include "qkad/feature_map.hpp"
#include "qkad/gram.hpp"
#include "qkad/ocsvm.hpp"
#include "qkad/parallel.hpp"
#include "qkad/rbf.hpp"

namespace qkad {

/// Which kernel the detector runs on, with its hyperparameters. A gamma
/// of zero selects the 1/d rule at evaluation time.
struct KernelConfig {
    enum class Family { Qk1, Qk2, Rbf };

    Family family = Family::Qk1;
    int layers = 2;      // quantum kernels
    double gamma = 0.0;  // rbf; 0 means 1/d

    std::string name() const {
        switch (family) {
        case Family::Qk1: return "qk1";
        case Family::Qk2: return "qk2";
        default: return "rbf";
        }
    }

    bool is_quantum() const { return family != Family::Rbf; }

    static KernelConfig from_name(const std::string& name) {
        KernelConfig config;
        if (name == "qk1") {
            config.family = Family::Qk1;
        } else if (name == "qk2") {
            config.family = Family::Qk2;
        } else if (name == "rbf") {
            config.family = Family::Rbf;
        } else {
            throw std::invalid_argument("unknown kernel: " + name);
        }
        return config;
    }

    FeatureMapSpec feature_map(int d) const {
        return FeatureMapSpec::make(
            family == Family::Qk1 ? FeatureMapKind::Qk1 : FeatureMapKind::Qk2, d, layers);
    }

    RbfSpec rbf(int d) const {
        return gamma > 0.0 ? RbfSpec{gamma} : RbfSpec::for_dimension(d);
    }
};

/// Gram matrix over one (scaled) feature set. Quantum kernels encode
/// each sample once and take pairwise overlaps.
inline GramMatrix kernel_gram(const KernelConfig& config,
                              const std::vector<std::vector<double>>& xs, int threads = 1) {
    if (xs.empty()) {
        throw std::invalid_argument("kernel_gram: empty sample set");
    }
    const int d = static_cast<int>(xs.front().size());
    if (config.is_quantum()) {
        const auto spec = config.feature_map(d);
        std::vector<StateVector> states;
        states.reserve(xs.size());
        for (const auto& x : xs) {
            states.push_back(encode(spec, x));
        }
        return build_gram(xs.size(), threads, [&](std::size_t i, std::size_t j) {
            return std::norm(overlap(states[i], states[j]));
        });
    }
    const RbfSpec spec = config.rbf(d);
    return build_gram(xs.size(), threads, [&](std::size_t i, std::size_t j) {
        return rbf_kernel(spec, xs[i], xs[j]);
    });
}

/// k(x_i, x) against every training sample, in training order.
inline std::vector<double> kernel_row(const KernelConfig& config,
                                      const std::vector<std::vector<double>>& train,
                                      std::span<const double> x) {
    if (train.empty()) {
        throw std::invalid_argument("kernel_row: empty training set");
    }
    const int d = static_cast<int>(train.front().size());
    std::vector<double> row(train.size());
    if (config.is_quantum()) {
        const auto spec = config.feature_map(d);
        const StateVector sx = encode(spec, x);
        for (std::size_t i = 0; i < train.size(); ++i) {
            row[i] = std::norm(overlap(encode(spec, train[i]), sx));
        }
        return row;
    }
    const RbfSpec spec = config.rbf(d);
    for (std::size_t i = 0; i < train.size(); ++i) {
        row[i] = rbf_kernel(spec, train[i], x);
    }
    return row;
}

/// A trained anomaly detector: the kernel, the scaler fit on training
/// normals, the scaled training features, and the one-class SVM solved
/// over them. This is the unit serialized to model JSON.
struct ModelBundle {
    KernelConfig kernel;
    Scaler scaler;
    std::vector<std::vector<double>> training_features; // scaled
    OcSvmModel svm;
    std::vector<std::size_t> training_indices; // manifest rows used
    std::uint64_t seed = 0;
    std::string config_hash;

    /// Scores a raw (unscaled) feature vector.
    double score(std::span<const double> raw_features) const {
        const std::vector<double> scaled = apply_scaler(scaler, raw_features);
        return decision(svm, kernel_row(kernel, training_features, scaled));
    }

    /// Scores a batch; rows land in disjoint slots so this may fan out.
    std::vector<double> score_all(const std::vector<std::vector<double>>& raw_rows,
                                  int threads = 1) const {
        std::vector<double> scores(raw_rows.size());
        parallel_for(raw_rows.size(), threads,
                     [&](std::size_t i) { scores[i] = score(raw_rows[i]); });
        return scores;
    }
};

/// Trains a detector on the given raw training features.
inline ModelBundle train_detector(const std::vector<std::vector<double>>& raw_train,
                                  const KernelConfig& kernel, double nu, int threads = 1) {
    ModelBundle bundle;
    bundle.kernel = kernel;
    bundle.scaler = fit_scaler(raw_train);
    bundle.training_features = apply_scaler(bundle.scaler, raw_train);
    const GramMatrix gram = kernel_gram(kernel, bundle.training_features, threads);
    bundle.svm = train_one_class_svm(gram, nu);
    bundle.svm.training_feature_ref = kernel.name() + "/train";
    return bundle;
}

// ---------------------------------------------------------------------------
// JSON round-trip. nlohmann::json prints doubles with the shortest
// representation that parses back to the same bit pattern, so decision
// scores survive a save/load cycle exactly.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const KernelConfig& config) {
    nlohmann::json j;
    j["name"] = config.name();
    if (config.is_quantum()) {
        j["layers"] = config.layers;
    } else {
        j["gamma"] = config.gamma;
    }
    return j;
}

inline KernelConfig kernel_config_from_json(const nlohmann::json& j) {
    KernelConfig config = KernelConfig::from_name(j.at("name").get<std::string>());
    if (config.is_quantum()) {
        config.layers = j.at("layers").get<int>();
    } else {
        config.gamma = j.at("gamma").get<double>();
    }
    return config;
}

inline nlohmann::json to_json(const ModelBundle& bundle) {
    nlohmann::json j;
    j["nu"] = bundle.svm.nu;
    j["alphas"] = bundle.svm.dual_weights;
    j["rho"] = bundle.svm.rho;
    j["support_indices"] = bundle.svm.support_indices;
    j["kernel_config"] = to_json(bundle.kernel);
    j["scaler"] = {{"min", bundle.scaler.min}, {"max", bundle.scaler.max}};
    j["training_features"] = bundle.training_features;
    j["training_indices"] = bundle.training_indices;
    j["seed"] = bundle.seed;
    j["config_hash"] = bundle.config_hash;
    return j;
}

inline ModelBundle bundle_from_json(const nlohmann::json& j) {
    ModelBundle bundle;
    bundle.kernel = kernel_config_from_json(j.at("kernel_config"));
    bundle.svm.nu = j.at("nu").get<double>();
    bundle.svm.dual_weights = j.at("alphas").get<std::vector<double>>();
    bundle.svm.rho = j.at("rho").get<double>();
    bundle.svm.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
    bundle.svm.training_feature_ref = bundle.kernel.name() + "/train";
    bundle.scaler.min = j.at("scaler").at("min").get<std::vector<double>>();
    bundle.scaler.max = j.at("scaler").at("max").get<std::vector<double>>();
    bundle.training_features =
        j.at("training_features").get<std::vector<std::vector<double>>>();
    bundle.training_indices = j.at("training_indices").get<std::vector<std::size_t>>();
    bundle.seed = j.at("seed").get<std::uint64_t>();
    bundle.config_hash = j.at("config_hash").get<std::string>();
    return bundle;
}

} // namespace qkad
