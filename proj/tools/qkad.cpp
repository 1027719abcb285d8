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
//
// qkad: acoustic anomaly detection with quantum and classical kernels.
//
// The pipeline stages are composable subcommands, each reading the
// previous stage's files:
//
//   synth    -> WAV segments + manifest.csv
//   features -> AR-coefficient features (CSV, one row per segment)
//   train    -> one-class SVM model (JSON)
//   score    -> per-segment decision scores + metrics (JSON)
//   sweep    -> feature-count sweep over kernels (CSV + JSON)
//   ttest    -> paired t-test between two sweep series (JSON)
//   grid     -> decision-surface grid for plotting (CSV + JSON)
//
// Every output embeds the effective config hash and the dataset seed,
// and identical inputs always produce byte-identical outputs.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkad/qkad.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Effective run configuration. Values come from defaults, then the
// optional JSON config file, then command-line flags (flags win).
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string regime = "obd";
    std::uint64_t seed = qkad::kDefaultSeed;
    int sample_rate_hz = 16000;
    double segment_seconds = 10.0;
    int n_normal_segments = 30;
    int n_anomaly_segments_per_type = 10;
    double anomaly_snr_db = std::numeric_limits<double>::quiet_NaN();
    int d = 7;
    int d_min = 2;
    int d_max = 10;
    std::string kernel = "qk1";
    std::vector<std::string> kernels = {"qk1", "qk2", "rbf"};
    int layers = 2;
    double nu = 0.1;
    double gamma = 0.0; // 0 selects the 1/d rule
    int train_count = 20;
    int resolution = 50;
    std::vector<double> bounds; // x_min x_max y_min y_max
    std::string metric = "f1";
    int d1 = 0;
    int d2 = 1;
    int threads = 0; // 0 = take QKAD_THREADS or 1
};

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

json config_to_json(const RunConfig& config) {
    json j;
    j["regime"] = config.regime;
    j["seed"] = config.seed;
    j["sample_rate_hz"] = config.sample_rate_hz;
    j["segment_seconds"] = config.segment_seconds;
    j["n_normal_segments"] = config.n_normal_segments;
    j["n_anomaly_segments_per_type"] = config.n_anomaly_segments_per_type;
    if (!std::isnan(config.anomaly_snr_db)) {
        j["anomaly_snr_db"] = config.anomaly_snr_db;
    }
    j["d"] = config.d;
    j["d_min"] = config.d_min;
    j["d_max"] = config.d_max;
    j["kernel"] = config.kernel;
    j["kernels"] = config.kernels;
    j["layers"] = config.layers;
    j["nu"] = config.nu;
    j["gamma"] = config.gamma;
    j["train_count"] = config.train_count;
    j["resolution"] = config.resolution;
    if (!config.bounds.empty()) {
        j["bounds"] = config.bounds;
    }
    j["metric"] = config.metric;
    j["d1"] = config.d1;
    j["d2"] = config.d2;
    return j;
}

std::string config_hash(const RunConfig& config) {
    return to_hex(fnv1a64(config_to_json(config).dump()));
}

/// Binds config-file keys to struct fields so the file can be applied
/// strictly (unknown keys rejected) without clobbering explicit flags.
class ConfigBinder {
  public:
    void bind(const std::string& key, CLI::Option* option, std::function<void(const json&)> setter) {
        entries_[key] = Entry{option, std::move(setter)};
    }

    void apply(const json& file) const {
        if (!file.is_object()) {
            throw std::invalid_argument("config file: top level must be an object");
        }
        for (const auto& [key, value] : file.items()) {
            const auto it = entries_.find(key);
            if (it == entries_.end()) {
                throw std::invalid_argument("config file: unknown key '" + key + "'");
            }
            if (it->second.option != nullptr && it->second.option->count() > 0) {
                continue; // explicit flag wins
            }
            it->second.setter(value);
        }
    }

  private:
    struct Entry {
        CLI::Option* option = nullptr;
        std::function<void(const json&)> setter;
    };
    std::map<std::string, Entry> entries_;
};

json load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    try {
        return json::parse(file);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config file parse error: " + std::string(e.what()));
    }
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) {
        return flag_value;
    }
    if (const char* env = std::getenv("QKAD_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return parsed;
        }
    }
    return 1;
}

void write_json_file(const fs::path& path, const json& value) {
    qkad::write_text_file(path, value.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Shared loading helpers
// ---------------------------------------------------------------------------

struct LoadedDataset {
    std::vector<qkad::ManifestRow> rows;
    std::vector<qkad::LabeledSegment> segments;
};

LoadedDataset load_dataset(const std::string& manifest_path) {
    LoadedDataset data;
    data.rows = qkad::read_manifest(manifest_path);
    const fs::path base = fs::path(manifest_path).parent_path();
    for (const auto& row : data.rows) {
        qkad::LabeledSegment seg;
        seg.label = row.label;
        seg.regime = row.regime;
        seg.signal = qkad::read_wav(base / row.filename);
        data.segments.push_back(std::move(seg));
    }
    return data;
}

std::vector<qkad::SegmentLabel> manifest_labels(const std::vector<qkad::ManifestRow>& rows) {
    std::vector<qkad::SegmentLabel> labels;
    labels.reserve(rows.size());
    for (const auto& row : rows) {
        labels.push_back(row.label);
    }
    return labels;
}

std::string label_stub(qkad::SegmentLabel label) {
    switch (label) {
    case qkad::SegmentLabel::Normal: return "normal";
    case qkad::SegmentLabel::AnomalyType1: return "anomaly1";
    default: return "anomaly2";
    }
}

std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) {
        s.insert(s.begin(), '0');
    }
    return s;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

void run_synth(const RunConfig& config, const std::string& out_dir) {
    qkad::DatasetConfig dataset;
    dataset.regime = qkad::regime_from_string(config.regime);
    dataset.seed = config.seed;
    dataset.sample_rate_hz = config.sample_rate_hz;
    dataset.segment_seconds = config.segment_seconds;
    dataset.n_normal_segments = config.n_normal_segments;
    dataset.n_anomaly_segments_per_type = config.n_anomaly_segments_per_type;
    dataset.anomaly_snr_db = config.anomaly_snr_db;

    const auto segments = qkad::generate(dataset, resolve_threads(config.threads));

    fs::create_directories(out_dir);
    std::vector<qkad::ManifestRow> rows;
    std::map<std::string, int> counters;
    for (const auto& seg : segments) {
        const std::string stub = label_stub(seg.label);
        const int index = counters[stub]++;
        qkad::ManifestRow row;
        row.filename = config.regime + "_" + stub + "_" + zero_pad(index, 3) + ".wav";
        row.regime = seg.regime;
        row.label = seg.label;
        row.seed = config.seed;
        row.snr_db = dataset.effective_snr_db();
        qkad::write_wav(fs::path(out_dir) / row.filename, seg.signal);
        rows.push_back(std::move(row));
    }
    qkad::write_manifest(fs::path(out_dir) / "manifest.csv", rows,
                         qkad::provenance_comment(config_hash(config), config.seed));
    std::cout << "wrote " << rows.size() << " segments to " << out_dir << "\n";
}

void run_features(const RunConfig& config, const std::string& manifest_path,
                  const std::string& input_path, const std::string& out_path) {
    std::vector<std::vector<double>> features;
    std::uint64_t seed = config.seed;
    const int threads = resolve_threads(config.threads);

    if (!manifest_path.empty()) {
        const auto data = load_dataset(manifest_path);
        if (!data.rows.empty()) {
            seed = data.rows.front().seed;
        }
        features.resize(data.segments.size());
        qkad::parallel_for(data.segments.size(), threads, [&](std::size_t i) {
            features[i] = qkad::extract_features(data.segments[i].signal, config.d);
        });
    } else if (!input_path.empty()) {
        qkad::Signal signal;
        if (fs::path(input_path).extension() == ".csv") {
            signal = qkad::read_signal_csv(input_path, config.sample_rate_hz);
        } else {
            signal = qkad::read_wav(input_path);
        }
        const auto segments = qkad::segment(signal, config.segment_seconds);
        features.resize(segments.size());
        qkad::parallel_for(segments.size(), threads, [&](std::size_t i) {
            features[i] = qkad::extract_features(segments[i], config.d);
        });
    } else {
        throw std::invalid_argument("features: provide --manifest or --input");
    }

    qkad::write_features_csv(out_path, features,
                             qkad::provenance_comment(config_hash(config), seed));
    std::cout << "wrote " << features.size() << " feature rows (d=" << config.d << ") to "
              << out_path << "\n";
}

qkad::KernelConfig kernel_from_config(const RunConfig& config, const std::string& name) {
    qkad::KernelConfig kernel = qkad::KernelConfig::from_name(name);
    kernel.layers = config.layers;
    kernel.gamma = config.gamma;
    return kernel;
}

void run_train(const RunConfig& config, const std::string& manifest_path,
               const std::string& features_path, const std::string& out_path) {
    const auto rows = qkad::read_manifest(manifest_path);
    const auto features = qkad::read_features_csv(features_path);
    if (rows.size() != features.size()) {
        throw std::invalid_argument("train: manifest rows (" + std::to_string(rows.size()) +
                                    ") and feature rows (" + std::to_string(features.size()) +
                                    ") differ");
    }
    const auto split = qkad::split_dataset(manifest_labels(rows), config.train_count);
    std::vector<std::vector<double>> train;
    for (const std::size_t i : split.train_indices) {
        train.push_back(features[i]);
    }

    qkad::ModelBundle bundle = qkad::train_detector(
        train, kernel_from_config(config, config.kernel), config.nu,
        resolve_threads(config.threads));
    bundle.training_indices = split.train_indices;
    bundle.seed = rows.front().seed;
    bundle.config_hash = config_hash(config);
    if (bundle.svm.conditioning_warning) {
        std::cerr << "warning: training Gram matrix is not positive semidefinite "
                     "(min eigenvalue < -1e-8); proceeding unmodified\n";
    }

    write_json_file(out_path, qkad::to_json(bundle));
    std::cout << "trained " << config.kernel << " model on " << train.size()
              << " normal segments; " << bundle.svm.support_indices.size()
              << " support vectors; wrote " << out_path << "\n";
}

void run_score(const RunConfig& config, const std::string& model_path,
               const std::string& manifest_path, const std::string& features_path,
               const std::string& out_path) {
    std::ifstream model_file(model_path);
    if (!model_file) {
        throw std::invalid_argument("score: cannot open model " + model_path);
    }
    const qkad::ModelBundle bundle = qkad::bundle_from_json(json::parse(model_file));
    const auto rows = qkad::read_manifest(manifest_path);
    const auto features = qkad::read_features_csv(features_path);
    if (rows.size() != features.size()) {
        throw std::invalid_argument("score: manifest and feature row counts differ");
    }

    std::vector<bool> in_training(rows.size(), false);
    for (const std::size_t i : bundle.training_indices) {
        if (i < rows.size()) {
            in_training[i] = true;
        }
    }

    json entries = json::array();
    std::vector<bool> labels;
    std::vector<double> scores;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (in_training[i]) {
            continue;
        }
        const double score = bundle.score(features[i]);
        labels.push_back(rows[i].label != qkad::SegmentLabel::Normal);
        scores.push_back(score);
        entries.push_back(json{{"index", i},
                               {"filename", rows[i].filename},
                               {"label", qkad::to_string(rows[i].label)},
                               {"score", score},
                               {"prediction", score < 0.0 ? "anomaly" : "normal"}});
    }
    const qkad::EvalReport report = qkad::metrics(labels, scores);

    json out = qkad::to_json(report);
    out["kernel"] = bundle.kernel.name();
    out["nu"] = bundle.svm.nu;
    out["segments"] = std::move(entries);
    out["config_hash"] = config_hash(config);
    out["seed"] = bundle.seed;
    write_json_file(out_path, out);
    std::cout << "scored " << scores.size() << " segments: accuracy "
              << qkad::format_metric(report.accuracy) << ", f1 "
              << qkad::format_metric(report.f1) << "; wrote " << out_path << "\n";
}

void run_sweep(const RunConfig& config, const std::string& manifest_path,
               const std::string& out_prefix) {
    const auto data = load_dataset(manifest_path);
    qkad::SweepConfig sweep_config;
    sweep_config.d_min = config.d_min;
    sweep_config.d_max = config.d_max;
    sweep_config.nu = config.nu;
    sweep_config.layers = config.layers;
    sweep_config.gamma = config.gamma;
    sweep_config.kernels = config.kernels;
    sweep_config.train_count = config.train_count;
    sweep_config.threads = resolve_threads(config.threads);

    qkad::SweepResult result = qkad::sweep(data.segments, sweep_config);
    result.seed = data.rows.empty() ? config.seed : data.rows.front().seed;
    result.config_hash = config_hash(config);

    qkad::write_text_file(out_prefix + ".csv", qkad::sweep_csv(result));
    write_json_file(out_prefix + ".json", qkad::to_json(result));
    std::cout << "swept d=" << config.d_min << ".." << config.d_max << " over "
              << sweep_config.kernels.size() << " kernels; wrote " << out_prefix
              << ".csv and " << out_prefix << ".json\n";
}

void run_ttest(const RunConfig& config, const std::string& csv_a, const std::string& csv_b,
               const std::string& kernel_a, const std::string& kernel_b,
               const std::string& out_path) {
    auto series = [&](const std::string& path, const std::string& kernel_filter) {
        const auto rows = qkad::read_sweep_csv(path);
        std::string kernel = kernel_filter;
        if (kernel.empty()) {
            kernel = rows.front().kernel;
            for (const auto& row : rows) {
                if (row.kernel != kernel) {
                    throw std::invalid_argument(
                        "ttest: " + path + " holds several kernels; pick one with "
                        "--kernel-a/--kernel-b");
                }
            }
        }
        std::vector<double> values;
        for (const auto& row : rows) {
            if (row.kernel == kernel) {
                values.push_back(config.metric == "accuracy" ? row.accuracy : row.f1);
            }
        }
        if (values.empty()) {
            throw std::invalid_argument("ttest: kernel '" + kernel + "' not found in " + path);
        }
        return std::make_pair(kernel, values);
    };
    if (config.metric != "f1" && config.metric != "accuracy") {
        throw std::invalid_argument("ttest: metric must be f1 or accuracy");
    }

    const auto [name_a, values_a] = series(csv_a, kernel_a);
    const auto [name_b, values_b] = series(csv_b, kernel_b);
    const qkad::TTestResult result = qkad::paired_t_test(values_a, values_b);

    json out{{"t", result.t},
             {"p", result.p},
             {"df", result.df},
             {"metric", config.metric},
             {"kernel_a", name_a},
             {"kernel_b", name_b},
             {"n", values_a.size()},
             {"config_hash", config_hash(config)},
             {"seed", config.seed}};
    if (out_path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        write_json_file(out_path, out);
        std::cout << "t=" << result.t << " p=" << result.p << " df=" << result.df
                  << "; wrote " << out_path << "\n";
    }
}

void run_grid(const RunConfig& config, const std::string& model_path,
              const std::string& manifest_path, const std::string& features_path,
              const std::string& out_prefix) {
    std::ifstream model_file(model_path);
    if (!model_file) {
        throw std::invalid_argument("grid: cannot open model " + model_path);
    }
    const qkad::ModelBundle bundle = qkad::bundle_from_json(json::parse(model_file));
    const auto rows = qkad::read_manifest(manifest_path);
    const auto features = qkad::read_features_csv(features_path);
    if (rows.size() != features.size()) {
        throw std::invalid_argument("grid: manifest and feature row counts differ");
    }

    std::optional<qkad::GridBounds> bounds;
    if (!config.bounds.empty()) {
        if (config.bounds.size() != 4) {
            throw std::invalid_argument("grid: --bounds needs x_min x_max y_min y_max");
        }
        bounds = qkad::GridBounds{config.bounds[0], config.bounds[1], config.bounds[2],
                                  config.bounds[3]};
    }

    const auto grid = qkad::decision_grid(bundle, features, manifest_labels(rows), config.d1,
                                          config.d2, config.resolution, bounds,
                                          resolve_threads(config.threads));
    const std::string hash = config_hash(config);
    qkad::write_text_file(out_prefix + ".csv", qkad::grid_csv(grid, hash, bundle.seed));
    write_json_file(out_prefix + ".json", qkad::to_json(grid, hash, bundle.seed));
    std::cout << "grid " << config.resolution << "x" << config.resolution << " score range ["
              << grid.score_min << ", " << grid.score_max << "]; wrote " << out_prefix
              << ".csv and " << out_prefix << ".json\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acoustic anomaly detection with quantum and classical kernels"};
    app.require_subcommand(1);

    RunConfig config;
    std::string config_path;
    std::string out_dir = "data";
    std::string manifest_path;
    std::string input_path;
    std::string features_path;
    std::string model_path;
    std::string out_path;
    std::string out_prefix = "sweep";
    std::string csv_a, csv_b;
    std::string kernel_a, kernel_b;

    ConfigBinder binder;
    auto bind_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        binder.bind("threads",
                    cmd->add_option("--threads", config.threads, "worker thread cap"),
                    [&](const json& v) { config.threads = v.get<int>(); });
        binder.bind("seed", cmd->add_option("--seed", config.seed, "dataset seed"),
                    [&](const json& v) { config.seed = v.get<std::uint64_t>(); });
    };

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled dataset");
    bind_common(synth);
    binder.bind("regime",
                synth->add_option("--regime", config.regime, "obd or m4w")
                    ->check(CLI::IsMember({"obd", "m4w"})),
                [&](const json& v) { config.regime = v.get<std::string>(); });
    binder.bind("sample_rate_hz",
                synth->add_option("--sample-rate", config.sample_rate_hz, "sample rate (Hz)"),
                [&](const json& v) { config.sample_rate_hz = v.get<int>(); });
    binder.bind("segment_seconds",
                synth->add_option("--segment-seconds", config.segment_seconds,
                                  "segment length (s)"),
                [&](const json& v) { config.segment_seconds = v.get<double>(); });
    binder.bind("n_normal_segments",
                synth->add_option("--normal-count", config.n_normal_segments,
                                  "number of normal segments"),
                [&](const json& v) { config.n_normal_segments = v.get<int>(); });
    binder.bind("n_anomaly_segments_per_type",
                synth->add_option("--anomaly-count", config.n_anomaly_segments_per_type,
                                  "anomaly segments per type"),
                [&](const json& v) { config.n_anomaly_segments_per_type = v.get<int>(); });
    binder.bind("anomaly_snr_db",
                synth->add_option("--snr-db", config.anomaly_snr_db,
                                  "anomaly level over bed RMS (dB)"),
                [&](const json& v) { config.anomaly_snr_db = v.get<double>(); });
    synth->add_option("--out", out_dir, "output directory")->capture_default_str();

    // --- features ---
    auto* features = app.add_subcommand("features", "extract AR-coefficient features");
    bind_common(features);
    features->add_option("--manifest", manifest_path, "dataset manifest.csv");
    features->add_option("--input", input_path, "single WAV or CSV recording to segment");
    binder.bind("d", features->add_option("--order", config.d, "AR order / feature count"),
                [&](const json& v) { config.d = v.get<int>(); });
    binder.bind("sample_rate_hz",
                features->add_option("--sample-rate", config.sample_rate_hz,
                                     "sample rate for CSV input"),
                [&](const json& v) { config.sample_rate_hz = v.get<int>(); });
    binder.bind("segment_seconds",
                features->add_option("--segment-seconds", config.segment_seconds,
                                     "segment length for --input mode"),
                [&](const json& v) { config.segment_seconds = v.get<double>(); });
    features->add_option("--out", out_path, "output feature CSV")->required();

    // --- train ---
    auto* train = app.add_subcommand("train", "train a one-class SVM detector");
    bind_common(train);
    train->add_option("--manifest", manifest_path, "dataset manifest.csv")->required();
    train->add_option("--features", features_path, "feature CSV from `features`")->required();
    binder.bind("kernel",
                train->add_option("--kernel", config.kernel, "qk1, qk2 or rbf")
                    ->check(CLI::IsMember({"qk1", "qk2", "rbf"})),
                [&](const json& v) { config.kernel = v.get<std::string>(); });
    binder.bind("nu", train->add_option("--nu", config.nu, "one-class SVM nu"),
                [&](const json& v) { config.nu = v.get<double>(); });
    binder.bind("layers", train->add_option("--layers", config.layers, "feature-map layers"),
                [&](const json& v) { config.layers = v.get<int>(); });
    binder.bind("gamma",
                train->add_option("--gamma", config.gamma, "RBF gamma (0 = 1/d rule)"),
                [&](const json& v) { config.gamma = v.get<double>(); });
    binder.bind("train_count",
                train->add_option("--train-count", config.train_count,
                                  "normal segments used for training"),
                [&](const json& v) { config.train_count = v.get<int>(); });
    train->add_option("--out", out_path, "output model JSON")->required();

    // --- score ---
    auto* score = app.add_subcommand("score", "score held-out segments with a trained model");
    bind_common(score);
    score->add_option("--model", model_path, "model JSON from `train`")->required();
    score->add_option("--manifest", manifest_path, "dataset manifest.csv")->required();
    score->add_option("--features", features_path, "feature CSV from `features`")->required();
    score->add_option("--out", out_path, "output report JSON")->required();

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "run the feature-count sweep protocol");
    bind_common(sweep);
    sweep->add_option("--manifest", manifest_path, "dataset manifest.csv")->required();
    binder.bind("d_min", sweep->add_option("--d-min", config.d_min, "lowest feature count"),
                [&](const json& v) { config.d_min = v.get<int>(); });
    binder.bind("d_max", sweep->add_option("--d-max", config.d_max, "highest feature count"),
                [&](const json& v) { config.d_max = v.get<int>(); });
    binder.bind("kernels",
                sweep->add_option("--kernels", config.kernels, "kernels to sweep")
                    ->delimiter(','),
                [&](const json& v) { config.kernels = v.get<std::vector<std::string>>(); });
    binder.bind("nu", sweep->add_option("--nu", config.nu, "one-class SVM nu"),
                [&](const json& v) { config.nu = v.get<double>(); });
    binder.bind("layers", sweep->add_option("--layers", config.layers, "feature-map layers"),
                [&](const json& v) { config.layers = v.get<int>(); });
    binder.bind("gamma", sweep->add_option("--gamma", config.gamma, "RBF gamma (0 = 1/d)"),
                [&](const json& v) { config.gamma = v.get<double>(); });
    binder.bind("train_count",
                sweep->add_option("--train-count", config.train_count,
                                  "normal segments used for training"),
                [&](const json& v) { config.train_count = v.get<int>(); });
    sweep->add_option("--out-prefix", out_prefix, "output path prefix")
        ->capture_default_str();

    // --- ttest ---
    auto* ttest = app.add_subcommand("ttest", "paired t-test between two sweep series");
    bind_common(ttest);
    ttest->add_option("csv_a", csv_a, "first sweep CSV")->required();
    ttest->add_option("csv_b", csv_b, "second sweep CSV")->required();
    binder.bind("metric",
                ttest->add_option("--metric", config.metric, "f1 or accuracy")
                    ->check(CLI::IsMember({"f1", "accuracy"})),
                [&](const json& v) { config.metric = v.get<std::string>(); });
    ttest->add_option("--kernel-a", kernel_a, "kernel filter for the first CSV");
    ttest->add_option("--kernel-b", kernel_b, "kernel filter for the second CSV");
    ttest->add_option("--out", out_path, "output JSON (default: stdout)");

    // --- grid ---
    auto* grid = app.add_subcommand("grid", "export the decision-function grid");
    bind_common(grid);
    grid->add_option("--model", model_path, "model JSON from `train`")->required();
    grid->add_option("--manifest", manifest_path, "dataset manifest.csv")->required();
    grid->add_option("--features", features_path, "feature CSV from `features`")->required();
    binder.bind("d1", grid->add_option("--d1", config.d1, "first projected feature"),
                [&](const json& v) { config.d1 = v.get<int>(); });
    binder.bind("d2", grid->add_option("--d2", config.d2, "second projected feature"),
                [&](const json& v) { config.d2 = v.get<int>(); });
    binder.bind("resolution",
                grid->add_option("--resolution", config.resolution, "grid nodes per axis"),
                [&](const json& v) { config.resolution = v.get<int>(); });
    binder.bind("bounds",
                grid->add_option("--bounds", config.bounds,
                                 "x_min x_max y_min y_max (default: data extent)")
                    ->expected(4),
                [&](const json& v) { config.bounds = v.get<std::vector<double>>(); });
    grid->add_option("--out-prefix", out_prefix, "output path prefix")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            binder.apply(load_config_file(config_path));
        }
        if (synth->parsed()) {
            run_synth(config, out_dir);
        } else if (features->parsed()) {
            run_features(config, manifest_path, input_path, out_path);
        } else if (train->parsed()) {
            run_train(config, manifest_path, features_path, out_path);
        } else if (score->parsed()) {
            run_score(config, model_path, manifest_path, features_path, out_path);
        } else if (sweep->parsed()) {
            run_sweep(config, manifest_path, out_prefix);
        } else if (ttest->parsed()) {
            run_ttest(config, csv_a, csv_b, kernel_a, kernel_b, out_path);
        } else if (grid->parsed()) {
            run_grid(config, model_path, manifest_path, features_path, out_prefix);
        }
    } catch (const qkad::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
