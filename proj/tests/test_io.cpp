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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "qkad/detector.hpp"
#include "qkad/io.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        const auto stamp =
            std::chrono::steady_clock::now().time_since_epoch().count();
        path = fs::temp_directory_path() /
               ("qkad_test_" + std::to_string(stamp) + "_" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int value = 0;
        return value;
    }
};

} // namespace

TEST_CASE("wav round trip is exact at 16-bit resolution") {
    TempDir dir;
    qkad::Signal signal;
    signal.sample_rate_hz = 16000;
    qkad::testing::TestRng rng(3);
    signal.samples.resize(4096);
    for (double& v : signal.samples) {
        v = rng.uniform(-0.9, 0.9);
    }
    const fs::path file = dir.path / "probe.wav";
    qkad::write_wav(file, signal);
    const qkad::Signal loaded = qkad::read_wav(file);
    REQUIRE(loaded.sample_rate_hz == 16000);
    REQUIRE(loaded.samples.size() == signal.samples.size());
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        // One quantization step of 16-bit PCM.
        CHECK(std::abs(loaded.samples[i] - signal.samples[i]) <= 1.0 / 32767.0);
    }
    // A second write/read cycle is bit-stable.
    const fs::path file2 = dir.path / "probe2.wav";
    qkad::write_wav(file2, loaded);
    const qkad::Signal reloaded = qkad::read_wav(file2);
    REQUIRE(reloaded.samples == loaded.samples);
}

TEST_CASE("wav reader rejects foreign data") {
    TempDir dir;
    const fs::path file = dir.path / "not_audio.wav";
    std::ofstream(file) << "definitely not a wav";
    CHECK_THROWS_AS(qkad::read_wav(file), std::invalid_argument);
    CHECK_THROWS_AS(qkad::read_wav(dir.path / "missing.wav"), std::invalid_argument);
}

TEST_CASE("signal csv reads one sample per line") {
    TempDir dir;
    const fs::path file = dir.path / "samples.csv";
    std::ofstream(file) << "# comment\n0.5\n-0.25\n0.125\n";
    const qkad::Signal signal = qkad::read_signal_csv(file, 8000);
    REQUIRE(signal.samples.size() == 3);
    CHECK(signal.samples[0] == 0.5);
    CHECK(signal.samples[1] == -0.25);
    CHECK(signal.sample_rate_hz == 8000);
}

TEST_CASE("manifest round trip") {
    TempDir dir;
    std::vector<qkad::ManifestRow> rows;
    qkad::ManifestRow row;
    row.filename = "obd_normal_000.wav";
    row.regime = qkad::Regime::Obd;
    row.label = qkad::SegmentLabel::Normal;
    row.seed = 42;
    row.snr_db = 12.0;
    rows.push_back(row);
    row.filename = "obd_anomaly1_000.wav";
    row.label = qkad::SegmentLabel::AnomalyType1;
    rows.push_back(row);

    const fs::path file = dir.path / "manifest.csv";
    qkad::write_manifest(file, rows, "config_hash=deadbeef seed=42");
    const auto loaded = qkad::read_manifest(file);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].filename == "obd_normal_000.wav");
    CHECK(loaded[0].label == qkad::SegmentLabel::Normal);
    CHECK(loaded[1].label == qkad::SegmentLabel::AnomalyType1);
    CHECK(loaded[1].seed == 42);
    CHECK(loaded[1].snr_db == 12.0);
}

TEST_CASE("feature csv round trip preserves doubles exactly") {
    TempDir dir;
    std::vector<std::vector<double>> features = {
        {0.1234567890123456, -1.9876543210987654e-5},
        {3.14159265358979, 2.2250738585072014e-308},
    };
    const fs::path file = dir.path / "features.csv";
    qkad::write_features_csv(file, features, "config_hash=cafe seed=1");
    const auto loaded = qkad::read_features_csv(file);
    REQUIRE(loaded.size() == features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        REQUIRE(loaded[i].size() == features[i].size());
        for (std::size_t j = 0; j < features[i].size(); ++j) {
            CHECK(loaded[i][j] == features[i][j]);
        }
    }
    // Header names the phi columns.
    std::ifstream in(file);
    std::string comment, header;
    std::getline(in, comment);
    std::getline(in, header);
    CHECK(comment.rfind("# config_hash=", 0) == 0);
    CHECK(header == "phi_1,phi_2");
}

TEST_CASE("model json round trip reproduces decision scores exactly") {
    qkad::testing::TestRng rng(17);
    std::vector<std::vector<double>> train;
    for (int i = 0; i < 12; ++i) {
        train.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                         rng.uniform(-1.0, 1.0)});
    }
    qkad::KernelConfig kernel = qkad::KernelConfig::from_name("qk1");
    kernel.layers = 2;
    qkad::ModelBundle bundle = qkad::train_detector(train, kernel, 0.25);
    bundle.seed = 42;
    bundle.config_hash = "0123456789abcdef";

    const std::string serialized = qkad::to_json(bundle).dump();
    const qkad::ModelBundle loaded =
        qkad::bundle_from_json(nlohmann::json::parse(serialized));

    CHECK(loaded.svm.nu == bundle.svm.nu);
    CHECK(loaded.svm.rho == bundle.svm.rho);
    CHECK(loaded.config_hash == bundle.config_hash);
    for (int probe = 0; probe < 20; ++probe) {
        const std::vector<double> x = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                                       rng.uniform(-1.5, 1.5)};
        const double original = bundle.score(x);
        const double reloaded = loaded.score(x);
        CHECK(std::abs(original - reloaded) < 1e-12);
        CHECK(original == reloaded); // bit-exact via shortest round-trip doubles
    }
}

TEST_CASE("format_double survives a parse round trip") {
    for (const double v : {0.1, -1.0 / 3.0, 1e-300, 123456789.123456789, 0.0}) {
        CHECK(std::stod(qkad::format_double(v)) == v);
    }
}
