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
#include <vector>

#include "qkad/synth.hpp"

using qkad::DatasetConfig;
using qkad::LabeledSegment;
using qkad::Regime;
using qkad::SegmentLabel;
using qkad::generate;

namespace {

double segment_rms(const LabeledSegment& seg) {
    double acc = 0.0;
    for (double v : seg.signal.samples) {
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(seg.signal.samples.size()));
}

double mean_rms(const std::vector<LabeledSegment>& segs, SegmentLabel label) {
    double acc = 0.0;
    int count = 0;
    for (const auto& seg : segs) {
        if (seg.label == label) {
            acc += segment_rms(seg);
            ++count;
        }
    }
    return acc / count;
}

} // namespace

TEST_CASE("obd defaults produce 30 normal and 10 anomaly segments") {
    DatasetConfig config;
    config.regime = Regime::Obd;
    config.seed = 7;
    const auto segments = generate(config);
    REQUIRE(segments.size() == 40);
    int normal = 0, type1 = 0, type2 = 0;
    for (const auto& seg : segments) {
        CHECK(seg.signal.samples.size() == 160000);
        CHECK(seg.signal.sample_rate_hz == 16000);
        if (seg.label == SegmentLabel::Normal) {
            ++normal;
        } else if (seg.label == SegmentLabel::AnomalyType1) {
            ++type1;
        } else {
            ++type2;
        }
    }
    CHECK(normal == 30);
    CHECK(type1 == 10);
    CHECK(type2 == 0);
}

TEST_CASE("m4w contains exactly two anomaly types") {
    DatasetConfig config;
    config.regime = Regime::M4w;
    config.seed = 7;
    const auto segments = generate(config);
    REQUIRE(segments.size() == 50);
    int type1 = 0, type2 = 0;
    for (const auto& seg : segments) {
        if (seg.label == SegmentLabel::AnomalyType1) {
            ++type1;
        } else if (seg.label == SegmentLabel::AnomalyType2) {
            ++type2;
        }
    }
    CHECK(type1 == 10);
    CHECK(type2 == 10);
}

TEST_CASE("generation is bit-identical for a fixed seed") {
    DatasetConfig config;
    config.regime = Regime::Obd;
    config.seed = 99;
    const auto first = generate(config);
    const auto second = generate(config);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        REQUIRE(first[i].signal.samples == second[i].signal.samples);
    }
}

TEST_CASE("parallel generation matches serial generation exactly") {
    DatasetConfig config;
    config.regime = Regime::M4w;
    config.seed = 4242;
    config.n_normal_segments = 6;
    config.n_anomaly_segments_per_type = 2;
    const auto serial = generate(config, 1);
    const auto threaded = generate(config, 4);
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].signal.samples == threaded[i].signal.samples);
    }
}

TEST_CASE("different seeds give different data") {
    DatasetConfig a;
    a.seed = 1;
    a.n_normal_segments = 1;
    a.n_anomaly_segments_per_type = 1;
    DatasetConfig b = a;
    b.seed = 2;
    CHECK(generate(a)[0].signal.samples != generate(b)[0].signal.samples);
}

TEST_CASE("samples stay inside the clipping headroom") {
    for (const Regime regime : {Regime::Obd, Regime::M4w}) {
        DatasetConfig config;
        config.regime = regime;
        config.seed = 11;
        config.n_normal_segments = 4;
        config.n_anomaly_segments_per_type = 2;
        for (const auto& seg : generate(config)) {
            for (double v : seg.signal.samples) {
                CHECK(std::abs(v) <= 0.9);
            }
        }
    }
}

TEST_CASE("obd anomalies are loud, m4w anomalies are subtle") {
    DatasetConfig obd;
    obd.regime = Regime::Obd;
    obd.seed = qkad::kDefaultSeed;
    const auto obd_segments = generate(obd);
    CHECK(mean_rms(obd_segments, SegmentLabel::AnomalyType1) >
          mean_rms(obd_segments, SegmentLabel::Normal));

    DatasetConfig m4w;
    m4w.regime = Regime::M4w;
    m4w.seed = qkad::kDefaultSeed;
    const auto m4w_segments = generate(m4w);
    const double normal_rms = mean_rms(m4w_segments, SegmentLabel::Normal);
    for (const auto label : {SegmentLabel::AnomalyType1, SegmentLabel::AnomalyType2}) {
        const double gap_db = 20.0 * std::log10(mean_rms(m4w_segments, label) / normal_rms);
        CHECK(std::abs(gap_db) < 1.0);
    }
}

TEST_CASE("config validation") {
    DatasetConfig config;
    config.sample_rate_hz = 0;
    CHECK_THROWS_AS(generate(config), std::invalid_argument);
    config = DatasetConfig{};
    config.segment_seconds = -1.0;
    CHECK_THROWS_AS(generate(config), std::invalid_argument);
    config = DatasetConfig{};
    config.n_normal_segments = 0;
    CHECK_THROWS_AS(generate(config), std::invalid_argument);
}

TEST_CASE("snr override is honored") {
    DatasetConfig config;
    config.regime = Regime::Obd;
    CHECK(config.effective_snr_db() == 12.0);
    config.regime = Regime::M4w;
    CHECK(config.effective_snr_db() == 3.0);
    config.anomaly_snr_db = 6.5;
    CHECK(config.effective_snr_db() == 6.5);
}
