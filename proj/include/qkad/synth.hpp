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
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkad/ar.hpp"
#include "qkad/parallel.hpp"

namespace qkad {

/// Default seed shared by the CLI and the shipped evaluation fixtures.
inline constexpr std::uint64_t kDefaultSeed = 3;

enum class Regime { Obd, M4w };

inline std::string to_string(Regime regime) {
    return regime == Regime::Obd ? "obd" : "m4w";
}

enum class SegmentLabel { Normal, AnomalyType1, AnomalyType2 };

inline std::string to_string(SegmentLabel label) {
    switch (label) {
    case SegmentLabel::Normal: return "normal";
    case SegmentLabel::AnomalyType1: return "anomaly_type_1";
    default: return "anomaly_type_2";
    }
}

/// Counter-based splittable generator (splitmix64 core). Each segment
/// draws from its own stream keyed by (seed, stream id), so parallel
/// generation is deterministic regardless of scheduling.
class SegmentRng {
  public:
    SegmentRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(mix(seed) ^ mix(stream ^ 0x123456789ABCDEFULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Standard normal via Box-Muller; the second value of each pair is
    /// cached so consecutive draws stay cheap and deterministic.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct DatasetConfig {
    Regime regime = Regime::Obd;
    std::uint64_t seed = kDefaultSeed;
    int sample_rate_hz = 16000;
    double segment_seconds = 10.0;
    int n_normal_segments = 30;
    int n_anomaly_segments_per_type = 10;
    /// Burst level over the bed RMS; negative infinity is not allowed
    /// but any real works. NaN selects the regime default (+12 dB for
    /// the loud OBD transients, +3 dB for the subtle M4W events).
    double anomaly_snr_db = std::numeric_limits<double>::quiet_NaN();

    int anomaly_types() const { return regime == Regime::Obd ? 1 : 2; }

    double effective_snr_db() const {
        if (!std::isnan(anomaly_snr_db)) {
            return anomaly_snr_db;
        }
        return regime == Regime::Obd ? 12.0 : 3.0;
    }

    void validate() const {
        if (sample_rate_hz <= 0) {
            throw std::invalid_argument("DatasetConfig: sample rate must be positive");
        }
        if (!(segment_seconds > 0.0)) {
            throw std::invalid_argument("DatasetConfig: segment_seconds must be positive");
        }
        if (n_normal_segments <= 0 || n_anomaly_segments_per_type <= 0) {
            throw std::invalid_argument("DatasetConfig: segment counts must be positive");
        }
    }
};

struct LabeledSegment {
    Signal signal;
    SegmentLabel label = SegmentLabel::Normal;
    Regime regime = Regime::Obd;
};

namespace detail {

inline double rms(const std::vector<double>& x) {
    double acc = 0.0;
    for (double v : x) {
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(x.size()));
}

inline void one_pole_lowpass(std::vector<double>& x, double alpha) {
    double acc = 0.0;
    for (double& v : x) {
        acc += alpha * (v - acc);
        v = acc;
    }
}

/// RBJ constant-peak band-pass biquad, applied as a two-stage cascade.
inline void bandpass(std::vector<double>& x, double low_hz, double high_hz, int rate) {
    const double center = std::sqrt(low_hz * high_hz);
    const double q = center / (high_hz - low_hz);
    const double w0 = 2.0 * std::numbers::pi * center / rate;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    const double b0 = alpha / a0;
    const double b2 = -alpha / a0;
    const double a1 = -2.0 * std::cos(w0) / a0;
    const double a2 = (1.0 - alpha) / a0;
    for (int pass = 0; pass < 2; ++pass) {
        double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
        for (double& v : x) {
            const double in = v;
            const double out = b0 * in + b2 * x2 - a1 * y1 - a2 * y2;
            x2 = x1;
            x1 = in;
            y2 = y1;
            y1 = out;
            v = out;
        }
    }
}

inline void add_tone_stack(std::vector<double>& sig, SegmentRng& rng, int rate,
                           double fundamental_hz, double base_amp) {
    static constexpr double kHarmonicWeights[] = {1.0, 0.5, 0.25};
    const double dt = 1.0 / rate;
    for (int h = 0; h < 3; ++h) {
        const double amp = base_amp * kHarmonicWeights[h] * (1.0 + 0.005 * rng.gaussian());
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double omega = 2.0 * std::numbers::pi * fundamental_hz * (h + 1);
        for (std::size_t i = 0; i < sig.size(); ++i) {
            sig[i] += amp * std::sin(omega * (static_cast<double>(i) * dt) + phase);
        }
    }
}

inline std::vector<double> filtered_noise(SegmentRng& rng, std::size_t n, double alpha) {
    std::vector<double> noise(n);
    for (double& v : noise) {
        v = rng.gaussian();
    }
    one_pole_lowpass(noise, alpha);
    return noise;
}

inline void clip_headroom(std::vector<double>& sig) {
    for (double& v : sig) {
        v = std::clamp(v, -0.9, 0.9);
    }
}

/// Open belt drive analog. Normal: two belt-rotation tone stacks plus a
/// low-passed noise bed whose gain occasionally jumps (a room
/// disturbance); this mild heavy tail gives the one-class boundary
/// natural support vectors. Anomaly: 2-4 loud broadband decaying bursts.
inline std::vector<double> obd_samples(SegmentRng& rng, int rate, std::size_t n,
                                       bool anomaly, double snr_db) {
    std::vector<double> sig(n, 0.0);
    add_tone_stack(sig, rng, rate, 37.0, 0.12);
    add_tone_stack(sig, rng, rate, 61.0, 0.10);

    double noise_gain = 0.05 * (1.0 + 0.01 * rng.gaussian());
    if (rng.uniform() < 0.08) {
        noise_gain *= 1.6;
    }
    std::vector<double> noise = filtered_noise(rng, n, 0.35);
    const double noise_rms = rms(noise);
    for (std::size_t i = 0; i < n; ++i) {
        sig[i] += noise_gain * noise[i] / noise_rms;
    }

    if (anomaly) {
        const double bed = rms(sig);
        const double burst_level = bed * std::pow(10.0, snr_db / 20.0);
        const int bursts = rng.uniform_int(2, 4);
        for (int b = 0; b < bursts; ++b) {
            const auto dur = static_cast<std::size_t>(rng.uniform(0.03, 0.06) * rate);
            const auto pos = static_cast<std::size_t>(
                rng.uniform(0.0, static_cast<double>(n - dur)));
            std::vector<double> burst(dur);
            const double decay = 0.015 * rate;
            for (std::size_t i = 0; i < dur; ++i) {
                burst[i] = rng.gaussian() * std::exp(-static_cast<double>(i) / decay);
            }
            const double scale = burst_level / rms(burst);
            for (std::size_t i = 0; i < dur; ++i) {
                sig[pos + i] += scale * burst[i];
            }
        }
    }
    clip_headroom(sig);
    return sig;
}

/// Miniature 4WD track analog. Normal: an amplitude-modulated motor
/// tone (one modulation cycle per ~5 s lap) over rolling noise, with
/// independent per-segment speed, modulation-depth, noise-tilt and
/// noise-gain jitter. Type 1 adds a short click train per lap (the
/// stick), type 2 a band-limited 2-6 kHz scratch per lap (the velcro);
/// both sit barely above the bed.
inline std::vector<double> m4w_samples(SegmentRng& rng, int rate, std::size_t n,
                                       SegmentLabel label, double snr_db) {
    const double dt = 1.0 / rate;
    const double lap_seconds = 5.0 * (1.0 + rng.uniform(-0.06, 0.06));
    const double am_depth = rng.uniform(0.2, 0.4);
    const double am_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double motor_hz = 83.0 * (1.0 + rng.uniform(-0.04, 0.04));

    std::vector<double> am(n);
    for (std::size_t i = 0; i < n; ++i) {
        am[i] = 1.0 + am_depth * std::sin(2.0 * std::numbers::pi *
                                              (static_cast<double>(i) * dt) / lap_seconds +
                                          am_phase);
    }

    std::vector<double> sig(n, 0.0);
    static constexpr double kMotorHarmonics[] = {1.0, 0.6, 0.35, 0.2};
    for (int h = 0; h < 4; ++h) {
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double omega = 2.0 * std::numbers::pi * motor_hz * (h + 1);
        for (std::size_t i = 0; i < n; ++i) {
            sig[i] += 0.1 * kMotorHarmonics[h] *
                      std::sin(omega * (static_cast<double>(i) * dt) + phase);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        sig[i] *= am[i];
    }

    const double noise_alpha = rng.uniform(0.35, 0.65);
    const double noise_gain = 0.06 * (1.0 + rng.uniform(-0.2, 0.2));
    std::vector<double> noise = filtered_noise(rng, n, noise_alpha);
    const double noise_rms = rms(noise);
    for (std::size_t i = 0; i < n; ++i) {
        sig[i] += noise_gain * am[i] * noise[i] / noise_rms;
    }

    const double bed = rms(sig);
    const double event_level = bed * std::pow(10.0, snr_db / 20.0);
    const double total_seconds = static_cast<double>(n) * dt;

    if (label == SegmentLabel::AnomalyType1) {
        const double lap_offset = rng.uniform(0.5, 2.0);
        for (int lap = 0; lap * lap_seconds + lap_offset < total_seconds; ++lap) {
            const double train_start = lap * lap_seconds + lap_offset;
            for (int click = 0; click < 5; ++click) {
                const auto pos = static_cast<std::size_t>(
                    (train_start + 0.012 * click) * rate);
                const auto dur = static_cast<std::size_t>(0.003 * rate);
                if (pos + dur >= n) {
                    continue;
                }
                std::vector<double> impulse(dur);
                const double decay = 0.001 * rate;
                for (std::size_t i = 0; i < dur; ++i) {
                    impulse[i] = rng.gaussian() * std::exp(-static_cast<double>(i) / decay);
                }
                const double scale = event_level / rms(impulse);
                for (std::size_t i = 0; i < dur; ++i) {
                    sig[pos + i] += scale * impulse[i];
                }
            }
        }
    } else if (label == SegmentLabel::AnomalyType2) {
        const double lap_offset = rng.uniform(2.5, 4.0);
        for (int lap = 0; lap * lap_seconds + lap_offset < total_seconds; ++lap) {
            const auto pos = static_cast<std::size_t>(
                (lap * lap_seconds + lap_offset) * rate);
            const auto dur = static_cast<std::size_t>(0.15 * rate);
            if (pos + dur >= n) {
                continue;
            }
            std::vector<double> scratch(dur);
            for (double& v : scratch) {
                v = rng.gaussian();
            }
            bandpass(scratch, 2000.0, 6000.0, rate);
            for (std::size_t i = 0; i < dur; ++i) {
                const double window =
                    0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(dur - 1));
                scratch[i] *= window;
            }
            const double scale = event_level / rms(scratch);
            for (std::size_t i = 0; i < dur; ++i) {
                sig[pos + i] += scale * scratch[i];
            }
        }
    }
    clip_headroom(sig);
    return sig;
}

} // namespace detail

/// Generates the full labeled dataset for one regime: normal segments
/// first, then each anomaly type in order. Deterministic for a fixed
/// seed; segment order in the output defines the manifest order.
inline std::vector<LabeledSegment> generate(const DatasetConfig& config, int threads = 1) {
    config.validate();
    const auto n_samples = static_cast<std::size_t>(config.segment_seconds *
                                                    config.sample_rate_hz);
    const double snr_db = config.effective_snr_db();

    std::vector<SegmentLabel> labels;
    for (int i = 0; i < config.n_normal_segments; ++i) {
        labels.push_back(SegmentLabel::Normal);
    }
    for (int type = 1; type <= config.anomaly_types(); ++type) {
        for (int i = 0; i < config.n_anomaly_segments_per_type; ++i) {
            labels.push_back(type == 1 ? SegmentLabel::AnomalyType1
                                       : SegmentLabel::AnomalyType2);
        }
    }

    std::vector<LabeledSegment> segments(labels.size());
    parallel_for(labels.size(), threads, [&](std::size_t index) {
        SegmentRng rng(config.seed, static_cast<std::uint64_t>(index));
        LabeledSegment seg;
        seg.regime = config.regime;
        seg.label = labels[index];
        seg.signal.sample_rate_hz = config.sample_rate_hz;
        if (config.regime == Regime::Obd) {
            seg.signal.samples = detail::obd_samples(
                rng, config.sample_rate_hz, n_samples,
                seg.label != SegmentLabel::Normal, snr_db);
        } else {
            seg.signal.samples = detail::m4w_samples(rng, config.sample_rate_hz, n_samples,
                                                     seg.label, snr_db);
        }
        segments[index] = std::move(seg);
    });
    return segments;
}

} // namespace qkad
