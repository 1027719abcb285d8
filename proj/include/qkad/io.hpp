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
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkad/ar.hpp"
#include "qkad/synth.hpp"

namespace qkad {

/// Shortest exact decimal for a double (round-trips bit-exactly).
inline std::string format_double(double value) {
    std::array<char, 32> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
    return buffer.data();
}

/// Fixed six-decimal form used for metric columns.
inline std::string format_metric(double value) {
    std::array<char, 32> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.6f", value);
    return buffer.data();
}

// ---------------------------------------------------------------------------
// WAV (16-bit PCM mono)
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

inline void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline std::uint32_t read_u32(const std::string& data, std::size_t pos) {
    return static_cast<std::uint8_t>(data[pos]) |
           (static_cast<std::uint8_t>(data[pos + 1]) << 8) |
           (static_cast<std::uint8_t>(data[pos + 2]) << 16) |
           (static_cast<std::uint8_t>(data[pos + 3]) << 24);
}

inline std::uint16_t read_u16(const std::string& data, std::size_t pos) {
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(data[pos]) |
                                      (static_cast<std::uint8_t>(data[pos + 1]) << 8));
}

} // namespace detail

inline void write_wav(const std::filesystem::path& path, const Signal& signal) {
    signal.validate();
    const auto frames = static_cast<std::uint32_t>(signal.samples.size());
    const std::uint32_t data_bytes = frames * 2;
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    detail::put_u32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    detail::put_u32(out, 16);
    detail::put_u16(out, 1); // PCM
    detail::put_u16(out, 1); // mono
    detail::put_u32(out, static_cast<std::uint32_t>(signal.sample_rate_hz));
    detail::put_u32(out, static_cast<std::uint32_t>(signal.sample_rate_hz) * 2);
    detail::put_u16(out, 2);  // block align
    detail::put_u16(out, 16); // bits per sample
    out += "data";
    detail::put_u32(out, data_bytes);
    for (double v : signal.samples) {
        const double clamped = std::clamp(v, -1.0, 1.0);
        const auto q = static_cast<std::int16_t>(std::lrint(clamped * 32767.0));
        detail::put_u16(out, static_cast<std::uint16_t>(q));
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("write_wav: cannot open " + path.string());
    }
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

inline Signal read_wav(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("read_wav: cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    const std::string data = buffer.str();
    if (data.size() < 44 || data.compare(0, 4, "RIFF") != 0 ||
        data.compare(8, 4, "WAVE") != 0) {
        throw std::invalid_argument("read_wav: not a RIFF/WAVE file: " + path.string());
    }
    Signal signal;
    std::size_t pos = 12;
    bool have_fmt = false;
    while (pos + 8 <= data.size()) {
        const std::string chunk_id = data.substr(pos, 4);
        const std::uint32_t chunk_size = detail::read_u32(data, pos + 4);
        const std::size_t body = pos + 8;
        if (chunk_id == "fmt ") {
            if (body + 16 > data.size()) {
                throw std::invalid_argument("read_wav: truncated fmt chunk");
            }
            const std::uint16_t format = detail::read_u16(data, body);
            const std::uint16_t channels = detail::read_u16(data, body + 2);
            const std::uint16_t bits = detail::read_u16(data, body + 14);
            if (format != 1 || channels != 1 || bits != 16) {
                throw std::invalid_argument("read_wav: only 16-bit PCM mono is supported");
            }
            signal.sample_rate_hz = static_cast<int>(detail::read_u32(data, body + 4));
            have_fmt = true;
        } else if (chunk_id == "data") {
            if (!have_fmt) {
                throw std::invalid_argument("read_wav: data chunk precedes fmt");
            }
            if (body + chunk_size > data.size()) {
                throw std::invalid_argument("read_wav: truncated data chunk");
            }
            const std::size_t frames = chunk_size / 2;
            signal.samples.resize(frames);
            for (std::size_t i = 0; i < frames; ++i) {
                const auto raw = static_cast<std::int16_t>(detail::read_u16(data, body + 2 * i));
                signal.samples[i] = static_cast<double>(raw) / 32767.0;
            }
            return signal;
        }
        pos = body + chunk_size + (chunk_size % 2);
    }
    throw std::invalid_argument("read_wav: missing data chunk in " + path.string());
}

/// One sample per line; used for raw exported recordings.
inline Signal read_signal_csv(const std::filesystem::path& path, int sample_rate_hz) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("read_signal_csv: cannot open " + path.string());
    }
    Signal signal;
    signal.sample_rate_hz = sample_rate_hz;
    std::string line;
    while (std::getline(file, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        signal.samples.push_back(std::stod(line));
    }
    signal.validate();
    return signal;
}

// ---------------------------------------------------------------------------
// Manifest (filename, regime, label, seed, snr_db)
// ---------------------------------------------------------------------------

struct ManifestRow {
    std::string filename;
    Regime regime = Regime::Obd;
    SegmentLabel label = SegmentLabel::Normal;
    std::uint64_t seed = 0;
    double snr_db = 0.0;
};

inline Regime regime_from_string(const std::string& name) {
    if (name == "obd") {
        return Regime::Obd;
    }
    if (name == "m4w") {
        return Regime::M4w;
    }
    throw std::invalid_argument("unknown regime: " + name);
}

inline SegmentLabel label_from_string(const std::string& name) {
    if (name == "normal") {
        return SegmentLabel::Normal;
    }
    if (name == "anomaly_type_1") {
        return SegmentLabel::AnomalyType1;
    }
    if (name == "anomaly_type_2") {
        return SegmentLabel::AnomalyType2;
    }
    throw std::invalid_argument("unknown segment label: " + name);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

inline void write_manifest(const std::filesystem::path& path,
                           const std::vector<ManifestRow>& rows,
                           const std::string& provenance_comment) {
    std::ofstream file(path);
    if (!file) {
        throw std::invalid_argument("write_manifest: cannot open " + path.string());
    }
    file << "# " << provenance_comment << "\n";
    file << "filename,regime,label,seed,snr_db\n";
    for (const auto& row : rows) {
        file << row.filename << ',' << to_string(row.regime) << ',' << to_string(row.label)
             << ',' << row.seed << ',' << format_double(row.snr_db) << "\n";
    }
}

inline std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("read_manifest: cannot open " + path.string());
    }
    std::vector<ManifestRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(file, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != "filename,regime,label,seed,snr_db") {
                throw std::invalid_argument("read_manifest: unexpected header: " + line);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::invalid_argument("read_manifest: malformed row: " + line);
        }
        ManifestRow row;
        row.filename = fields[0];
        row.regime = regime_from_string(fields[1]);
        row.label = label_from_string(fields[2]);
        row.seed = std::stoull(fields[3]);
        row.snr_db = std::stod(fields[4]);
        rows.push_back(std::move(row));
    }
    if (!header_seen) {
        throw std::invalid_argument("read_manifest: missing header in " + path.string());
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Feature CSV (one row per segment, columns phi_1..phi_d)
// ---------------------------------------------------------------------------

inline void write_features_csv(const std::filesystem::path& path,
                               const std::vector<std::vector<double>>& features,
                               const std::string& provenance_comment) {
    if (features.empty()) {
        throw std::invalid_argument("write_features_csv: no feature rows");
    }
    std::ofstream file(path);
    if (!file) {
        throw std::invalid_argument("write_features_csv: cannot open " + path.string());
    }
    file << "# " << provenance_comment << "\n";
    const std::size_t d = features.front().size();
    for (std::size_t j = 0; j < d; ++j) {
        file << (j ? "," : "") << "phi_" << (j + 1);
    }
    file << "\n";
    for (const auto& row : features) {
        if (row.size() != d) {
            throw std::invalid_argument("write_features_csv: ragged feature rows");
        }
        for (std::size_t j = 0; j < d; ++j) {
            file << (j ? "," : "") << format_double(row[j]);
        }
        file << "\n";
    }
}

inline std::vector<std::vector<double>>
read_features_csv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("read_features_csv: cannot open " + path.string());
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(file, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line.rfind("phi_1", 0) != 0) {
                throw std::invalid_argument("read_features_csv: unexpected header: " + line);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& field : fields) {
            row.push_back(std::stod(field));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::invalid_argument("read_features_csv: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::invalid_argument("read_features_csv: no feature rows in " + path.string());
    }
    return rows;
}

} // namespace qkad
