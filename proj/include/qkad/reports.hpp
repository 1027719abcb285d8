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

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qkad/eval.hpp"
#include "qkad/io.hpp"

namespace qkad {

inline std::string provenance_comment(const std::string& config_hash, std::uint64_t seed) {
    return "config_hash=" + config_hash + " seed=" + std::to_string(seed);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open for writing: " + path.string());
    }
    file.write(body.data(), static_cast<std::streamsize>(body.size()));
}

// ---------------------------------------------------------------------------
// Sweep exports: CSV columns regime,kernel,d,accuracy,f1 plus a JSON
// twin carrying the full confusion counts.
// ---------------------------------------------------------------------------

inline std::string sweep_csv(const SweepResult& result) {
    std::string out = "# " + provenance_comment(result.config_hash, result.seed) + "\n";
    out += "regime,kernel,d,accuracy,f1\n";
    for (const auto& cell : result.cells) {
        out += result.regime + "," + cell.kernel + "," + std::to_string(cell.d) + "," +
               format_metric(cell.report.accuracy) + "," + format_metric(cell.report.f1) +
               "\n";
    }
    return out;
}

inline nlohmann::json to_json(const EvalReport& report) {
    return nlohmann::json{{"tp", report.tp},
                          {"fp", report.fp},
                          {"tn", report.tn},
                          {"fn", report.fn},
                          {"accuracy", report.accuracy},
                          {"f1", report.f1}};
}

inline nlohmann::json to_json(const SweepResult& result) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : result.cells) {
        nlohmann::json entry = to_json(cell.report);
        entry["kernel"] = cell.kernel;
        entry["d"] = cell.d;
        cells.push_back(std::move(entry));
    }
    return nlohmann::json{{"regime", result.regime},
                          {"seed", result.seed},
                          {"config_hash", result.config_hash},
                          {"cells", std::move(cells)}};
}

struct SweepCsvRow {
    std::string regime;
    std::string kernel;
    int d = 0;
    double accuracy = 0.0;
    double f1 = 0.0;
};

inline std::vector<SweepCsvRow> read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("read_sweep_csv: cannot open " + path.string());
    }
    std::vector<SweepCsvRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(file, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != "regime,kernel,d,accuracy,f1") {
                throw std::invalid_argument("read_sweep_csv: unexpected header: " + line);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::invalid_argument("read_sweep_csv: malformed row: " + line);
        }
        SweepCsvRow row;
        row.regime = fields[0];
        row.kernel = fields[1];
        row.d = std::stoi(fields[2]);
        row.accuracy = std::stod(fields[3]);
        row.f1 = std::stod(fields[4]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::invalid_argument("read_sweep_csv: no data rows in " + path.string());
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Decision grid exports: CSV rows x,y,score (y-major) plus a JSON
// sidecar with bounds, the pinned slice, sample overlay and the score
// range.
// ---------------------------------------------------------------------------

inline std::string grid_csv(const DecisionGrid& grid, const std::string& config_hash,
                            std::uint64_t seed) {
    std::string out = "# " + provenance_comment(config_hash, seed) + "\n";
    out += "x,y,score\n";
    for (int iy = 0; iy < grid.resolution; ++iy) {
        for (int ix = 0; ix < grid.resolution; ++ix) {
            out += format_double(grid.x_at(ix)) + "," + format_double(grid.y_at(iy)) + "," +
                   format_double(grid.scores[static_cast<std::size_t>(iy) *
                                                 static_cast<std::size_t>(grid.resolution) +
                                             static_cast<std::size_t>(ix)]) +
                   "\n";
        }
    }
    return out;
}

inline nlohmann::json to_json(const DecisionGrid& grid, const std::string& config_hash,
                              std::uint64_t seed) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : grid.samples) {
        samples.push_back(nlohmann::json{{"x", s.x},
                                         {"y", s.y},
                                         {"label", to_string(s.label)},
                                         {"training", s.training}});
    }
    return nlohmann::json{
        {"d1", grid.d1},
        {"d2", grid.d2},
        {"resolution", grid.resolution},
        {"bounds",
         {{"x_min", grid.bounds.x_min},
          {"x_max", grid.bounds.x_max},
          {"y_min", grid.bounds.y_min},
          {"y_max", grid.bounds.y_max}}},
        {"fixed_values", grid.fixed_values},
        {"score_min", grid.score_min},
        {"score_max", grid.score_max},
        {"samples", std::move(samples)},
        {"config_hash", config_hash},
        {"seed", seed}};
}

} // namespace qkad
