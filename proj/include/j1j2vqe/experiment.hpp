// Copyright 2026 The j1j2vqe Authors
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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "j1j2vqe/analysis.hpp"
#include "j1j2vqe/vqe.hpp"

namespace j1j2 {

inline constexpr int kSchemaVersion = 1;

struct AnalysisToggles {
    bool correlations = false;
    Pauli correlation_axis = Pauli::X;
    bool scan = false;
    bool fit = false;
};

struct ExperimentConfig {
    std::filesystem::path output_dir = "results";
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    AnalysisToggles analysis{};
    std::vector<VqeConfig> runs;
};

/// Run entry <-> JSON. Field errors throw InvalidConfig with the JSON path,
/// e.g. "runs[0].lattice.rows: must be >= 1".
nlohmann::json config_to_json(const VqeConfig &cfg);
VqeConfig config_from_json(const nlohmann::json &j, const std::string &path = "run");

/// Parses an experiment file. Syntax errors report line and column. Runs
/// without an explicit seed get `seed + index`.
ExperimentConfig parse_experiment(const std::string &text);
ExperimentConfig load_experiment(const std::filesystem::path &file);

nlohmann::json record_to_json(const VqeRunRecord &rec);
VqeRunRecord record_from_json(const nlohmann::json &j);

/// Writes to a sibling temporary file and renames it over `file`.
void write_file_atomic(const std::filesystem::path &file, const std::string &contents);

void save_record(const std::filesystem::path &file, const VqeRunRecord &rec);
VqeRunRecord load_record(const std::filesystem::path &file);

/// "eval,energy" header, one row per objective evaluation.
std::string trace_csv(const VqeRunRecord &rec);

/// Columns: name,n_qubits,boundary,j1,j2,layers,diagonals,E0,E1,E_bar,metric,n_evals,status.
std::string summary_csv(const std::vector<VqeRunRecord> &records);

std::string scan_csv(const ScanResult &scan);
/// Reads the n_qubits column and `column` of a scan CSV as fit points.
std::vector<std::pair<double, double>> read_scan_points(const std::filesystem::path &file,
                                                        const std::string &column);

std::string correlation_csv(const CorrelationMatrix &c);

struct ExperimentOutcome {
    std::vector<VqeRunRecord> records;
    std::vector<std::string> failures;
    [[nodiscard]] int exit_status() const noexcept { return failures.empty() ? 0 : 1; }
};

/// Runs every entry on a pool of `cfg.workers` threads, writes
/// <name>.record.json and <name>.trace.csv per run, summary.csv, and the
/// enabled analysis outputs. A failing entry is reported and does not stop
/// the others.
ExperimentOutcome run_experiment(const ExperimentConfig &cfg, std::ostream &log);

} // namespace j1j2
