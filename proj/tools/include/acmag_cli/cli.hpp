// Copyright 2026 The acmag Authors
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

// Configuration, study orchestration and result files for the acmag tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acmag/dynamics.hpp"
#include "acmag/nv_protocol.hpp"

namespace acmag::cli {

using Json = nlohmann::json;

/// Invalid or incomplete configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { qfim_scan, convergence, bounds, probe_search, nv_sweep, nv_scaling, adaptive };

Command parse_command(const std::string& name);
std::string command_name(Command c);

struct ScanSettings {
  double omega_T_min = 10.0;
  double omega_T_max = 1e4;
  int points = 64;
};

struct SweepSettings {
  double half_width_b = 0.02;        // G
  double half_width_omega = 0.5;     // rad/us
  int points = 5;
  bool noise = true;
};

struct AdaptiveSettings {
  int rounds = 5;
  double B_guess = 0.0;      // G
  double omega_guess = 0.0;  // rad/us
  double window_b = 1.0;
  double window_omega = 5.0;
  bool noise = true;
};

struct ProbeSettings {
  std::size_t samples = 1000;
  unsigned threads = 0;
  GeneratorMode generators = GeneratorMode::asymptotic;
};

struct RunConfig {
  Command command = Command::qfim_scan;
  FieldParams field;  // internal units (rad/us, G)
  double T = 1.0;     // us
  ScanSettings scan;
  NvParams nv;
  SequenceConfig sequence;
  ReadoutModel readout;
  SweepSettings sweep;
  std::vector<int> scaling_n{1, 2, 3, 4, 5, 6, 7, 8};
  bool scaling_noise = false;
  AdaptiveSettings adaptive;
  ProbeSettings probe;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  Json echo;  // the document the run was built from, overrides applied
};

/// Builds and validates a run from a parsed document. Throws ConfigError.
RunConfig parse_config(const Json& doc, Command command);

/// Reads the file, applies --seed/--out overrides, then parse_config.
RunConfig load_config(const std::filesystem::path& path, Command command,
                      std::optional<std::uint64_t> seed, std::optional<std::string> out);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct StudyResult {
  Table table;
  Json results;  // key scalars
};

StudyResult run_study(const RunConfig& config);

/// CSV with a header row and %.17g cells.
std::string format_csv(const Table& table);

/// Inverse of format_csv for numeric tables.
Table parse_csv(const std::string& text);

/// Summary document: command, config echo, seed, version and results.
Json make_summary(const RunConfig& config, const Json& results);

/// Writes <dir>/<stem>.csv and <dir>/<stem>.summary.json (keys sorted).
/// Throws std::runtime_error when the directory or files cannot be written.
void emit_results(const Table& table, const Json& summary, const std::filesystem::path& dir,
                  const std::string& stem);

/// Whole command-line entry point. Returns 0, 2 (configuration) or 3 (numerics).
int run_main(int argc, char** argv);

}  // namespace acmag::cli
