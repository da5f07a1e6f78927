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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acmag/error.hpp"
#include "acmag/version.hpp"
#include "acmag_cli/cli.hpp"

namespace acmag::cli {

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  char buf[32];
  for (const std::vector<double>& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("format_csv: row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) return t;
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : split(line)) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str() || *end != '\0') {
        throw std::invalid_argument("parse_csv: non-numeric cell '" + cell + "'");
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json make_summary(const RunConfig& config, const Json& results) {
  Json s;
  s["command"] = command_name(config.command);
  s["config"] = config.echo;
  s["seed"] = config.seed;
  s["version"] = kVersion;
  s["results"] = results;
  return s;
}

void emit_results(const Table& table, const Json& summary, const std::filesystem::path& dir,
                  const std::string& stem) {
  // Format both payloads first so a bad table leaves nothing behind.
  const std::string csv = format_csv(table);
  const std::string json = summary.dump(2) + "\n";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, body] : {std::pair{stem + ".csv", &csv}, std::pair{stem + ".summary.json", &json}}) {
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << *body;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
}

int run_main(int argc, char** argv) {
  CLI::App app{"AC-field amplitude and frequency estimation studies"};
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  app.add_option("command", command, "qfim-scan | convergence | bounds | probe-search | nv-sweep | nv-scaling | adaptive")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("--out", out, "override the configured output directory");
  app.set_version_flag("--version", std::string(kVersion));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path, parse_command(command), seed, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const StudyResult result = run_study(cfg);
    emit_results(result.table, make_summary(cfg, result.results), cfg.output_dir, command);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error in " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error in " << command << ": " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace acmag::cli
