#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hre/scenario.hpp"

namespace hre {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Stage { Sequences, Analytic, Simulation };
Stage stage_of(const std::string& check);

struct RunOptions {
  std::string out_dir;  // empty: nothing written
  std::optional<std::uint64_t> seed;
  std::optional<int> levels;
  std::optional<long> horizon;
  int workers = 1;
  std::set<Stage> stages;  // empty: every stage
};

struct CsvTable {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct SectionResult {
  std::string check;
  std::string condition;
  std::string verdict;  // holds fails inconclusive error
  std::optional<std::string> expected;
  nlohmann::ordered_json data;
  std::vector<CsvTable> csv;
  double seconds = 0.0;
};

struct RunResult {
  nlohmann::ordered_json report;
  std::vector<SectionResult> sections;
  int exit_code = 0;  // 0 all definite and matching, 1 mismatch or inconclusive, 3 a section errored
};

// Applies option overrides, runs the requested checks in stage order and,
// when out_dir is set, writes report.json, run_info.json and CSV files.
RunResult run_scenario(Scenario s, const RunOptions& opt);

// Stable 64-bit FNV-1a of the text, as 16 hex digits.
std::string digest(const std::string& text);

nlohmann::ordered_json to_json(const SeriesVerdict& v);
nlohmann::ordered_json counterexample_json(const CounterexampleDist& ce);

}  // namespace hre
