#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofl/report_io.hpp"

namespace ofl {

struct ReproRow {
  std::string id;
  std::string description;
  std::string measured;
  std::string expected;
  bool pass = false;
};

struct ReproOptions {
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t kappa_budget = 100000;
  std::size_t normal_sets = 64;
};

// One row per worked example and invariant suite.
std::vector<ReproRow> run_repro(const ReproOptions& options);
CsvTable repro_table(const std::vector<ReproRow>& rows);

}  // namespace ofl
