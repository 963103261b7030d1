#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ofl/analysis.hpp"
#include "ofl/geometry_constants.hpp"
#include "ofl/solvers.hpp"

namespace ofl {

// Coordinates joined by ';'; the tail is appended as "|tail" when nonzero or when the
// prefix is empty; rational-flagged points end in 'q'.
std::string format_point(const Point& p);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

nlohmann::json to_json(const SamplePlan& plan);
nlohmann::json to_json(const RatioEstimate& e);
nlohmann::json to_json(const StarReport& s);
nlohmann::json to_json(const LipschitzReport& r);
nlohmann::json to_json(const HierarchyCheck& h);
nlohmann::json to_json(const SolverTrace& t);
nlohmann::json to_json(const KappaBracket& b);
nlohmann::json to_json(const NormalStructureEstimate& n);

// Rows: one per estimate and one per star k.
CsvTable witness_table(const LipschitzReport& r);

std::string dump_json(const nlohmann::json& j);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ofl
