#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mlsniff/csv.hpp"
#include "mlsniff/engine.hpp"

namespace mlsniff {

struct SmellCount {
  std::string name;
  std::size_t count = 0;
  friend bool operator==(const SmellCount&, const SmellCount&) = default;
};

struct BatchReport {
  std::vector<FileReport> file_reports;        // sorted by path
  std::map<Framework, std::size_t> totals;     // frameworks with at least one finding
  std::vector<SmellCount> top_smells;          // at most 10, count desc then name asc

  std::size_t finding_count() const;
  friend bool operator==(const BatchReport&, const BatchReport&) = default;
};

inline constexpr std::size_t kTopSmells = 10;

BatchReport aggregate(std::vector<FileReport> file_reports);

/// All smell-name counts, ordered like top_smells but not truncated.
std::vector<SmellCount> rank_smells(const std::vector<FileReport>& file_reports);

std::string render_text(const BatchReport& batch);

inline constexpr const char* kFindingsCsvHeader = "file,line,column,framework,detector_id,smell_name,message,advice";

std::string render_csv(const BatchReport& batch);

/// Reads a document produced by render_csv. End positions are not part of the
/// format, so the returned spans are empty (end == begin).
std::variant<std::vector<Finding>, csv::CsvError> parse_findings_csv(std::string_view text);

}  // namespace mlsniff
