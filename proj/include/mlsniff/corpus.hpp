#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mlsniff/batch.hpp"
#include "mlsniff/reporting.hpp"

namespace mlsniff {

struct ProjectSummary {
  std::string project;
  std::size_t files = 0;
  std::map<Framework, std::size_t> totals;  // every framework, zeros included
};

struct CorpusReport {
  std::vector<ProjectSummary> projects;  // sorted by name
  BatchReport merged;
  std::vector<FileError> errors;
};

/// Each immediate subdirectory of `root` is one project.
CorpusReport analyze_corpus(const std::filesystem::path& root, const AnalysisConfig& config);

/// Framework rows sorted by count descending, then display name. All seven
/// frameworks are listed.
std::vector<std::pair<Framework, std::size_t>> framework_distribution(const CorpusReport& report);

inline constexpr const char* kCorpusCsvHeader = "table,project,key,count";

/// Three tables in one document: project_framework, framework_distribution
/// and top_smells.
std::string render_corpus_csv(const CorpusReport& report);

}  // namespace mlsniff
