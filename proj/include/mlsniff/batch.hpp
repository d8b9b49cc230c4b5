#pragma once

#include <string>
#include <vector>

#include "mlsniff/engine.hpp"

namespace mlsniff {

struct BatchResult {
  std::vector<FileReport> reports;  // sorted by path
  std::vector<FileError> errors;    // sorted by path
};

/// Analyzes every path on an OpenMP worker pool. Output order is path-sorted
/// and independent of scheduling.
BatchResult analyze_batch(const std::vector<std::string>& paths, const AnalysisConfig& config);
/// Single-threaded reference for analyze_batch.
BatchResult analyze_batch_serial(const std::vector<std::string>& paths, const AnalysisConfig& config);

struct PathCollection {
  std::vector<std::string> files;     // sorted, unique, ".py" only
  std::vector<std::string> skipped;   // existing entries that are not analyzed, with reason
  std::vector<std::string> missing;   // inputs that do not exist
};

/// Expands files and directories into the .py files to analyze. Directories are
/// walked recursively without following symlinks.
PathCollection collect_python_files(const std::vector<std::string>& inputs);

}  // namespace mlsniff
