#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mlsniff/csv.hpp"
#include "mlsniff/engine.hpp"

namespace mlsniff {

enum class Label { SmellPresent, SmellAbsent };

struct GroundTruthEntry {
  std::string file;
  int line = 1;
  std::string detector_id;
  Label label = Label::SmellPresent;
  friend bool operator==(const GroundTruthEntry&, const GroundTruthEntry&) = default;
};

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o);
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct EvaluationMetrics {
  double agreement_rate = 0;
  double recall = 0;
  double precision = 0;
  double f1 = 0;
  double f2 = 0;
};

struct UnknownDetector {
  std::string detector_id;
};
struct EmptyEvaluation {};

/// Scores findings at annotated (file, line, detector_id) locations. Findings
/// elsewhere are ignored.
std::variant<ConfusionCounts, UnknownDetector> match_findings(const std::vector<Finding>& findings,
                                                              const std::vector<GroundTruthEntry>& truth);

/// As match_findings, split by the framework owning each truth entry's rule.
std::variant<std::map<Framework, ConfusionCounts>, UnknownDetector> match_findings_by_framework(
    const std::vector<Finding>& findings, const std::vector<GroundTruthEntry>& truth);

/// precision is 1 when nothing was flagged (tp + fp == 0); recall is 1 when
/// nothing was expected (tp + fn == 0).
std::variant<EvaluationMetrics, EmptyEvaluation> compute_metrics(const ConfusionCounts& c);

inline constexpr const char* kGroundTruthCsvHeader = "file,line,detector_id,label";

std::variant<std::vector<GroundTruthEntry>, csv::CsvError> parse_ground_truth(std::string_view text);
std::string render_ground_truth(const std::vector<GroundTruthEntry>& truth);

}  // namespace mlsniff
