#include "mlsniff/evaluation.hpp"

#include <charconv>
#include <filesystem>
#include <set>
#include <tuple>

namespace mlsniff {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

namespace {

using Location = std::tuple<std::string, int, std::string>;

std::string normalize_file(const std::string& file) {
  return std::filesystem::path(file).lexically_normal().generic_string();
}

std::set<Location> flagged_locations(const std::vector<Finding>& findings) {
  std::set<Location> out;
  for (const auto& f : findings) out.emplace(normalize_file(f.file), f.span.line, f.detector_id);
  return out;
}

void score(ConfusionCounts& c, bool flagged, Label label) {
  if (label == Label::SmellPresent) ++(flagged ? c.tp : c.fn);
  else ++(flagged ? c.fp : c.tn);
}

}  // namespace

std::variant<ConfusionCounts, UnknownDetector> match_findings(const std::vector<Finding>& findings,
                                                              const std::vector<GroundTruthEntry>& truth) {
  auto split = match_findings_by_framework(findings, truth);
  if (auto* err = std::get_if<UnknownDetector>(&split)) return *err;
  ConfusionCounts total;
  for (const auto& [fw, c] : std::get<std::map<Framework, ConfusionCounts>>(split)) total += c;
  return total;
}

std::variant<std::map<Framework, ConfusionCounts>, UnknownDetector> match_findings_by_framework(
    const std::vector<Finding>& findings, const std::vector<GroundTruthEntry>& truth) {
  const auto flagged = flagged_locations(findings);
  std::map<Framework, ConfusionCounts> out;
  for (const auto& e : truth) {
    const DetectorRule* rule = find_detector(e.detector_id);
    if (rule == nullptr) return UnknownDetector{e.detector_id};
    const bool hit = flagged.count({normalize_file(e.file), e.line, e.detector_id}) > 0;
    score(out[rule->descriptor.framework], hit, e.label);
  }
  return out;
}

std::variant<EvaluationMetrics, EmptyEvaluation> compute_metrics(const ConfusionCounts& c) {
  if (c.total() == 0) return EmptyEvaluation{};
  const auto d = [](std::size_t v) { return static_cast<double>(v); };
  EvaluationMetrics m;
  m.agreement_rate = d(c.tp + c.tn) / d(c.total());
  m.precision = c.tp + c.fp == 0 ? 1.0 : d(c.tp) / d(c.tp + c.fp);
  m.recall = c.tp + c.fn == 0 ? 1.0 : d(c.tp) / d(c.tp + c.fn);
  const double p = m.precision, r = m.recall;
  m.f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  m.f2 = 4 * p + r > 0 ? 5 * p * r / (4 * p + r) : 0.0;
  return m;
}

std::variant<std::vector<GroundTruthEntry>, csv::CsvError> parse_ground_truth(std::string_view text) {
  auto parsed = csv::parse(text);
  if (auto* err = std::get_if<csv::CsvError>(&parsed)) return *err;
  auto& rows = std::get<std::vector<csv::Row>>(parsed);
  if (rows.empty() || rows.front() != csv::Row{"file", "line", "detector_id", "label"})
    return csv::CsvError{1, std::string("expected header '") + kGroundTruthCsvHeader + "'"};

  std::vector<GroundTruthEntry> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t record = i + 1;
    if (row.size() != 4) return csv::CsvError{record, "expected 4 fields"};
    GroundTruthEntry e;
    e.file = row[0];
    const auto [ptr, ec] = std::from_chars(row[1].data(), row[1].data() + row[1].size(), e.line);
    if (ec != std::errc() || ptr != row[1].data() + row[1].size() || e.line < 1)
      return csv::CsvError{record, "invalid line '" + row[1] + "'"};
    e.detector_id = row[2];
    if (row[3] == "present") e.label = Label::SmellPresent;
    else if (row[3] == "absent") e.label = Label::SmellAbsent;
    else return csv::CsvError{record, "label must be present or absent, got '" + row[3] + "'"};
    out.push_back(std::move(e));
  }
  return out;
}

std::string render_ground_truth(const std::vector<GroundTruthEntry>& truth) {
  std::string out = kGroundTruthCsvHeader;
  out += '\n';
  for (const auto& e : truth)
    csv::write_row(out, {e.file, std::to_string(e.line), e.detector_id,
                         e.label == Label::SmellPresent ? "present" : "absent"});
  return out;
}

}  // namespace mlsniff
