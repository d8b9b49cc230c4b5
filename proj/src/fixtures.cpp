#include "mlsniff/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mlsniff/batch.hpp"

namespace mlsniff {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

struct Loaded {
  std::vector<FixtureCase> cases;
  std::vector<GroundTruthEntry> present;
};

std::variant<Loaded, FixtureSuiteError> load(const fs::path& root) {
  Loaded out;
  const fs::path rules = root / "rules";
  if (!fs::is_directory(rules)) return FixtureSuiteError{"fixture directory not found: " + rules.string()};

  for (const auto& rule : registry()) {
    const std::string& id = rule.descriptor.id;
    const fs::path dir = rules / id;
    if (!fs::is_directory(dir)) return FixtureSuiteError{"no fixtures for rule " + id};
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".py") names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    bool pos = false, neg = false;
    for (const auto& name : names) {
      FixtureCase c;
      c.rule_id = id;
      c.file = "rules/" + id + "/" + name;
      if (starts_with(name, "positive")) {
        c.polarity = Polarity::Positive;
        pos = true;
      } else if (starts_with(name, "negative")) {
        c.polarity = Polarity::Negative;
        neg = true;
      } else {
        continue;
      }
      out.cases.push_back(std::move(c));
    }
    if (!pos) return FixtureSuiteError{"rule " + id + " has no positive fixture"};
    if (!neg) return FixtureSuiteError{"rule " + id + " has no negative fixture"};
  }

  const auto text = read_file(root / kExpectationsFile);
  if (!text) return FixtureSuiteError{"missing " + (root / kExpectationsFile).string()};
  auto truth = parse_ground_truth(*text);
  if (auto* err = std::get_if<csv::CsvError>(&truth))
    return FixtureSuiteError{std::string(kExpectationsFile) + ":" + std::to_string(err->line) + ": " + err->message};
  for (auto& e : std::get<std::vector<GroundTruthEntry>>(truth)) {
    if (find_detector(e.detector_id) == nullptr) return FixtureSuiteError{"unknown detector " + e.detector_id};
    if (!fs::is_regular_file(root / e.file)) return FixtureSuiteError{"missing fixture file " + e.file};
    if (e.label == Label::SmellPresent) out.present.push_back(e);
  }

  std::map<std::string, FixtureCase*> by_file;
  for (auto& c : out.cases) by_file[c.file] = &c;
  for (const auto& e : out.present) {
    auto it = by_file.find(e.file);
    if (it != by_file.end()) it->second->expected_findings.emplace_back(e.line, e.detector_id);
  }
  for (auto& c : out.cases) {
    std::sort(c.expected_findings.begin(), c.expected_findings.end());
    if (c.polarity == Polarity::Positive &&
        std::none_of(c.expected_findings.begin(), c.expected_findings.end(),
                     [&](const auto& f) { return f.second == c.rule_id; }))
      return FixtureSuiteError{c.file + " is positive but expects no " + c.rule_id + " finding"};
    if (c.polarity == Polarity::Negative &&
        std::any_of(c.expected_findings.begin(), c.expected_findings.end(),
                    [&](const auto& f) { return f.second == c.rule_id; }))
      return FixtureSuiteError{c.file + " is negative but expects a " + c.rule_id + " finding"};
  }
  return out;
}

}  // namespace

std::variant<std::vector<FixtureCase>, FixtureSuiteError> load_fixture_cases(const fs::path& root) {
  auto loaded = load(root);
  if (auto* err = std::get_if<FixtureSuiteError>(&loaded)) return *err;
  return std::move(std::get<Loaded>(loaded).cases);
}

std::variant<std::vector<GroundTruthEntry>, FixtureSuiteError> fixture_ground_truth(const fs::path& root) {
  auto loaded = load(root);
  if (auto* err = std::get_if<FixtureSuiteError>(&loaded)) return *err;
  const auto& data = std::get<Loaded>(loaded);

  // Every (file, rule) pair under test: each case with its own rule, plus any
  // rule an expectation row names for that file.
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& c : data.cases) pairs.emplace(c.file, c.rule_id);
  for (const auto& e : data.present) pairs.emplace(e.file, e.detector_id);

  std::set<std::tuple<std::string, int, std::string>> present;
  for (const auto& e : data.present) present.emplace(e.file, e.line, e.detector_id);

  std::vector<GroundTruthEntry> truth;
  for (const auto& [file, id] : pairs) {
    const auto text = read_file(root / file);
    if (!text) return FixtureSuiteError{"missing fixture file " + file};
    const auto lines = SourceFile::from_bytes(file, *text).line_count();
    for (int line = 1; line <= static_cast<int>(lines); ++line) {
      const bool smell = present.count({file, line, id}) > 0;
      truth.push_back({file, line, id, smell ? Label::SmellPresent : Label::SmellAbsent});
    }
  }
  const auto present_rows = std::count_if(truth.begin(), truth.end(),
                                          [](const GroundTruthEntry& t) { return t.label == Label::SmellPresent; });
  if (static_cast<std::size_t>(present_rows) != present.size())
    return FixtureSuiteError{"an expectation points past the end of its fixture"};
  return truth;
}

std::variant<ConfusionCounts, FixtureSuiteError> run_fixture_suite(const fs::path& root,
                                                                   const AnalysisConfig& config) {
  auto truth = fixture_ground_truth(root);
  if (auto* err = std::get_if<FixtureSuiteError>(&truth)) return *err;
  auto cases = load_fixture_cases(root);
  if (auto* err = std::get_if<FixtureSuiteError>(&cases)) return *err;

  std::vector<std::string> paths;
  for (const auto& c : std::get<std::vector<FixtureCase>>(cases)) paths.push_back((root / c.file).string());
  const BatchResult batch = analyze_batch(paths, config);
  if (!batch.errors.empty()) return FixtureSuiteError{"cannot read " + batch.errors.front().path};

  std::vector<Finding> findings;
  for (const auto& report : batch.reports) {
    if (report.parse_error) return FixtureSuiteError{report.file + ": " + report.parse_error->message};
    for (Finding f : report.findings) {
      // Report paths back relative to the fixtures root, as in the expectations.
      f.file = fs::path(f.file).lexically_relative(root).generic_string();
      findings.push_back(std::move(f));
    }
  }
  auto counts = match_findings(findings, std::get<std::vector<GroundTruthEntry>>(truth));
  if (auto* err = std::get_if<UnknownDetector>(&counts)) return FixtureSuiteError{"unknown detector " + err->detector_id};
  return std::get<ConfusionCounts>(counts);
}

}  // namespace mlsniff
