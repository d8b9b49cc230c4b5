// Acceptance checks, one PASS/FAIL line per criterion. Criteria that exercise
// the command line run the real mlsniff binary.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../common/chain_oracle.hpp"
#include "mlsniff/batch.hpp"
#include "mlsniff/csv.hpp"
#include "mlsniff/engine.hpp"
#include "mlsniff/evaluation.hpp"
#include "mlsniff/fixtures.hpp"
#include "mlsniff/reporting.hpp"

namespace fs = std::filesystem;
using namespace mlsniff;

namespace {

const fs::path kFixtures = MLSNIFF_FIXTURES_DIR;
const std::string kCli = MLSNIFF_CLI_PATH;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

struct Proc {
  int code = -1;
  std::string out, err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Scratch {
 public:
  Scratch() {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("mlsniff-acceptance-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
};

Proc run(const std::vector<std::string>& args, const Scratch& scratch) {
  const fs::path out = scratch.path() / "stdout.txt", err = scratch.path() / "stderr.txt";
  std::string cmd = quote(kCli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  Proc p;
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  p.out = slurp(out);
  p.err = slurp(err);
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// 1 ---------------------------------------------------------------------------
Outcome detector_correctness() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  auto r = run_fixture_suite(kFixtures);
  const double secs = seconds_since(t0);
  if (auto* e = std::get_if<FixtureSuiteError>(&r)) {
    o.fail(e->message);
    return o;
  }
  const auto c = std::get<ConfusionCounts>(r);
  const auto m = std::get<EvaluationMetrics>(compute_metrics(c));
  o.note("tp=" + std::to_string(c.tp) + " fp=" + std::to_string(c.fp) + " fn=" + std::to_string(c.fn) +
         " tn=" + std::to_string(c.tn) + " precision=" + fmt(m.precision) + " recall=" + fmt(m.recall) + " in " +
         fmt(secs, 2) + " s");
  if (c.fp != 0 || c.fn != 0 || m.precision != 1.0 || m.recall != 1.0) o.fail("suite not clean");
  if (secs >= 5.0) o.fail("slower than 5 s");
  return o;
}

// 2 ---------------------------------------------------------------------------
// Published evaluation figures: annotated count and
// agreement (%), recall, F1 and F2 per row.
struct PublishedRow {
  const char* scope;
  int count;
  double agreement, recall, f1, f2;
};
constexpr PublishedRow kOverall{"overall", 72, 87.50, 0.875, 0.933, 0.897};
constexpr PublishedRow kFrameworkRows[] = {
    {"General ML", 24, 87.50, 0.875, 0.933, 0.897}, {"NumPy", 8, 75.00, 0.750, 0.857, 0.789},
    {"Pandas", 20, 90.00, 0.900, 0.947, 0.918},     {"PyTorch", 9, 77.78, 0.778, 0.875, 0.814},
    {"Hugging Face", 11, 100.00, 1.000, 1.000, 1.000}};

bool check_row(Outcome& o, const std::string& label, const ConfusionCounts& c, const PublishedRow& row, double tol) {
  const auto m = std::get<EvaluationMetrics>(compute_metrics(c));
  bool ok = true;
  auto cmp = [&](const char* what, double got, double want) {
    if (std::fabs(got - want) > tol) {
      o.fail(label + " " + what + " " + fmt(got) + " != " + fmt(want, 3));
      ok = false;
    }
  };
  cmp("agreement", m.agreement_rate, row.agreement / 100.0);
  cmp("recall", m.recall, row.recall);
  cmp("f1", m.f1, row.f1);
  cmp("f2", m.f2, row.f2);
  return ok;
}

Outcome published_metrics() {
  Outcome o;
  // Overall: 63 of 72 annotated smells found, nothing flagged wrongly.
  check_row(o, "overall", {63, 0, 9, 0}, kOverall, 0.0005);
  const auto exact = std::get<EvaluationMetrics>(compute_metrics({63, 0, 9, 0}));
  if (fmt(exact.agreement_rate) != "0.8750" || fmt(exact.recall) != "0.8750" || fmt(exact.f1) != "0.9333" ||
      fmt(exact.f2) != "0.8974")
    o.fail("overall 4-decimal values differ");

  // Per framework: tp implied by count x recall; fp = tn = 0.
  std::size_t tp_sum = 0, fn_sum = 0;
  for (const auto& row : kFrameworkRows) {
    const auto tp = static_cast<std::size_t>(std::lround(row.count * row.recall));
    const auto fn = static_cast<std::size_t>(row.count) - tp;
    tp_sum += tp;
    fn_sum += fn;
    check_row(o, row.scope, {tp, 0, fn, 0}, row, 0.001);
  }
  if (tp_sum != 63 || fn_sum != 9) o.fail("framework rows do not sum to 63/9");
  // The smaller counts quoted for the same rows, and scale invariance.
  check_row(o, "Pandas 9/1", {9, 0, 1, 0}, kFrameworkRows[2], 0.001);
  check_row(o, "NumPy 3/1", {3, 0, 1, 0}, kFrameworkRows[1], 0.001);
  check_row(o, "NumPy 6/2", {6, 0, 2, 0}, kFrameworkRows[1], 0.001);
  check_row(o, "PyTorch 7/2", {7, 0, 2, 0}, kFrameworkRows[3], 0.001);
  if (o.ok) o.note("overall 0.8750/0.8750/0.9333/0.8974 and 5 framework rows within tolerance");
  return o;
}

// 3 ---------------------------------------------------------------------------
Outcome chain_oracle() {
  Outcome o;
  std::size_t total = 0;
  for (unsigned seed : {7u, 8u, 9u}) {
    const auto g = oracle::generate_chain_file(seed, 200);
    const SourceFile file("generated.py", g.text);
    if (file.line_count() != 200) o.fail("generator produced " + std::to_string(file.line_count()) + " lines");
    auto parsed = parse_source(file);
    if (!std::holds_alternative<SyntaxTree>(parsed)) {
      o.fail("generated file does not parse");
      return o;
    }
    const auto reference = oracle::reference_chain_spans(std::get<SyntaxTree>(parsed));
    std::set<oracle::SpanKey> detector;
    for (const auto& f : run_file_analysis(file, {}).findings)
      if (f.detector_id == "PD01") detector.insert(oracle::key(f.span));
    if (detector != reference) o.fail("seed " + std::to_string(seed) + ": detector and reference differ");
    if (reference != g.nested) o.fail("seed " + std::to_string(seed) + ": reference misses generated sites");
    total += detector.size();
  }
  // Without a pandas import both sides are empty.
  const auto plain = oracle::generate_chain_file(10, 200, false);
  const SourceFile pf("plain.py", plain.text);
  const auto pt = parse_source(pf);
  std::size_t pd01 = 0;
  for (const auto& f : run_file_analysis(pf, {}).findings) pd01 += f.detector_id == "PD01";
  if (pd01 != 0 || !oracle::reference_chain_spans(std::get<SyntaxTree>(pt)).empty())
    o.fail("findings in a file without pandas");
  if (o.ok) o.note(std::to_string(total) + " chain sites over 3 generated 200-line files, exact set equality");
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome determinism(const Scratch& scratch) {
  Outcome o;
  const std::string dir = (kFixtures / "rules").string();
  const auto a = run({"analyze", "--format", "csv", dir}, scratch);
  const auto b = run({"analyze", "--format", "csv", dir}, scratch);
  auto files = collect_python_files({dir}).files;
  std::mt19937 rng(2024);
  std::shuffle(files.begin(), files.end(), rng);
  std::vector<std::string> args{"analyze", "--format", "csv"};
  args.insert(args.end(), files.begin(), files.end());
  const auto c = run(args, scratch);
  std::reverse(args.begin() + 3, args.end());
  const auto d = run(args, scratch);
  if (a.code != 0 || b.code != 0 || c.code != 0 || d.code != 0) o.fail("non-zero exit");
  if (a.out != b.out) o.fail("repeated runs differ");
  if (a.out != c.out || a.out != d.out) o.fail("shuffled path order changes output");
  const auto rows = std::count(a.out.begin(), a.out.end(), '\n');
  if (rows < 2) o.fail("no findings");
  if (o.ok) o.note(std::to_string(files.size()) + " files, " + std::to_string(a.out.size()) + " bytes identical x4");
  return o;
}

// 5 ---------------------------------------------------------------------------
Outcome csv_round_trip() {
  Outcome o;
  const auto files = collect_python_files({(kFixtures / "rules").string()}).files;
  const auto batch = aggregate(analyze_batch(files, {}).reports);
  const auto text = render_csv(batch);
  auto parsed = parse_findings_csv(text);
  if (auto* e = std::get_if<csv::CsvError>(&parsed)) {
    o.fail("parse error at record " + std::to_string(e->line) + ": " + e->message);
    return o;
  }
  using Key = std::tuple<std::string, int, int, Framework, std::string, std::string, std::string, std::string>;
  auto key = [](const Finding& f) {
    return Key{f.file, f.span.line, f.span.column, f.framework, f.detector_id, f.smell_name, f.message, f.advice};
  };
  std::multiset<Key> want, got;
  for (const auto& r : batch.file_reports)
    for (const auto& f : r.findings) want.insert(key(f));
  for (const auto& f : std::get<std::vector<Finding>>(parsed)) got.insert(key(f));
  if (want.size() < 20) o.fail("batch has only " + std::to_string(want.size()) + " findings");
  if (got != want) o.fail("multisets differ");
  if (o.ok) o.note(std::to_string(want.size()) + " findings reconstructed");
  return o;
}

// 6 ---------------------------------------------------------------------------
Outcome corpus_schema(const Scratch& scratch) {
  Outcome o;
  const auto p = run({"corpus", (kFixtures / "mini_corpus").string()}, scratch);
  if (p.code != 0) o.fail("exit " + std::to_string(p.code));
  auto parsed = csv::parse(p.out);
  if (!std::holds_alternative<std::vector<csv::Row>>(parsed)) {
    o.fail("output is not CSV");
    return o;
  }
  const auto& rows = std::get<std::vector<csv::Row>>(parsed);
  if (rows.empty() || rows[0] != csv::Row{"table", "project", "key", "count"}) o.fail("bad header");

  std::vector<std::pair<std::string, std::string>> distribution, top;
  std::map<std::pair<std::string, std::string>, std::string> per_project;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) {
      o.fail("row " + std::to_string(i) + " has " + std::to_string(r.size()) + " fields");
      continue;
    }
    if (r[0] == "framework_distribution") distribution.emplace_back(r[2], r[3]);
    else if (r[0] == "top_smells") top.emplace_back(r[2], r[3]);
    else if (r[0] == "project_framework") per_project[{r[1], r[2]}] = r[3];
    else o.fail("unknown table " + r[0]);
  }

  // Hand count, fixtures/mini_corpus/NOTES.txt.
  const std::vector<std::pair<std::string, std::string>> want_distribution{
      {"General ML", "3"}, {"PyTorch", "3"},      {"NumPy", "2"},       {"Pandas", "2"},
      {"TensorFlow", "2"}, {"Hugging Face", "1"}, {"Scikit-learn", "1"}};
  const std::vector<std::pair<std::string, std::string>> want_top{
      {"Magic Number Checker", "2"},
      {"Missing Axis Specification", "2"},
      {"Randomness Control Checker", "2"},
      {"Chain Indexing", "1"},
      {"Datatype Checker", "1"},
      {"Default Hyperparameter Checker", "1"},
      {"Deterministic Algorithm Usage Checker", "1"},
      {"Logging Checker", "1"},
      {"Missing Forward Docstring", "1"},
      {"Model Evaluation Checker", "1"}};
  const std::map<std::pair<std::string, std::string>, std::string> want_nonzero{
      {{"alpha", "Pandas"}, "2"},     {{"alpha", "NumPy"}, "2"},      {{"beta", "PyTorch"}, "3"},
      {{"beta", "General ML"}, "1"},  {{"gamma", "General ML"}, "2"}, {{"gamma", "TensorFlow"}, "2"},
      {{"gamma", "Scikit-learn"}, "1"}, {{"gamma", "Hugging Face"}, "1"}};

  if (distribution != want_distribution) o.fail("framework distribution differs from hand count");
  if (top != want_top) o.fail("top-10 differs from hand count");
  if (per_project.size() != 21) o.fail("expected 3 projects x 7 frameworks");
  for (const auto& [k, v] : per_project) {
    auto it = want_nonzero.find(k);
    if (v != (it == want_nonzero.end() ? "0" : it->second)) o.fail(k.first + "/" + k.second + " = " + v);
  }
  if (o.ok) o.note("7 framework rows, 10 top smells, 21 project rows match the hand count");
  return o;
}

// 7 ---------------------------------------------------------------------------
Outcome registry_completeness(const Scratch& scratch) {
  Outcome o;
  const auto p = run({"list-detectors"}, scratch);
  auto rows = std::get<std::vector<csv::Row>>(csv::parse(p.out));
  if (p.code != 0 || rows.empty() || rows[0] != csv::Row{"id", "name", "framework", "description"}) {
    o.fail("bad list-detectors output");
    return o;
  }
  std::map<std::string, int> per;
  std::set<std::string> ids;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    ids.insert(r[0]);
    ++per[r[2]];
    if (r[3].rfind(r[1] + ":", 0) != 0) o.fail(r[0] + " description does not name its smell");
  }
  if (rows.size() - 1 != 34 || ids.size() != 34) o.fail(std::to_string(rows.size() - 1) + " descriptors");
  const std::map<std::string, int> want{{"Pandas", 4},      {"NumPy", 4},        {"PyTorch", 5},   {"TensorFlow", 4},
                                        {"Hugging Face", 7}, {"Scikit-learn", 6}, {"General ML", 4}};
  if (per != want) o.fail("per-framework counts differ");
  // Smell names as published.
  for (const auto& [id, name] : std::vector<std::pair<std::string, std::string>>{
           {"PD01", "Chain Indexing"},
           {"PD02", "Column Selection Checker"},
           {"NP01", "Array Creation Efficiency"},
           {"NP02", "Missing Axis Specification"},
           {"PT01", "Deterministic Algorithm Usage Checker"},
           {"TF01", "Memory Release Checker"},
           {"HF01", "Model Versioning Not Specified"}}) {
    bool found = false;
    for (const auto& r : rows) found |= r[0] == id && r[1] == name;
    if (!found) o.fail(id + " is not named '" + name + "'");
  }
  if (o.ok) o.note("34 descriptors: PD 4, NP 4, PT 5, TF 4, HF 7, SK 6, ML 4");
  return o;
}

// 8 ---------------------------------------------------------------------------
Outcome robustness(const Scratch& scratch) {
  Outcome o;
  const fs::path dir = scratch.path() / "robust";
  fs::create_directories(dir);
  std::ofstream(dir / "broken.py") << "def f(:\n    return\n";
  fs::copy_file(kFixtures / "rules" / "PD01" / "positive.py", dir / "chain.py");
  const auto p = run({"analyze", dir.string()}, scratch);
  if (p.code != 0) o.fail("exit " + std::to_string(p.code));
  if (p.err.find("broken.py:1:") == std::string::npos || p.err.find("syntax error") == std::string::npos)
    o.fail("parse error not on stderr");
  if (p.out.find("chain.py:4:8 [PD01]") == std::string::npos) o.fail("PD01 finding missing");
  if (o.ok) o.note("exit 0, parse error on stderr, PD01 reported");
  return o;
}

// 9 ---------------------------------------------------------------------------
Outcome throughput(const Scratch& scratch) {
  Outcome o;
  const fs::path dir = scratch.path() / "synthetic";
  fs::create_directories(dir);
  std::vector<std::string> sources;
  for (const auto& f : collect_python_files({(kFixtures / "rules").string()}).files) sources.push_back(slurp(f));
  std::size_t lines = 0;
  int index = 0;
  while (lines < 5000) {
    std::string text;
    // ~100-line files assembled from fixture snippets and generated chains.
    while (std::count(text.begin(), text.end(), '\n') < 100) text += sources[index++ % sources.size()] + "\n";
    text += oracle::generate_chain_file(static_cast<unsigned>(index), 30).text;
    lines += static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    std::ofstream(dir / ("file_" + std::to_string(index) + ".py")) << text;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = run({"analyze", "--format", "csv", dir.string()}, scratch);
  const double secs = seconds_since(t0);
  if (p.code != 0) o.fail("exit " + std::to_string(p.code));
  if (!p.err.empty()) o.fail("stderr: " + p.err.substr(0, 200));
  const auto findings = std::count(p.out.begin(), p.out.end(), '\n') - 1;
  o.note(std::to_string(lines) + " lines, " + std::to_string(findings) + " findings in " + fmt(secs, 2) + " s");
  if (secs >= 10.0) o.fail("slower than 10 s");
  return o;
}

}  // namespace

int main() {
  Scratch scratch;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"detector correctness on fixtures", detector_correctness},
      {"published metric reproduction", published_metrics},
      {"chain-indexing oracle equivalence", chain_oracle},
      {"determinism", [&] { return determinism(scratch); }},
      {"CSV round-trip", csv_round_trip},
      {"corpus-schema reproduction", [&] { return corpus_schema(scratch); }},
      {"registry completeness", [&] { return registry_completeness(scratch); }},
      {"robustness", [&] { return robustness(scratch); }},
      {"throughput sanity", [&] { return throughput(scratch); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << "\n";
  }
  std::cout << (failures ? "FAILED " + std::to_string(failures) + " of 9" : std::string("ALL 9 PASSED")) << "\n";
  return failures ? 1 : 0;
}
