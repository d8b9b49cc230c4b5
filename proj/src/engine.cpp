#include "mlsniff/engine.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace mlsniff {

bool finding_less(const Finding& a, const Finding& b) {
  return std::tie(a.file, a.span.line, a.span.column, a.detector_id, a.span.end_line, a.span.end_column, a.message) <
         std::tie(b.file, b.span.line, b.span.column, b.detector_id, b.span.end_line, b.span.end_column, b.message);
}

AnalysisConfig::AnalysisConfig() {
  for (const auto& r : registry()) enabled_detectors.insert(r.descriptor.id);
}

void AnalysisConfig::validate() const {
  for (const auto& id : enabled_detectors)
    if (find_detector(id) == nullptr) throw std::invalid_argument("unknown detector id: " + id);
}

std::set<Framework> detect_frameworks(const ImportTable& imports) {
  std::set<Framework> out;
  for (const std::string& module : imports.modules()) {
    const std::string root = module.substr(0, module.find('.'));
    if (root == "pandas") out.insert(Framework::Pandas);
    else if (root == "numpy") out.insert(Framework::NumPy);
    else if (root == "sklearn") out.insert(Framework::ScikitLearn);
    else if (root == "tensorflow" || root == "keras") out.insert(Framework::TensorFlow);
    else if (root == "torch") out.insert(Framework::PyTorch);
    else if (root == "transformers" || root == "datasets") out.insert(Framework::HuggingFace);
  }
  if (!out.empty()) out.insert(Framework::GeneralML);
  return out;
}

std::set<Framework> detect_frameworks(const SyntaxTree& tree, const ImportTable& imports) {
  std::set<Framework> out = detect_frameworks(imports);
  const bool has_defs = std::any_of(tree.nodes().begin(), tree.nodes().end(), [](const Node* n) {
    return n->kind == NodeKind::FunctionDef || n->kind == NodeKind::ClassDef;
  });
  if (has_defs) out.insert(Framework::GeneralML);
  return out;
}

void normalize_findings(std::vector<Finding>& findings) {
  std::sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.span.line, a.span.column, a.detector_id, a.span.end_line, a.span.end_column, a.message) <
           std::tie(b.span.line, b.span.column, b.detector_id, b.span.end_line, b.span.end_column, b.message);
  });
  auto same = [](const Finding& a, const Finding& b) { return a.detector_id == b.detector_id && a.span == b.span; };
  findings.erase(std::unique(findings.begin(), findings.end(), same), findings.end());
}

std::vector<Finding> run_detector(const DetectorRule& rule, const RuleMatchContext& ctx) {
  std::vector<RuleHit> hits;
  rule.run(ctx, hits);
  std::vector<Finding> out;
  out.reserve(hits.size());
  const auto& d = rule.descriptor;
  for (auto& h : hits)
    out.push_back({d.id, d.name, d.framework, ctx.tree.source().path(), h.node->span, std::move(h.message), d.advice});
  normalize_findings(out);
  return out;
}

namespace {

std::vector<Finding> run_pack(const RuleMatchContext& ctx, Framework f) {
  std::vector<Finding> out;
  for (const auto& rule : registry()) {
    if (rule.descriptor.framework != f) continue;
    auto found = run_detector(rule, ctx);
    out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }
  normalize_findings(out);
  return out;
}

}  // namespace

std::vector<Finding> detect_pandas(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::Pandas); }
std::vector<Finding> detect_numpy(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::NumPy); }
std::vector<Finding> detect_pytorch(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::PyTorch); }
std::vector<Finding> detect_tensorflow(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::TensorFlow); }
std::vector<Finding> detect_huggingface(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::HuggingFace); }
std::vector<Finding> detect_sklearn(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::ScikitLearn); }
std::vector<Finding> detect_general_ml(const RuleMatchContext& ctx) { return run_pack(ctx, Framework::GeneralML); }

FileReport run_file_analysis(const SourceFile& file, const AnalysisConfig& config) {
  FileReport report;
  report.file = file.path();
  ParseResult parsed = parse_source(file);
  if (auto* err = std::get_if<SyntaxError>(&parsed)) {
    report.parse_error = std::move(*err);
    return report;
  }
  const SyntaxTree& tree = std::get<SyntaxTree>(parsed);
  const ImportTable imports = collect_imports(tree);
  const BindingTable bindings = infer_value_kinds(tree, imports);
  const RuleMatchContext ctx{tree, imports, bindings};

  std::set<Framework> active;
  if (config.auto_framework_detection) {
    for (Framework f : detect_frameworks(tree, imports))
      if (config.enabled_frameworks.count(f)) active.insert(f);
  } else {
    active = config.enabled_frameworks;
  }

  for (const auto& rule : registry()) {
    if (!active.count(rule.descriptor.framework) || !config.enabled_detectors.count(rule.descriptor.id)) continue;
    auto found = run_detector(rule, ctx);
    report.findings.insert(report.findings.end(), std::make_move_iterator(found.begin()),
                           std::make_move_iterator(found.end()));
  }
  normalize_findings(report.findings);
  return report;
}

std::variant<FileReport, FileError> analyze_path(const std::string& path, const AnalysisConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return FileError{path, "cannot open file"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return FileError{path, "read failed"};
  return run_file_analysis(SourceFile::from_bytes(path, buffer.str()), config);
}

}  // namespace mlsniff
