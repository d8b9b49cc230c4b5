#include "mlsniff/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mlsniff/batch.hpp"
#include "mlsniff/corpus.hpp"
#include "mlsniff/evaluation.hpp"
#include "mlsniff/reporting.hpp"

namespace mlsniff {

namespace {

struct Options {
  std::vector<std::string> paths;
  std::vector<std::string> frameworks;
  std::string format = "txt";
  std::string output;
  bool fail_on_findings = false;
  std::string corpus_dir;
  std::string findings_csv;
  std::string truth_csv;
};

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

// Writes to `output` when set, else to `out`.
bool emit(const std::string& text, const std::string& output, std::ostream& out, std::ostream& err) {
  if (output.empty()) {
    out << text;
    out.flush();
    return true;
  }
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  if (file) file << text;
  if (!file) {
    err << "error: cannot write " << output << "\n";
    return false;
  }
  return true;
}

void report_problems(const BatchResult& batch, std::ostream& err) {
  for (const auto& r : batch.reports)
    if (r.parse_error)
      err << r.parse_error->path << ":" << r.parse_error->line << ":" << r.parse_error->column
          << ": syntax error: " << r.parse_error->message << "\n";
  for (const auto& e : batch.errors) err << "warning: skipping " << e.path << ": " << e.message << "\n";
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  AnalysisConfig config;
  if (!o.frameworks.empty()) {
    config.enabled_frameworks.clear();
    for (const auto& name : o.frameworks) {
      const auto fw = parse_framework(name);
      if (!fw) {
        err << "error: unknown framework '" << name << "'\n";
        return kExitUsage;
      }
      config.enabled_frameworks.insert(*fw);
    }
  }

  const PathCollection files = collect_python_files(o.paths);
  for (const auto& m : files.missing) err << "error: no such file or directory: " << m << "\n";
  if (!files.missing.empty()) return kExitUsage;
  for (const auto& s : files.skipped) err << "warning: skipping " << s << "\n";

  const BatchResult batch = analyze_batch(files.files, config);
  report_problems(batch, err);
  const BatchReport report = aggregate(batch.reports);
  const std::string text = o.format == "csv" ? render_csv(report) : render_text(report);
  if (!emit(text, o.output, out, err)) return kExitUsage;
  return o.fail_on_findings && report.finding_count() > 0 ? kExitFindings : kExitOk;
}

int cmd_corpus(const Options& o, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!std::filesystem::is_directory(o.corpus_dir, ec)) {
    err << "error: not a directory: " << o.corpus_dir << "\n";
    return kExitUsage;
  }
  const CorpusReport report = analyze_corpus(o.corpus_dir, AnalysisConfig{});
  report_problems(BatchResult{report.merged.file_reports, report.errors}, err);
  return emit(render_corpus_csv(report), o.output, out, err) ? kExitOk : kExitUsage;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto findings_text = slurp(o.findings_csv);
  const auto truth_text = slurp(o.truth_csv);
  if (!findings_text || !truth_text) {
    err << "error: cannot read " << (findings_text ? o.truth_csv : o.findings_csv) << "\n";
    return kExitUsage;
  }
  auto findings = parse_findings_csv(*findings_text);
  if (auto* e = std::get_if<csv::CsvError>(&findings)) {
    err << o.findings_csv << ":" << e->line << ": " << e->message << "\n";
    return kExitUsage;
  }
  auto truth = parse_ground_truth(*truth_text);
  if (auto* e = std::get_if<csv::CsvError>(&truth)) {
    err << o.truth_csv << ":" << e->line << ": " << e->message << "\n";
    return kExitUsage;
  }
  const auto& entries = std::get<std::vector<GroundTruthEntry>>(truth);
  auto split = match_findings_by_framework(std::get<std::vector<Finding>>(findings), entries);
  if (auto* e = std::get_if<UnknownDetector>(&split)) {
    err << "error: unknown detector '" << e->detector_id << "' in " << o.truth_csv << "\n";
    return kExitUsage;
  }
  const auto& per_framework = std::get<std::map<Framework, ConfusionCounts>>(split);

  ConfusionCounts overall;
  for (const auto& [fw, c] : per_framework) overall += c;
  if (overall.total() == 0) {
    err << "error: ground truth has no entries\n";
    return kExitUsage;
  }

  std::string text = "scope,entries,tp,fp,fn,tn,agreement_rate,recall,precision,f1,f2\n";
  auto row = [&](std::string scope, const ConfusionCounts& c) {
    const auto m = std::get<EvaluationMetrics>(compute_metrics(c));
    csv::write_row(text, {std::move(scope), std::to_string(c.total()), std::to_string(c.tp), std::to_string(c.fp),
                          std::to_string(c.fn), std::to_string(c.tn), fixed4(m.agreement_rate), fixed4(m.recall),
                          fixed4(m.precision), fixed4(m.f1), fixed4(m.f2)});
  };
  row("overall", overall);
  for (Framework fw : kAllFrameworks) {
    auto it = per_framework.find(fw);
    if (it != per_framework.end() && it->second.total() > 0) row(std::string(display_name(fw)), it->second);
  }
  return emit(text, "", out, err) ? kExitOk : kExitUsage;
}

int cmd_list_detectors(std::ostream& out) {
  std::string text = "id,name,framework,description\n";
  for (const auto& d : registry_list())
    csv::write_row(text, {d.id, d.name, std::string(display_name(d.framework)), d.description});
  out << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static analyzer for ML code smells in Python sources", "mlsniff"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Analyze .py files and directories");
  analyze->add_option("paths", o.paths, "Files or directories")->required();
  analyze->add_option("--framework", o.frameworks, "Restrict to a framework (repeatable)")->allow_extra_args(false);
  analyze->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"txt", "csv"}));
  analyze->add_option("--output", o.output, "Write the report to a file");
  analyze->add_flag("--fail-on-findings", o.fail_on_findings, "Exit 1 when anything is found");

  auto* corpus = app.add_subcommand("corpus", "Per-project and merged prevalence tables as CSV");
  corpus->add_option("dir", o.corpus_dir, "Directory whose subdirectories are projects")->required();
  corpus->add_option("--output", o.output, "Write the CSV to a file");

  auto* evaluate = app.add_subcommand("evaluate", "Score a findings CSV against a ground-truth CSV");
  evaluate->add_option("findings", o.findings_csv, "Findings CSV from analyze --format csv")->required();
  evaluate->add_option("truth", o.truth_csv, "Ground truth CSV (file,line,detector_id,label)")->required();

  auto* list = app.add_subcommand("list-detectors", "Print the detector registry as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  if (analyze->parsed()) return cmd_analyze(o, out, err);
  if (corpus->parsed()) return cmd_corpus(o, out, err);
  if (evaluate->parsed()) return cmd_evaluate(o, out, err);
  if (list->parsed()) return cmd_list_detectors(out);
  return kExitUsage;
}

}  // namespace mlsniff
