#include "mlsniff/corpus.hpp"

#include <algorithm>

namespace mlsniff {

namespace fs = std::filesystem;

CorpusReport analyze_corpus(const fs::path& root, const AnalysisConfig& config) {
  CorpusReport out;
  std::vector<std::string> projects;
  std::error_code ec;
  for (fs::directory_iterator it(root, ec), end; !ec && it != end; it.increment(ec)) {
    const auto st = it->symlink_status(ec);
    if (!ec && fs::is_directory(st)) projects.push_back(it->path().filename().string());
  }
  std::sort(projects.begin(), projects.end());

  std::vector<FileReport> all;
  for (const auto& name : projects) {
    const auto files = collect_python_files({(root / name).string()});
    BatchResult batch = analyze_batch(files.files, config);

    ProjectSummary summary;
    summary.project = name;
    summary.files = batch.reports.size();
    for (Framework fw : kAllFrameworks) summary.totals[fw] = 0;
    for (const auto& r : batch.reports)
      for (const auto& f : r.findings) ++summary.totals[f.framework];
    out.projects.push_back(std::move(summary));

    std::move(batch.reports.begin(), batch.reports.end(), std::back_inserter(all));
    std::move(batch.errors.begin(), batch.errors.end(), std::back_inserter(out.errors));
  }
  out.merged = aggregate(std::move(all));
  return out;
}

std::vector<std::pair<Framework, std::size_t>> framework_distribution(const CorpusReport& report) {
  std::vector<std::pair<Framework, std::size_t>> rows;
  for (Framework fw : kAllFrameworks) {
    auto it = report.merged.totals.find(fw);
    rows.emplace_back(fw, it == report.merged.totals.end() ? 0 : it->second);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return display_name(a.first) < display_name(b.first);
  });
  return rows;
}

std::string render_corpus_csv(const CorpusReport& report) {
  std::string out = kCorpusCsvHeader;
  out += '\n';
  for (const auto& p : report.projects)
    for (Framework fw : kAllFrameworks)
      csv::write_row(out, {"project_framework", p.project, std::string(display_name(fw)),
                           std::to_string(p.totals.at(fw))});
  for (const auto& [fw, n] : framework_distribution(report))
    csv::write_row(out, {"framework_distribution", "", std::string(display_name(fw)), std::to_string(n)});
  for (const auto& s : report.merged.top_smells)
    csv::write_row(out, {"top_smells", "", s.name, std::to_string(s.count)});
  return out;
}

}  // namespace mlsniff
