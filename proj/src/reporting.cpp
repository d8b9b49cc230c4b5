#include "mlsniff/reporting.hpp"

#include <algorithm>
#include <charconv>

namespace mlsniff {

std::size_t BatchReport::finding_count() const {
  std::size_t n = 0;
  for (const auto& r : file_reports) n += r.findings.size();
  return n;
}

std::vector<SmellCount> rank_smells(const std::vector<FileReport>& file_reports) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : file_reports)
    for (const auto& f : r.findings) ++counts[f.smell_name];
  std::vector<SmellCount> out;
  out.reserve(counts.size());
  for (auto& [name, n] : counts) out.push_back({name, n});
  std::stable_sort(out.begin(), out.end(), [](const SmellCount& a, const SmellCount& b) { return a.count > b.count; });
  return out;
}

BatchReport aggregate(std::vector<FileReport> file_reports) {
  BatchReport out;
  std::stable_sort(file_reports.begin(), file_reports.end(),
                   [](const FileReport& a, const FileReport& b) { return a.file < b.file; });
  for (auto& r : file_reports) {
    std::sort(r.findings.begin(), r.findings.end(), finding_less);
    for (const auto& f : r.findings) ++out.totals[f.framework];
  }
  out.top_smells = rank_smells(file_reports);
  if (out.top_smells.size() > kTopSmells) out.top_smells.resize(kTopSmells);
  out.file_reports = std::move(file_reports);
  return out;
}

std::string render_text(const BatchReport& batch) {
  std::string out;
  std::size_t parse_errors = 0;
  for (const auto& r : batch.file_reports) {
    out += "== " + r.file + " ==\n";
    if (r.parse_error) {
      ++parse_errors;
      out += r.file + ":" + std::to_string(r.parse_error->line) + ":" + std::to_string(r.parse_error->column) +
             " parse error: " + r.parse_error->message + "\n";
    }
    for (const auto& f : r.findings) {
      out += f.file + ":" + std::to_string(f.span.line) + ":" + std::to_string(f.span.column) + " [" + f.detector_id +
             "] " + f.smell_name + ": " + f.message + " | advice: " + f.advice + "\n";
    }
    out += "\n";
  }

  const std::size_t files = batch.file_reports.size();
  out += "Summary: " + std::to_string(batch.finding_count()) + " findings in " + std::to_string(files) +
         (files == 1 ? " file" : " files");
  if (parse_errors) out += " (" + std::to_string(parse_errors) + " with parse errors)";
  out += "\n";
  out += "Findings by framework:\n";
  for (Framework fw : kAllFrameworks) {
    auto it = batch.totals.find(fw);
    if (it != batch.totals.end() && it->second > 0)
      out += "  " + std::string(display_name(fw)) + ": " + std::to_string(it->second) + "\n";
  }
  out += "Top smells:\n";
  for (std::size_t i = 0; i < batch.top_smells.size(); ++i)
    out += "  " + std::to_string(i + 1) + ". " + batch.top_smells[i].name + ": " +
           std::to_string(batch.top_smells[i].count) + "\n";
  return out;
}

std::string render_csv(const BatchReport& batch) {
  std::vector<const Finding*> rows;
  for (const auto& r : batch.file_reports)
    for (const auto& f : r.findings) rows.push_back(&f);
  std::sort(rows.begin(), rows.end(), [](const Finding* a, const Finding* b) { return finding_less(*a, *b); });

  std::string out = kFindingsCsvHeader;
  out += '\n';
  for (const Finding* f : rows) {
    csv::write_row(out, {f->file, std::to_string(f->span.line), std::to_string(f->span.column),
                         std::string(display_name(f->framework)), f->detector_id, f->smell_name, f->message,
                         f->advice});
  }
  return out;
}

namespace {

bool parse_int(const std::string& s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::variant<std::vector<Finding>, csv::CsvError> parse_findings_csv(std::string_view text) {
  auto parsed = csv::parse(text);
  if (auto* err = std::get_if<csv::CsvError>(&parsed)) return *err;
  auto& rows = std::get<std::vector<csv::Row>>(parsed);
  if (rows.empty()) return csv::CsvError{1, "missing header"};
  std::string header;
  csv::write_row(header, rows.front());
  if (header != std::string(kFindingsCsvHeader) + "\n") return csv::CsvError{1, "unexpected header"};

  std::vector<Finding> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t record = i + 1;
    if (row.size() != 8) return csv::CsvError{record, "expected 8 fields"};
    Finding f;
    f.file = row[0];
    int line = 0, column = 0;
    if (!parse_int(row[1], line) || !parse_int(row[2], column) || line < 1 || column < 0)
      return csv::CsvError{record, "invalid line or column"};
    f.span = {line, column, line, column};
    const auto fw = parse_framework(row[3]);
    if (!fw) return csv::CsvError{record, "unknown framework '" + row[3] + "'"};
    f.framework = *fw;
    f.detector_id = row[4];
    f.smell_name = row[5];
    f.message = row[6];
    f.advice = row[7];
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace mlsniff
