#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mlsniff/ast.hpp"
#include "mlsniff/engine.hpp"

namespace mlsniff::testing {

inline SyntaxTree parse_ok(const std::string& text, const std::string& path = "t.py") {
  ParseResult r = parse_source(SourceFile(path, text));
  if (auto* e = std::get_if<SyntaxError>(&r))
    throw std::runtime_error("unexpected syntax error " + std::to_string(e->line) + ":" + e->message);
  return std::move(std::get<SyntaxTree>(r));
}

inline std::vector<Finding> analyze_text(const std::string& text, const AnalysisConfig& config = {}) {
  return run_file_analysis(SourceFile("t.py", text), config).findings;
}

/// (line, detector_id) of every finding for `id` (or all when id is empty).
inline std::vector<std::pair<int, std::string>> hits(const std::string& text, const std::string& id = "") {
  std::vector<std::pair<int, std::string>> out;
  for (const auto& f : analyze_text(text))
    if (id.empty() || f.detector_id == id) out.emplace_back(f.span.line, f.detector_id);
  return out;
}

inline std::size_t count(const std::string& text, const std::string& id) { return hits(text, id).size(); }

}  // namespace mlsniff::testing
