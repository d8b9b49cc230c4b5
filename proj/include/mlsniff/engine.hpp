#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlsniff/analysis.hpp"
#include "mlsniff/ast.hpp"

namespace mlsniff {

enum class Framework { GeneralML, Pandas, NumPy, ScikitLearn, TensorFlow, PyTorch, HuggingFace };

inline constexpr std::array<Framework, 7> kAllFrameworks = {
    Framework::GeneralML,  Framework::Pandas,  Framework::NumPy,      Framework::ScikitLearn,
    Framework::TensorFlow, Framework::PyTorch, Framework::HuggingFace};

/// Display name used in reports ("General ML", "Hugging Face", ...).
std::string_view display_name(Framework f);
/// Accepts display names and common spellings (pandas, sklearn, torch, hf, ...).
std::optional<Framework> parse_framework(std::string_view name);
/// Framework owning a detector id, from its two-letter prefix.
std::optional<Framework> framework_of_id(std::string_view detector_id);

struct DetectorDescriptor {
  std::string id;
  std::string name;
  Framework framework;
  std::string description;
  std::string advice;
};

struct Finding {
  std::string detector_id;
  std::string smell_name;
  Framework framework = Framework::GeneralML;
  std::string file;
  Span span;
  std::string message;
  std::string advice;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Orders by (file, line, column, detector_id), then the remaining fields.
bool finding_less(const Finding& a, const Finding& b);

struct AnalysisConfig {
  std::set<Framework> enabled_frameworks{kAllFrameworks.begin(), kAllFrameworks.end()};
  std::set<std::string> enabled_detectors;  // filled with every registry id
  bool auto_framework_detection = true;

  AnalysisConfig();
  /// Throws std::invalid_argument when a detector id is not registered.
  void validate() const;
};

struct FileError {
  std::string path;
  std::string message;
  friend bool operator==(const FileError&, const FileError&) = default;
};

struct FileReport {
  std::string file;
  std::optional<SyntaxError> parse_error;
  std::vector<Finding> findings;
  friend bool operator==(const FileReport&, const FileReport&) = default;
};

/// Input to every detector rule. All three parts come from one file.
struct RuleMatchContext {
  const SyntaxTree& tree;
  const ImportTable& imports;
  const BindingTable& bindings;
};

/// A rule's raw match before it is stamped with descriptor data.
struct RuleHit {
  const Node* node;
  std::string message;
};

using RuleFn = void (*)(const RuleMatchContext&, std::vector<RuleHit>&);

struct DetectorRule {
  DetectorDescriptor descriptor;
  RuleFn run;
};

// Registry -------------------------------------------------------------------

/// Every registered detector, sorted by id. Immutable after first use.
const std::vector<DetectorRule>& registry();
std::vector<DetectorDescriptor> registry_list();
const DetectorRule* find_detector(std::string_view id);

// Framework detection ----------------------------------------------------------

/// Frameworks implied by imports alone; GeneralML joins when any ML framework
/// is present.
std::set<Framework> detect_frameworks(const ImportTable& imports);
/// As above, plus GeneralML whenever the file defines a function or class.
std::set<Framework> detect_frameworks(const SyntaxTree& tree, const ImportTable& imports);

// Detection --------------------------------------------------------------------

/// Runs one detector and returns its findings, sorted and deduplicated.
std::vector<Finding> run_detector(const DetectorRule& rule, const RuleMatchContext& ctx);

/// Rule packs: every registered rule of the given framework(s).
std::vector<Finding> detect_pandas(const RuleMatchContext& ctx);
std::vector<Finding> detect_numpy(const RuleMatchContext& ctx);
std::vector<Finding> detect_pytorch(const RuleMatchContext& ctx);
std::vector<Finding> detect_tensorflow(const RuleMatchContext& ctx);
std::vector<Finding> detect_huggingface(const RuleMatchContext& ctx);
std::vector<Finding> detect_sklearn(const RuleMatchContext& ctx);
std::vector<Finding> detect_general_ml(const RuleMatchContext& ctx);

/// Sorts by (line, column, detector_id) and drops duplicate (id, span) pairs.
void normalize_findings(std::vector<Finding>& findings);

FileReport run_file_analysis(const SourceFile& file, const AnalysisConfig& config);

/// Reads and analyzes one file from disk.
std::variant<FileReport, FileError> analyze_path(const std::string& path, const AnalysisConfig& config);

}  // namespace mlsniff
