#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mlsniff/engine.hpp"
#include "mlsniff/evaluation.hpp"

namespace mlsniff {

enum class Polarity { Positive, Negative };

struct FixtureCase {
  std::string rule_id;
  Polarity polarity = Polarity::Positive;
  std::string file;  // relative to the fixtures root, '/' separated
  std::vector<std::pair<int, std::string>> expected_findings;  // (line, detector_id)
};

struct FixtureSuiteError {
  std::string message;
};

inline constexpr const char* kExpectationsFile = "rules/expectations.csv";

/// Reads rules/<ID>/{positive,negative}*.py and rules/expectations.csv under
/// `root`. Fails when a registered rule lacks a positive or negative case or
/// the expectations name a file that does not exist.
std::variant<std::vector<FixtureCase>, FixtureSuiteError> load_fixture_cases(const std::filesystem::path& root);

/// Ground truth for the suite: the expectations' present rows plus an absent
/// entry for every other line of each (file, rule) pair the suite covers.
std::variant<std::vector<GroundTruthEntry>, FixtureSuiteError> fixture_ground_truth(
    const std::filesystem::path& root);

std::variant<ConfusionCounts, FixtureSuiteError> run_fixture_suite(const std::filesystem::path& root,
                                                                   const AnalysisConfig& config = {});

}  // namespace mlsniff
