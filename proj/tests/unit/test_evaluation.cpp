#include <gtest/gtest.h>

#include <random>

#include "mlsniff/evaluation.hpp"

using namespace mlsniff;

namespace {

Finding at(std::string file, int line, std::string id) {
  Finding f;
  f.file = std::move(file);
  f.span = Span(line, 0, line, 1);
  f.detector_id = std::move(id);
  return f;
}

EvaluationMetrics metrics(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  return std::get<EvaluationMetrics>(compute_metrics({tp, fp, fn, tn}));
}

// Independent formulas, written out longhand.
double f_beta(double p, double r, double beta) {
  const double b2 = beta * beta;
  return (1 + b2) * p * r / (b2 * p + r);
}

}  // namespace

TEST(Match, Definitions) {
  const std::vector<GroundTruthEntry> present{{"a.py", 3, "PD01", Label::SmellPresent}};
  EXPECT_EQ(std::get<ConfusionCounts>(match_findings({at("a.py", 3, "PD01")}, present)), (ConfusionCounts{1, 0, 0, 0}));
  EXPECT_EQ(std::get<ConfusionCounts>(match_findings({}, present)), (ConfusionCounts{0, 0, 1, 0}));
  const std::vector<GroundTruthEntry> absent{{"a.py", 3, "PD01", Label::SmellAbsent}};
  EXPECT_EQ(std::get<ConfusionCounts>(match_findings({at("a.py", 3, "PD01")}, absent)), (ConfusionCounts{0, 1, 0, 0}));
  EXPECT_EQ(std::get<ConfusionCounts>(match_findings({}, absent)), (ConfusionCounts{0, 0, 0, 1}));
  // Wrong line, wrong id, unannotated findings: ignored.
  EXPECT_EQ(std::get<ConfusionCounts>(
                match_findings({at("a.py", 4, "PD01"), at("a.py", 3, "PD04"), at("b.py", 1, "NP01")}, present)),
            (ConfusionCounts{0, 0, 1, 0}));
  // Paths compare after lexical normalization.
  EXPECT_EQ(std::get<ConfusionCounts>(match_findings({at("./x/../a.py", 3, "PD01")}, present)),
            (ConfusionCounts{1, 0, 0, 0}));
}

TEST(Match, SeventyTwoEntries) {
  std::vector<GroundTruthEntry> truth;
  std::vector<Finding> findings;
  for (int i = 0; i < 72; ++i) {
    truth.push_back({"p.py", i + 1, "ML01", Label::SmellPresent});
    if (i < 63) findings.push_back(at("p.py", i + 1, "ML01"));
  }
  EXPECT_EQ(std::get<ConfusionCounts>(match_findings(findings, truth)), (ConfusionCounts{63, 0, 9, 0}));
}

TEST(Match, UnknownDetector) {
  auto r = match_findings({}, {{"a.py", 1, "QQ01", Label::SmellPresent}});
  ASSERT_TRUE(std::holds_alternative<UnknownDetector>(r));
  EXPECT_EQ(std::get<UnknownDetector>(r).detector_id, "QQ01");
}

TEST(Match, SplitByFramework) {
  const std::vector<GroundTruthEntry> truth{{"a.py", 1, "PD01", Label::SmellPresent},
                                            {"a.py", 2, "NP02", Label::SmellPresent},
                                            {"a.py", 3, "NP02", Label::SmellAbsent}};
  auto split = std::get<std::map<Framework, ConfusionCounts>>(
      match_findings_by_framework({at("a.py", 1, "PD01"), at("a.py", 3, "NP02")}, truth));
  EXPECT_EQ(split[Framework::Pandas], (ConfusionCounts{1, 0, 0, 0}));
  EXPECT_EQ(split[Framework::NumPy], (ConfusionCounts{0, 1, 1, 0}));
}

TEST(Metrics, PublishedOverall) {
  const auto m = metrics(63, 0, 9, 0);
  EXPECT_NEAR(m.agreement_rate, 0.8750, 5e-4);
  EXPECT_NEAR(m.recall, 0.875, 5e-4);
  EXPECT_NEAR(m.f1, 0.933, 5e-4);
  EXPECT_NEAR(m.f2, 0.897, 5e-4);
}

TEST(Metrics, PublishedPandasRow) {
  const auto m = metrics(9, 0, 1, 0);
  EXPECT_NEAR(m.recall, 0.900, 1e-3);
  EXPECT_NEAR(m.f1, 0.947, 1e-3);
  EXPECT_NEAR(m.f2, 0.918, 1e-3);
}

TEST(Metrics, Perfect) {
  const auto m = metrics(17, 0, 0, 0);
  for (double v : {m.agreement_rate, m.recall, m.precision, m.f1, m.f2}) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Metrics, Empty) { EXPECT_TRUE(std::holds_alternative<EmptyEvaluation>(compute_metrics({}))); }

TEST(Metrics, DegenerateDenominators) {
  const auto none_found = metrics(0, 0, 4, 0);
  EXPECT_DOUBLE_EQ(none_found.recall, 0.0);
  EXPECT_DOUBLE_EQ(none_found.f1, 0.0);
  EXPECT_DOUBLE_EQ(none_found.f2, 0.0);
  const auto only_absent = metrics(0, 0, 0, 5);
  EXPECT_DOUBLE_EQ(only_absent.agreement_rate, 1.0);
  const auto all_fp = metrics(0, 3, 0, 0);
  EXPECT_DOUBLE_EQ(all_fp.precision, 0.0);
  EXPECT_DOUBLE_EQ(all_fp.agreement_rate, 0.0);
}

TEST(Metrics, RandomizedProperties) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> d(0, 50);
  for (int i = 0; i < 500; ++i) {
    const std::size_t tp = d(rng) + 1, fp = d(rng), fn = d(rng), tn = d(rng);
    const auto m = metrics(tp, fp, fn, tn);
    const double p = double(tp) / double(tp + fp), r = double(tp) / double(tp + fn);
    EXPECT_NEAR(m.precision, p, 1e-12);
    EXPECT_NEAR(m.recall, r, 1e-12);
    EXPECT_NEAR(m.f1, f_beta(p, r, 1), 1e-12);
    EXPECT_NEAR(m.f2, f_beta(p, r, 2), 1e-12);
    EXPECT_NEAR(m.agreement_rate, double(tp + tn) / double(tp + fp + fn + tn), 1e-12);
    EXPECT_LE(m.f1, std::max(p, r) + 1e-12);
    EXPECT_GE(m.f1, std::min(p, r) - 1e-12);
    EXPECT_LE(m.f2, std::max(p, r) + 1e-12);
    EXPECT_GE(m.f2, std::min(p, r) - 1e-12);

    const auto no_false = metrics(tp, 0, fn, 0);
    EXPECT_NEAR(no_false.agreement_rate, no_false.recall, 1e-12);

    const std::size_t k = 1 + d(rng) % 7;
    const auto scaled = metrics(tp * k, fp * k, fn * k, tn * k);
    EXPECT_NEAR(scaled.f1, m.f1, 1e-12);
    EXPECT_NEAR(scaled.f2, m.f2, 1e-12);
    EXPECT_NEAR(scaled.agreement_rate, m.agreement_rate, 1e-12);
  }
}

TEST(GroundTruthCsv, ParseAndRender) {
  const std::string text = "file,line,detector_id,label\na.py,3,PD01,present\n\"b,c.py\",1,NP02,absent\n";
  auto parsed = parse_ground_truth(text);
  ASSERT_TRUE(std::holds_alternative<std::vector<GroundTruthEntry>>(parsed));
  const auto& entries = std::get<std::vector<GroundTruthEntry>>(parsed);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[1], (GroundTruthEntry{"b,c.py", 1, "NP02", Label::SmellAbsent}));
  EXPECT_EQ(render_ground_truth(entries), text);
  EXPECT_TRUE(std::holds_alternative<csv::CsvError>(parse_ground_truth("file,line\n")));
  EXPECT_TRUE(std::holds_alternative<csv::CsvError>(parse_ground_truth("file,line,detector_id,label\na,0,PD01,present\n")));
  EXPECT_TRUE(std::holds_alternative<csv::CsvError>(parse_ground_truth("file,line,detector_id,label\na,1,PD01,maybe\n")));
}
