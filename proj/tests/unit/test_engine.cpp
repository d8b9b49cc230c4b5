#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace mlsniff;
using mlsniff::testing::analyze_text;
using mlsniff::testing::parse_ok;

namespace {

std::set<Framework> frameworks_of(const std::string& src) {
  auto t = parse_ok(src);
  return detect_frameworks(t, collect_imports(t));
}

const char* kMixed =
    "import pandas as pd\nimport numpy as np\nimport torch\nfrom sklearn.svm import SVC\n"
    "df = pd.read_csv('a')\nx = df['a']['b']\ny = np.sum(df.values)\nloss.backward()\nclf = SVC()\n"
    "def helper(a):\n    return a * 42\n";

}  // namespace

TEST(Registry, ThirtyFourUniqueIds) {
  const auto list = registry_list();
  ASSERT_EQ(list.size(), 34u);
  std::set<std::string> ids;
  std::map<Framework, int> per;
  for (const auto& d : list) {
    ids.insert(d.id);
    ++per[d.framework];
    EXPECT_EQ(framework_of_id(d.id), d.framework) << d.id;
    EXPECT_FALSE(d.advice.empty()) << d.id;
    EXPECT_EQ(d.description.rfind(d.name, 0), 0u) << d.id;
  }
  EXPECT_EQ(ids.size(), 34u);
  EXPECT_EQ(per[Framework::Pandas], 4);
  EXPECT_EQ(per[Framework::NumPy], 4);
  EXPECT_EQ(per[Framework::PyTorch], 5);
  EXPECT_EQ(per[Framework::TensorFlow], 4);
  EXPECT_EQ(per[Framework::HuggingFace], 7);
  EXPECT_EQ(per[Framework::ScikitLearn], 6);
  EXPECT_EQ(per[Framework::GeneralML], 4);
}

TEST(Registry, NamedSmells) {
  ASSERT_NE(find_detector("PD01"), nullptr);
  EXPECT_EQ(find_detector("PD01")->descriptor.name, "Chain Indexing");
  EXPECT_EQ(find_detector("TF01")->descriptor.name, "Memory Release Checker");
  EXPECT_EQ(find_detector("XX99"), nullptr);
}

TEST(Frameworks, Parsing) {
  EXPECT_EQ(parse_framework("pandas"), Framework::Pandas);
  EXPECT_EQ(parse_framework("Hugging Face"), Framework::HuggingFace);
  EXPECT_EQ(parse_framework("sklearn"), Framework::ScikitLearn);
  EXPECT_EQ(parse_framework("nope"), std::nullopt);
  for (Framework f : kAllFrameworks) EXPECT_EQ(parse_framework(display_name(f)), f);
}

TEST(Frameworks, Detection) {
  EXPECT_EQ(frameworks_of("import pandas as pd\n"), (std::set<Framework>{Framework::Pandas, Framework::GeneralML}));
  EXPECT_EQ(frameworks_of("X = 1\nY = 'a'\n"), (std::set<Framework>{}));
  EXPECT_EQ(frameworks_of("import numpy as np\nimport torch\n"),
            (std::set<Framework>{Framework::NumPy, Framework::PyTorch, Framework::GeneralML}));
  EXPECT_EQ(frameworks_of("def f():\n    pass\n"), (std::set<Framework>{Framework::GeneralML}));
  EXPECT_EQ(frameworks_of("from keras import layers\nimport datasets\n"),
            (std::set<Framework>{Framework::TensorFlow, Framework::HuggingFace, Framework::GeneralML}));
}

TEST(FileAnalysis, Basics) {
  const auto chain = run_file_analysis(SourceFile("a.py", "import pandas as pd\ndf=pd.read_csv('a')\ndf['a']['b']\n"), {});
  EXPECT_TRUE(std::any_of(chain.findings.begin(), chain.findings.end(),
                          [](const Finding& f) { return f.detector_id == "PD01" && f.span.line == 3; }));
  EXPECT_TRUE(run_file_analysis(SourceFile("a.py", "x=1\n"), {}).findings.empty());
  const auto bad = run_file_analysis(SourceFile("b.py", "def f(:\n"), {});
  ASSERT_TRUE(bad.parse_error.has_value());
  EXPECT_TRUE(bad.findings.empty());
}

TEST(FileAnalysis, SortedAndStamped) {
  const auto f = analyze_text(kMixed);
  ASSERT_GT(f.size(), 5u);
  for (std::size_t i = 1; i < f.size(); ++i)
    EXPECT_FALSE(finding_less(f[i], f[i - 1]));
  for (const auto& x : f) {
    const auto* rule = find_detector(x.detector_id);
    ASSERT_NE(rule, nullptr);
    EXPECT_EQ(x.smell_name, rule->descriptor.name);
    EXPECT_EQ(x.framework, rule->descriptor.framework);
    EXPECT_EQ(x.file, "t.py");
    EXPECT_GE(x.span.line, 1);
    EXPECT_LE(x.span.end_line, 11);
  }
}

TEST(FileAnalysis, DetectorIndependence) {
  const auto full = analyze_text(kMixed);
  for (const auto& rule : registry()) {
    AnalysisConfig only;
    only.enabled_detectors = {rule.descriptor.id};
    std::vector<Finding> expected;
    for (const auto& f : full)
      if (f.detector_id == rule.descriptor.id) expected.push_back(f);
    EXPECT_EQ(analyze_text(kMixed, only), expected) << rule.descriptor.id;
  }
}

TEST(FileAnalysis, FrameworkGating) {
  AnalysisConfig pandas_only;
  pandas_only.enabled_frameworks = {Framework::Pandas};
  for (const auto& f : analyze_text(kMixed, pandas_only)) EXPECT_EQ(f.framework, Framework::Pandas);

  // With auto detection off, enabled frameworks run even without imports.
  AnalysisConfig forced;
  forced.auto_framework_detection = false;
  forced.enabled_frameworks = {Framework::Pandas};
  EXPECT_EQ(analyze_text("m['a']['b']\n", forced).size(), 1u);
  EXPECT_TRUE(analyze_text("m['a']['b']\n").empty());
}

TEST(FileAnalysis, FilteredRunsUnionToFullRun) {
  const auto full = analyze_text(kMixed);
  std::vector<Finding> merged;
  for (Framework fw : kAllFrameworks) {
    AnalysisConfig c;
    c.enabled_frameworks = {fw};
    auto part = analyze_text(kMixed, c);
    merged.insert(merged.end(), part.begin(), part.end());
  }
  normalize_findings(merged);
  EXPECT_EQ(merged, full);
}

TEST(Config, Validation) {
  AnalysisConfig c;
  EXPECT_NO_THROW(c.validate());
  c.enabled_detectors.insert("ZZ01");
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Normalize, DropsDuplicates) {
  Finding a{"PD01", "Chain Indexing", Framework::Pandas, "f.py", Span(2, 0, 2, 5), "m", "adv"};
  Finding b = a;
  b.span = Span(1, 0, 1, 1);
  std::vector<Finding> v{a, b, a};
  normalize_findings(v);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].span.line, 1);
}
