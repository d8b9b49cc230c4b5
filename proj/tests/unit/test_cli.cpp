#include <gtest/gtest.h>

#include <sstream>

#include "mlsniff/cli.hpp"
#include "mlsniff/reporting.hpp"
#include "temp_dir.hpp"

using namespace mlsniff;
using mlsniff::testing::read_all;
using mlsniff::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kPd01 = std::string(MLSNIFF_FIXTURES_DIR) + "/rules/PD01/positive.py";

std::size_t data_rows(const std::string& csv_text) {
  return std::get<std::vector<Finding>>(parse_findings_csv(csv_text)).size();
}

}  // namespace

TEST(Cli, CleanDirectory) {
  TempDir dir;
  dir.write("x.py", "x=1\n");
  const auto r = cli({"analyze", dir.path().string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("0 findings"), std::string::npos);
}

TEST(Cli, CsvOverChainFixture) {
  const auto r = cli({"analyze", "--format", "csv", kPd01});
  EXPECT_EQ(r.code, kExitOk);
  const auto findings = std::get<std::vector<Finding>>(parse_findings_csv(r.out));
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].detector_id, "PD01");
}

TEST(Cli, FailOnFindings) {
  EXPECT_EQ(cli({"analyze", "--fail-on-findings", kPd01}).code, kExitFindings);
  TempDir dir;
  const auto clean = dir.write("x.py", "x=1\n");
  EXPECT_EQ(cli({"analyze", "--fail-on-findings", clean}).code, kExitOk);
}

TEST(Cli, FrameworkFilter) {
  TempDir dir;
  const auto f = dir.write("m.py", "import pandas as pd\nimport numpy as np\nx = df['a']['b']\ny = np.sum(x)\n");
  const auto all = cli({"analyze", "--format", "csv", f});
  EXPECT_NE(all.out.find(",NumPy,"), std::string::npos);
  const auto only = cli({"analyze", "--format", "csv", "--framework", "pandas", f});
  EXPECT_EQ(only.out.find(",NumPy,"), std::string::npos);
  EXPECT_EQ(only.out.find(",General ML,"), std::string::npos);
  EXPECT_EQ(data_rows(only.out), 1u);
  const auto two = cli({"analyze", "--format", "csv", "--framework", "pandas", "--framework", "numpy", f});
  EXPECT_EQ(data_rows(two.out), 2u);
  EXPECT_EQ(cli({"analyze", "--framework", "cobol", f}).code, kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze", "--format", "xml", kPd01}).code, kExitUsage);
  EXPECT_EQ(cli({"evaluate", "only-one.csv"}).code, kExitUsage);
  const auto missing = cli({"analyze", "/definitely/not/here.py"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("not/here.py"), std::string::npos);
  EXPECT_EQ(cli({"analyze", "--output", "/definitely/not/here/out.txt", kPd01}).code, kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, ParseErrorsGoToStderr) {
  TempDir dir;
  dir.write("bad.py", "def f(:\n");
  dir.write("good.py", read_all(kPd01));
  const auto r = cli({"analyze", "--format", "csv", dir.path().string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("bad.py:1:"), std::string::npos);
  EXPECT_NE(r.err.find("syntax error"), std::string::npos);
  EXPECT_NE(r.out.find(",PD01,"), std::string::npos);
}

TEST(Cli, OutputFileAndSkippedInputs) {
  TempDir dir;
  const auto txt = dir.write("notes.txt", "hello");
  const auto out = (dir.path() / "report.csv").string();
  const auto r = cli({"analyze", "--format", "csv", "--output", out, kPd01, txt});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("warning: skipping"), std::string::npos);
  EXPECT_EQ(data_rows(read_all(out)), 1u);
}

TEST(Cli, PathOrderIndependence) {
  TempDir dir;
  const auto a = dir.write("a.py", "import numpy as np\nnp.sum(x)\n");
  const auto b = dir.write("b.py", "import pandas as pd\nx = df[0][1]\n");
  EXPECT_EQ(cli({"analyze", a, b}).out, cli({"analyze", b, a}).out);
  EXPECT_EQ(cli({"analyze", "--format", "csv", a, b}).out, cli({"analyze", "--format", "csv", b, a}).out);
}

TEST(Cli, ListDetectors) {
  const auto r = cli({"list-detectors"});
  EXPECT_EQ(r.code, kExitOk);
  auto rows = std::get<std::vector<csv::Row>>(csv::parse(r.out));
  ASSERT_EQ(rows.size(), 35u);
  EXPECT_EQ(rows[0], (csv::Row{"id", "name", "framework", "description"}));
}

TEST(Cli, Evaluate) {
  TempDir dir;
  const auto findings = (dir.path() / "f.csv").string();
  ASSERT_EQ(cli({"analyze", "--format", "csv", "--output", findings, kPd01}).code, kExitOk);
  const auto truth = dir.write("t.csv",
                               "file,line,detector_id,label\n" + kPd01 + ",4,PD01,present\n" + kPd01 +
                                   ",3,PD01,absent\n" + kPd01 + ",3,PD04,present\n");
  const auto r = cli({"evaluate", findings, truth});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "scope,entries,tp,fp,fn,tn,agreement_rate,recall,precision,f1,f2\n"
            "overall,3,1,0,1,1,0.6667,0.5000,1.0000,0.6667,0.5556\n"
            "Pandas,3,1,0,1,1,0.6667,0.5000,1.0000,0.6667,0.5556\n");
  const auto bad = dir.write("bad.csv", "file,line,detector_id,label\na.py,1,ZZ09,present\n");
  EXPECT_EQ(cli({"evaluate", findings, bad}).code, kExitUsage);
  const auto empty = dir.write("empty.csv", "file,line,detector_id,label\n");
  EXPECT_EQ(cli({"evaluate", findings, empty}).code, kExitUsage);
}

TEST(Cli, Corpus) {
  const auto r = cli({"corpus", std::string(MLSNIFF_FIXTURES_DIR) + "/mini_corpus"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("table,project,key,count\n", 0), 0u);
  EXPECT_NE(r.out.find("framework_distribution,,General ML,3\n"), std::string::npos);
  EXPECT_EQ(cli({"corpus", kPd01}).code, kExitUsage);
}
