#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "records.hpp"

namespace qprobe::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

// Value of "key = value" in command output.
double field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
  ADD_FAILURE() << "no field " << key << " in\n" << text;
  return 0.0;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qprobe-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, EffectIdentityCoupling) {
  const auto r = call({"effect", "--mu", "1", "--theta", "0", "--phi", "0", "--a1", "0", "--a2", "0", "--a3", "0",
                       "--alpha", "0", "--beta", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "a0"), 1.0);
  EXPECT_EQ(field(r.out, "abs_a"), 0.0);
  EXPECT_NE(r.out.find("valid = true"), std::string::npos);
  EXPECT_NE(r.out.find("projector = false"), std::string::npos);
}

TEST_F(CliTest, EffectSwapIsProjector) {
  const auto r = call({"effect", "--mu", "1", "--theta", "0", "--phi", "0", "--a1", "-pi", "--a2", "0", "--a3",
                       "-pi/2", "--alpha", "0", "--beta", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(field(r.out, "a0"), 0.5, 1e-15);
  EXPECT_NEAR(field(r.out, "a3"), 0.5, 1e-15);
  EXPECT_NE(r.out.find("projector = true"), std::string::npos);
}

TEST_F(CliTest, EffectNonCanonicalIsNotedNotRejected) {
  const auto r = call({"effect", "--mu", "1", "--theta", "0", "--phi", "0", "--a1=-pi", "--a2=pi", "--a3", "0",
                       "--alpha", "0", "--beta", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("canonical"), std::string::npos);
}

TEST_F(CliTest, EffectConstraintViolationNamesCondition) {
  const auto r = call({"effect", "--mu", "1", "--theta", "0", "--phi", "0", "--a1", "-1", "--a2", "1.5", "--a3",
                       "-1", "--alpha", "0", "--beta", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("(2b)"), std::string::npos) << r.err;

  const auto mu = call({"effect", "--mu", "0.3", "--theta", "0", "--phi", "0", "--a1", "0", "--a2", "0", "--a3", "0",
                        "--alpha", "0", "--beta", "0"});
  EXPECT_EQ(mu.code, 1);
}

TEST_F(CliTest, EffectUsageErrors) {
  EXPECT_EQ(call({"effect", "--mu", "1"}).code, 2);
  EXPECT_EQ(call({"effect", "--mu", "one", "--theta", "0", "--phi", "0", "--a1", "0", "--a2", "0", "--a3", "0",
                  "--alpha", "0", "--beta", "0"})
                .code,
            2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST_F(CliTest, TradeoffSaturatedAtMixedProbe) {
  const auto r = call({"tradeoff", "--mu", "0.5", "--theta", "1", "--phi", "2", "--a1", "-2", "--a2", "1", "--a3",
                       "-0.3", "--alpha", "0.4", "--beta", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(field(r.out, "T"), 1.0 / 9.0, 1e-12);
  EXPECT_NE(r.out.find("saturated = true"), std::string::npos);
}

TEST_F(CliTest, TradeoffIdentityCoupling) {
  const auto r = call({"tradeoff", "--mu", "1", "--theta", "0", "--phi", "0", "--a1", "0", "--a2", "0", "--a3", "0",
                       "--alpha", "0", "--beta", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "F"), 1.0);
  EXPECT_EQ(field(r.out, "G"), 0.5);
  EXPECT_NEAR(field(r.out, "T"), 1.0 / 9.0, 1e-15);
}

TEST_F(CliTest, SampleWritesHeaderAndRows) {
  const auto r = call({"sample", "--scenario", "full", "--n", "1000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 1001u);
  EXPECT_EQ(r.out.substr(0, kRecordHeader.size()), kRecordHeader);

  std::istringstream in(r.out);
  const auto records = read_records_csv(in);
  ASSERT_EQ(records.size(), 1000u);
  const auto direct = draw(builtin_scenario("full"), 7, 1000);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].a0, direct[i].a0);
    EXPECT_EQ(records[i].point.cartan.a2, direct[i].point.cartan.a2);
    EXPECT_EQ(records[i].T, direct[i].T);
  }
}

TEST_F(CliTest, SampleMixedProbeRows) {
  const auto r = call({"sample", "--scenario", "mu-half", "--n", "200", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  for (const auto& rec : read_records_csv(in)) {
    EXPECT_EQ(rec.scenario, "mu-half");
    EXPECT_NEAR(rec.a0, 0.5, 1e-12);
    EXPECT_NEAR(rec.T, 1.0 / 9.0, 1e-10);
  }
}

TEST_F(CliTest, SampleIsByteIdenticalAcrossRunsAndThreads) {
  ASSERT_EQ(call({"sample", "--scenario", "a2-34", "--n", "3000", "--seed", "5", "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(call({"sample", "--scenario", "a2-34", "--n", "3000", "--seed", "5", "--out", path("b.csv")}).code, 0);
  std::vector<SampleRecord> copy;
  SampleOptions o;
  o.scenario = "a2-34";
  o.n = 3000;
  o.seed = 5;
  o.out = path("c.csv");
  setenv("QPROBE_THREADS", "3", 1);
  std::ostringstream sink;
  EXPECT_EQ(cmd_sample(o, sink, sink), 0);
  unsetenv("QPROBE_THREADS");
  const auto a = slurp(path("a.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.csv")));
  EXPECT_EQ(a, slurp(path("c.csv")));
}

TEST_F(CliTest, SampleJson) {
  const auto r = call({"sample", "--scenario", "a1-tenth", "--n", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.front(), '[');
  EXPECT_NE(r.out.find("\"scenario\": \"a1-tenth\""), std::string::npos);
  EXPECT_NE(r.out.find("\"index\": 2"), std::string::npos);
}

TEST_F(CliTest, SampleFromScenarioFile) {
  {
    std::ofstream f(path("s.scn"));
    f << "name = small-a1\na1 = -pi/10, 0\n";
  }
  const auto r = call({"sample", "--scenario", path("s.scn"), "--n", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\nsmall-a1,"), std::string::npos);

  {
    std::ofstream f(path("bad.scn"));
    f << "name = broken\na1 = 1, 2\n";
  }
  EXPECT_EQ(call({"sample", "--scenario", path("bad.scn"), "--n", "5"}).code, 1);
}

TEST_F(CliTest, SampleErrors) {
  EXPECT_EQ(call({"sample", "--scenario", "no-such-thing"}).code, 2);
  EXPECT_EQ(call({"sample", "--format", "xml", "--n", "2"}).code, 2);
  EXPECT_EQ(call({"sample", "--n", "0"}).code, 2);
  EXPECT_EQ(call({"sample", "--n", "-4"}).code, 2);
  EXPECT_EQ(call({"sample", "--n", "2", "--out", path("missing-dir/x.csv")}).code, 3);
}

TEST_F(CliTest, HistSingleRecordOneBin) {
  ASSERT_EQ(call({"sample", "--n", "1", "--out", path("one.csv")}).code, 0);
  const auto r = call({"hist", "--in", path("one.csv"), "--g-bins", "1", "--f-bins", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_EQ(r.out.rfind("g_lo,g_hi,f_lo,f_hi,count\n", 0), 0u);
  EXPECT_EQ(r.out.substr(r.out.size() - 3), ",1\n");
}

TEST_F(CliTest, HistConservesCounts) {
  ASSERT_EQ(call({"sample", "--n", "2000", "--out", path("s.csv")}).code, 0);
  ASSERT_EQ(call({"hist", "--in", path("s.csv"), "--g-bins", "7", "--f-bins", "4", "--out", path("h.csv")}).code, 0);
  std::istringstream in(slurp(path("h.csv")));
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  std::uint64_t total = 0;
  while (std::getline(in, line)) {
    ++rows;
    total += std::stoull(line.substr(line.rfind(',') + 1));
  }
  EXPECT_EQ(rows, 28u);
  EXPECT_EQ(total, 2000u);
}

TEST_F(CliTest, HistRejectsBadInput) {
  {
    std::ofstream f(path("bad.csv"));
    f << "not,a,sample,file\n1,2,3,4\n";
  }
  EXPECT_EQ(call({"hist", "--in", path("bad.csv")}).code, 1);
  {
    std::ofstream f(path("empty.csv"));
    f << kRecordHeader << '\n';
  }
  EXPECT_EQ(call({"hist", "--in", path("empty.csv")}).code, 1);

  ASSERT_EQ(call({"sample", "--n", "3", "--out", path("s.csv")}).code, 0);
  std::string text = slurp(path("s.csv"));
  text.replace(text.rfind(',') + 1, std::string::npos, "abc\n");
  {
    std::ofstream f(path("corrupt.csv"));
    f << text;
  }
  EXPECT_EQ(call({"hist", "--in", path("corrupt.csv")}).code, 1);
  EXPECT_EQ(call({"hist", "--in", path("nope.csv")}).code, 3);
  EXPECT_EQ(call({"hist"}).code, 2);
  EXPECT_EQ(call({"hist", "--in", path("s.csv"), "--g-bins", "0"}).code, 2);
}

TEST_F(CliTest, CnotSweepEndpoints) {
  const auto r = call({"cnot-sweep", "--steps", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 6u);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,F,G,T");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream cells(line);
    for (std::string c; std::getline(cells, c, ',');) v.push_back(std::stod(c));
    rows.push_back(v);
  }
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows.front()[0], 0.0);
  EXPECT_NEAR(rows.front()[1], 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(rows.front()[2], 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(rows.back()[1], 1.0, 1e-10);
  EXPECT_NEAR(rows.back()[2], 0.5, 1e-10);
  for (const auto& row : rows) EXPECT_NEAR(row[3], 1.0 / 9.0, 1e-10);
  EXPECT_TRUE(r.err.empty()) << r.err;
}

TEST_F(CliTest, CnotSweepOptions) {
  EXPECT_EQ(count_lines(call({"cnot-sweep", "--steps", "2"}).out), 3u);
  EXPECT_EQ(call({"cnot-sweep", "--steps", "1"}).code, 2);
  EXPECT_EQ(call({"cnot-sweep", "--mu", "2"}).code, 1);
  // Every sigma_z readout of a CNOT has a0 = 1/2 and stays optimal; a
  // generic projector leaves the curve and only warns.
  EXPECT_TRUE(call({"cnot-sweep", "--steps", "3", "--mu", "0.8"}).err.empty());
  const auto off = call({"cnot-sweep", "--steps", "3", "--alpha", "1", "--beta", "0.3"});
  EXPECT_EQ(off.code, 0);
  EXPECT_NE(off.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, VerifySmallRun) {
  const auto r = call({"verify", "--n", "200", "--mc-samples", "20000", "--mc-effects", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS dual-path"), std::string::npos);
}

TEST(CliRecords, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 1.0 - 1e-16}) {
    const auto s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
}

}  // namespace
}  // namespace qprobe::cli
