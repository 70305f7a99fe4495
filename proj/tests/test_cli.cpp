#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tsfsb/cli.hpp"
#include "tsfsb/interchange.hpp"

using namespace tsfsb;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

// corpus -> extract (both sets) -> pipeline inside `dir`
void build_filtered(const oracle::TempDir& dir, const std::string& threads) {
  const auto d = dir.path().string();
  ASSERT_EQ(call({"--seed", "4", "corpus", "--n", "30", "--length", "200", "--out", d + "/corpus"}).code, 0);
  for (const std::string set : {"distilled-22", "fft-raw"}) {
    const auto r = call({"--seed", "4", "--threads", threads, "extract", "--set", set, "--corpus", d + "/corpus",
                         "--out", d + "/raw/" + set + ".csv", "--kmax", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  const auto r = call({"--seed", "4", "pipeline", "--matrices",
                       d + "/raw/distilled-22.csv," + d + "/raw/fft-raw.csv", "--out", d + "/filtered"});
  ASSERT_EQ(r.code, 0) << r.err;
}

}  // namespace

TEST(ConfigHash, IgnoresParameterOrder) {
  EXPECT_EQ(cli::config_hash("x", {{"a", "1"}, {"b", "2"}}), cli::config_hash("x", {{"b", "2"}, {"a", "1"}}));
  EXPECT_NE(cli::config_hash("x", {{"a", "1"}}), cli::config_hash("x", {{"a", "2"}}));
  EXPECT_NE(cli::config_hash("x", {{"a", "1"}}), cli::config_hash("y", {{"a", "1"}}));
  // field boundaries matter
  EXPECT_NE(cli::config_hash("x", {{"ab", "c"}}), cli::config_hash("x", {{"a", "bc"}}));
}

TEST(Cli, VersionAndHelp) {
  const auto v = call({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"corpus", "--n", "3"}).code, 1);  // --out missing
  EXPECT_EQ(call({"features", "--set", "catch-99"}).code, 1);
  EXPECT_EQ(call({"corpus", "--n", "abc", "--out", "/tmp/x"}).code, 1);
}

TEST(Cli, MissingInputExitsTwo) {
  oracle::TempDir dir("cli-io");
  EXPECT_EQ(call({"extract", "--set", "distilled-22", "--corpus", "/nonexistent/tsfsb", "--out",
                  (dir / "x.csv").string()})
                .code,
            2);
  EXPECT_EQ(call({"redundancy", "--matrix", "/nonexistent/m.csv", "--out", (dir / "c.csv").string()}).code, 2);
}

TEST(Cli, FeaturesCatalogToStdout) {
  const auto r = call({"features", "--set", "fft-raw", "--kmax", "2"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# tsfsb 0.1.0 features seed=0 config=", 0), 0u);
  std::getline(lines, line);
  EXPECT_EQ(line, "set_id,name,kind");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 8);
}

TEST(Cli, EndToEnd) {
  oracle::TempDir dir("cli-e2e");
  build_filtered(dir, "1");
  const auto d = dir.path().string();

  const auto report = oracle::slurp(dir.path() / "filtered" / "filter_report.csv");
  EXPECT_EQ(first_line(report).rfind("# tsfsb 0.1.0 pipeline seed=4", 0), 0u);
  EXPECT_NE(report.find("record,set_id,item,value,detail"), std::string::npos);
  const auto filtered = read_interchange(dir.path() / "filtered" / "fft-raw.csv");
  EXPECT_TRUE(filtered.normalized);
  EXPECT_TRUE(filtered.complete());

  const auto red = call({"redundancy", "--matrix", d + "/filtered/distilled-22.csv", "--out", d + "/curve.csv",
                         "--svg", d + "/curve.svg"});
  ASSERT_EQ(red.code, 0) << red.err;
  EXPECT_EQ(red.out.rfind("set_id,k_star,total_components,proportion\ndistilled-22,", 0), 0u);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "curve.svg"));

  const auto ov = call({"overlap", "--test", d + "/filtered/fft-raw.csv", "--benchmark",
                        d + "/filtered/distilled-22.csv", "--out", d + "/overlap.csv"});
  ASSERT_EQ(ov.code, 0) << ov.err;
  EXPECT_EQ(first_line(ov.out), "test_set,benchmark_set,S,n_below_cutoff");

  const auto self = call({"overlap", "--test", d + "/filtered/fft-raw.csv", "--benchmark",
                          d + "/filtered/fft-raw.csv", "--out", d + "/self.csv"});
  EXPECT_NE(self.out.find("fft-raw,fft-raw,1,0"), std::string::npos);

  const auto all = call({"overlap-all", "--matrices", d + "/filtered/distilled-22.csv," + d + "/filtered/fft-raw.csv",
                         "--out", d + "/all.csv", "--svg", d + "/all.svg"});
  ASSERT_EQ(all.code, 0) << all.err;
  const auto text = oracle::slurp(dir.path() / "all.csv");
  EXPECT_NE(text.find("benchmark,distilled-22,fft-raw\ndistilled-22,1,"), std::string::npos);
}

TEST(Cli, ByteIdenticalAcrossThreadCounts) {
  oracle::TempDir a("cli-a"), b("cli-b");
  build_filtered(a, "1");
  build_filtered(b, "8");
  for (const char* f : {"raw/distilled-22.csv", "raw/fft-raw.csv", "filtered/distilled-22.csv",
                        "filtered/fft-raw.csv", "filtered/filter_report.csv"}) {
    const auto x = oracle::slurp(a.path() / f);
    ASSERT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, oracle::slurp(b.path() / f)) << f;
  }
}

TEST(Cli, BenchWritesRawAndSummary) {
  oracle::TempDir dir("cli-bench");
  const auto raw = (dir / "t.csv").string();
  const auto r = call({"bench", "--sets", "distilled-22", "--lengths", "30,60", "--reps", "2", "--out", raw,
                       "--svg", (dir / "t.svg").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "t.summary.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "t.svg"));
  EXPECT_EQ(call({"bench", "--lengths", "60,30", "--out", raw}).code, 1);
  EXPECT_EQ(call({"bench", "--generator", "pink", "--out", raw}).code, 1);
}

TEST(Cli, PipelineMisalignedExitsOne) {
  oracle::TempDir dir("cli-align");
  const auto d = dir.path().string();
  ASSERT_EQ(call({"corpus", "--n", "5", "--length", "50", "--out", d + "/c1"}).code, 0);
  ASSERT_EQ(call({"corpus", "--n", "6", "--length", "50", "--out", d + "/c2"}).code, 0);
  ASSERT_EQ(call({"extract", "--set", "distilled-22", "--corpus", d + "/c1", "--out", d + "/a.csv"}).code, 0);
  ASSERT_EQ(call({"extract", "--set", "fft-raw", "--corpus", d + "/c2", "--out", d + "/b.csv"}).code, 0);
  const auto r = call({"pipeline", "--matrices", d + "/a.csv," + d + "/b.csv", "--out", d + "/f"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("aligned"), std::string::npos);
}
