#include "cli.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slope/benchmark.hpp"
#include "slope/random.hpp"

namespace slope::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "slope");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("slope_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, InferQuadraticPair) {
  Rng rng(7);
  std::ofstream os(dir_ / "quad.txt");
  os.precision(17);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    os << x << ' ' << x * x + rng.normal(0.0, 0.5) << '\n';
  }
  os.close();
  const auto r = run_cli({"infer", (dir_ / "quad.txt").string()});
  EXPECT_EQ(r.code, kExitDecided) << r.err;
  EXPECT_NE(r.out.find("decision    XtoY"), std::string::npos);
  EXPECT_NE(r.out.find(kResultsHeader), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, InferIdenticalColumnsIsUndecided) {
  std::ofstream os(dir_ / "same.txt");
  for (int i = 0; i < 50; ++i) os << i * 0.37 << ' ' << i * 0.37 << '\n';
  os.close();
  const auto r = run_cli({"infer", (dir_ / "same.txt").string()});
  EXPECT_EQ(r.code, kExitUndecided);
  EXPECT_NE(r.out.find("Undecided"), std::string::npos);
}

TEST_F(CliTest, InferMissingFile) {
  const auto r = run_cli({"infer", (dir_ / "nope.txt").string()});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, RejectsBadFlags) {
  EXPECT_EQ(run_cli({"infer", "x.txt", "--t", "-1"}).code, kExitError);
  EXPECT_EQ(run_cli({"infer", "x.txt", "--precision", "0"}).code, kExitError);
  EXPECT_EQ(run_cli({"batch", "d", "--alpha", "1"}).code, kExitError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run_cli({"gen", "--dist", "zz", "--out", dir_.string()}).code, kExitError);
}

TEST_F(CliTest, GenIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> flags{"gen", "--dist", "u", "--fun", "cubic", "--noise", "g",
                                       "--n", "1000", "--seed", "1"};
  auto a = flags;
  a.insert(a.end(), {"--out", (dir_ / "a").string()});
  auto b = flags;
  b.insert(b.end(), {"--out", (dir_ / "b").string()});
  ASSERT_EQ(run_cli(a).code, 0);
  ASSERT_EQ(run_cli(b).code, 0);
  const std::string stem = "u_cubic_g_n1000_s1";
  const auto first = slurp(dir_ / "a" / (stem + ".txt"));
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(dir_ / "b" / (stem + ".txt")));
  EXPECT_EQ(slurp(dir_ / "a" / (stem + ".truth")), "XtoY\n");
  EXPECT_EQ(load_pair(dir_ / "a" / (stem + ".txt"), 1, 2).size(), 1000u);
}

TEST_F(CliTest, GenEquidistantSupport) {
  ASSERT_EQ(run_cli({"gen", "--dist", "ek", "--k", "40", "--n", "1000", "--seed", "3",
                     "--out", dir_.string(), "--name", "ek"})
                .code,
            0);
  const auto p = load_pair(dir_ / "ek.txt", 1, 2);
  EXPECT_LE(count_distinct(p.x), 40u);
  for (double x : p.x) {
    const double scaled = x * 39.0;
    EXPECT_NEAR(scaled, std::round(scaled), 1e-9);
  }
}

TEST_F(CliTest, BatchWritesCsvs) {
  ASSERT_EQ(run_cli({"gen", "--dist", "b", "--fun", "linear", "--noise", "n", "--n", "300",
                     "--count", "20", "--out", (dir_ / "pairs").string()})
                .code,
            0);
  const auto out = dir_ / "out";
  const auto r = run_cli({"batch", (dir_ / "pairs").string(), "--out", out.string(),
                          "--alpha", "0.001"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out / "results.csv");
  const auto rows = read_results_csv(in);
  EXPECT_EQ(rows.size(), 20u);
  const auto rate = slurp(out / "decision_rate.csv");
  EXPECT_EQ(rate.rfind("k,cum_weight,accuracy\n", 0), 0u);
  for (const auto& row : rows) EXPECT_EQ(row.significant, row.p_adj <= 0.001);

  const auto det = run_cli({"batch", (dir_ / "pairs").string(), "--out",
                            (dir_ / "det").string(), "--deterministic-only"});
  ASSERT_EQ(det.code, 0);
  std::ifstream din(dir_ / "det" / "results.csv");
  for (const auto& row : read_results_csv(din)) {
    EXPECT_EQ(row.n_locals_xy, 0u);
    EXPECT_EQ(row.n_locals_yx, 0u);
  }
}

TEST_F(CliTest, BatchWithMeta) {
  ASSERT_EQ(run_cli({"gen", "--fun", "cubic", "--n", "200", "--out", dir_.string(), "--name",
                     "pair0001"})
                .code,
            0);
  std::ofstream(dir_ / "pairmeta.txt") << "0001 1 1 2 2 1\n0002 1 2 3 3 1\n";
  const auto r = run_cli({"batch", dir_.string(), "--meta", (dir_ / "pairmeta.txt").string(),
                          "--out", (dir_ / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("skipping multivariate pair pair0002"), std::string::npos);
  std::ifstream in(dir_ / "out" / "results.csv");
  EXPECT_EQ(read_results_csv(in).size(), 1u);
}

}  // namespace
}  // namespace slope::cli
