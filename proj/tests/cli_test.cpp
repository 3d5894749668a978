#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using tropmorph::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tropmorph_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    write("w1.txt", "3 0 10\n1 1 0\n1 2 -2\n2 1 -2\n2 2 0\n2 3 -3\n3 2 -3\n3 3 0\n");
    write("x.csv", "5\n1\n9\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(Cli, ClassifyReportsJson) {
  const auto r = call({"classify", "--matrix", path("w1.txt"), "--dot", path("w1.dot")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["doubly_0_astic"].get<bool>());
  EXPECT_TRUE(j["cmw"].get<bool>());
  EXPECT_TRUE(j["definite"].get<bool>());
  EXPECT_EQ(j["max_circuit_weight"].get<double>(), 0);
  EXPECT_NE(read("w1.dot").find("1 -> 2 [label=\"-2\"]"), std::string::npos);
}

TEST_F(Cli, ClassifyNonAsticNamesRow) {
  write("bad.txt", "2 0 10\n1 1 0\n1 2 1\n2 1 -1\n2 2 0\n");
  const auto r = call({"classify", "--matrix", path("bad.txt")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["row_0_astic"].get<bool>());
  EXPECT_EQ(j["first_bad_row"].get<int>(), 1);
}

TEST_F(Cli, OpenW1) {
  const auto r = call({"open", "--matrix", path("w1.txt"), "--input", path("x.csv"), "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "3\n1\n4\n");
}

TEST_F(Cli, DilateErodeCloseAndIntegral) {
  EXPECT_EQ(call({"dilate", "--matrix", path("w1.txt"), "--input", path("x.csv")}).out, "5\n6\n9\n");
  EXPECT_EQ(call({"erode", "--matrix", path("w1.txt"), "--input", path("x.csv")}).out, "3\n1\n4\n");
  EXPECT_EQ(call({"open", "--matrix", path("w1.txt"), "--input", path("x.csv"), "--p", "3", "--integral"}).out,
            "3\n1\n4\n");
  const auto c = call({"close", "--matrix", path("w1.txt"), "--input", path("x.csv"), "--out", path("c.csv")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(read("c.csv"), "5\n6\n9\n");
}

TEST_F(Cli, StructuringFunctionOnSignal) {
  write("se.txt", "-1 -1\n0 0\n1 -1\n");
  write("s.csv", "0\n0\n8\n0\n0\n");
  const auto r = call({"dilate", "--se", path("se.txt"), "--input", path("s.csv"), "--b", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0\n7\n8\n7\n0\n");
}

TEST_F(Cli, PgmPipeline) {
  write("img.pgm", "P2\n3 2\n20\n0 10 20\n5 15 0\n");
  const auto r = call({"open", "--adaptive", "0.1", "--neighborhood", "4", "--input", path("img.pgm"), "--p", "2",
                       "--out", path("out.pgm")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("out.pgm"), std::ios::binary);
  const auto img = tropmorph::read_pgm(in);
  EXPECT_EQ(img.maxval, 20u);
  EXPECT_EQ(img.shape, (tropmorph::GridShape{2, 3}));
  for (double v : img.pixels) EXPECT_LE(v, 20);
}

TEST_F(Cli, GranulometryCurve) {
  const auto r = call({"granulometry", "--matrix", path("w1.txt"), "--input", path("x.csv"), "--p-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "p,gamma_volume,G_volume\n1,8,8\n2,8,8\n3,8,8\n");
}

TEST_F(Cli, SpectralJsonAndBasis) {
  const auto r = call({"spectral", "--matrix", path("w1.txt"), "--basis-out", path("basis.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["eigen_nodes"], nlohmann::json::parse("[1,2,3]"));
  EXPECT_EQ(j["classes"].size(), 3u);
  EXPECT_EQ(read("basis.csv"), "1,2,3\n0,-2,-5\n-2,0,-3\n-5,-3,0\n");
  const auto approx = call({"spectral", "--matrix", path("w1.txt"), "--p", "2"});
  ASSERT_EQ(approx.code, 0) << approx.err;
  EXPECT_TRUE(nlohmann::json::parse(approx.out)["approximate"].get<bool>());
}

TEST_F(Cli, VerifyPasses) {
  const auto r = call({"verify", "--trials", "50", "--seed", "7", "--matrix", path("w1.txt")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out, call({"verify", "--trials", "50", "--seed", "7", "--matrix", path("w1.txt")}).out);
}

TEST_F(Cli, VerifyFlagsNonAsticUserMatrix) {
  write("row.txt", "2 0 10\n1 1 0\n2 1 0\n");
  const auto r = call({"verify", "--trials", "3", "--matrix", path("row.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL user matrix is doubly-0-astic: column 2"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageAndInputErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"open", "--matrix", path("missing.txt"), "--input", path("x.csv")}).code, 2);
  EXPECT_EQ(call({"open", "--matrix", path("w1.txt")}).code, 2);
  EXPECT_EQ(call({"open", "--matrix", path("w1.txt"), "--se", path("w1.txt"), "--input", path("x.csv")}).code, 2);
  write("x2.csv", "1\n2\n");
  EXPECT_EQ(call({"dilate", "--matrix", path("w1.txt"), "--input", path("x2.csv")}).code, 2);
  write("big.csv", "1\n2\n11\n");
  EXPECT_EQ(call({"dilate", "--matrix", path("w1.txt"), "--input", path("big.csv")}).code, 2);
  write("dup.txt", "2 0 10\n1 1 0\n1 1 0\n");
  EXPECT_EQ(call({"classify", "--matrix", path("dup.txt")}).code, 2);
  write("row.txt", "2 0 10\n1 1 0\n2 1 0\n");
  const auto r = call({"open", "--matrix", path("row.txt"), "--input", path("x2.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("column 2"), std::string::npos);
}

}  // namespace
