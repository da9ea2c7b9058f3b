#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = schatten::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<json> records(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

// Drops the header line, which carries the creation time.
std::string data_lines(const std::string& text) {
  const auto pos = text.find('\n');
  return pos == std::string::npos ? "" : text.substr(pos + 1);
}

}  // namespace

TEST(Cli, GammaTable) {
  const Result r = run({"gamma", "--d", "4", "--p", "2", "--q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = records(r.out);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0]["record"], "header");
  EXPECT_EQ(recs[0]["schema_version"], 1);
  EXPECT_TRUE(recs[0].contains("config"));
  EXPECT_NEAR(recs[1]["value"].get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(recs[1]["gap"].get<double>(), 1.0 / 36.0, 1e-15);
}

TEST(Cli, VerifyIdentitiesPasses) {
  const Result r = run({"verify", "--suite", "identities", "--n", "2", "--p", "2", "--ensemble", "2,1,0"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto recs = records(r.out);
  ASSERT_GT(recs.size(), 3u);
  for (std::size_t k = 1; k < recs.size(); ++k) EXPECT_TRUE(recs[k]["pass"].get<bool>()) << recs[k].dump();
}

TEST(Cli, FailedCheckExitsOne) {
  // A tolerance of zero after rounding cannot hold for the quadrature identity sides.
  const Result r = run({"verify", "--suite", "identities", "--n", "2", "--p", "3", "--ensemble", "2,1,0",
                        "--tolerance", "1e-300"});
  EXPECT_EQ(r.code, 1) << r.err;
}

TEST(Cli, EstimateMomentMethods) {
  Result r = run({"estimate", "moment", "--ensemble", "2,2,1", "--n", "2", "--p", "2", "-f", "norm2^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto recs = records(r.out);
  EXPECT_NEAR(recs.at(1)["value"].get<double>(), 4.0, 1e-8);
  r = run({"estimate", "moment", "--ensemble", "2,2,1", "--n", "2", "--p", "2", "--method", "closed-form", "--l", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(records(r.out).at(1)["value"].get<double>(), 4.0, 1e-13);
}

TEST(Cli, EstimateSigma) {
  const Result r = run({"estimate", "sigma", "--field", "R", "--subspace", "full", "--n", "2", "--p", "2",
                        "--samples", "40000", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = records(r.out);
  EXPECT_EQ(recs.at(1)["dim"], 4);
  EXPECT_NEAR(recs.at(1)["sigma_sq"].get<double>(), 0.5, 0.05);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"estimate", "moment", "--ensemble", "2,1", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nonexistent"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"estimate", "sigma", "--field", "R", "--subspace", "antisym-hermitian", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OracleFailureExitsThree) {
  const Result r = run({"estimate", "moment", "--ensemble", "2,4,3", "--n", "3", "--p", "1", "-f", "x1^8",
                        "--tolerance", "1e-300"});
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST(Cli, SampleReplayIsByteIdentical) {
  const std::vector<std::string> args = {"sample", "gas", "--ensemble", "2,1,0", "--n", "3", "--p", "4",
                                         "--samples", "500", "--seed", "77"};
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(data_lines(a.out), data_lines(b.out));
  EXPECT_EQ(records(a.out).size(), 501u);
  auto other = args;
  other.back() = "78";
  EXPECT_NE(data_lines(run(other).out), data_lines(a.out));
}

TEST(Cli, SampleMatrixAndBall) {
  Result r = run({"sample", "matrix", "--field", "C", "--n", "2", "--p", "1", "--samples", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(records(r.out).size(), 51u);
  r = run({"sample", "ball", "--ensemble", "1,1,0", "--n", "2", "--p", "3", "--samples", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(records(r.out).size(), 51u);
}

TEST(Cli, CsvOutputToFile) {
  const auto path = std::filesystem::temp_directory_path() / "schatten_cli_test.csv";
  const Result r = run({"gamma", "--d", "4,8", "--p", "2", "--format", "csv", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0].rfind("# ", 0), 0u);
  EXPECT_NE(lines[1].find("value"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, HeaderHonoursSourceDateEpoch) {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  const Result r = run({"gamma", "--d", "4", "--p", "2"});
  unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(records(r.out).at(0)["created"], "1970-01-01T00:00:00Z");
}

TEST(Cli, SweepLongFormat) {
  const Result r = run({"sweep", "--ensemble", "2,1,0", "--n", "2", "--p", "2,inf", "--samples", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto recs = records(r.out);
  ASSERT_GT(recs.size(), 1u);
  for (std::size_t k = 1; k < recs.size(); ++k) EXPECT_EQ(recs[k]["record"], "sweep");
}
