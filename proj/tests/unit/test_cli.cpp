#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "vgr_tools/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = vgr::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(CliPdf, LomaxPointAsCsv) {
  const auto r = run({"pdf", "--m", "0.5", "--n", "0.5", "--z", "1"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "z,value,err,method");
  const double value = std::stod(ls[1].substr(ls[1].find(',') + 1));
  EXPECT_NEAR(value, 0.125, 1e-15);
}

TEST(CliPdf, GridProducesOneRecordPerPoint) {
  const auto r = run({"pdf", "--grid", "-5:5:101"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 102u);
}

TEST(CliPdf, SeventeenDigitsRoundTrip) {
  const auto r = run({"pdf", "--m", "1", "--n", "1.5", "--beta1", "0.3", "--z", "0.7"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto row = lines(r.out).at(1);
  const std::string field = row.substr(row.find(',') + 1, row.find(',', row.find(',') + 1) - row.find(',') - 1);
  const auto again = run({"pdf", "--m", "1", "--n", "1.5", "--beta1", "0.3", "--z", "0.7", "--format", "jsonl"});
  const auto j = nlohmann::json::parse(lines(again.out).at(0));
  EXPECT_EQ(std::stod(field), j.at("value").get<double>());
}

TEST(CliPdf, JsonLinesCarryAllFields) {
  const auto r = run({"pdf", "--grid", "0.5:1.5:3", "--format", "jsonl"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  for (const auto& l : ls) {
    const auto j = nlohmann::json::parse(l);
    for (const char* key : {"z", "value", "err", "method"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_GT(j.at("value").get<double>(), 0.0);
  }
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(ls[1]).at("z").get<double>(), 1.0);
}

TEST(CliErrors, ExitTwoNamesTheConstraint) {
  const auto beta = run({"pdf", "--beta1", "1", "--z", "1"});
  EXPECT_EQ(beta.code, vgr::cli::kExitUsage);
  EXPECT_TRUE(contains(beta.err, "|beta1| must be < alpha1")) << beta.err;

  const auto mean = run({"moment", "--k", "1"});
  EXPECT_EQ(mean.code, vgr::cli::kExitUsage);
  EXPECT_TRUE(contains(mean.err, "mean undefined")) << mean.err;

  const auto origin = run({"pdf", "--m", "0", "--z", "0"});
  EXPECT_EQ(origin.code, vgr::cli::kExitUsage);
  EXPECT_TRUE(contains(origin.err, "singular")) << origin.err;
  EXPECT_TRUE(origin.out.empty());
}

TEST(CliErrors, UsageProblemsExitTwo) {
  EXPECT_EQ(run({}).code, vgr::cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, vgr::cli::kExitUsage);
  EXPECT_EQ(run({"pdf", "--z", "abc"}).code, vgr::cli::kExitUsage);
  EXPECT_EQ(run({"pdf", "--grid", "1:2"}).code, vgr::cli::kExitUsage);
  EXPECT_EQ(run({"pdf", "--z", "1", "--format", "xml"}).code, vgr::cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, vgr::cli::kExitOk);
}

TEST(CliSample, RequiresSeedAndIsDeterministic) {
  const auto missing = run({"sample", "--count", "5"});
  EXPECT_EQ(missing.code, vgr::cli::kExitUsage);
  EXPECT_TRUE(contains(missing.err, "--seed")) << missing.err;

  const auto a = run({"sample", "--seed", "11", "--count", "50", "--beta2", "0.3"});
  const auto b = run({"sample", "--seed", "11", "--count", "50", "--beta2", "0.3"});
  const auto c = run({"sample", "--seed", "12", "--count", "50", "--beta2", "0.3"});
  ASSERT_EQ(a.code, vgr::cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(lines(a.out).size(), 51u);
  EXPECT_EQ(lines(a.out)[0], "index,value");
}

TEST(CliMoment, LomaxHalfMoment) {
  const auto r = run({"moment", "--m", "0.5", "--n", "0.5", "--k", "0.5", "--format", "jsonl"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(lines(r.out).at(0));
  EXPECT_NEAR(j.at("value").get<double>(), 1.5707963267948966, 1e-14);
}

TEST(CliCdf, HalfAtOriginAndSurvival) {
  const auto cdf = run({"cdf", "--z", "0", "--format", "jsonl"});
  ASSERT_EQ(cdf.code, vgr::cli::kExitOk) << cdf.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(lines(cdf.out).at(0)).at("value").get<double>(), 0.5);
  // Lomax: P(Z > 3) = 1 / (2 (1 + 3)).
  const auto sf = run({"cdf", "--z", "3", "--survival", "--format", "jsonl"});
  ASSERT_EQ(sf.code, vgr::cli::kExitOk) << sf.err;
  EXPECT_NEAR(nlohmann::json::parse(lines(sf.out).at(0)).at("value").get<double>(), 0.125, 1e-12);
}

TEST(CliTails, CoefficientTableWithoutAbscissae) {
  const auto r = run({"tails", "--m", "-0.25", "--n", "0.5"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "side,regime,coefficient");
  EXPECT_EQ(ls[1].rfind("origin,negative,", 0), 0u) << ls[1];
  EXPECT_EQ(ls[2].rfind("tail,positive,", 0), 0u) << ls[2];
}

TEST(CliNormalProduct, UncorrelatedAnchor) {
  const auto r = run({"normal-product", "--z", "1", "--format", "jsonl"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(lines(r.out).at(0));
  EXPECT_NEAR(j.at("value").get<double>(), 1.0 / (std::numbers::pi * std::numbers::pi), 1e-14);
  EXPECT_TRUE(j.contains("t"));
}

TEST(CliFigureData, EveryCurveOnTheDefaultGrid) {
  const auto r = run({"figure-data"});
  ASSERT_EQ(r.code, vgr::cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.at(0), "figure,curve,z,value,err,method");
  EXPECT_EQ(ls.size(), 1u + 160u * 11u);
}

TEST(CliVerify, SingleCriterionReportsPass) {
  const auto r = run({"verify", "--criterion", "1"});
  EXPECT_EQ(r.code, vgr::cli::kExitOk) << r.out;
  EXPECT_EQ(r.out.rfind("PASS C1 ", 0), 0u) << r.out;
}
