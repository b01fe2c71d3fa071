#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "mtower/cli.hpp"

using mtower::cli::run;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EnumerateCount) {
  auto r = call({"enumerate", "--m", "2", "--length", "5", "--count"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "41\n");
  auto list = call({"enumerate", "--length", "3"});
  EXPECT_EQ(list.out, "1.1.1\n1.1.2\n1.2.1\n1.2.2\n1.2.3\n");
}

TEST(Cli, CodimAndSandwich) {
  EXPECT_EQ(call({"codim", "--code", "1.2.3.1.2"}).out, "4\n");
  EXPECT_EQ(call({"sandwich", "--code", "1.2.3.1.2"}).out, "1.S.S.1.S\n");
  auto j = nlohmann::json::parse(call({"codim", "--code", "1.2.3.1.2", "--format", "json"}).out);
  EXPECT_EQ(j["schema"], mtower::cli::kSchema);
  EXPECT_EQ(j["code"], "1.2.3.1.2");
  EXPECT_EQ(j["codim"], 4);
  EXPECT_EQ(j["sandwich"], "1.S.S.1.S");
}

TEST(Cli, ChartJson) {
  auto r = call({"chart", "--code", "1.2.3.1.2", "--const", "step4=1,1", "--const", "step5=y:a", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["coordinates"].size(), 13u);
  EXPECT_EQ(j["generators"].size(), 3u);
  EXPECT_EQ(j["generators"][0][10], "y5 + a");
  EXPECT_EQ(j["constants"], nlohmann::json({"step4=1,1", "step5=y:a"}));
  auto fixture = call({"chart", "--fixture", "zzz", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(fixture.out)["generators"], j["generators"]);
}

TEST(Cli, PfaffAndFlags) {
  auto p = call({"pfaff", "--fixture", "212"});
  EXPECT_NE(p.out.find("dx2 - x5*dx4 = 0"), std::string::npos);
  auto f = nlohmann::json::parse(call({"derived-flag", "--fixture", "zzz", "--format", "json"}).out);
  EXPECT_EQ(f["generic_ranks"], nlohmann::json({3, 5, 7, 9, 11, 13}));
  auto c = call({"cauchy", "--fixture", "zzz", "--of-square"});
  EXPECT_EQ(c.out, "rank 2\nd_x5\nd_y5\n");
  auto v = nlohmann::json::parse(call({"verify-sandwich", "--fixture", "121", "--format", "json"}).out);
  EXPECT_TRUE(v["sandwich_holds"].get<bool>());
}

TEST(Cli, Symmetries) {
  auto r = call({"symmetries", "--fixture", "121two", "--constrained", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["components"]["y3"], "A_t - 2*B_x0 + C_y0");
  EXPECT_EQ(j["residual"], nlohmann::json({"-b*B_x0 + b*C_y0", "4*c*B_x0 - 3*c*C_y0"}));
  EXPECT_EQ(j["verdict"], "movable");
}

TEST(Cli, Rescale) {
  auto r = call({"rescale", "--fixture", "121two", "--target", "b=1,c=1", "--verify", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["scaling"]["t"], "b^2*c");
  EXPECT_EQ(j["scaling"]["y3"], "1");
  EXPECT_TRUE(j["verified"]["c<0"].get<bool>());
  auto bad = call({"rescale", "--fixture", "123one", "--target", "b=1,c=1"});
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.err.find("no diagonal scaling"), std::string::npos);
}

TEST(Cli, Fixtures) {
  auto j = nlohmann::json::parse(call({"fixtures", "--format", "json"}).out);
  ASSERT_EQ(j["fixtures"].size(), 6u);
  EXPECT_EQ(j["fixtures"][0]["name"], "zzz");
  EXPECT_EQ(j["fixtures"][0]["pfaffian"].size(), 10u);
}

TEST(Cli, DomainErrorsExitWithTwo) {
  EXPECT_EQ(call({"codim", "--code", "1.3"}).status, 2);
  EXPECT_EQ(call({"chart", "--fixture", "nope"}).status, 2);
  EXPECT_EQ(call({"chart", "--code", "1.2", "--const", "step2=1"}).status, 2);
  EXPECT_EQ(call({"chart", "--code", "1.2", "--bogus"}).status, 2);
  EXPECT_EQ(call({"chart"}).status, 2);
  EXPECT_EQ(call({"frobnicate"}).status, 2);
  EXPECT_EQ(call({"enumerate", "--length", "3", "--format", "xml"}).status, 2);
}

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::string> args{"symmetries", "--fixture", "zzz", "--at-origin", "--format", "json"};
  EXPECT_EQ(call(args).out, call(args).out);
}
