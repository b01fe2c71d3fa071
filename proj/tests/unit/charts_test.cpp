#include <gtest/gtest.h>

#include <random>

#include "../support.hpp"
#include "mtower/charts.hpp"
#include "mtower/errors.hpp"

using namespace mtower;
using namespace mtower::charts;
using algebra::Assignment;
using algebra::RFVector;
using algebra::Scalar;

namespace {

std::vector<RFVector> reference_forms(const Chart& chart, const Fixture& f) {
  std::vector<RFVector> out;
  for (const auto& line : f.pfaffian) out.push_back(parse_form(chart.frame(), line));
  return out;
}

Assignment random_point(const Chart& chart, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  Assignment p;
  for (std::size_t i = 0; i < chart.dim(); ++i) p[chart.frame()->name(i)] = Scalar(num(rng), den(rng));
  for (const auto& name : chart.parameters()) p[name] = Scalar(num(rng), den(rng));
  return p;
}

}  // namespace

TEST(Charts, FixturePfaffianSpansMatchReference) {
  for (const auto& f : named_fixtures()) {
    auto chart = build_fixture(f.name);
    auto forms = pfaffian_system(chart).forms;
    auto ref = reference_forms(chart, f);
    ASSERT_EQ(ref.size(), 10u) << f.name;
    EXPECT_EQ(forms.size(), 10u) << f.name;
    EXPECT_TRUE(form_span_equal(chart.frame(), forms, ref)) << f.name;
  }
}

TEST(Charts, FormsAnnihilateGenerators) {
  for (const auto& f : named_fixtures()) {
    auto chart = build_fixture(f.name);
    for (const auto& form : pfaffian_system(chart).forms)
      for (const auto& z : chart.generators()) EXPECT_TRUE(contract(form, z).is_zero()) << f.name;
    for (const auto& form : reference_forms(chart, f))
      for (const auto& z : chart.generators()) EXPECT_TRUE(contract(form, z).is_zero()) << f.name;
  }
}

TEST(Charts, FormsAnnihilateOnEveryShortChart) {
  for (unsigned r = 1; r <= 4; ++r) {
    for (const auto& code : flagcomb::enumerate_codes(2, r)) {
      for (const auto& a : test_support::grid_assignments(code, {Scalar(-1), Scalar(0), Scalar(1)})) {
        auto chart = build_chart(code, a);
        auto forms = pfaffian_system(chart).forms;
        ASSERT_EQ(forms.size(), 2 * r);
        for (const auto& form : forms)
          for (const auto& z : chart.generators()) ASSERT_TRUE(contract(form, z).is_zero()) << code.to_string();
      }
    }
  }
}

TEST(Charts, GeneratorsIndependentEverywhere) {
  std::mt19937 rng(41);
  for (const auto& code : flagcomb::enumerate_codes(2, 5)) {
    for (const auto& a : test_support::grid_assignments(code, {Scalar(-1), Scalar(0), Scalar(1)})) {
      auto d = build_chart(code, a).distribution();
      ASSERT_EQ(d.rank_at_origin(), std::optional<std::size_t>(3)) << code.to_string();
    }
    auto chart = build_chart(code, {});
    for (int i = 0; i < 5; ++i) EXPECT_EQ(chart.distribution().rank_at(random_point(chart, rng)), 3u);
  }
}

TEST(Charts, ZzzMainGenerator) {
  auto chart = build_fixture("zzz");
  EXPECT_EQ(chart.main_generator().to_string(),
            "x2*x3*x5*d_t + x1*x2*x3*x5*d_x0 + y1*x2*x3*x5*d_y0 + x3*x5*d_x1 + y2*x3*x5*d_y1 + y3*x5*d_x2 + x5*d_y2 "
            "+ (x4*x5 + x5)*d_x3 + (y4*x5 + x5)*d_y3 + d_x4 + (y5 + a)*d_y4");
  EXPECT_EQ(chart.dim(), 13u);
  EXPECT_EQ(chart.parameters(), std::vector<std::string>{"a"});
}

TEST(Charts, FixtureFinalCoefficients) {
  auto two = build_fixture("121two");
  EXPECT_EQ(two.main_generator()[Chart::x_slot(4)].to_string(), "x5 + b");
  EXPECT_EQ(two.main_generator()[Chart::y_slot(4)].to_string(), "y5 + c");
  auto t121 = build_fixture("121");
  EXPECT_EQ(t121.main_generator()[Chart::x_slot(4)].to_string(), "x5");
  EXPECT_EQ(t121.main_generator()[Chart::y_slot(4)].to_string(), "y5 + c");
  auto one = build_fixture("123one");
  EXPECT_EQ(one.pivot(4), Chart::y_slot(3));
}

TEST(Charts, ContactSystem) {
  auto chart = build_chart("1.1", {});
  EXPECT_EQ(chart.main_generator().to_string(), "d_t + x1*d_x0 + y1*d_y0 + x2*d_x1 + y2*d_y1");
  auto frame = chart.frame();
  std::vector<RFVector> contact;
  for (const char* f : {"dx0 - x1*dt", "dy0 - y1*dt", "dx1 - x2*dt", "dy1 - y2*dt"}) contact.push_back(parse_form(frame, f));
  EXPECT_TRUE(form_span_equal(frame, pfaffian_system(chart).forms, contact));
  EXPECT_EQ(pfaffian_system(chart).to_strings()[0], "dx0 - x1*dt");
}

TEST(Charts, TruncationIsFunctorial) {
  for (const auto& code : flagcomb::enumerate_codes(2, 5)) {
    for (const auto& a : test_support::grid_assignments(code, {Scalar(0), Scalar(1)})) {
      auto chart = build_chart(code, a);
      flagcomb::ClassCode prefix{2, {code.letters.begin(), code.letters.end() - 1}};
      ConstantAssignment shorter = a;
      shorter.erase(5);
      auto small = build_chart(prefix, shorter);
      ASSERT_EQ(small.main_generator().to_string(), chart.stage_generator(4).to_string()) << code.to_string();
    }
  }
}

TEST(Charts, ForbiddenConstantsRejected) {
  EXPECT_THROW(build_chart("1.1", parse_constants({"step1=1,1"})), DomainError);
  EXPECT_THROW(build_chart("1.2.3", parse_constants({"step3=y:1"})), DomainError);
  EXPECT_THROW(build_chart("1.2.3", parse_constants({"step3=0,0"})), DomainError);
  EXPECT_THROW(build_chart("1.2", parse_constants({"step2=x:0"})), DomainError);
  EXPECT_THROW(build_chart("1.2", parse_constants({"step3=1,1"})), DomainError);
  EXPECT_THROW(build_chart("1.3", {}), DomainError);
  EXPECT_THROW(parse_constants({"step2=1"}), DomainError);
  EXPECT_THROW(parse_constants({"stepx=1,1"}), DomainError);
  EXPECT_NO_THROW(build_chart("1.2", parse_constants({"step2=y:1/2"})));
}

TEST(Charts, ConstantSpecsRoundTrip) {
  auto a = parse_constants({"step4=1,1", "step5=y:a", "step3=x:-1/2"});
  EXPECT_EQ(constant_specs(a), (std::vector<std::string>{"step3=x:-1/2", "step4=1,1", "step5=y:a"}));
  EXPECT_EQ(parse_constants(constant_specs(a)).size(), 3u);
}

TEST(Charts, SpecializedReplacesParameters) {
  auto chart = build_fixture("121two").specialized({{"b", Scalar(2)}, {"c", Scalar(-1)}});
  EXPECT_TRUE(chart.parameters().empty());
  EXPECT_EQ(chart.main_generator()[Chart::x_slot(4)].to_string(), "x5 + 2");
  EXPECT_EQ(chart.main_generator()[Chart::y_slot(4)].to_string(), "y5 - 1");
}

TEST(Charts, UnknownFixture) { EXPECT_THROW(build_fixture("nope"), DomainError); }
