#include <gtest/gtest.h>

#include "../support.hpp"
#include "mtower/charts.hpp"
#include "mtower/geometry.hpp"
#include "mtower/symmetry.hpp"

using namespace mtower;
using namespace mtower::symmetry;
using algebra::Scalar;

namespace {

charts::Chart with_jets(const std::string& fixture, std::size_t order) {
  charts::ChartOptions o;
  o.jet_order = order;
  return charts::build_fixture(fixture, o);
}

std::vector<std::string> strings(const std::vector<algebra::Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace

TEST(Symmetry, OriginValuesFor121two) {
  auto chart = with_jets("121two", 6);
  auto v = prolong_symmetry(BaseField::generic(chart.ring()), chart);
  EXPECT_EQ(strings(evaluate_at_origin(v)),
            (std::vector<std::string>{"A", "B", "C", "B_t", "C_t", "0", "C_x0", "0", "A_t - 2*B_x0 + C_y0", "0", "0",
                                      "-3*b*A_t + 5*b*B_x0 - 2*b*C_y0", "c*A_t + 2*c*B_x0 - 2*c*C_y0"}));
}

TEST(Symmetry, ConstrainedResidualFor121two) {
  auto chart = with_jets("121two", 6);
  auto v = prolong_symmetry(BaseField::generic(chart.ring()), chart);
  auto res = constrained_residual(evaluate_at_origin(v), chart.frame());
  ASSERT_EQ(res.components.size(), 2u);
  EXPECT_EQ(res.components[0].to_string(), "-b*B_x0 + b*C_y0");
  EXPECT_EQ(res.components[1].to_string(), "4*c*B_x0 - 3*c*C_y0");
  EXPECT_EQ(res.span_dim, 2u);
}

TEST(Symmetry, TranslationProlongsTrivially) {
  auto chart = charts::build_chart("1.1.1", {});
  auto v = prolong_symmetry(BaseField::parse(chart.ring(), "1", "0", "0"), chart);
  EXPECT_EQ(strings(v.components), (std::vector<std::string>{"1", "0", "0", "0", "0", "0", "0", "0", "0"}));
}

TEST(Symmetry, TimeScalingOnContactSystem) {
  // Under t -> e^s t the fiber coordinates x_k, y_k carry weight -k.
  auto chart = charts::build_chart("1.1", {});
  auto v = prolong_symmetry(BaseField::parse(chart.ring(), "t", "0", "0"), chart);
  EXPECT_EQ(strings(v.components), (std::vector<std::string>{"t", "0", "0", "-x1", "-y1", "-2*x2", "-2*y2"}));
}

TEST(Symmetry, ZeroFieldProlongsToZero) {
  auto chart = with_jets("zzz", 6);
  auto v = prolong_symmetry(BaseField::parse(chart.ring(), "0", "0", "0"), chart);
  for (const auto& c : evaluate_at_origin(v)) EXPECT_TRUE(c.is_zero());
}

TEST(Symmetry, ProlongationPreservesTheDistribution) {
  for (const auto& fx : charts::named_fixtures()) {
    auto chart = with_jets(fx.name, 7);
    auto v = prolong_symmetry(BaseField::generic(chart.ring()), chart).field();
    auto d = chart.distribution();
    for (const auto& z : chart.generators()) EXPECT_TRUE(d.contains(geometry::lie_bracket(v, z))) << fx.name;
  }
}

TEST(Symmetry, OriginValuesStableUnderTruncation) {
  for (const auto& fx : charts::named_fixtures()) {
    auto low = with_jets(fx.name, 6), high = with_jets(fx.name, 7);
    auto a = evaluate_at_origin(prolong_symmetry(BaseField::generic(low.ring()), low));
    auto b = evaluate_at_origin(prolong_symmetry(BaseField::generic(high.ring()), high));
    EXPECT_EQ(strings(a), strings(b)) << fx.name;
  }
}

TEST(Symmetry, ProlongationIsLinear) {
  auto chart = charts::build_fixture("121two");
  const auto& ring = chart.ring();
  auto x = prolong_symmetry(BaseField::parse(ring, "1 + t*x0", "t^2", "y0 - x0"), chart);
  auto y = prolong_symmetry(BaseField::parse(ring, "x0", "t*y0", "1 + t"), chart);
  auto z = prolong_symmetry(BaseField::parse(ring, "2 + 2*t*x0 - 3*x0", "2*t^2 - 3*t*y0", "2*y0 - 2*x0 - 3 - 3*t"),
                            chart);
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    EXPECT_EQ(z.components[i], x.components[i] * algebra::Polynomial(ring, Scalar(2)) -
                                   y.components[i] * algebra::Polynomial(ring, Scalar(3)));
  }
}

TEST(Symmetry, FixtureVerdicts) {
  EXPECT_EQ(analyze_moduli(charts::build_fixture("zzz")).verdict, Verdict::candidate_modulus);
  EXPECT_EQ(analyze_moduli(charts::build_fixture("212")).verdict, Verdict::candidate_modulus);
  EXPECT_EQ(analyze_moduli(charts::build_fixture("121")).verdict, Verdict::candidate_modulus);
  EXPECT_EQ(analyze_moduli(charts::build_fixture("121two")).verdict, Verdict::movable);
  EXPECT_EQ(analyze_moduli(charts::build_fixture("121three")).verdict, Verdict::movable);
  EXPECT_EQ(analyze_moduli(charts::build_fixture("123one")).verdict, Verdict::movable);
  auto zzz = analyze_moduli(charts::build_fixture("zzz"));
  EXPECT_EQ(zzz.span_dim, 0u);
  EXPECT_EQ(zzz.blocked_directions, std::vector<std::string>{"y5"});
}

TEST(Symmetry, ScanAssignmentCounts) {
  std::vector<Scalar> grid{Scalar(0), Scalar(1)};
  EXPECT_EQ(scan_assignments(flagcomb::validate_code("1.2.1.2.1"), grid).size(), 80u);
  EXPECT_EQ(scan_assignments(flagcomb::validate_code("1.2.2.1.2"), grid).size(), 16u);
  EXPECT_EQ(scan_assignments(flagcomb::validate_code("1.2.3.1.2"), grid).size(), 8u);
}

TEST(Symmetry, TangencyStratumOf12121) {
  auto code = flagcomb::validate_code("1.2.1.2.1");
  std::size_t flagged = 0;
  for (const auto& a : scan_assignments(code, {Scalar(0), Scalar(1)})) {
    auto report = analyze_moduli(charts::build_chart(code, a));
    if (report.verdict != Verdict::candidate_modulus) continue;
    ++flagged;
    const auto& last = a.at(5);
    ASSERT_TRUE(last.x.has_value());
    EXPECT_EQ(charts::to_string(*last.x), "0");
    EXPECT_EQ(report.blocked_directions, std::vector<std::string>{"y5"});
  }
  EXPECT_EQ(flagged, 4u);
}
