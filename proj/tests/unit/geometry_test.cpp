#include <gtest/gtest.h>

#include <random>

#include "../support.hpp"
#include "mtower/charts.hpp"
#include "mtower/errors.hpp"
#include "mtower/geometry.hpp"

using namespace mtower;
using namespace mtower::geometry;
using algebra::Assignment;
using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::Scalar;

namespace {

RationalFunction rf(const FramePtr& frame, const char* text) {
  return RationalFunction(algebra::parse_polynomial(frame->ring, text));
}

VectorField random_field(const FramePtr& frame, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
  VectorField v(frame);
  for (std::size_t i = 0; i < frame->dim(); ++i) {
    Polynomial p(frame->ring);
    for (int t = 0; t < 3; ++t) {
      Polynomial term(frame->ring, Scalar(coef(rng)));
      for (std::size_t j = 0; j < frame->dim(); ++j) term *= Polynomial::variable(frame->ring, frame->coords[j], ex(rng));
      p += term;
    }
    v[i] = RationalFunction(p);
  }
  return v;
}

Assignment random_point(const FramePtr& frame, const std::vector<std::string>& params, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 5), sign(0, 1);
  auto value = [&] { return Scalar(sign(rng) ? num(rng) : -num(rng), den(rng)); };
  Assignment p;
  for (std::size_t i = 0; i < frame->dim(); ++i) p[frame->name(i)] = value();
  for (const auto& name : params) p[name] = value();
  return p;
}

}  // namespace

TEST(Geometry, BracketExamples) {
  auto chart = charts::build_fixture("zzz");
  auto f = chart.frame();
  auto z = chart.main_generator();
  EXPECT_EQ(lie_bracket(VectorField::coordinate(f, "x5"), z), chart.stage_generator(4));
  EXPECT_EQ(lie_bracket(VectorField::coordinate(f, "y5"), z), VectorField::coordinate(f, "y4"));
  EXPECT_TRUE(lie_bracket(VectorField::coordinate(f, "t"), VectorField::coordinate(f, "x0")).is_zero());
}

TEST(Geometry, BracketIsAntisymmetricAndJacobi) {
  auto ring = algebra::RingBuilder().coordinate("u").coordinate("v").coordinate("w").build();
  auto frame = make_frame(ring, {"u", "v", "w"});
  std::mt19937 rng(13);
  for (int i = 0; i < 10; ++i) {
    auto a = random_field(frame, rng), b = random_field(frame, rng), c = random_field(frame, rng);
    auto ab = lie_bracket(a, b);
    auto ba = lie_bracket(b, a);
    ba += ab;
    EXPECT_TRUE(ba.is_zero());
    auto j = lie_bracket(a, lie_bracket(b, c));
    j += lie_bracket(b, lie_bracket(c, a));
    j += lie_bracket(c, lie_bracket(a, b));
    EXPECT_TRUE(j.is_zero());
  }
}

TEST(Geometry, ApplyAndPrinting) {
  auto chart = charts::build_chart("1.1", {});
  auto f = chart.frame();
  auto w = chart.main_generator();
  EXPECT_EQ(w.apply(rf(f, "x0*t")).to_string(), "t*x1 + x0");
  VectorField v(f, {rf(f, "0"), rf(f, "0"), rf(f, "0"), rf(f, "0"), rf(f, "0"), rf(f, "1"), rf(f, "y1 + 2")});
  EXPECT_EQ(v.to_string(), "d_x2 + (y1 + 2)*d_y2");
}

TEST(Geometry, DerivedFlagRanks) {
  for (const auto& fx : charts::named_fixtures()) {
    auto report = derived_flag(charts::build_fixture(fx.name).distribution(), 5);
    EXPECT_EQ(report.generic_ranks(), (std::vector<std::size_t>{3, 5, 7, 9, 11, 13})) << fx.name;
  }
  auto contact = derived_flag(charts::build_chart("1.1", {}).distribution(), 2);
  EXPECT_EQ(contact.generic_ranks(), (std::vector<std::size_t>{3, 5, 7}));
  EXPECT_EQ(charts::build_chart("1.1", {}).dim(), 7u);
}

TEST(Geometry, DerivedFlagRankSpotChecks) {
  auto chart = charts::build_fixture("121two").specialized({{"b", Scalar(1)}, {"c", Scalar(1)}});
  auto levels = derived_flag_levels(chart.distribution(), 5);
  std::mt19937 rng(31);
  const std::size_t expected[] = {3, 5, 7, 9, 11, 13};
  for (int trial = 0; trial < 3; ++trial) {
    auto p = random_point(chart.frame(), {}, rng);
    for (std::size_t k = 0; k < levels.size(); ++k) EXPECT_EQ(levels[k].rank_at(p), expected[k]);
  }
}

TEST(Geometry, CauchyCharacteristics) {
  auto chart = charts::build_fixture("zzz");
  auto f = chart.frame();
  auto square = derived_flag_levels(chart.distribution(), 1).back();
  auto l = cauchy_characteristics(square);
  Distribution expected(f, {VectorField::coordinate(f, "x5"), VectorField::coordinate(f, "y5")});
  EXPECT_TRUE(distribution_equal(l, expected));
  for (const auto& fx : charts::named_fixtures()) {
    EXPECT_EQ(cauchy_characteristics(charts::build_fixture(fx.name).distribution()).rank(), 0u) << fx.name;
  }
  auto tm = Distribution::tangent_bundle(f);
  EXPECT_EQ(cauchy_characteristics(tm).rank(), 13u);
}

TEST(Geometry, CauchyModuleIsCharacteristic) {
  auto chart = charts::build_fixture("121");
  auto levels = derived_flag_levels(chart.distribution(), 4);
  for (const auto& d : levels) {
    auto c = cauchy_characteristics(d);
    for (const auto& v : c.generators()) {
      EXPECT_TRUE(d.contains(v));
      for (const auto& g : d.generators()) EXPECT_TRUE(d.contains(lie_bracket(v, g)));
    }
  }
}

TEST(Geometry, SandwichProfile) {
  for (const char* which : {"zzz", "121two"}) {
    auto report = verify_sandwich(charts::build_fixture(which));
    EXPECT_TRUE(report.sandwich_holds) << which;
    std::vector<std::size_t> l_ranks;
    for (std::size_t k = 0; k < 5; ++k) l_ranks.push_back(report.levels[k].cauchy_rank.value_or(99));
    EXPECT_EQ(l_ranks, (std::vector<std::size_t>{0, 2, 4, 6, 8})) << which;
    for (std::size_t k = 1; k < 5; ++k) {
      EXPECT_EQ(report.levels[k].cauchy_in_next, std::optional<bool>(true));
      EXPECT_EQ(report.levels[k].vertical_corank, std::optional<std::size_t>(1));
      EXPECT_EQ(report.levels[k].horizontal_codim, std::optional<std::size_t>(2));
    }
  }
  auto ones = verify_sandwich(charts::build_chart("1.1.1.1.1", {}));
  EXPECT_TRUE(ones.sandwich_holds);
  auto single = verify_sandwich(charts::build_chart("1", {}));
  EXPECT_TRUE(single.sandwich_holds);
  EXPECT_EQ(single.levels[0].cauchy_rank, std::optional<std::size_t>(0));
}

TEST(Geometry, DistributionEquality) {
  auto chart = charts::build_fixture("zzz");
  auto f = chart.frame();
  auto w = chart.main_generator();
  auto x5 = VectorField::coordinate(f, "x5"), y5 = VectorField::coordinate(f, "y5");
  auto shifted = w;
  auto term = x5;
  term *= rf(f, "x5");
  shifted += term;
  Distribution d1(f, {w, x5, y5}), d2(f, {shifted, x5, y5});
  EXPECT_TRUE(distribution_equal(d1, d2));
  EXPECT_TRUE(distribution_equal(d2, d1));
  EXPECT_TRUE(distribution_equal(d1, d1));
  EXPECT_FALSE(distribution_equal(Distribution(f, {x5}), Distribution(f, {y5})));
  auto scaled = w;
  scaled *= rf(f, "x1 + 3");
  Distribution d3(f, {scaled, y5, x5});
  EXPECT_TRUE(distribution_equal(d2, d3));
  EXPECT_TRUE(distribution_equal(d1, d3));
  EXPECT_THROW(Distribution(f, {x5, x5}), DomainError);
}

TEST(Geometry, Pushforward) {
  auto chart = charts::build_fixture("121two");
  auto f = chart.frame();
  auto id = DiagonalMap::identity(f);
  EXPECT_EQ(pushforward(id, chart.main_generator()), chart.main_generator());
  auto scale = DiagonalMap::identity(f);
  scale.scale[*f->slot_of("x5")] = rf(f, "b");
  auto pushed = pushforward(scale, VectorField::coordinate(f, "x5"));
  EXPECT_EQ(pushed[*f->slot_of("x5")], RationalFunction(algebra::parse_polynomial(f->ring, "1"),
                                                         algebra::parse_polynomial(f->ring, "b")));
}

TEST(Geometry, PushforwardRespectsBrackets) {
  auto chart = charts::build_fixture("121two");
  auto f = chart.frame();
  auto map = DiagonalMap::identity(f);
  const char* factors[] = {"b^2*c", "b^3*c", "b^4*c", "b", "b^2", "b*c", "b", "c", "1", "b", "c", "b", "c"};
  for (std::size_t i = 0; i < f->dim(); ++i) map.scale[i] = rf(f, factors[i]);
  auto gens = chart.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      EXPECT_EQ(pushforward(map, lie_bracket(gens[i], gens[j])),
                lie_bracket(pushforward(map, gens[i]), pushforward(map, gens[j])));
}
