#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mtower/errors.hpp"
#include "mtower/flagcomb.hpp"

using namespace mtower;
using namespace mtower::flagcomb;

namespace {

// Every word over {1, ..., m+1} starting with 1 in which no letter exceeds the
// running maximum by more than one.
std::vector<std::string> brute_force_codes(unsigned m, unsigned r) {
  std::vector<std::string> out;
  std::vector<unsigned> w(r, 1);
  while (true) {
    bool ok = w[0] == 1;
    unsigned top = 1;
    for (unsigned i = 1; i < r && ok; ++i) {
      if (w[i] > top + 1) ok = false;
      top = std::max(top, w[i]);
    }
    if (ok) {
      std::string s;
      for (unsigned i = 0; i < r; ++i) s += (i ? "." : "") + std::to_string(w[i]);
      out.push_back(s);
    }
    unsigned i = r;
    while (i > 0 && w[i - 1] == m + 1) w[--i] = 1;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

}  // namespace

TEST(Flagcomb, CountsForWidthTwo) {
  const std::uint64_t expected[] = {1, 2, 5, 14, 41};
  for (unsigned r = 1; r <= 5; ++r) {
    EXPECT_EQ(count_codes(2, r), expected[r - 1]);
    EXPECT_EQ(enumerate_codes(2, r).size(), expected[r - 1]);
  }
}

TEST(Flagcomb, EnumerationMatchesBruteForce) {
  for (unsigned m : {2u, 3u, 4u}) {
    for (unsigned r = 1; r <= 6; ++r) {
      std::vector<std::string> listed;
      for (const auto& c : enumerate_codes(m, r)) listed.push_back(c.to_string());
      EXPECT_EQ(listed, brute_force_codes(m, r)) << "m=" << m << " r=" << r;
    }
  }
}

TEST(Flagcomb, CountRecursion) {
  for (unsigned m : {2u, 3u, 4u}) {
    for (unsigned r = 1; r <= 7; ++r) {
      std::uint64_t next = 0;
      for (const auto& c : enumerate_codes(m, r)) next += 1 + std::min(m, c.max_letter());
      EXPECT_EQ(count_codes(m, r + 1), next);
    }
  }
}

TEST(Flagcomb, CountsNearThreeToTheROverSix) {
  // at r = 1 the bound is attained: |1 - 1/2| = 1/2
  for (unsigned r = 2; r <= 10; ++r) {
    double approx = std::pow(3.0, r) / 6.0;
    EXPECT_LT(std::abs(static_cast<double>(count_codes(2, r)) - approx), approx);
  }
}

TEST(Flagcomb, EveryEnumeratedCodeValidates) {
  for (const auto& c : enumerate_codes(2, 6)) EXPECT_NO_THROW(validate_code(c.to_string()));
}

TEST(Flagcomb, ValidationErrors) {
  EXPECT_THROW(validate_code("2.1"), DomainError);
  EXPECT_THROW(validate_code("1.3"), DomainError);
  EXPECT_THROW(validate_code("1.2.4"), DomainError);
  EXPECT_THROW(validate_code(""), DomainError);
  EXPECT_THROW(validate_code("1..2"), DomainError);
  EXPECT_THROW(validate_code("1.x"), DomainError);
  EXPECT_NO_THROW(validate_code("1.2.3.4", 3));
}

TEST(Flagcomb, Codimension) {
  EXPECT_EQ(codimension(validate_code("1.2.3")), 3u);
  EXPECT_EQ(codimension(validate_code("1.2.2.1.2")), 3u);
  EXPECT_EQ(codimension(validate_code("1.2.3.1.2")), 4u);
  EXPECT_EQ(codimension(validate_code("1.2.1.2.1")), 2u);
  std::string ones = "1";
  for (unsigned r = 1; r <= 8; ++r, ones += ".1") EXPECT_EQ(codimension(validate_code(ones)), 0u);
}

TEST(Flagcomb, SandwichClass) {
  EXPECT_EQ(sandwich_class(validate_code("1.2.3.1.2")).to_string(), "1.S.S.1.S");
  EXPECT_EQ(sandwich_class(validate_code("1.1.1")).to_string(), "1.1.1");
  std::set<std::string> seen;
  for (const auto& c : enumerate_codes(2, 5)) {
    auto s = sandwich_class(c);
    ClassCode again{2, {}};
    for (bool singular : s.singular) again.letters.push_back(singular ? 2 : 1);
    EXPECT_EQ(sandwich_class(again), s);
    seen.insert(s.to_string());
  }
  EXPECT_EQ(seen.size(), 16u);  // position 1 is always regular
}
