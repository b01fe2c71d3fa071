#pragma once

#include <string>
#include <vector>

#include "mtower/charts.hpp"
#include "mtower/flagcomb.hpp"
#include "mtower/geometry.hpp"

namespace mtower::test_support {

/// Every numeric constant assignment over `grid` for the slots a code admits
/// (steps 2..r; both slots for letter 1, the y slot for letter 2).
inline std::vector<charts::ConstantAssignment> grid_assignments(const flagcomb::ClassCode& code,
                                                                const std::vector<algebra::Scalar>& grid) {
  struct Slot {
    std::size_t step;
    bool is_x;
  };
  std::vector<Slot> slots;
  for (std::size_t k = 2; k <= code.length(); ++k) {
    unsigned letter = code.letters[k - 1];
    if (letter == 1) slots.push_back({k, true});
    if (letter <= 2) slots.push_back({k, false});
  }
  std::vector<charts::ConstantAssignment> out;
  std::vector<std::size_t> idx(slots.size(), 0);
  while (true) {
    charts::ConstantAssignment a;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto& sc = a[slots[i].step];
      (slots[i].is_x ? sc.x : sc.y) = charts::SlotValue(grid[idx[i]]);
    }
    out.push_back(a);
    std::size_t i = slots.size();
    while (i > 0 && idx[i - 1] + 1 == grid.size()) idx[--i] = 0;
    if (i == 0) break;
    ++idx[i - 1];
  }
  return out;
}

}  // namespace mtower::test_support

namespace mtower::algebra {

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const RationalFunction& f, std::ostream* os) { *os << f.to_string(); }

}  // namespace mtower::algebra

namespace mtower::geometry {

inline void PrintTo(const VectorField& v, std::ostream* os) { *os << v.to_string(); }

}  // namespace mtower::geometry
