#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtower/charts.hpp"

namespace mtower::symmetry {

using algebra::Polynomial;
using algebra::RingPtr;
using algebra::Scalar;

/// A vector field A d/dt + B d/dx0 + C d/dy0 on the base (t, x0, y0).
struct BaseField {
  Polynomial A, B, C;

  /// A, B, C as the undetermined jet symbols "A", "B", "C" of the ring.
  static BaseField generic(const RingPtr& ring);
  /// Parses the three components over the ring.
  static BaseField parse(const RingPtr& ring, std::string_view a, std::string_view b, std::string_view c);
};

/// A prolonged base field: one polynomial component per chart coordinate.
struct SymmetryVector {
  geometry::FramePtr frame;
  std::vector<Polynomial> components;

  geometry::VectorField field() const;
};

/// Extends the base field stage by stage: V_k = V_{k-1} + P d/dxk + Q d/dyk,
/// with P, Q the polynomial solution of [V_k, W_k] = lambda W_k modulo the
/// fiber fields of stage k. Throws TruncationError when the ring's jets are
/// too short, DomainError when no polynomial solution exists.
SymmetryVector prolong_symmetry(const BaseField& base, const charts::Chart& chart);

/// Components with every chart coordinate set to 0; parameters and jet
/// symbols survive.
std::vector<Polynomial> evaluate_at_origin(const SymmetryVector& v);

/// The two newest components at the origin after imposing the vanishing of
/// all older components. Each constraint is solved for its first jet symbol
/// (in ring order) by Gauss-Jordan elimination over rational functions of the
/// parameters.
struct ConstrainedResidual {
  std::vector<algebra::RationalFunction> components;  ///< d/dxr and d/dyr slots
  std::vector<std::size_t> free_jets;                  ///< jet symbols left undetermined
  /// coefficients[i][j]: coefficient of free_jets[j] in components[i]
  std::vector<std::vector<algebra::RationalFunction>> coefficients;
  std::size_t span_dim = 0;  ///< rank of the coefficient matrix
};
ConstrainedResidual constrained_residual(const std::vector<Polynomial>& origin_values, const geometry::FramePtr& frame);

enum class Verdict { candidate_modulus, movable };
std::string to_string(Verdict v);

struct ModuliReport {
  flagcomb::ClassCode code;
  charts::ConstantAssignment constants;
  std::size_t span_dim = 0;
  /// Symbolic final-step directions (e.g. "x5", "y5") the reachable span misses.
  std::vector<std::string> blocked_directions;
  Verdict verdict = Verdict::movable;
  std::vector<std::string> residual;  ///< the two constrained components as text
};

/// Runs the analysis on one chart whose final-step constants may be symbolic.
ModuliReport analyze_moduli(const charts::Chart& chart);

/// Every code of the given length and every admissible constant assignment:
/// slots of steps 2..r-1 from the grid, final step with at least one
/// symbolic slot (b at x, c at y; letter 2 has only c). Reports come out in
/// (code, assignment) order regardless of threading.
std::vector<ModuliReport> moduli_scan(unsigned length, const std::vector<Scalar>& grid, std::size_t threads = 0);

/// The final-step constant choices and earlier-step assignments used by the scan.
std::vector<charts::ConstantAssignment> scan_assignments(const flagcomb::ClassCode& code,
                                                         const std::vector<Scalar>& grid);

}  // namespace mtower::symmetry
