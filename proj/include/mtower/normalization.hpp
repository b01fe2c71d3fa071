#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtower/charts.hpp"

namespace mtower::normalization {

using algebra::Scalar;

/// The factor b^b_exp * |c|^c_exp * sgn(c)^sign of one coordinate.
struct Exponent {
  Scalar b_exp = 0;
  Scalar c_exp = 0;
  unsigned sign = 0;  ///< 0 or 1

  friend bool operator==(const Exponent&, const Exponent&) = default;
  /// e.g. "b^2*|c|^(-1/2)*sgn(c)"; "1" for the trivial factor.
  std::string to_string() const;
};

/// Diagonal rescaling x_i = factor_i * xbar_i of every chart coordinate.
struct DiagonalScaling {
  std::vector<Exponent> factors;

  static DiagonalScaling identity(std::size_t n) { return {std::vector<Exponent>(n)}; }
  /// Builds from (coordinate name, factor) pairs; unlisted coordinates get 1.
  static DiagonalScaling from_table(const charts::Chart& chart, const std::map<std::string, Exponent>& table);
};

enum class SignBranch { positive, negative };
std::string to_string(SignBranch s);

/// Where a parameter should land: a number, or sgn(c).
struct TargetValue {
  std::optional<Scalar> value;  ///< nullopt means sgn(c)
  static TargetValue number(Scalar v) { return {std::move(v)}; }
  static TargetValue sign_of_c() { return {std::nullopt}; }
  std::string to_string() const;
};
using Target = std::map<std::string, TargetValue>;
/// Parses "b=1,c=1" or "b=1,c=sgn".
Target parse_target(std::string_view text);

/// The chart rebuilt over a ring that also carries the symbol s used for
/// |c|^(1/2). Charts that already carry s are returned unchanged. Pass the
/// result to apply_scaling and target_distribution so both share one ring.
charts::Chart with_root_symbol(const charts::Chart& chart);

/// Pushes the chart distribution forward under the scaling. The parameter c
/// (if present) is rewritten as sgn * s^2 with the formal symbol s = |c|^(1/2),
/// so the result lives over the chart ring extended by s. Throws DomainError
/// when a |c| exponent is not a multiple of 1/2 or a b exponent is fractional.
geometry::Distribution apply_scaling(const charts::Chart& chart, const DiagonalScaling& scaling, SignBranch branch);

/// The chart distribution with parameters replaced by their targets, over
/// the same ring and frame as apply_scaling produces.
geometry::Distribution target_distribution(const charts::Chart& chart, const Target& target, SignBranch branch);

/// apply_scaling followed by distribution_equal against the target.
bool verify_scaling(const charts::Chart& chart, const DiagonalScaling& scaling, const Target& target,
                    SignBranch branch);

/// Rows of a linear system with right-hand side.
struct LinearSystem {
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
};

/// Affine solution set of a linear system: particular + span(kernel).
struct AffineSolution {
  bool consistent = false;
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> kernel;
};

/// Exponent systems making the main generator rescale to a multiple of the
/// target main generator. Unknowns are the chart coordinates' exponents
/// followed by the multiplier's exponent.
struct ScalingSolution {
  AffineSolution b_part;
  AffineSolution c_part;
  AffineSolution sign_part;  ///< over GF(2)
  /// Empty when the chart lacks the parameter.
  LinearSystem b_system, c_system, sign_system;
  bool consistent = false;
  DiagonalScaling scaling;  ///< the particular member
  Exponent multiplier;
  std::map<std::string, std::string> residual_params;

  /// Whether the given scaling is a member of the solution set.
  bool contains(const DiagonalScaling& s) const;
};

ScalingSolution solve_scaling_weights(const charts::Chart& chart, const Target& target);

/// Solves a linear system over the rationals, or over GF(2) when `mod2`.
AffineSolution solve_affine(const LinearSystem& system, std::size_t unknowns, bool mod2 = false);

enum class Boundary { b_zero, c_zero };

/// Sets the named parameter to 0 and solves for the other parameter going to
/// 1. With both parameters absent or zero the identity is returned.
struct BoundaryResult {
  charts::Chart chart;  ///< the specialized chart
  Target target;
  ScalingSolution solution;
  bool verified_positive = false;
  bool verified_negative = false;
};
BoundaryResult normalize_boundary_cases(const charts::Chart& chart, Boundary which);

}  // namespace mtower::normalization
