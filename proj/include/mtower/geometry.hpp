#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtower/algebra/linear.hpp"

namespace mtower::charts {
class Chart;
}

namespace mtower::geometry {

using algebra::Assignment;
using algebra::FractionFreeBasis;
using algebra::Polynomial;
using algebra::RationalFunction;
using algebra::RFVector;
using algebra::RingPtr;
using algebra::Scalar;

/// The coordinate system vector fields live on: an ordered subset of the ring
/// variables. Remaining ring variables (parameters, jets) are constants for
/// the purpose of vector fields, except that jets follow the chain rule.
struct Frame {
  RingPtr ring;
  std::vector<std::size_t> coords;

  std::size_t dim() const { return coords.size(); }
  const std::string& name(std::size_t i) const { return ring->name(coords[i]); }
  std::optional<std::size_t> slot_of(std::string_view name) const;
};
using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(RingPtr ring, const std::vector<std::string>& coordinate_names);

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(FramePtr frame);
  VectorField(FramePtr frame, RFVector coefficients);
  /// The coordinate field d/d(coordinate i).
  static VectorField coordinate(FramePtr frame, std::size_t i);
  static VectorField coordinate(FramePtr frame, std::string_view name);

  const FramePtr& frame() const { return frame_; }
  const RFVector& coefficients() const { return coeffs_; }
  const RationalFunction& operator[](std::size_t i) const { return coeffs_[i]; }
  RationalFunction& operator[](std::size_t i) { return coeffs_[i]; }
  std::size_t dim() const { return coeffs_.size(); }
  bool is_zero() const;

  /// Derivative of f along this field (total derivatives for jet coordinates).
  RationalFunction apply(const RationalFunction& f) const;
  Polynomial apply(const Polynomial& f) const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(const RationalFunction& f);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const RationalFunction& f, VectorField v) { return v *= f; }
  friend bool operator==(const VectorField& a, const VectorField& b);

  /// Nonzero terms "coef*d_name" joined by " + ", or "0".
  std::string to_string() const;

 private:
  FramePtr frame_;
  RFVector coeffs_;
};

/// Coordinate bracket V(W) - W(V). Throws DomainError for different frames.
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// A span of vector fields over the rational-function field. The stored
/// generators are linearly independent.
class Distribution {
 public:
  explicit Distribution(FramePtr frame);
  /// Throws DomainError if the generators are dependent or on other frames.
  Distribution(FramePtr frame, std::vector<VectorField> generators);
  /// Keeps only generators that enlarge the span.
  static Distribution spanned_by(FramePtr frame, const std::vector<VectorField>& candidates);
  static Distribution tangent_bundle(FramePtr frame);

  const FramePtr& frame() const { return frame_; }
  const std::vector<VectorField>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  const FractionFreeBasis& basis() const { return basis_; }

  bool contains(const VectorField& v) const;
  /// Adds v when it lies outside the span; returns whether it was added.
  bool add(const VectorField& v);
  /// Rank after setting every frame coordinate to 0 (parameters stay
  /// symbolic); nullopt when a denominator vanishes there.
  std::optional<std::size_t> rank_at_origin() const;
  std::optional<std::size_t> rank_at(const Assignment& point) const;

 private:
  FramePtr frame_;
  std::vector<VectorField> gens_;
  FractionFreeBasis basis_;
};

bool distribution_equal(const Distribution& a, const Distribution& b);

/// One level D^j of the derived flag.
struct FlagLevel {
  std::size_t index = 0;             ///< j, with D^r = the input distribution
  std::size_t generator_count = 0;   ///< candidates examined to build the level
  std::size_t generic_rank = 0;
  std::optional<std::size_t> origin_rank;
  std::optional<std::size_t> cauchy_rank;
  /// L(D^j) inside D^{j+1}, when checked.
  std::optional<bool> cauchy_in_next;
  /// rank(D^{j+1}) - rank(L(D^j)), when checked.
  std::optional<std::size_t> vertical_corank;
  /// rank(L(D^j)) - rank(L(D^{j+1})), when checked.
  std::optional<std::size_t> horizontal_codim;
};

struct FlagReport {
  std::vector<FlagLevel> levels;  ///< levels[0] is the input, levels[k] is D^{r-k}
  bool sandwich_holds = true;
  std::vector<std::string> failures;

  std::vector<std::size_t> generic_ranks() const;
};

/// Distributions of the derived flag: result[0] = D, result[k+1] = result[k]
/// plus the brackets of its generators, for `depth` steps.
std::vector<Distribution> derived_flag_levels(const Distribution& d, std::size_t depth);
FlagReport derived_flag(const Distribution& d, std::size_t depth);

/// Basis of the Cauchy-characteristic module L(D) = {V in D : [V, D] in D};
/// an empty distribution encodes L = 0.
Distribution cauchy_characteristics(const Distribution& d);

/// Builds the derived flag of a chart's distribution and checks the sandwich
/// inclusions L(D^j) in D^{j+1} for 1 <= j <= r-1 with vertical corank 1,
/// horizontal codimension m = 2 and L(D^r) = 0. `r` is the flag length.
FlagReport verify_sandwich(const Distribution& d, std::size_t r);
FlagReport verify_sandwich(const charts::Chart& chart);

/// Diagonal affine change of coordinates x_i = scale_i * xbar_i + shift_i.
/// Scales and shifts may involve parameters but no frame coordinates. The
/// target coordinates reuse the frame's variable names.
struct DiagonalMap {
  std::vector<RationalFunction> scale;
  std::vector<RationalFunction> shift;
  /// Extra substitutions applied to non-coordinate variables (for example a
  /// parameter rewritten in terms of a root symbol).
  std::unordered_map<std::size_t, RationalFunction> parameter_images;

  static DiagonalMap identity(const FramePtr& frame);
};

/// Substitutes variables by rational functions.
RationalFunction substitute(const RationalFunction& f, const std::unordered_map<std::size_t, RationalFunction>& images);

VectorField pushforward(const DiagonalMap& map, const VectorField& v);
Distribution pushforward(const DiagonalMap& map, const Distribution& d);

}  // namespace mtower::geometry
