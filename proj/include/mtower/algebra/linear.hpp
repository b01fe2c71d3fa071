#pragma once

#include <cstddef>
#include <vector>

#include "mtower/algebra/rational_function.hpp"

namespace mtower::algebra {

using PolyVector = std::vector<Polynomial>;
using RFVector = std::vector<RationalFunction>;
using RFMatrix = std::vector<RFVector>;

/// Multiplies a vector of rational functions by the lcm of its denominators.
PolyVector clear_denominators(const RFVector& v, const RingPtr& ring);

/// Row space of polynomial vectors, maintained in fraction-free reduced
/// echelon form: every stored row carries the common scale d at its own pivot
/// column and zero at the other pivot columns. Entries stay polynomial
/// (they are minors of the inserted vectors), so membership over the field of
/// rational functions is decided without any fraction arithmetic.
class FractionFreeBasis {
 public:
  FractionFreeBasis(std::size_t ncols, RingPtr ring);

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<PolyVector>& rows() const { return rows_; }
  const Polynomial& scale() const { return d_; }

  /// d*v minus its projection onto the stored rows; zero iff v is in the span.
  PolyVector residual(const PolyVector& v) const;
  /// Residual restricted to the given columns (cheaper when few are needed).
  Polynomial residual_at(const PolyVector& v, std::size_t column) const;
  /// The same residual entry for a vector of rational functions.
  RationalFunction residual_at(const RFVector& v, std::size_t column) const;
  bool contains(const PolyVector& v) const;
  bool contains(const RFVector& v) const { return contains(clear_denominators(v, ring_)); }
  /// Adds v; returns true when the rank grew.
  bool insert(const PolyVector& v);
  bool insert(const RFVector& v) { return insert(clear_denominators(v, ring_)); }

 private:
  std::size_t ncols_;
  RingPtr ring_;
  Polynomial d_;
  std::vector<std::size_t> pivots_;
  std::vector<PolyVector> rows_;
};

/// Basis of the right kernel {x : M x = 0} over the rational function field,
/// as polynomial vectors. Each vector has one entry per free column (in
/// ascending column order), is primitive, and its last nonzero entry has a
/// positive leading coefficient.
std::vector<PolyVector> rf_kernel(const RFMatrix& m, std::size_t ncols, const RingPtr& ring);
/// Generic rank over the rational function field.
std::size_t rf_rank(const RFMatrix& m, std::size_t ncols, const RingPtr& ring);
/// Rank after evaluating every entry at the point; throws DomainError when a
/// denominator vanishes there or a variable is left unassigned.
std::size_t rank_at(const RFMatrix& m, const Assignment& point);
/// Rank of a rational matrix.
std::size_t rational_rank(std::vector<std::vector<Scalar>> m);

}  // namespace mtower::algebra
