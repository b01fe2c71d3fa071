#pragma once

#include <string>
#include <unordered_map>

#include "mtower/algebra/polynomial.hpp"

namespace mtower::algebra {

/// Quotient of polynomials kept in lowest terms. The denominator is a
/// primitive integer polynomial with positive leading coefficient, and equals
/// 1 exactly when the value is a polynomial.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);
  RationalFunction(RingPtr ring, Scalar constant);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  RingPtr ring() const { return num_.ring() ? num_.ring() : den_.ring(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one() || den_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && is_polynomial(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && (a.is_polynomial() ? b.is_polynomial() : a.den_ == b.den_);
  }

  RationalFunction diff(std::size_t var) const;
  RationalFunction total_diff(std::size_t var) const;

  /// Throws DomainError if the denominator vanishes at the point.
  Scalar evaluate(const Assignment& point) const;
  Scalar evaluate(std::span<const std::optional<Scalar>> point) const;
  RationalFunction specialize(std::span<const std::optional<Scalar>> point) const;
  RationalFunction substitute(const std::unordered_map<std::size_t, Polynomial>& images) const;
  RationalFunction in_ring(const RingPtr& target) const;

  /// "num" for polynomials, otherwise "(num)/(den)".
  std::string to_string() const;
  std::size_t cost() const { return num_.cost() + (is_polynomial() ? 0 : den_.cost()); }

 private:
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

}  // namespace mtower::algebra
