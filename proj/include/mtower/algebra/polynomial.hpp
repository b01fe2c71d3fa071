#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtower/algebra/monomial.hpp"
#include "mtower/algebra/ring.hpp"
#include "mtower/algebra/scalar.hpp"

namespace mtower::algebra {

struct Term {
  Monomial monomial;
  Scalar coefficient;
};

/// Point of evaluation, keyed by variable name.
using Assignment = std::map<std::string, Scalar, std::less<>>;

/// Sparse multivariate polynomial with rational coefficients over a shared
/// Ring. Terms are stored in descending graded-lexicographic order with no
/// zero coefficients, so equal polynomials have identical representations.
///
/// A default-constructed Polynomial is the zero of no particular ring; it
/// adopts the ring of whatever it is combined with.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, Scalar constant);

  static Polynomial variable(RingPtr ring, std::size_t var, unsigned exponent = 1);
  static Polynomial variable(RingPtr ring, std::string_view name, unsigned exponent = 1);
  static Polynomial monomial(RingPtr ring, Monomial m, Scalar coefficient);
  /// Builds from unsorted terms; duplicate monomials are merged.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_one() const;
  /// Coefficient of the unit monomial.
  Scalar constant_term() const;
  const Term& leading() const { return terms_.front(); }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  /// Variables occurring with positive exponent, ascending.
  std::vector<std::size_t> variables() const;
  bool depends_on(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned exponent) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const;

  /// Formal partial derivative.
  Polynomial diff(std::size_t var) const;
  /// Total derivative: the formal partial plus the chain rule through jet
  /// symbols when `var` is a jet base coordinate. Throws TruncationError when
  /// a needed jet symbol lies beyond the ring's truncation order.
  Polynomial total_diff(std::size_t var) const;

  /// Full evaluation; throws DomainError if a live variable is unassigned.
  Scalar evaluate(const Assignment& point) const;
  Scalar evaluate(std::span<const std::optional<Scalar>> point) const;
  /// Partial evaluation: variables set in `point` are replaced by values.
  Polynomial specialize(std::span<const std::optional<Scalar>> point) const;
  /// Replaces the listed variables by polynomials over the same ring.
  Polynomial substitute(const std::unordered_map<std::size_t, Polynomial>& images) const;
  /// Rewrites this polynomial over another ring, matching variables by name.
  Polynomial in_ring(const RingPtr& target) const;

  /// Coefficients with respect to `var`: exponent -> coefficient free of var.
  std::map<unsigned, Polynomial> coefficients_in(std::size_t var) const;
  /// Sum of the terms whose exponent of `var` equals `exponent`, with var removed.
  Polynomial coefficient_of(std::size_t var, unsigned exponent) const;

  /// Rational content: positive-denominator scalar c with this = c * primitive
  /// integer polynomial whose leading coefficient is positive.
  Scalar content() const;
  Polynomial primitive_part() const;
  /// gcd of all monomials of this polynomial.
  Monomial monomial_content() const;

  /// Canonical text: terms in descending grlex order, "coef*var^e*...".
  std::string to_string() const;
  /// Number of terms plus degree, used to rank pivot candidates.
  std::size_t cost() const;

 private:
  void adopt(const Polynomial& other);
  void canonicalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt if b does not divide a.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive leading coefficient (1 when coprime).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Partial derivative by variable name.
Polynomial poly_diff(const Polynomial& p, std::string_view var);
Scalar evaluate(const Polynomial& p, const Assignment& point);

/// Parses "+ - * ^ ( )" expressions over the ring's variable names with integer
/// or rational literals (division only by nonzero constants).
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

}  // namespace mtower::algebra
