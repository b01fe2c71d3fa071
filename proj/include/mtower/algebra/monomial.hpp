#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mtower::algebra {

/// Sparse power product. Factors are kept sorted by variable index; each is
/// packed as (variable << 16) | exponent.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(std::uint32_t var, std::uint32_t exponent = 1);

  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return packed_.empty(); }
  std::size_t factor_count() const { return packed_.size(); }
  std::uint32_t var(std::size_t i) const { return packed_[i] >> 16; }
  std::uint32_t exp(std::size_t i) const { return packed_[i] & 0xffffu; }
  std::uint32_t exponent(std::uint32_t var) const;

  /// This monomial with the exponent of `var` lowered by one (pre: exponent > 0).
  Monomial lowered(std::uint32_t var) const;
  /// This monomial with factor `var` raised by one.
  Monomial raised(std::uint32_t var) const;
  /// This monomial with the variable `from` (exponent > 0) replaced by `to`.
  Monomial replaced(std::uint32_t from, std::uint32_t to) const;
  /// Monomial with `var` removed entirely.
  Monomial without(std::uint32_t var) const;

  bool divides(const Monomial& other) const;
  std::optional<Monomial> quotient(const Monomial& divisor) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  static std::uint32_t pack(std::uint32_t var, std::uint32_t exponent);
  void recompute_degree();

  std::vector<std::uint32_t> packed_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order: total degree first, then the exponent of the
/// lowest-indexed variable where the two differ.
std::strong_ordering grlex(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace mtower::algebra
