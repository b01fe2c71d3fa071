#include "mtower/algebra/monomial.hpp"

#include <algorithm>

#include "mtower/errors.hpp"

namespace mtower::algebra {

std::uint32_t Monomial::pack(std::uint32_t var, std::uint32_t exponent) {
  if (var > 0xffffu || exponent > 0xffffu) throw DomainError("monomial exponent or variable index overflow");
  return (var << 16) | exponent;
}

void Monomial::recompute_degree() {
  degree_ = 0;
  for (auto p : packed_) degree_ += p & 0xffffu;
}

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.packed_.push_back(pack(var, exponent));
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t v) const {
  auto it = std::lower_bound(packed_.begin(), packed_.end(), v << 16);
  if (it != packed_.end() && (*it >> 16) == v) return *it & 0xffffu;
  return 0;
}

Monomial Monomial::lowered(std::uint32_t v) const {
  Monomial m = *this;
  auto it = std::lower_bound(m.packed_.begin(), m.packed_.end(), v << 16);
  if (it == m.packed_.end() || (*it >> 16) != v) throw DomainError("lowering absent variable");
  if ((*it & 0xffffu) == 1) {
    m.packed_.erase(it);
  } else {
    --*it;
  }
  --m.degree_;
  return m;
}

Monomial Monomial::raised(std::uint32_t v) const {
  Monomial m = *this;
  auto it = std::lower_bound(m.packed_.begin(), m.packed_.end(), v << 16);
  if (it != m.packed_.end() && (*it >> 16) == v) {
    *it = pack(v, (*it & 0xffffu) + 1);
  } else {
    m.packed_.insert(it, pack(v, 1));
  }
  ++m.degree_;
  return m;
}

Monomial Monomial::replaced(std::uint32_t from, std::uint32_t to) const {
  return lowered(from).raised(to);
}

Monomial Monomial::without(std::uint32_t v) const {
  Monomial m = *this;
  auto it = std::lower_bound(m.packed_.begin(), m.packed_.end(), v << 16);
  if (it != m.packed_.end() && (*it >> 16) == v) {
    m.degree_ -= *it & 0xffffu;
    m.packed_.erase(it);
  }
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  std::size_t j = 0;
  for (auto p : packed_) {
    const auto v = p >> 16;
    while (j < other.packed_.size() && (other.packed_[j] >> 16) < v) ++j;
    if (j == other.packed_.size() || (other.packed_[j] >> 16) != v) return false;
    if ((other.packed_[j] & 0xffffu) < (p & 0xffffu)) return false;
  }
  return true;
}

std::optional<Monomial> Monomial::quotient(const Monomial& divisor) const {
  if (!divisor.divides(*this)) return std::nullopt;
  Monomial q;
  std::size_t j = 0;
  for (auto p : packed_) {
    const auto v = p >> 16;
    std::uint32_t e = p & 0xffffu;
    if (j < divisor.packed_.size() && (divisor.packed_[j] >> 16) == v) {
      e -= divisor.packed_[j] & 0xffffu;
      ++j;
    }
    if (e > 0) q.packed_.push_back(pack(v, e));
  }
  q.degree_ = degree_ - divisor.degree_;
  return q;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.packed_.empty()) return b;
  if (b.packed_.empty()) return a;
  Monomial m;
  m.packed_.reserve(a.packed_.size() + b.packed_.size());
  std::size_t i = 0, j = 0;
  while (i < a.packed_.size() && j < b.packed_.size()) {
    const auto va = a.packed_[i] >> 16, vb = b.packed_[j] >> 16;
    if (va == vb) {
      m.packed_.push_back(Monomial::pack(va, (a.packed_[i] & 0xffffu) + (b.packed_[j] & 0xffffu)));
      ++i;
      ++j;
    } else if (va < vb) {
      m.packed_.push_back(a.packed_[i++]);
    } else {
      m.packed_.push_back(b.packed_[j++]);
    }
  }
  while (i < a.packed_.size()) m.packed_.push_back(a.packed_[i++]);
  while (j < b.packed_.size()) m.packed_.push_back(b.packed_[j++]);
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::size_t i = 0, j = 0;
  while (i < a.packed_.size() && j < b.packed_.size()) {
    const auto va = a.packed_[i] >> 16, vb = b.packed_[j] >> 16;
    if (va == vb) {
      m.packed_.push_back(pack(va, std::min(a.packed_[i] & 0xffffu, b.packed_[j] & 0xffffu)));
      ++i;
      ++j;
    } else if (va < vb) {
      ++i;
    } else {
      ++j;
    }
  }
  m.recompute_degree();
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::size_t i = 0, j = 0;
  while (i < a.packed_.size() || j < b.packed_.size()) {
    if (j == b.packed_.size() || (i < a.packed_.size() && (a.packed_[i] >> 16) < (b.packed_[j] >> 16))) {
      m.packed_.push_back(a.packed_[i++]);
    } else if (i == a.packed_.size() || (b.packed_[j] >> 16) < (a.packed_[i] >> 16)) {
      m.packed_.push_back(b.packed_[j++]);
    } else {
      m.packed_.push_back(std::max(a.packed_[i], b.packed_[j]));
      ++i;
      ++j;
    }
  }
  m.recompute_degree();
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto p : packed_) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return h;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const std::size_t na = a.factor_count(), nb = b.factor_count();
  std::size_t i = 0, j = 0;
  while (i < na && j < nb) {
    const auto va = a.var(i), vb = b.var(j);
    if (va != vb) return va < vb ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.exp(i) != b.exp(j)) return a.exp(i) <=> b.exp(j);
    ++i;
    ++j;
  }
  if (i < na) return std::strong_ordering::greater;
  if (j < nb) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

}  // namespace mtower::algebra
