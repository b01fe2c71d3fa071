#include "mtower/algebra/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "mtower/errors.hpp"

namespace mtower::algebra {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text) {
  std::string t(text);
  if (t.empty()) throw DomainError("empty number");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  auto slash = t.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  if (slash == std::string::npos ? !digits(start, t.size())
                                 : !(digits(start, slash) && digits(slash + 1, t.size()))) {
    throw DomainError("malformed number '" + t + "'");
  }
  if (t[0] == '+') t.erase(0, 1);
  if (slash != std::string::npos && Integer(t.substr(t.find('/') + 1)) == 0) {
    throw DomainError("zero denominator in '" + t + "'");
  }
  Scalar s(t);
  s.canonicalize();
  return s;
}

namespace {

bool term_greater(const Term& a, const Term& b) { return grlex(a.monomial, b.monomial) > 0; }

}  // namespace

Polynomial::Polynomial(RingPtr ring, Scalar constant) : ring_(std::move(ring)) {
  constant.canonicalize();
  if (constant != 0) terms_.push_back({Monomial(), std::move(constant)});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t var, unsigned exponent) {
  if (var >= ring->size()) throw DomainError("variable index out of range");
  Polynomial p(std::move(ring));
  p.terms_.push_back({Monomial::variable(static_cast<std::uint32_t>(var), exponent), Scalar(1)});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name, unsigned exponent) {
  auto v = ring->index(name);
  return variable(std::move(ring), v, exponent);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Scalar coefficient) {
  Polynomial p(std::move(ring));
  coefficient.canonicalize();
  if (coefficient != 0) p.terms_.push_back({std::move(m), std::move(coefficient)});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  for (auto& t : p.terms_) t.coefficient.canonicalize();
  p.canonicalize();
  return p;
}

void Polynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    Scalar c = terms_[i].coefficient;
    while (j < terms_.size() && terms_[j].monomial == terms_[i].monomial) {
      c += terms_[j].coefficient;
      ++j;
    }
    if (c != 0) {
      if (out != i) terms_[out].monomial = std::move(terms_[i].monomial);
      terms_[out].coefficient = std::move(c);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

void Polynomial::adopt(const Polynomial& other) {
  if (!ring_) {
    ring_ = other.ring_;
  } else if (other.ring_ && other.ring_ != ring_) {
    throw DomainError("polynomials belong to different rings");
  }
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coefficient == 1;
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coefficient;
  return Scalar(0);
}

unsigned Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(static_cast<std::uint32_t>(var)));
  return d;
}

std::vector<std::size_t> Polynomial::variables() const {
  std::vector<std::size_t> vars;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) vars.push_back(t.monomial.var(i));
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.monomial.exponent(static_cast<std::uint32_t>(var)) > 0) return true;
  }
  return false;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  adopt(other);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    auto ord = grlex(terms_[i].monomial, other.terms_[j].monomial);
    if (ord > 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (ord < 0) {
      merged.push_back(other.terms_[j++]);
    } else {
      Scalar c = terms_[i].coefficient + other.terms_[j].coefficient;
      if (c != 0) merged.push_back({std::move(terms_[i].monomial), std::move(c)});
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) merged.push_back(std::move(terms_[i++]));
  while (j < other.terms_.size()) merged.push_back(other.terms_[j++]);
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (s == 0) {
    terms_.clear();
  } else if (s != 1) {
    for (auto& t : terms_) t.coefficient *= s;
  }
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  // grlex is a monomial order, so multiplying every term by m keeps the order.
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coefficient * c});
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial result;
  result.adopt(a);
  result.adopt(b);
  if (a.terms_.empty() || b.terms_.empty()) return result;
  if (a.terms_.size() == 1) {
    auto p = b.times_monomial(a.terms_[0].monomial, a.terms_[0].coefficient);
    p.ring_ = result.ring_;
    return p;
  }
  if (b.terms_.size() == 1) {
    auto p = a.times_monomial(b.terms_[0].monomial, b.terms_[0].coefficient);
    p.ring_ = result.ring_;
    return p;
  }
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto [it, inserted] = acc.try_emplace(ta.monomial * tb.monomial, ta.coefficient * tb.coefficient);
      if (!inserted) it->second += ta.coefficient * tb.coefficient;
    }
  }
  result.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) result.terms_.push_back({m, std::move(c)});
  }
  std::sort(result.terms_.begin(), result.terms_.end(), term_greater);
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(ring_, Scalar(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::diff(std::size_t var) const {
  const auto v = static_cast<std::uint32_t>(var);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto e = t.monomial.exponent(v);
    if (e > 0) out.push_back({t.monomial.lowered(v), t.coefficient * e});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::total_diff(std::size_t var) const {
  if (!ring_ || !ring_->has_jets()) return diff(var);
  auto slot = ring_->base_slot(var);
  if (!slot) return diff(var);
  const auto v = static_cast<std::uint32_t>(var);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto& m = t.monomial;
    for (std::size_t i = 0; i < m.factor_count(); ++i) {
      const auto w = m.var(i);
      const auto e = m.exp(i);
      if (w == v) {
        out.push_back({m.lowered(v), t.coefficient * e});
      } else if (ring_->var_class(w) == VarClass::jet) {
        auto next = ring_->jet_derivative(w, *slot);
        if (!next) {
          throw TruncationError("jet symbol " + ring_->name(w) + " differentiated beyond truncation order " +
                                std::to_string(ring_->jet_order()));
        }
        out.push_back({m.replaced(w, static_cast<std::uint32_t>(*next)), t.coefficient * e});
      }
    }
  }
  return from_terms(ring_, std::move(out));
}

Scalar Polynomial::evaluate(std::span<const std::optional<Scalar>> point) const {
  Scalar sum(0);
  for (const auto& t : terms_) {
    Scalar v = t.coefficient;
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      const auto w = t.monomial.var(i);
      if (w >= point.size() || !point[w]) {
        throw DomainError("no value assigned to variable '" + ring_->name(w) + "'");
      }
      for (std::uint32_t k = 0; k < t.monomial.exp(i); ++k) v *= *point[w];
    }
    sum += v;
  }
  return sum;
}

namespace {

std::vector<std::optional<Scalar>> dense_point(const Ring& ring, const Assignment& point) {
  std::vector<std::optional<Scalar>> dense(ring.size());
  for (const auto& [name, value] : point) {
    if (auto v = ring.find(name)) dense[*v] = value;
  }
  return dense;
}

}  // namespace

Scalar Polynomial::evaluate(const Assignment& point) const {
  if (!ring_) return Scalar(0);
  auto dense = dense_point(*ring_, point);
  return evaluate(dense);
}

Polynomial Polynomial::specialize(std::span<const std::optional<Scalar>> point) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Scalar c = t.coefficient;
    Monomial m = t.monomial;
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      const auto w = t.monomial.var(i);
      if (w < point.size() && point[w]) {
        for (std::uint32_t k = 0; k < t.monomial.exp(i); ++k) c *= *point[w];
        m = m.without(w);
      }
    }
    if (c != 0) out.push_back({std::move(m), std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::substitute(const std::unordered_map<std::size_t, Polynomial>& images) const {
  Polynomial result(ring_);
  std::map<std::pair<std::size_t, unsigned>, Polynomial> powers;
  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, images.at(v).pow(e)).first;
    return it->second;
  };
  for (const auto& t : terms_) {
    Monomial rest = t.monomial;
    Polynomial factor(ring_, t.coefficient);
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      const auto w = t.monomial.var(i);
      if (images.count(w)) {
        rest = rest.without(w);
        factor = factor * power(w, t.monomial.exp(i));
      }
    }
    result += factor.times_monomial(rest, Scalar(1));
  }
  return result;
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
  if (target == ring_) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      auto v = target->index(ring_->name(t.monomial.var(i)));
      m = m * Monomial::variable(static_cast<std::uint32_t>(v), t.monomial.exp(i));
    }
    out.push_back({std::move(m), t.coefficient});
  }
  return from_terms(target, std::move(out));
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  const auto v = static_cast<std::uint32_t>(var);
  std::map<unsigned, std::vector<Term>> parts;
  for (const auto& t : terms_) {
    auto e = t.monomial.exponent(v);
    parts[e].push_back({t.monomial.without(v), t.coefficient});
  }
  std::map<unsigned, Polynomial> out;
  for (auto& [e, terms] : parts) out.emplace(e, from_terms(ring_, std::move(terms)));
  return out;
}

Polynomial Polynomial::coefficient_of(std::size_t var, unsigned exponent) const {
  const auto v = static_cast<std::uint32_t>(var);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial.exponent(v) == exponent) out.push_back({t.monomial.without(v), t.coefficient});
  }
  return from_terms(ring_, std::move(out));
}

Scalar Polynomial::content() const {
  if (terms_.empty()) return Scalar(1);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
  }
  Scalar c(num_gcd, den_lcm);
  c.canonicalize();
  if (terms_.front().coefficient < 0) c = -c;
  return c;
}

Polynomial Polynomial::primitive_part() const {
  if (terms_.empty()) return *this;
  Scalar c = content();
  if (c == 1) return *this;
  Polynomial p = *this;
  Scalar inv = 1 / c;
  for (auto& t : p.terms_) t.coefficient *= inv;
  return p;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) {
    if (g.is_one()) break;
    g = Monomial::gcd(g, t.monomial);
  }
  return g;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coefficient;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (t.monomial.is_one() || c != 1) {
      out << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      if (need_star) out << '*';
      out << ring_->name(t.monomial.var(i));
      if (t.monomial.exp(i) > 1) out << '^' << t.monomial.exp(i);
      need_star = true;
    }
  }
  return out.str();
}

std::size_t Polynomial::cost() const { return terms_.size() * 16 + total_degree(); }

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return Polynomial(ring);
  if (b.size() == 1) {
    const auto& lb = b.leading();
    std::vector<Term> out;
    out.reserve(a.size());
    Scalar inv = 1 / lb.coefficient;
    for (const auto& t : a.terms()) {
      auto q = t.monomial.quotient(lb.monomial);
      if (!q) return std::nullopt;
      out.push_back({std::move(*q), t.coefficient * inv});
    }
    // Division by a monomial preserves the order.
    return Polynomial::from_terms(ring, std::move(out));
  }
  Polynomial remainder = a;
  std::vector<Term> quotient;
  const auto& lb = b.leading();
  while (!remainder.is_zero()) {
    const auto& lr = remainder.leading();
    auto q = lr.monomial.quotient(lb.monomial);
    if (!q) return std::nullopt;
    Scalar c = lr.coefficient / lb.coefficient;
    remainder -= b.times_monomial(*q, c);
    quotient.push_back({std::move(*q), std::move(c)});
  }
  return Polynomial::from_terms(ring, std::move(quotient));
}

Polynomial poly_diff(const Polynomial& p, std::string_view var) {
  if (!p.ring()) return p;
  return p.diff(p.ring()->index(var));
}

Scalar evaluate(const Polynomial& p, const Assignment& point) { return p.evaluate(point); }

}  // namespace mtower::algebra
