#include "mtower/algebra/rational_function.hpp"

#include "mtower/errors.hpp"

namespace mtower::algebra {

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.ring(), Scalar(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  reduce();
}

RationalFunction::RationalFunction(RingPtr ring, Scalar constant)
    : num_(ring, std::move(constant)), den_(ring, Scalar(1)) {}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial(ring(), Scalar(1));
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= 1 / den_.constant_term();
      den_ = Polynomial(ring(), Scalar(1));
    }
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  if (den_.is_constant()) {
    num_ *= 1 / den_.constant_term();
    den_ = Polynomial(ring(), Scalar(1));
    return;
  }
  Scalar c = den_.content();
  if (c != 1) {
    Scalar inv = 1 / c;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) {
    if (!num_.ring()) *this = RationalFunction(Polynomial(other.ring()));
    return *this;
  }
  if (is_zero()) return *this = other;
  if (is_polynomial() && other.is_polynomial()) {
    num_ += other.num_;
    if (!den_.ring()) den_ = Polynomial(num_.ring(), Scalar(1));
    return *this;
  }
  if (den_ == other.den_) {
    num_ += other.num_;
    reduce();
    return *this;
  }
  if (other.is_polynomial()) {
    num_ += other.num_ * den_;
    return *this;  // gcd(num + q*den, den) = gcd(num, den) = 1
  }
  if (is_polynomial()) {
    num_ = num_ * other.den_ + other.num_;
    den_ = other.den_;
    return *this;
  }
  Polynomial g = gcd(den_, other.den_);
  if (g.is_constant()) {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  } else {
    Polynomial a = *divide_exact(den_, g);
    Polynomial b = *divide_exact(other.den_, g);
    num_ = num_ * b + other.num_ * a;
    den_ = a * other.den_;
  }
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) { return *this += -other; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero() || other.is_zero()) {
    RingPtr r = ring() ? ring() : other.ring();
    return *this = RationalFunction(Polynomial(r));
  }
  if (is_polynomial() && other.is_polynomial()) {
    num_ = num_ * other.num_;
    if (!den_.ring()) den_ = Polynomial(num_.ring(), Scalar(1));
    return *this;
  }
  // Cross-cancel so the product of reduced factors stays reduced.
  Polynomial n1 = num_, d1 = den_, n2 = other.num_, d2 = other.den_;
  if (!d2.is_one()) {
    Polynomial g = gcd(n1, d2);
    if (!g.is_constant()) {
      n1 = *divide_exact(n1, g);
      d2 = *divide_exact(d2, g);
    }
  }
  if (!d1.is_one()) {
    Polynomial g = gcd(n2, d1);
    if (!g.is_constant()) {
      n2 = *divide_exact(n2, g);
      d1 = *divide_exact(d1, g);
    }
  }
  num_ = n1 * n2;
  den_ = d1 * d2;
  if (den_.is_constant()) {
    num_ *= 1 / den_.constant_term();
    den_ = Polynomial(num_.ring(), Scalar(1));
  } else {
    Scalar c = den_.content();
    if (c != 1) {
      num_ *= 1 / c;
      den_ *= 1 / c;
    }
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  if (other.is_zero()) throw DomainError("division by zero rational function");
  RationalFunction inv;
  inv.num_ = other.den_.ring() ? other.den_ : Polynomial(other.ring(), Scalar(1));
  inv.den_ = other.num_;
  Scalar c = inv.den_.is_constant() ? inv.den_.constant_term() : inv.den_.content();
  inv.num_ *= 1 / c;
  inv.den_ *= 1 / c;
  return *this *= inv;
}

RationalFunction RationalFunction::diff(std::size_t var) const {
  if (is_polynomial()) return RationalFunction(num_.diff(var));
  Polynomial n = num_.diff(var) * den_ - num_ * den_.diff(var);
  return RationalFunction(std::move(n), den_ * den_);
}

RationalFunction RationalFunction::total_diff(std::size_t var) const {
  if (is_polynomial()) return RationalFunction(num_.total_diff(var));
  Polynomial n = num_.total_diff(var) * den_ - num_ * den_.total_diff(var);
  return RationalFunction(std::move(n), den_ * den_);
}

Scalar RationalFunction::evaluate(std::span<const std::optional<Scalar>> point) const {
  Scalar n = num_.evaluate(point);
  if (is_polynomial()) return n;
  Scalar d = den_.evaluate(point);
  if (d == 0) throw DomainError("denominator " + den_.to_string() + " vanishes at the evaluation point");
  return n / d;
}

Scalar RationalFunction::evaluate(const Assignment& point) const {
  Scalar n = num_.evaluate(point);
  if (is_polynomial()) return n;
  Scalar d = den_.evaluate(point);
  if (d == 0) throw DomainError("denominator " + den_.to_string() + " vanishes at the evaluation point");
  return n / d;
}

RationalFunction RationalFunction::specialize(std::span<const std::optional<Scalar>> point) const {
  if (is_polynomial()) return RationalFunction(num_.specialize(point));
  Polynomial d = den_.specialize(point);
  if (d.is_zero()) throw DomainError("denominator " + den_.to_string() + " vanishes under specialization");
  return RationalFunction(num_.specialize(point), std::move(d));
}

RationalFunction RationalFunction::substitute(const std::unordered_map<std::size_t, Polynomial>& images) const {
  if (is_polynomial()) return RationalFunction(num_.substitute(images));
  Polynomial d = den_.substitute(images);
  if (d.is_zero()) throw DomainError("denominator " + den_.to_string() + " vanishes under substitution");
  return RationalFunction(num_.substitute(images), std::move(d));
}

RationalFunction RationalFunction::in_ring(const RingPtr& target) const {
  RationalFunction r;
  r.num_ = num_.ring() ? num_.in_ring(target) : Polynomial(target);
  r.den_ = den_.ring() ? den_.in_ring(target) : Polynomial(target, Scalar(1));
  return r;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace mtower::algebra
