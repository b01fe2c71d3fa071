#include <algorithm>

#include "mtower/algebra/polynomial.hpp"

namespace mtower::algebra {

namespace {

Polynomial normalized(const Polynomial& p) { return p.primitive_part(); }

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g;
  for (auto& [e, c] : p.coefficients_in(var)) {
    g = g.is_zero() ? normalized(c) : gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Polynomial divided(const Polynomial& a, const Polynomial& b) {
  if (b.is_one()) return a;
  auto q = divide_exact(a, b);
  return q ? *q : a;
}

Polynomial pseudo_remainder(Polynomial r, const Polynomial& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lb = b.coefficient_of(var, db);
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(var);
    if (dr < db) break;
    Polynomial lr = r.coefficient_of(var, dr);
    r = lb * r - lr * b.times_monomial(Monomial::variable(static_cast<std::uint32_t>(var), dr - db), Scalar(1));
  }
  return r;
}

Polynomial primitive_in(const Polynomial& p, std::size_t var) {
  return divided(p, content_in(p, var)).primitive_part();
}

Polynomial gcd_without_monomials(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(a.ring(), Scalar(1));
  auto va = a.variables();
  auto vb = b.variables();
  for (auto v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(a, v), b);
  }
  for (auto v : vb) {
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_in(b, v));
  }
  std::size_t var = va.front();
  unsigned best = ~0u;
  for (auto v : va) {
    unsigned d = std::max(a.degree_in(v), b.degree_in(v));
    if (d < best) {
      best = d;
      var = v;
    }
  }
  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = divided(a, ca).primitive_part();
  Polynomial pb = divided(b, cb).primitive_part();
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  Polynomial g;
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(var) == 0) {
      g = Polynomial(a.ring(), Scalar(1));
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, var);
  }
  return (c * primitive_in(g, var)).primitive_part();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.is_constant() || b.is_constant()) return Polynomial(ring, Scalar(1));
  if (a == b) return normalized(a);
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Polynomial gm = Polynomial::monomial(ring, Monomial::gcd(ma, mb), Scalar(1));
  if (a.size() == 1 || b.size() == 1) return gm;
  Polynomial ra = ma.is_one() ? a : *divide_exact(a, Polynomial::monomial(ring, ma, Scalar(1)));
  Polynomial rb = mb.is_one() ? b : *divide_exact(b, Polynomial::monomial(ring, mb, Scalar(1)));
  const Polynomial& small = ra.size() <= rb.size() ? ra : rb;
  const Polynomial& large = ra.size() <= rb.size() ? rb : ra;
  if (divide_exact(large, small)) return gm * normalized(small);
  return gm * gcd_without_monomials(ra, rb);
}

}  // namespace mtower::algebra
