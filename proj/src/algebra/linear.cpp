#include "mtower/algebra/linear.hpp"

#include <algorithm>
#include <stdexcept>

#include "mtower/errors.hpp"

namespace mtower::algebra {

PolyVector clear_denominators(const RFVector& v, const RingPtr& ring) {
  Polynomial l(ring, Scalar(1));
  for (const auto& e : v) {
    if (e.is_polynomial()) continue;
    Polynomial g = gcd(l, e.den());
    l = l * *divide_exact(e.den(), g);
  }
  PolyVector out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (e.is_zero()) {
      out.emplace_back(ring);
    } else if (e.is_polynomial()) {
      out.push_back(e.num() * l);
    } else {
      out.push_back(e.num() * *divide_exact(l, e.den()));
    }
  }
  return out;
}

FractionFreeBasis::FractionFreeBasis(std::size_t ncols, RingPtr ring)
    : ncols_(ncols), ring_(std::move(ring)), d_(ring_, Scalar(1)) {}

PolyVector FractionFreeBasis::residual(const PolyVector& v) const {
  if (v.size() != ncols_) throw DomainError("vector length does not match the basis");
  PolyVector res(ncols_, Polynomial(ring_));
  std::vector<bool> is_pivot(ncols_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (is_pivot[c]) continue;
    res[c] = residual_at(v, c);
  }
  return res;
}

Polynomial FractionFreeBasis::residual_at(const PolyVector& v, std::size_t column) const {
  Polynomial r = v[column].is_zero() ? Polynomial(ring_) : d_ * v[column];
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& coef = v[pivots_[i]];
    if (coef.is_zero() || rows_[i][column].is_zero()) continue;
    r -= coef * rows_[i][column];
  }
  return r;
}

RationalFunction FractionFreeBasis::residual_at(const RFVector& v, std::size_t column) const {
  RationalFunction r = v[column].is_zero() ? RationalFunction(Polynomial(ring_)) : RationalFunction(d_) * v[column];
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& coef = v[pivots_[i]];
    if (coef.is_zero() || rows_[i][column].is_zero()) continue;
    r -= coef * RationalFunction(rows_[i][column]);
  }
  return r;
}

bool FractionFreeBasis::contains(const PolyVector& v) const {
  if (v.size() != ncols_) throw DomainError("vector length does not match the basis");
  std::vector<bool> is_pivot(ncols_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (!is_pivot[c] && !residual_at(v, c).is_zero()) return false;
  }
  return true;
}

bool FractionFreeBasis::insert(const PolyVector& v) {
  if (rows_.size() == ncols_) return false;
  PolyVector res = residual(v);
  std::size_t pc = ncols_;
  std::size_t best = 0;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (res[c].is_zero()) continue;
    std::size_t cost = res[c].cost();
    if (pc == ncols_ || cost < best) {
      pc = c;
      best = cost;
    }
  }
  if (pc == ncols_) return false;
  if (rows_.empty()) {
    Polynomial g;
    for (const auto& e : res) {
      if (!e.is_zero()) g = gcd(g, e);
    }
    if (!g.is_constant()) {
      for (auto& e : res) {
        if (!e.is_zero()) e = *divide_exact(e, g);
      }
    }
  }
  Polynomial new_d = res[pc];
  for (auto& row : rows_) {
    Polynomial f = row[pc];
    for (std::size_t c = 0; c < ncols_; ++c) {
      Polynomial e = new_d * row[c];
      if (!f.is_zero() && !res[c].is_zero()) e -= f * res[c];
      if (!e.is_zero() && !d_.is_one()) {
        auto q = divide_exact(e, d_);
        if (!q) throw std::logic_error("fraction-free update is not exact");
        e = std::move(*q);
      }
      row[c] = std::move(e);
    }
  }
  rows_.push_back(std::move(res));
  pivots_.push_back(pc);
  d_ = std::move(new_d);
  return true;
}

namespace {

FractionFreeBasis basis_of(const RFMatrix& m, std::size_t ncols, const RingPtr& ring) {
  FractionFreeBasis basis(ncols, ring);
  for (const auto& row : m) {
    if (row.size() != ncols) throw DomainError("matrix row has the wrong length");
    basis.insert(row);
    if (basis.rank() == ncols) break;
  }
  return basis;
}

}  // namespace

std::vector<PolyVector> rf_kernel(const RFMatrix& m, std::size_t ncols, const RingPtr& ring) {
  FractionFreeBasis basis = basis_of(m, ncols, ring);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : basis.pivots()) is_pivot[p] = true;
  std::vector<PolyVector> kernel;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (is_pivot[j]) continue;
    PolyVector x(ncols, Polynomial(ring));
    x[j] = basis.scale();
    for (std::size_t i = 0; i < basis.rank(); ++i) x[basis.pivots()[i]] = -basis.rows()[i][j];
    Polynomial g;
    for (const auto& e : x) {
      if (!e.is_zero()) g = gcd(g, e);
    }
    const Polynomial* last = nullptr;
    for (const auto& e : x) {
      if (!e.is_zero()) last = &e;
    }
    for (auto& e : x) {
      if (e.is_zero()) continue;
      if (!g.is_one()) e = *divide_exact(e, g);
    }
    Scalar content(0);
    {
      Integer num = 0, den = 1;
      for (const auto& e : x) {
        for (const auto& t : e.terms()) {
          mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coefficient.get_num_mpz_t());
          mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
        }
      }
      content = Scalar(num, den);
      content.canonicalize();
    }
    Scalar factor = (last->leading().coefficient > 0 ? Scalar(1) : Scalar(-1)) / content;
    for (auto& e : x) e *= factor;
    kernel.push_back(std::move(x));
  }
  return kernel;
}

std::size_t rf_rank(const RFMatrix& m, std::size_t ncols, const RingPtr& ring) {
  return basis_of(m, ncols, ring).rank();
}

std::size_t rational_rank(std::vector<std::vector<Scalar>> m) {
  std::size_t rank = 0;
  if (m.empty()) return 0;
  const std::size_t ncols = m.front().size();
  for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Scalar f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < ncols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_at(const RFMatrix& m, const Assignment& point) {
  std::vector<std::vector<Scalar>> values;
  values.reserve(m.size());
  for (const auto& row : m) {
    std::vector<Scalar> r;
    r.reserve(row.size());
    for (const auto& e : row) r.push_back(e.is_zero() ? Scalar(0) : e.evaluate(point));
    values.push_back(std::move(r));
  }
  return rational_rank(std::move(values));
}

}  // namespace mtower::algebra
