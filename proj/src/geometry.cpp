#include "mtower/geometry.hpp"

#include <map>

#include "mtower/charts.hpp"
#include "mtower/errors.hpp"

namespace mtower::geometry {

using algebra::PolyVector;
using algebra::RFMatrix;

std::optional<std::size_t> Frame::slot_of(std::string_view name) const {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (ring->name(coords[i]) == name) return i;
  }
  return std::nullopt;
}

FramePtr make_frame(RingPtr ring, const std::vector<std::string>& coordinate_names) {
  auto frame = std::make_shared<Frame>();
  for (const auto& name : coordinate_names) frame->coords.push_back(ring->index(name));
  frame->ring = std::move(ring);
  return frame;
}

namespace {

bool same_frame(const FramePtr& a, const FramePtr& b) {
  return a == b || (a && b && a->ring == b->ring && a->coords == b->coords);
}

RationalFunction zero_of(const FramePtr& frame) { return RationalFunction(Polynomial(frame->ring)); }

}  // namespace

VectorField::VectorField(FramePtr frame) : frame_(std::move(frame)), coeffs_(frame_->dim(), zero_of(frame_)) {}

VectorField::VectorField(FramePtr frame, RFVector coefficients)
    : frame_(std::move(frame)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != frame_->dim()) throw DomainError("vector field has the wrong number of coefficients");
}

VectorField VectorField::coordinate(FramePtr frame, std::size_t i) {
  VectorField v(frame);
  v.coeffs_.at(i) = RationalFunction(frame->ring, Scalar(1));
  return v;
}

VectorField VectorField::coordinate(FramePtr frame, std::string_view name) {
  auto slot = frame->slot_of(name);
  if (!slot) throw DomainError("unknown coordinate '" + std::string(name) + "'");
  return coordinate(std::move(frame), *slot);
}

bool VectorField::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

RationalFunction VectorField::apply(const RationalFunction& f) const {
  RationalFunction sum = zero_of(frame_);
  if (f.is_zero()) return sum;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    auto d = f.total_diff(frame_->coords[i]);
    if (!d.is_zero()) sum += coeffs_[i] * d;
  }
  return sum;
}

Polynomial VectorField::apply(const Polynomial& f) const {
  Polynomial sum(frame_->ring);
  if (f.is_zero()) return sum;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!coeffs_[i].is_polynomial()) throw DomainError("polynomial application of a rational vector field");
    auto d = f.total_diff(frame_->coords[i]);
    if (!d.is_zero()) sum += coeffs_[i].num() * d;
  }
  return sum;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (!same_frame(frame_, other.frame_)) throw DomainError("vector fields on different frames");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (!same_frame(frame_, other.frame_)) throw DomainError("vector fields on different frames");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

VectorField& VectorField::operator*=(const RationalFunction& f) {
  for (auto& c : coeffs_) {
    if (!c.is_zero()) c *= f;
  }
  return *this;
}

bool operator==(const VectorField& a, const VectorField& b) {
  return same_frame(a.frame_, b.frame_) && a.coeffs_ == b.coeffs_;
}

std::string VectorField::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    std::string coef;
    bool negative = false;
    if (c.is_polynomial() && c.num().size() == 1) {
      auto s = c.num().to_string();
      negative = s[0] == '-';
      if (negative) s.erase(0, 1);
      coef = s == "1" ? "" : s + "*";
    } else {
      coef = "(" + c.to_string() + ")*";
    }
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coef + "d_" + frame_->name(i);
  }
  return out.empty() ? "0" : out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  if (!same_frame(v.frame(), w.frame())) throw DomainError("bracket of vector fields on different frames");
  VectorField out(v.frame());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v.apply(w[i]) - w.apply(v[i]);
  return out;
}

Distribution::Distribution(FramePtr frame) : frame_(frame), basis_(frame->dim(), frame->ring) {}

Distribution::Distribution(FramePtr frame, std::vector<VectorField> generators) : Distribution(std::move(frame)) {
  for (auto& g : generators) {
    if (!same_frame(g.frame(), frame_)) throw DomainError("generator on a different frame");
    if (!add(g)) throw DomainError("distribution generators are linearly dependent");
  }
}

Distribution Distribution::spanned_by(FramePtr frame, const std::vector<VectorField>& candidates) {
  Distribution d(std::move(frame));
  for (const auto& g : candidates) d.add(g);
  return d;
}

Distribution Distribution::tangent_bundle(FramePtr frame) {
  Distribution d(frame);
  for (std::size_t i = 0; i < frame->dim(); ++i) d.add(VectorField::coordinate(frame, i));
  return d;
}

bool Distribution::contains(const VectorField& v) const { return basis_.contains(v.coefficients()); }

bool Distribution::add(const VectorField& v) {
  if (!same_frame(v.frame(), frame_)) throw DomainError("vector field on a different frame");
  if (v.is_zero() || !basis_.insert(v.coefficients())) return false;
  gens_.push_back(v);
  return true;
}

std::optional<std::size_t> Distribution::rank_at_origin() const {
  std::vector<std::optional<Scalar>> point(frame_->ring->size());
  for (auto c : frame_->coords) point[c] = Scalar(0);
  RFMatrix m;
  try {
    for (const auto& g : gens_) {
      RFVector row;
      for (const auto& c : g.coefficients()) row.push_back(c.specialize(point));
      m.push_back(std::move(row));
    }
  } catch (const DomainError&) {
    return std::nullopt;
  }
  return algebra::rf_rank(m, frame_->dim(), frame_->ring);
}

std::optional<std::size_t> Distribution::rank_at(const Assignment& point) const {
  RFMatrix m;
  for (const auto& g : gens_) m.push_back(g.coefficients());
  try {
    return algebra::rank_at(m, point);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

bool distribution_equal(const Distribution& a, const Distribution& b) {
  if (!same_frame(a.frame(), b.frame()) || a.rank() != b.rank()) return false;
  for (const auto& g : a.generators()) {
    if (!b.contains(g)) return false;
  }
  for (const auto& g : b.generators()) {
    if (!a.contains(g)) return false;
  }
  return true;
}

std::vector<std::size_t> FlagReport::generic_ranks() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.generic_rank);
  return out;
}

namespace {

struct LevelBuild {
  Distribution dist;
  std::size_t candidates;
};

std::vector<LevelBuild> build_levels(const Distribution& d, std::size_t depth) {
  std::vector<LevelBuild> levels{{d, d.rank()}};
  std::size_t old_count = 0;  // generators of the current level already bracketed among themselves
  for (std::size_t step = 0; step < depth; ++step) {
    const Distribution& cur = levels.back().dist;
    Distribution next = cur;
    std::size_t candidates = cur.rank();
    const auto& gens = cur.generators();
    if (next.rank() < cur.frame()->dim()) {
      for (std::size_t j = old_count; j < gens.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          ++candidates;
          next.add(lie_bracket(gens[i], gens[j]));
          if (next.rank() == cur.frame()->dim()) break;
        }
        if (next.rank() == cur.frame()->dim()) break;
      }
    }
    old_count = gens.size();
    levels.push_back({std::move(next), candidates});
  }
  return levels;
}

}  // namespace

std::vector<Distribution> derived_flag_levels(const Distribution& d, std::size_t depth) {
  std::vector<Distribution> out;
  for (auto& l : build_levels(d, depth)) out.push_back(std::move(l.dist));
  return out;
}

namespace {

FlagReport report_of(const std::vector<LevelBuild>& levels, std::size_t depth) {
  FlagReport report;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    FlagLevel level;
    level.index = depth - k;
    level.generator_count = levels[k].candidates;
    level.generic_rank = levels[k].dist.rank();
    level.origin_rank = levels[k].dist.rank_at_origin();
    report.levels.push_back(level);
  }
  return report;
}

}  // namespace

FlagReport derived_flag(const Distribution& d, std::size_t depth) { return report_of(build_levels(d, depth), depth); }

Distribution cauchy_characteristics(const Distribution& d) {
  const auto& frame = d.frame();
  const auto& gens = d.generators();
  const std::size_t n = gens.size();
  std::vector<bool> is_pivot(frame->dim(), false);
  for (auto p : d.basis().pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < frame->dim(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  if (free_cols.empty() || n == 0) return d;

  // residue[i][k][c]: component c of [g_k, g_i] modulo D.
  std::vector<std::vector<RFVector>> residue(n, std::vector<RFVector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      VectorField b = lie_bracket(gens[k], gens[i]);
      RFVector r;
      r.reserve(free_cols.size());
      for (auto c : free_cols) r.push_back(d.basis().residual_at(b.coefficients(), c));
      residue[i][k] = r;
      for (auto& e : r) e = -e;
      residue[k][i] = std::move(r);
    }
  }
  RFMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t ci = 0; ci < free_cols.size(); ++ci) {
      RFVector row;
      row.reserve(n);
      bool nonzero = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) {
          row.push_back(zero_of(frame));
        } else {
          row.push_back(residue[i][k][ci]);
          nonzero = nonzero || !row.back().is_zero();
        }
      }
      if (nonzero) m.push_back(std::move(row));
    }
  }
  auto kernel = algebra::rf_kernel(m, n, frame->ring);
  Distribution out(frame);
  for (const auto& f : kernel) {
    VectorField v(frame);
    for (std::size_t k = 0; k < n; ++k) {
      if (!f[k].is_zero()) v += RationalFunction(f[k]) * gens[k];
    }
    out.add(v);
  }
  return out;
}

FlagReport verify_sandwich(const Distribution& d, std::size_t r) {
  auto built = build_levels(d, r);
  FlagReport report = report_of(built, r);
  std::vector<Distribution> levels;
  for (auto& l : built) levels.push_back(std::move(l.dist));
  // levels[k] = D^{r-k}; cauchy[j] = L(D^j)
  std::vector<Distribution> cauchy;
  for (std::size_t j = 0; j <= r; ++j) cauchy.push_back(cauchy_characteristics(levels[r - j]));
  auto fail = [&](std::string msg) {
    report.sandwich_holds = false;
    report.failures.push_back(std::move(msg));
  };
  for (std::size_t j = 1; j <= r; ++j) {
    auto& level = report.levels[r - j];
    level.cauchy_rank = cauchy[j].rank();
  }
  if (cauchy[r].rank() != 0) fail("L(D^" + std::to_string(r) + ") is not zero");
  for (std::size_t j = 1; j + 1 <= r; ++j) {
    auto& level = report.levels[r - j];
    const Distribution& upper = levels[r - j - 1];  // D^{j+1}
    bool inside = true;
    for (const auto& g : cauchy[j].generators()) {
      if (!upper.contains(g)) inside = false;
    }
    level.cauchy_in_next = inside;
    if (!inside) fail("L(D^" + std::to_string(j) + ") is not contained in D^" + std::to_string(j + 1));
    level.vertical_corank = upper.rank() - std::min(upper.rank(), cauchy[j].rank());
    if (*level.vertical_corank != 1) {
      fail("L(D^" + std::to_string(j) + ") has corank " + std::to_string(*level.vertical_corank) + " in D^" +
           std::to_string(j + 1));
    }
    level.horizontal_codim = cauchy[j].rank() - std::min(cauchy[j].rank(), cauchy[j + 1].rank());
    bool nested = true;
    for (const auto& g : cauchy[j + 1].generators()) {
      if (!cauchy[j].contains(g)) nested = false;
    }
    if (!nested) fail("L(D^" + std::to_string(j + 1) + ") is not contained in L(D^" + std::to_string(j) + ")");
    if (*level.horizontal_codim != 2) {
      fail("L(D^" + std::to_string(j + 1) + ") has codimension " + std::to_string(*level.horizontal_codim) +
           " in L(D^" + std::to_string(j) + ")");
    }
  }
  return report;
}

FlagReport verify_sandwich(const charts::Chart& chart) { return verify_sandwich(chart.distribution(), chart.length()); }

DiagonalMap DiagonalMap::identity(const FramePtr& frame) {
  DiagonalMap m;
  m.scale.assign(frame->dim(), RationalFunction(frame->ring, Scalar(1)));
  m.shift.assign(frame->dim(), zero_of(frame));
  return m;
}

namespace {

RationalFunction substitute_poly(const Polynomial& p, const std::unordered_map<std::size_t, RationalFunction>& images,
                                 std::map<std::pair<std::size_t, unsigned>, RationalFunction>& powers) {
  RationalFunction sum(Polynomial(p.ring()));
  for (const auto& t : p.terms()) {
    algebra::Monomial rest = t.monomial;
    RationalFunction factor(p.ring(), t.coefficient);
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      auto v = t.monomial.var(i);
      auto it = images.find(v);
      if (it == images.end()) continue;
      rest = rest.without(v);
      auto key = std::make_pair(static_cast<std::size_t>(v), t.monomial.exp(i));
      auto pw = powers.find(key);
      if (pw == powers.end()) {
        RationalFunction acc(p.ring(), Scalar(1));
        for (unsigned e = 0; e < t.monomial.exp(i); ++e) acc *= it->second;
        pw = powers.emplace(key, std::move(acc)).first;
      }
      factor *= pw->second;
    }
    sum += factor * RationalFunction(Polynomial::monomial(p.ring(), rest, Scalar(1)));
  }
  return sum;
}

}  // namespace

RationalFunction substitute(const RationalFunction& f,
                            const std::unordered_map<std::size_t, RationalFunction>& images) {
  std::map<std::pair<std::size_t, unsigned>, RationalFunction> powers;
  RationalFunction num = substitute_poly(f.num(), images, powers);
  if (f.is_polynomial()) return num;
  RationalFunction den = substitute_poly(f.den(), images, powers);
  if (den.is_zero()) throw DomainError("denominator vanishes under substitution");
  return num / den;
}

VectorField pushforward(const DiagonalMap& map, const VectorField& v) {
  const auto& frame = v.frame();
  if (map.scale.size() != frame->dim() || map.shift.size() != frame->dim()) {
    throw DomainError("coordinate map does not match the frame");
  }
  std::unordered_map<std::size_t, RationalFunction> images = map.parameter_images;
  for (std::size_t i = 0; i < frame->dim(); ++i) {
    if (map.scale[i].is_zero()) throw DomainError("coordinate map is not invertible (zero scale)");
    images[frame->coords[i]] =
        map.scale[i] * RationalFunction(Polynomial::variable(frame->ring, frame->coords[i])) + map.shift[i];
  }
  VectorField out(frame);
  for (std::size_t i = 0; i < frame->dim(); ++i) {
    if (v[i].is_zero()) continue;
    out[i] = substitute(v[i], images) / map.scale[i];
  }
  return out;
}

Distribution pushforward(const DiagonalMap& map, const Distribution& d) {
  std::vector<VectorField> gens;
  for (const auto& g : d.generators()) gens.push_back(pushforward(map, g));
  return Distribution(d.frame(), std::move(gens));
}

}  // namespace mtower::geometry
