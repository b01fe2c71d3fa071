#include "mtower/normalization.hpp"

#include <algorithm>
#include <sstream>

#include "mtower/errors.hpp"

namespace mtower::normalization {

using algebra::Polynomial;
using algebra::RationalFunction;
using charts::Chart;

namespace {

std::string power(const std::string& base, const Scalar& e) {
  if (e == 1) return base;
  std::string s = e.get_str();
  if (e.get_den() != 1 || e < 0) s = "(" + s + ")";
  return base + "^" + s;
}

Scalar mod2(const Scalar& x) {
  mpz_class r = x.get_num() % 2;
  if (r < 0) r += 2;
  return Scalar(r);
}

}  // namespace

std::string Exponent::to_string() const {
  std::vector<std::string> parts;
  if (b_exp != 0) parts.push_back(power("b", b_exp));
  const bool odd = c_exp.get_den() == 1 && c_exp.get_num() % 2 != 0;
  const bool plain_c = c_exp.get_den() == 1 && odd == (sign % 2 == 1);
  if (plain_c) {
    if (c_exp != 0) parts.push_back(power("c", c_exp));
  } else {
    if (c_exp != 0) parts.push_back(power("|c|", c_exp));
    if (sign % 2) parts.push_back("sgn(c)");
  }
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

DiagonalScaling DiagonalScaling::from_table(const Chart& chart, const std::map<std::string, Exponent>& table) {
  DiagonalScaling s = identity(chart.dim());
  for (const auto& [name, e] : table) {
    auto slot = chart.frame()->slot_of(name);
    if (!slot) throw DomainError("scaling table names unknown coordinate '" + name + "'");
    s.factors[*slot] = e;
  }
  return s;
}

std::string to_string(SignBranch s) { return s == SignBranch::positive ? "c>0" : "c<0"; }

std::string TargetValue::to_string() const { return value ? value->get_str() : "sgn(c)"; }

Target parse_target(std::string_view text) {
  Target t;
  std::string s(text);
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("target entry '" + item + "' must look like name=value");
    std::string name = item.substr(0, eq), value = item.substr(eq + 1);
    if (value == "sgn" || value == "sgn(c)") {
      t[name] = TargetValue::sign_of_c();
    } else {
      t[name] = TargetValue::number(algebra::parse_scalar(value));
    }
  }
  return t;
}

Chart with_root_symbol(const Chart& chart) {
  if (chart.ring()->find("s")) return chart;
  charts::ChartOptions options;
  if (chart.ring()->has_jets()) options.jet_order = chart.ring()->jet_order();
  options.extra_parameters.push_back("s");
  return charts::build_chart(chart.code(), chart.constants(), options);
}

namespace {

Scalar sigma(SignBranch branch) { return branch == SignBranch::positive ? Scalar(1) : Scalar(-1); }

/// b^u * s^(2v) * sigma^w as a rational function.
RationalFunction factor_of(const Chart& chart, const Exponent& e, SignBranch branch) {
  const auto& ring = chart.ring();
  if (e.b_exp.get_den() != 1) throw DomainError("fractional exponent of b in scaling factor " + e.to_string());
  Scalar two_v = e.c_exp * 2;
  if (two_v.get_den() != 1) throw DomainError("exponent of |c| in " + e.to_string() + " is not a multiple of 1/2");
  Polynomial num(ring, e.sign % 2 ? sigma(branch) : Scalar(1));
  Polynomial den(ring, Scalar(1));
  auto raise = [&](const char* name, const Scalar& exp) {
    if (exp == 0) return;
    auto v = ring->find(name);
    if (!v) throw DomainError(std::string("scaling uses parameter '") + name + "' which the chart lacks");
    long k = exp.get_num().get_si();
    (k > 0 ? num : den) *= Polynomial::variable(ring, *v, static_cast<unsigned>(k > 0 ? k : -k));
  };
  raise("b", e.b_exp);
  raise("s", two_v);
  return RationalFunction(num, den);
}

std::unordered_map<std::size_t, RationalFunction> c_image(const Chart& chart, SignBranch branch) {
  std::unordered_map<std::size_t, RationalFunction> images;
  const auto& ring = chart.ring();
  if (auto c = ring->find("c")) {
    images.emplace(*c, RationalFunction(Polynomial::variable(ring, "s", 2) * sigma(branch)));
  }
  return images;
}

}  // namespace

geometry::Distribution apply_scaling(const Chart& chart_in, const DiagonalScaling& scaling, SignBranch branch) {
  Chart chart = with_root_symbol(chart_in);
  if (scaling.factors.size() != chart.dim()) throw DomainError("scaling does not cover every chart coordinate");
  geometry::DiagonalMap map = geometry::DiagonalMap::identity(chart.frame());
  for (std::size_t i = 0; i < chart.dim(); ++i) map.scale[i] = factor_of(chart, scaling.factors[i], branch);
  map.parameter_images = c_image(chart, branch);
  return geometry::pushforward(map, chart.distribution());
}

geometry::Distribution target_distribution(const Chart& chart_in, const Target& target, SignBranch branch) {
  Chart chart = with_root_symbol(chart_in);
  const auto& ring = chart.ring();
  geometry::DiagonalMap map = geometry::DiagonalMap::identity(chart.frame());
  map.parameter_images = c_image(chart, branch);
  for (const auto& [name, value] : target) {
    auto v = ring->find(name);
    if (!v) throw DomainError("target names unknown parameter '" + name + "'");
    Scalar x = value.value ? *value.value : sigma(branch);
    map.parameter_images[*v] = RationalFunction(ring, x);
  }
  return geometry::pushforward(map, chart.distribution());
}

bool verify_scaling(const Chart& chart_in, const DiagonalScaling& scaling, const Target& target, SignBranch branch) {
  Chart chart = with_root_symbol(chart_in);
  return geometry::distribution_equal(apply_scaling(chart, scaling, branch), target_distribution(chart, target, branch));
}

AffineSolution solve_affine(const LinearSystem& system, std::size_t unknowns, bool mod2_field) {
  const std::size_t rows = system.rows.size();
  std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(unknowns + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) m[i][j] = mod2_field ? mod2(system.rows[i][j]) : system.rows[i][j];
    m[i][unknowns] = mod2_field ? mod2(system.rhs[i]) : system.rhs[i];
  }
  auto reduce = [&](Scalar x) { return mod2_field ? mod2(x) : x; };
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < unknowns && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    Scalar inv = 1 / m[rank][c];  // in GF(2) the pivot is 1
    for (auto& e : m[rank]) e = reduce(e * inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Scalar f = m[r][c];
      for (std::size_t k = 0; k <= unknowns; ++k) m[r][k] = reduce(m[r][k] - f * m[rank][k]);
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  AffineSolution sol;
  for (std::size_t r = rank; r < rows; ++r) {
    if (m[r][unknowns] != 0) return sol;
  }
  sol.consistent = true;
  sol.particular.assign(unknowns, Scalar(0));
  for (std::size_t i = 0; i < rank; ++i) sol.particular[pivot_cols[i]] = m[i][unknowns];
  std::vector<bool> is_pivot(unknowns, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(unknowns, Scalar(0));
    v[f] = 1;
    for (std::size_t i = 0; i < rank; ++i) v[pivot_cols[i]] = reduce(-m[i][f]);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

ScalingSolution solve_scaling_weights(const Chart& chart, const Target& target) {
  const auto& ring = chart.ring();
  const auto& frame = *chart.frame();
  const std::size_t n = chart.dim();
  const std::size_t unknowns = n + 1;  // coordinate exponents, then the multiplier
  for (const auto& [name, value] : target) {
    if (!ring->find(name)) throw DomainError("target names unknown parameter '" + name + "'");
    if (name != "b" && name != "c") throw DomainError("only the parameters b and c can be normalized");
    if (value.value && *value.value != 1) throw DomainError("parameters can only be normalized to 1 or sgn(c)");
    if (!value.value && name != "c") throw DomainError("only c can be normalized to its sign");
  }
  auto b_var = ring->find("b");
  auto c_var = ring->find("c");
  const bool b_targeted = target.count("b") > 0;
  const bool c_targeted = target.count("c") > 0;
  const bool c_to_sign = c_targeted && !target.at("c").value;

  std::vector<std::optional<std::size_t>> slot_of_var(ring->size());
  for (std::size_t j = 0; j < n; ++j) slot_of_var[frame.coords[j]] = j;

  ScalingSolution sol;
  const auto& w = chart.main_generator();
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].is_zero()) continue;
    for (const auto& term : w[i].num().terms()) {
      std::vector<Scalar> row(unknowns, Scalar(0));
      unsigned beta = 0, gamma = 0;
      for (std::size_t f = 0; f < term.monomial.factor_count(); ++f) {
        auto v = term.monomial.var(f);
        auto e = term.monomial.exp(f);
        if (slot_of_var[v]) {
          row[*slot_of_var[v]] += e;
        } else if (b_var && v == *b_var) {
          beta = e;
        } else if (c_var && v == *c_var) {
          gamma = e;
        }
      }
      row[i] -= 1;
      row[n] -= 1;
      sol.b_system.rows.push_back(row);
      sol.b_system.rhs.push_back(b_targeted ? -Scalar(beta) : Scalar(0));
      sol.c_system.rows.push_back(row);
      sol.c_system.rhs.push_back(c_targeted ? -Scalar(gamma) : Scalar(0));
      sol.sign_system.rows.push_back(row);
      sol.sign_system.rhs.push_back(c_targeted && !c_to_sign ? mod2(Scalar(gamma)) : Scalar(0));
    }
  }
  // Without the parameter its exponents are meaningless; pin them to 0.
  AffineSolution absent{true, std::vector<Scalar>(unknowns, Scalar(0)), {}};
  sol.b_part = b_var ? solve_affine(sol.b_system, unknowns) : absent;
  sol.c_part = c_var ? solve_affine(sol.c_system, unknowns) : absent;
  sol.sign_part = c_var ? solve_affine(sol.sign_system, unknowns, true) : absent;
  if (!b_var) sol.b_system = {};
  if (!c_var) sol.c_system = sol.sign_system = {};
  sol.consistent = sol.b_part.consistent && sol.c_part.consistent && sol.sign_part.consistent;
  if (sol.consistent) {
    sol.scaling = DiagonalScaling::identity(n);
    for (std::size_t j = 0; j <= n; ++j) {
      Exponent e{sol.b_part.particular[j], sol.c_part.particular[j],
                 static_cast<unsigned>(sol.sign_part.particular[j].get_num().get_ui() % 2)};
      if (j < n) {
        sol.scaling.factors[j] = e;
      } else {
        sol.multiplier = e;
      }
    }
  }
  for (const auto& [name, value] : target) sol.residual_params[name] = value.to_string();
  return sol;
}

namespace {

bool member(const LinearSystem& system, const std::vector<Scalar>& known, bool mod2_field) {
  // One unknown (the multiplier, last column) remains; check consistency.
  std::optional<Scalar> t;
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    const auto& row = system.rows[i];
    Scalar r = system.rhs[i];
    for (std::size_t j = 0; j < known.size(); ++j) r -= row[j] * known[j];
    Scalar a = row[known.size()];
    if (mod2_field) {
      r = mod2(r);
      a = mod2(a);
    }
    if (a == 0) {
      if (r != 0) return false;
      continue;
    }
    Scalar value = mod2_field ? r : r / a;
    if (t && *t != value) return false;
    t = value;
  }
  return true;
}

}  // namespace

bool ScalingSolution::contains(const DiagonalScaling& s) const {
  if (!consistent) return false;
  std::vector<Scalar> u, v, w;
  for (const auto& f : s.factors) {
    u.push_back(f.b_exp);
    v.push_back(f.c_exp);
    w.push_back(Scalar(f.sign % 2));
  }
  auto zero = [](const std::vector<Scalar>& x) { return std::all_of(x.begin(), x.end(), [](const Scalar& e) { return e == 0; }); };
  bool b_ok = b_system.rows.empty() ? zero(u) : member(b_system, u, false);
  bool c_ok = c_system.rows.empty() ? zero(v) && zero(w) : member(c_system, v, false) && member(sign_system, w, true);
  return b_ok && c_ok;
}

BoundaryResult normalize_boundary_cases(const Chart& chart, Boundary which) {
  const char* zero = which == Boundary::b_zero ? "b" : "c";
  const char* other = which == Boundary::b_zero ? "c" : "b";
  const auto& params = chart.parameters();
  auto has = [&](const char* p) { return std::find(params.begin(), params.end(), p) != params.end(); };
  BoundaryResult result{has(zero) ? chart.specialized({{zero, Scalar(0)}}) : chart, {}, {}, false, false};
  if (has(other)) result.target[other] = TargetValue::number(1);
  result.solution = solve_scaling_weights(result.chart, result.target);
  if (!result.solution.consistent && std::string(other) == "c") {
    result.target[other] = TargetValue::sign_of_c();
    result.solution = solve_scaling_weights(result.chart, result.target);
  }
  if (result.solution.consistent) {
    result.verified_positive = verify_scaling(result.chart, result.solution.scaling, result.target, SignBranch::positive);
    result.verified_negative = verify_scaling(result.chart, result.solution.scaling, result.target, SignBranch::negative);
  }
  return result;
}

}  // namespace mtower::normalization
