#include "mtower/symmetry.hpp"

#include <map>

#include "mtower/errors.hpp"
#include "mtower/parallel.hpp"

namespace mtower::symmetry {

using algebra::RationalFunction;
using geometry::VectorField;

BaseField BaseField::generic(const RingPtr& ring) {
  if (!ring->has_jets()) throw DomainError("the ring carries no jet symbols for a generic base field");
  return {Polynomial::variable(ring, "A"), Polynomial::variable(ring, "B"), Polynomial::variable(ring, "C")};
}

BaseField BaseField::parse(const RingPtr& ring, std::string_view a, std::string_view b, std::string_view c) {
  return {algebra::parse_polynomial(ring, a), algebra::parse_polynomial(ring, b), algebra::parse_polynomial(ring, c)};
}

VectorField SymmetryVector::field() const {
  algebra::RFVector coeffs;
  for (const auto& c : components) coeffs.emplace_back(c);
  return VectorField(frame, std::move(coeffs));
}

namespace {

Polynomial along(const std::vector<Polynomial>& field, const geometry::Frame& frame, std::size_t active,
                 const Polynomial& f) {
  Polynomial sum(frame.ring);
  if (f.is_zero()) return sum;
  for (std::size_t j = 0; j < active; ++j) {
    if (field[j].is_zero()) continue;
    auto d = f.total_diff(frame.coords[j]);
    if (!d.is_zero()) sum += field[j] * d;
  }
  return sum;
}

Polynomial det3(const Polynomial m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

SymmetryVector prolong_symmetry(const BaseField& base, const charts::Chart& chart) {
  const auto& frame = *chart.frame();
  const auto& ring = chart.ring();
  const std::size_t n = chart.dim();
  SymmetryVector out;
  out.frame = chart.frame();
  out.components.assign(n, Polynomial(ring));
  out.components[0] = base.A.in_ring(ring);
  out.components[1] = base.B.in_ring(ring);
  out.components[2] = base.C.in_ring(ring);

  for (std::size_t k = 1; k <= chart.length(); ++k) {
    const auto& wf = chart.stage_generator(k);
    std::vector<Polynomial> w(n, Polynomial(ring));
    for (std::size_t i = 0; i < n; ++i) w[i] = wf[i].num();
    const std::size_t xs = charts::Chart::x_slot(k), ys = charts::Chart::y_slot(k);
    const std::size_t lower = xs;        // coordinates t .. y_{k-1}
    const std::size_t active = xs;       // V_{k-1} lives on these coordinates
    const auto xk = frame.coords[xs], yk = frame.coords[ys];

    // Columns of the 3x3 system: dW/dxk, dW/dyk, -W, restricted to a row.
    auto column_entry = [&](std::size_t row, int col) {
      if (col == 0) return w[row].diff(xk);
      if (col == 1) return w[row].diff(yk);
      return -w[row];
    };
    auto try_rows = [&](std::size_t a, std::size_t b, std::size_t c, Polynomial m[3][3]) {
      std::size_t rows[3] = {a, b, c};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = column_entry(rows[i], j);
      }
      return det3(m);
    };

    Polynomial m[3][3];
    std::size_t rows[3] = {chart.pivot(k - 1), charts::Chart::x_slot(k - 1), charts::Chart::y_slot(k - 1)};
    Polynomial det = try_rows(rows[0], rows[1], rows[2], m);
    if (det.is_zero() || !det.is_constant()) {
      bool found = false;
      Polynomial fallback;
      std::size_t fb[3] = {0, 0, 0};
      for (std::size_t a = 0; a < lower && !found; ++a) {
        for (std::size_t b = a + 1; b < lower && !found; ++b) {
          for (std::size_t c = b + 1; c < lower && !found; ++c) {
            Polynomial d = try_rows(a, b, c, m);
            if (d.is_zero()) continue;
            if (d.is_constant()) {
              rows[0] = a, rows[1] = b, rows[2] = c;
              det = d;
              found = true;
            } else if (fallback.is_zero()) {
              fallback = d;
              fb[0] = a, fb[1] = b, fb[2] = c;
            }
          }
        }
      }
      if (!found) {
        if (fallback.is_zero()) throw DomainError("stage " + std::to_string(k) + " admits no solvable bracket system");
        rows[0] = fb[0], rows[1] = fb[1], rows[2] = fb[2];
        det = fallback;
      }
      try_rows(rows[0], rows[1], rows[2], m);
    }

    // Right-hand side: -[V_{k-1}, W_k] at the chosen rows.
    Polynomial rhs[3];
    for (int i = 0; i < 3; ++i) {
      const std::size_t c = rows[i];
      rhs[i] = along(w, frame, n, out.components[c]) - along(out.components, frame, active, w[c]);
    }
    auto solve_for = [&](int col) {
      Polynomial mm[3][3];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) mm[i][j] = j == col ? rhs[i] : m[i][j];
      }
      Polynomial num = det3(mm);
      if (det.is_constant()) return num * (1 / det.constant_term());
      auto q = algebra::divide_exact(num, det);
      if (!q) throw DomainError("stage " + std::to_string(k) + " has no polynomial prolongation");
      return *q;
    };
    out.components[xs] = solve_for(0);
    out.components[ys] = solve_for(1);
  }
  return out;
}

std::vector<Polynomial> evaluate_at_origin(const SymmetryVector& v) {
  std::vector<std::optional<Scalar>> point(v.frame->ring->size());
  for (auto c : v.frame->coords) point[c] = Scalar(0);
  std::vector<Polynomial> out;
  for (const auto& c : v.components) out.push_back(c.specialize(point));
  return out;
}

namespace {

using LinearForm = std::map<std::size_t, RationalFunction>;

LinearForm to_linear_form(const Polynomial& p) {
  const auto& ring = p.ring();
  std::map<std::size_t, std::vector<algebra::Term>> parts;
  for (const auto& t : p.terms()) {
    std::optional<std::size_t> jet;
    for (std::size_t i = 0; i < t.monomial.factor_count(); ++i) {
      auto v = t.monomial.var(i);
      if (ring->var_class(v) != algebra::VarClass::jet) continue;
      if (jet || t.monomial.exp(i) > 1) throw DomainError("origin value is not linear in the jet symbols");
      jet = v;
    }
    if (!jet) throw DomainError("origin value has a term free of jet symbols");
    parts[*jet].push_back({t.monomial.without(static_cast<std::uint32_t>(*jet)), t.coefficient});
  }
  LinearForm f;
  for (auto& [v, terms] : parts) f.emplace(v, RationalFunction(Polynomial::from_terms(ring, std::move(terms))));
  return f;
}

void axpy(LinearForm& target, const RationalFunction& factor, const LinearForm& source) {
  for (const auto& [v, c] : source) {
    auto it = target.find(v);
    RationalFunction term = factor * c;
    if (it == target.end()) {
      target.emplace(v, std::move(term));
    } else {
      it->second += term;
      if (it->second.is_zero()) target.erase(it);
    }
  }
}

}  // namespace

ConstrainedResidual constrained_residual(const std::vector<Polynomial>& origin_values, const geometry::FramePtr& frame) {
  const std::size_t n = origin_values.size();
  if (n < 2) throw DomainError("need at least two components");
  const auto& ring = frame->ring;
  std::vector<std::pair<std::size_t, LinearForm>> pivots;  // jet -> row with unit coefficient there
  auto reduce = [&](LinearForm row) {
    for (const auto& [p, prow] : pivots) {
      auto it = row.find(p);
      if (it == row.end()) continue;
      RationalFunction f = -it->second;
      axpy(row, f, prow);
    }
    return row;
  };
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (origin_values[i].is_zero()) continue;
    LinearForm row = reduce(to_linear_form(origin_values[i]));
    if (row.empty()) continue;
    auto [p, lead] = *row.begin();
    RationalFunction inv = RationalFunction(ring, Scalar(1)) / lead;
    for (auto& [v, c] : row) c *= inv;
    for (auto& [q, qrow] : pivots) {
      auto it = qrow.find(p);
      if (it == qrow.end()) continue;
      RationalFunction f = -it->second;
      axpy(qrow, f, row);
    }
    pivots.emplace_back(p, std::move(row));
  }
  ConstrainedResidual res;
  std::vector<LinearForm> reduced;
  std::map<std::size_t, bool> seen;
  for (std::size_t i = n - 2; i < n; ++i) {
    LinearForm f = origin_values[i].is_zero() ? LinearForm{} : reduce(to_linear_form(origin_values[i]));
    RationalFunction sum{Polynomial(ring)};
    for (const auto& [v, c] : f) {
      sum += c * RationalFunction(Polynomial::variable(ring, v));
      seen[v] = true;
    }
    res.components.push_back(sum);
    reduced.push_back(std::move(f));
  }
  for (const auto& [v, _] : seen) res.free_jets.push_back(v);
  algebra::FractionFreeBasis basis(res.free_jets.size(), ring);
  for (const auto& f : reduced) {
    std::vector<RationalFunction> row;
    for (auto v : res.free_jets) {
      auto it = f.find(v);
      row.push_back(it == f.end() ? RationalFunction(Polynomial(ring)) : it->second);
    }
    if (!res.free_jets.empty()) basis.insert(row);
    res.coefficients.push_back(std::move(row));
  }
  res.span_dim = basis.rank();
  return res;
}

std::string to_string(Verdict v) { return v == Verdict::candidate_modulus ? "candidate-modulus" : "movable"; }

ModuliReport analyze_moduli(const charts::Chart& chart) {
  const std::size_t r = chart.length();
  charts::ChartOptions options;
  options.jet_order = static_cast<unsigned>(r + 1);
  charts::Chart jc = chart.ring()->has_jets() ? chart : charts::build_chart(chart.code(), chart.constants(), options);

  ModuliReport report;
  report.code = chart.code();
  report.constants = chart.constants();
  auto v = prolong_symmetry(BaseField::generic(jc.ring()), jc);
  auto origin = evaluate_at_origin(v);
  auto residual = constrained_residual(origin, jc.frame());
  report.span_dim = residual.span_dim;
  for (const auto& c : residual.components) report.residual.push_back(c.to_string());

  // Directions carrying a symbolic final-step parameter.
  const auto& last = jc.steps().back();
  std::vector<std::pair<std::size_t, std::string>> symbolic;
  if (last.letter == 1 && std::holds_alternative<std::string>(last.const_x)) symbolic.emplace_back(0, jc.frame()->name(charts::Chart::x_slot(r)));
  if (last.letter != 3 && std::holds_alternative<std::string>(last.const_y)) symbolic.emplace_back(1, jc.frame()->name(charts::Chart::y_slot(r)));

  const auto& ring = jc.ring();
  for (const auto& [row, name] : symbolic) {
    // Is the unit vector e_row in the column span of the 2 x F coefficient matrix?
    algebra::FractionFreeBasis cols(2, ring);
    for (std::size_t j = 0; j < residual.free_jets.size(); ++j) {
      cols.insert(algebra::RFVector{residual.coefficients[0][j], residual.coefficients[1][j]});
    }
    algebra::RFVector e(2, RationalFunction(Polynomial(ring)));
    e[row] = RationalFunction(ring, Scalar(1));
    if (!cols.contains(e)) report.blocked_directions.push_back(name);
  }
  report.verdict = report.blocked_directions.empty() ? Verdict::movable : Verdict::candidate_modulus;
  return report;
}

std::vector<charts::ConstantAssignment> scan_assignments(const flagcomb::ClassCode& code,
                                                         const std::vector<Scalar>& grid) {
  const std::size_t r = code.length();
  // Free numeric slots of steps 2 .. r-1.
  std::vector<std::pair<std::size_t, bool>> slots;  // (step, is_x)
  for (std::size_t k = 2; k < r; ++k) {
    unsigned letter = code.letters[k - 1];
    if (letter == 1) slots.emplace_back(k, true);
    if (letter != 3) slots.emplace_back(k, false);
  }
  std::vector<charts::StepConstants> finals;
  const unsigned last = code.letters[r - 1];
  if (r >= 2 && last == 1) {
    std::vector<charts::SlotValue> xs{std::string("b")}, ys{std::string("c")};
    for (const auto& g : grid) xs.emplace_back(g), ys.emplace_back(g);
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        if (std::holds_alternative<Scalar>(x) && std::holds_alternative<Scalar>(y)) continue;
        finals.push_back({x, y});
      }
    }
  } else if (r >= 2 && last == 2) {
    finals.push_back({std::nullopt, charts::SlotValue(std::string("c"))});
  } else {
    finals.push_back({});
  }
  std::vector<charts::ConstantAssignment> out;
  std::vector<std::size_t> digit(slots.size(), 0);
  while (true) {
    charts::ConstantAssignment base;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto& sc = base[slots[i].first];
      (slots[i].second ? sc.x : sc.y) = grid[digit[i]];
    }
    for (const auto& f : finals) {
      charts::ConstantAssignment a = base;
      if (f.x || f.y) a[r] = f;
      out.push_back(std::move(a));
    }
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == grid.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

std::vector<ModuliReport> moduli_scan(unsigned length, const std::vector<Scalar>& grid, std::size_t threads) {
  if (grid.empty()) throw DomainError("constant grid is empty");
  std::vector<std::pair<flagcomb::ClassCode, charts::ConstantAssignment>> jobs;
  for (const auto& code : flagcomb::enumerate_codes(2, length)) {
    for (auto& a : scan_assignments(code, grid)) jobs.emplace_back(code, std::move(a));
  }
  charts::ChartOptions options;
  options.jet_order = length + 1;
  return parallel_map<ModuliReport>(
      jobs.size(), [&](std::size_t i) { return analyze_moduli(charts::build_chart(jobs[i].first, jobs[i].second, options)); },
      threads);
}

}  // namespace mtower::symmetry
