#include "mtower/charts.hpp"

#include <algorithm>
#include <cctype>

#include "mtower/errors.hpp"

namespace mtower::charts {

using algebra::Polynomial;
using algebra::RationalFunction;
using geometry::VectorField;

std::string to_string(const SlotValue& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return algebra::to_string(*s);
  return std::get<std::string>(v);
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

SlotValue parse_slot_value(std::string_view text) {
  std::string t = trim(text);
  if (is_identifier(t)) return t;
  return algebra::parse_scalar(t);
}

void parse_constant_spec(std::string_view spec, ConstantAssignment& into) {
  const std::string quoted = "'" + std::string(spec) + "'";
  auto eq = spec.find('=');
  if (eq == std::string_view::npos || spec.substr(0, 4) != "step") {
    throw DomainError("constant " + quoted + " must look like stepK=X,Y or stepK=x:X or stepK=y:Y");
  }
  std::size_t step = 0;
  try {
    std::size_t used = 0;
    step = std::stoul(std::string(spec.substr(4, eq - 4)), &used);
    if (used != eq - 4) throw DomainError("");
  } catch (const std::exception&) {
    throw DomainError("bad step number in constant " + quoted);
  }
  if (step == 0) throw DomainError("step numbers start at 1 in constant " + quoted);
  auto value = spec.substr(eq + 1);
  auto& slot = into[step];
  if (value.size() > 2 && (value[0] == 'x' || value[0] == 'y') && value[1] == ':') {
    (value[0] == 'x' ? slot.x : slot.y) = parse_slot_value(value.substr(2));
    return;
  }
  auto comma = value.find(',');
  if (comma == std::string_view::npos) throw DomainError("constant " + quoted + " needs two values or an x:/y: prefix");
  slot.x = parse_slot_value(value.substr(0, comma));
  slot.y = parse_slot_value(value.substr(comma + 1));
}

ConstantAssignment parse_constants(const std::vector<std::string>& specs) {
  ConstantAssignment out;
  for (const auto& s : specs) parse_constant_spec(s, out);
  return out;
}

std::vector<std::string> constant_specs(const ConstantAssignment& constants) {
  std::vector<std::string> out;
  for (const auto& [step, c] : constants) {
    std::string head = "step" + std::to_string(step) + "=";
    if (c.x && c.y) {
      out.push_back(head + to_string(*c.x) + "," + to_string(*c.y));
    } else if (c.x) {
      out.push_back(head + "x:" + to_string(*c.x));
    } else if (c.y) {
      out.push_back(head + "y:" + to_string(*c.y));
    }
  }
  return out;
}

std::vector<VectorField> Chart::generators() const {
  const std::size_t r = length();
  return {main_generator(), VectorField::coordinate(frame_, x_slot(r)), VectorField::coordinate(frame_, y_slot(r))};
}

geometry::Distribution Chart::distribution() const { return geometry::Distribution(frame_, generators()); }

Chart Chart::specialized(const std::map<std::string, Scalar>& values) const {
  ConstantAssignment constants = constants_;
  for (auto& [step, c] : constants) {
    for (auto* slot : {&c.x, &c.y}) {
      if (!*slot) continue;
      if (const auto* name = std::get_if<std::string>(&**slot)) {
        auto it = values.find(*name);
        if (it != values.end()) *slot = it->second;
      }
    }
  }
  ChartOptions options;
  if (ring()->has_jets()) options.jet_order = ring()->jet_order();
  return build_chart(code_, constants, options);
}

Chart build_chart(const flagcomb::ClassCode& code, const ConstantAssignment& constants, const ChartOptions& options) {
  if (code.m != 2) throw DomainError("charts are built for width m = 2 only");
  const std::size_t r = code.length();
  for (const auto& [step, c] : constants) {
    if (step < 1 || step > r) {
      throw DomainError("constant given for step " + std::to_string(step) + " of a length-" + std::to_string(r) + " code");
    }
    unsigned letter = code.letters[step - 1];
    const std::string where = "step " + std::to_string(step) + " (letter " + std::to_string(letter) + ")";
    if (step == 1 && (c.x || c.y)) throw DomainError("the first step carries no constants");
    if (letter == 3 && (c.x || c.y)) throw DomainError(where + " carries no constants");
    if (letter == 2 && c.x) throw DomainError(where + " has no x-slot constant");
  }

  Chart chart;
  chart.code_ = code;
  chart.constants_ = constants;

  std::vector<std::string> coords{"t", "x0", "y0"};
  for (std::size_t k = 1; k <= r; ++k) {
    coords.push_back("x" + std::to_string(k));
    coords.push_back("y" + std::to_string(k));
  }
  std::vector<std::string> params;
  auto note_param = [&](const std::optional<SlotValue>& v) {
    if (!v) return;
    if (const auto* name = std::get_if<std::string>(&*v)) {
      if (std::find(coords.begin(), coords.end(), *name) != coords.end()) {
        throw DomainError("parameter '" + *name + "' clashes with a coordinate name");
      }
      if (std::find(params.begin(), params.end(), *name) == params.end()) params.push_back(*name);
    }
  };
  for (const auto& [step, c] : constants) {
    note_param(c.x);
    note_param(c.y);
  }
  for (const auto& extra : options.extra_parameters) note_param(SlotValue(extra));

  algebra::RingBuilder builder;
  for (const auto& c : coords) builder.coordinate(c);
  for (const auto& p : params) builder.parameter(p);
  if (options.jet_order > 0) builder.jets({"A", "B", "C"}, {"t", "x0", "y0"}, options.jet_order);
  auto ring = builder.build();
  chart.frame_ = geometry::make_frame(ring, coords);
  chart.parameters_ = params;

  auto value_of = [&](const SlotValue& v) {
    if (const auto* s = std::get_if<Scalar>(&v)) return Polynomial(ring, *s);
    return Polynomial::variable(ring, std::get<std::string>(v));
  };
  auto coord = [&](std::size_t slot) { return Polynomial::variable(ring, chart.frame_->coords[slot]); };

  const std::size_t n = coords.size();
  std::vector<Polynomial> w(n, Polynomial(ring));
  w[0] = Polynomial(ring, Scalar(1));
  auto to_field = [&](const std::vector<Polynomial>& coeffs) {
    algebra::RFVector v;
    for (const auto& c : coeffs) v.emplace_back(c);
    return VectorField(chart.frame_, std::move(v));
  };
  chart.stages_.push_back(to_field(w));
  chart.pivots_.push_back(0);

  for (std::size_t k = 1; k <= r; ++k) {
    ChartStep step;
    step.letter = code.letters[k - 1];
    if (auto it = constants.find(k); it != constants.end()) {
      if (it->second.x) step.const_x = *it->second.x;
      if (it->second.y) step.const_y = *it->second.y;
    }
    const std::size_t px = Chart::x_slot(k - 1), py = Chart::y_slot(k - 1);
    const Polynomial xk = coord(Chart::x_slot(k)), yk = coord(Chart::y_slot(k));
    std::size_t pivot = chart.pivots_.back();
    switch (step.letter) {
      case 1:
        w[px] = value_of(step.const_x) + xk;
        w[py] = value_of(step.const_y) + yk;
        break;
      case 2:
        for (auto& c : w) c = c * xk;
        w[px] = Polynomial(ring, Scalar(1));
        w[py] = value_of(step.const_y) + yk;
        pivot = px;
        break;
      case 3:
        for (auto& c : w) c = c * xk;
        w[px] = yk;
        w[py] = Polynomial(ring, Scalar(1));
        pivot = py;
        break;
      default:
        throw DomainError("letter " + std::to_string(step.letter) + " is not available for m = 2");
    }
    chart.steps_.push_back(step);
    chart.stages_.push_back(to_field(w));
    chart.pivots_.push_back(pivot);
  }
  return chart;
}

Chart build_chart(std::string_view code, const ConstantAssignment& constants, const ChartOptions& options) {
  return build_chart(flagcomb::validate_code(code, 2), constants, options);
}

PfaffSystem pfaffian_system(const Chart& chart) {
  PfaffSystem sys;
  sys.frame = chart.frame();
  const auto& ring = chart.ring();
  const std::size_t n = chart.dim();
  auto unit = [&](std::size_t slot, std::size_t other, Polynomial coef) {
    RFVector f(n, RationalFunction(Polynomial(ring)));
    f[slot] = RationalFunction(ring, Scalar(1));
    f[other] = RationalFunction(-coef);
    return f;
  };
  auto value_of = [&](const SlotValue& v) {
    if (const auto* s = std::get_if<Scalar>(&v)) return Polynomial(ring, *s);
    return Polynomial::variable(ring, std::get<std::string>(v));
  };
  for (std::size_t k = 1; k <= chart.length(); ++k) {
    const auto& step = chart.steps()[k - 1];
    const std::size_t p = chart.pivot(k - 1);
    const std::size_t px = Chart::x_slot(k - 1), py = Chart::y_slot(k - 1);
    const Polynomial xk = Polynomial::variable(ring, chart.frame()->coords[Chart::x_slot(k)]);
    const Polynomial yk = Polynomial::variable(ring, chart.frame()->coords[Chart::y_slot(k)]);
    switch (step.letter) {
      case 1:
        sys.forms.push_back(unit(px, p, value_of(step.const_x) + xk));
        sys.forms.push_back(unit(py, p, value_of(step.const_y) + yk));
        break;
      case 2:
        sys.forms.push_back(unit(p, px, xk));
        sys.forms.push_back(unit(py, px, value_of(step.const_y) + yk));
        break;
      case 3:
        sys.forms.push_back(unit(p, py, xk));
        sys.forms.push_back(unit(px, py, yk));
        break;
    }
  }
  return sys;
}

std::vector<std::string> PfaffSystem::to_strings() const {
  std::vector<std::string> out;
  for (const auto& f : forms) out.push_back(form_to_string(frame, f));
  return out;
}

RFVector parse_form(const geometry::FramePtr& frame, std::string_view text) {
  const auto& ring = frame->ring;
  algebra::RingBuilder builder;
  for (const auto& name : ring->names()) builder.coordinate(name);
  std::vector<std::string> dnames;
  for (std::size_t i = 0; i < frame->dim(); ++i) {
    dnames.push_back("d" + frame->name(i));
    if (ring->find(dnames.back())) throw DomainError("differential name " + dnames.back() + " clashes with a variable");
    builder.coordinate(dnames.back());
  }
  auto big = builder.build();
  Polynomial p = algebra::parse_polynomial(big, text);
  RFVector form;
  Polynomial rest = p;
  for (const auto& dn : dnames) {
    auto v = big->index(dn);
    Polynomial coef = p.coefficient_of(v, 1);
    for (const auto& d2 : dnames) {
      if (coef.depends_on(big->index(d2))) throw DomainError("form '" + std::string(text) + "' is not linear in differentials");
    }
    rest -= coef * Polynomial::variable(big, v);
    form.emplace_back(coef.in_ring(ring));
  }
  if (!rest.is_zero()) throw DomainError("form '" + std::string(text) + "' has terms without a differential");
  return form;
}

std::string form_to_string(const geometry::FramePtr& frame, const RFVector& form) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form[i].is_constant() && !form[i].is_zero() && form[i].num().constant_term() == 1) order.push_back(i);
  }
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (!form[i].is_zero() && std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  }
  std::string out;
  for (auto i : order) {
    RationalFunction f = form[i];
    bool negative = f.num().leading().coefficient < 0;
    if (negative) f = -f;
    std::string coef = f.to_string();
    if (f.is_polynomial() && f.num().size() > 1) coef = "(" + coef + ")";
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (coef != "1") out += coef + "*";
    out += "d" + frame->name(i);
  }
  return out.empty() ? "0" : out;
}

RationalFunction contract(const RFVector& form, const geometry::VectorField& v) {
  RationalFunction sum(Polynomial(v.frame()->ring));
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (!form[i].is_zero() && !v[i].is_zero()) sum += form[i] * v[i];
  }
  return sum;
}

bool form_span_equal(const geometry::FramePtr& frame, const std::vector<RFVector>& a, const std::vector<RFVector>& b) {
  algebra::FractionFreeBasis ba(frame->dim(), frame->ring), bb(frame->dim(), frame->ring);
  for (const auto& f : a) ba.insert(f);
  for (const auto& f : b) bb.insert(f);
  if (ba.rank() != bb.rank()) return false;
  for (const auto& f : b) {
    if (!ba.contains(f)) return false;
  }
  return true;
}

}  // namespace mtower::charts
