#include "report.hpp"

#include <sstream>

#include "mtower/cli.hpp"

namespace mtower::cli {

namespace {

Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::string optional_text(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

}  // namespace

Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

Json chart_json(const charts::Chart& chart) {
  Json j;
  j["code"] = chart.code().to_string();
  j["constants"] = charts::constant_specs(chart.constants());
  Json coords = Json::array();
  for (std::size_t i = 0; i < chart.dim(); ++i) coords.push_back(chart.frame()->name(i));
  j["coordinates"] = coords;
  j["parameters"] = chart.parameters();
  Json gens = Json::array();
  for (const auto& g : chart.generators()) {
    Json row = Json::array();
    for (std::size_t i = 0; i < g.dim(); ++i) row.push_back(g[i].to_string());
    gens.push_back(row);
  }
  j["generators"] = gens;
  return j;
}

std::string chart_text(const charts::Chart& chart) {
  std::ostringstream out;
  out << "code " << chart.code().to_string() << "\n";
  for (const auto& c : charts::constant_specs(chart.constants())) out << "const " << c << "\n";
  out << "coordinates";
  for (std::size_t i = 0; i < chart.dim(); ++i) out << " " << chart.frame()->name(i);
  out << "\n";
  auto gens = chart.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) out << "Z" << k + 1 << " = " << gens[k].to_string() << "\n";
  return out.str();
}

Json flag_json(const geometry::FlagReport& report) {
  Json levels = Json::array();
  for (const auto& l : report.levels) {
    Json j;
    j["index"] = l.index;
    j["generator_count"] = l.generator_count;
    j["generic_rank"] = l.generic_rank;
    j["origin_rank"] = optional_json(l.origin_rank);
    j["cauchy_rank"] = optional_json(l.cauchy_rank);
    j["cauchy_in_next"] = l.cauchy_in_next ? Json(*l.cauchy_in_next) : Json(nullptr);
    j["vertical_corank"] = optional_json(l.vertical_corank);
    j["horizontal_codim"] = optional_json(l.horizontal_codim);
    levels.push_back(j);
  }
  Json j;
  j["generic_ranks"] = report.generic_ranks();
  j["levels"] = levels;
  j["sandwich_holds"] = report.sandwich_holds;
  j["failures"] = report.failures;
  return j;
}

std::string flag_text(const geometry::FlagReport& report) {
  std::ostringstream out;
  out << "level  gens  rank  origin  L-rank  L<next  corank  codim\n";
  for (const auto& l : report.levels) {
    out << "D^" << l.index << (l.index < 10 ? "    " : "   ") << l.generator_count << "\t" << l.generic_rank << "\t"
        << optional_text(l.origin_rank) << "\t" << optional_text(l.cauchy_rank) << "\t"
        << (l.cauchy_in_next ? (*l.cauchy_in_next ? "yes" : "no") : "-") << "\t" << optional_text(l.vertical_corank)
        << "\t" << optional_text(l.horizontal_codim) << "\n";
  }
  out << "sandwich " << (report.sandwich_holds ? "holds" : "fails") << "\n";
  for (const auto& f : report.failures) out << "failure: " << f << "\n";
  return out.str();
}

std::vector<std::string> field_strings(const geometry::Distribution& d) {
  std::vector<std::string> out;
  for (const auto& g : d.generators()) out.push_back(g.to_string());
  return out;
}

Json moduli_json(const symmetry::ModuliReport& report) {
  Json j;
  j["code"] = report.code.to_string();
  j["constants"] = charts::constant_specs(report.constants);
  j["span_dim"] = report.span_dim;
  j["blocked"] = report.blocked_directions;
  j["verdict"] = symmetry::to_string(report.verdict);
  j["residual"] = report.residual;
  return j;
}

std::string moduli_line(const symmetry::ModuliReport& report) {
  std::ostringstream out;
  out << report.code.to_string();
  for (const auto& c : charts::constant_specs(report.constants)) out << " " << c;
  out << " span=" << report.span_dim;
  if (!report.blocked_directions.empty()) {
    out << " blocked=";
    for (std::size_t i = 0; i < report.blocked_directions.size(); ++i) {
      out << (i ? "," : "") << report.blocked_directions[i];
    }
  }
  out << " " << symmetry::to_string(report.verdict);
  return out.str();
}

Json scaling_json(const charts::Chart& chart, const normalization::DiagonalScaling& scaling) {
  Json j = Json::object();
  for (std::size_t i = 0; i < chart.dim(); ++i) j[chart.frame()->name(i)] = scaling.factors[i].to_string();
  return j;
}

std::string scaling_text(const charts::Chart& chart, const normalization::DiagonalScaling& scaling) {
  std::ostringstream out;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    out << chart.frame()->name(i) << " = " << scaling.factors[i].to_string() << " * " << chart.frame()->name(i)
        << "'\n";
  }
  return out.str();
}

}  // namespace mtower::cli
