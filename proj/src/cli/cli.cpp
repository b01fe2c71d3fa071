#include "mtower/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "mtower/errors.hpp"
#include "mtower/flagcomb.hpp"
#include "report.hpp"

namespace mtower::cli {

using algebra::Scalar;

namespace {

struct ChartArgs {
  std::string code;
  std::vector<std::string> constants;
  std::string fixture;
  std::vector<std::string> values;
  std::size_t jet_order = 0;
};

void add_chart_options(CLI::App* cmd, ChartArgs& a) {
  cmd->add_option("--code", a.code, "class code, e.g. 1.2.3.1.2");
  cmd->add_option("--const", a.constants, "constants, e.g. step4=1,1 or step5=y:a")->take_all();
  cmd->add_option("--fixture", a.fixture, "named fixture (see `fixtures`)");
  cmd->add_option("--set", a.values, "specialize a parameter, e.g. b=1")->take_all();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

charts::Chart resolve_chart(const ChartArgs& a) {
  if (a.code.empty() == a.fixture.empty()) throw DomainError("give exactly one of --code or --fixture");
  charts::ChartOptions options;
  options.jet_order = a.jet_order;
  charts::Chart chart = a.fixture.empty() ? charts::build_chart(a.code, charts::parse_constants(a.constants), options)
                                          : charts::build_fixture(a.fixture, options);
  if (!a.fixture.empty() && !a.constants.empty()) throw DomainError("--const cannot be combined with --fixture");
  if (a.values.empty()) return chart;
  std::map<std::string, Scalar> values;
  for (const auto& v : a.values) {
    auto eq = v.find('=');
    if (eq == std::string::npos) throw DomainError("--set expects name=value, got '" + v + "'");
    std::string name = v.substr(0, eq);
    const auto& params = chart.parameters();
    if (std::find(params.begin(), params.end(), name) == params.end()) {
      throw DomainError("chart has no parameter '" + name + "'");
    }
    values[name] = algebra::parse_scalar(v.substr(eq + 1));
  }
  return chart.specialized(values);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json code_json(const flagcomb::ClassCode& code) {
  Json j = document("class");
  j["code"] = code.to_string();
  j["codim"] = flagcomb::codimension(code);
  j["sandwich"] = flagcomb::sandwich_class(code).to_string();
  return j;
}

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singularity classes of Goursat flags: charts, flags, symmetries and rescalings", "mtower"};
  app.require_subcommand(1);
  std::string format = "text";
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  };

  unsigned m = 2, length = 0;
  bool count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "list the class codes of a given length");
  enumerate->add_option("--m", m, "flag width")->check(CLI::Range(2u, 16u));
  enumerate->add_option("--length", length, "code length")->required()->check(CLI::Range(1u, 20u));
  enumerate->add_flag("--count", count_only, "print only the number of codes");
  add_format(enumerate);

  std::string code_text;
  auto* codim = app.add_subcommand("codim", "codimension of a class");
  codim->add_option("--code", code_text, "class code")->required();
  add_format(codim);
  auto* sandwich = app.add_subcommand("sandwich", "Sandwich class of a code");
  sandwich->add_option("--code", code_text, "class code")->required();
  add_format(sandwich);

  ChartArgs chart_args;
  auto* chart_cmd = app.add_subcommand("chart", "EKR chart generators");
  add_chart_options(chart_cmd, chart_args);
  add_format(chart_cmd);

  auto* pfaff = app.add_subcommand("pfaff", "dual Pfaffian system of a chart");
  add_chart_options(pfaff, chart_args);
  add_format(pfaff);

  std::size_t depth = 0;
  auto* flag_cmd = app.add_subcommand("derived-flag", "ranks of the derived flag");
  add_chart_options(flag_cmd, chart_args);
  flag_cmd->add_option("--depth", depth, "number of bracket steps (default: chart length)");
  add_format(flag_cmd);

  bool of_square = false;
  auto* cauchy = app.add_subcommand("cauchy", "Cauchy characteristics of the distribution");
  add_chart_options(cauchy, chart_args);
  cauchy->add_flag("--of-square", of_square, "use [D, D] instead of D");
  add_format(cauchy);

  auto* verify = app.add_subcommand("verify-sandwich", "check the Sandwich Diagram inclusions");
  add_chart_options(verify, chart_args);
  add_format(verify);

  bool at_origin = false, constrained = false;
  auto* sym = app.add_subcommand("symmetries", "prolong a generic base vector field up the chart");
  add_chart_options(sym, chart_args);
  sym->add_option("--jet-order", chart_args.jet_order, "jet truncation order (default: length + 1)");
  sym->add_flag("--at-origin", at_origin, "evaluate the components at the origin");
  sym->add_flag("--constrained", constrained, "also impose the vanishing of the older components");
  add_format(sym);

  unsigned scan_length = 5;
  std::string grid_text = "0,1";
  bool show_all = false;
  auto* scan = app.add_subcommand("moduli-scan", "search for candidate moduli among all classes of a length");
  scan->add_option("--length", scan_length, "code length")->check(CLI::Range(2u, 6u));
  scan->add_option("--grid", grid_text, "constant values, comma separated");
  scan->add_flag("--all", show_all, "report every assignment, not only candidates");
  add_format(scan);

  std::string target_text = "b=1,c=1", boundary;
  bool verify_flag = false;
  auto* rescale = app.add_subcommand("rescale", "diagonal rescalings normalizing the chart parameters");
  add_chart_options(rescale, chart_args);
  rescale->add_option("--target", target_text, "parameter targets, e.g. b=1,c=sgn");
  rescale->add_option("--boundary", boundary, "set this parameter to 0 and normalize the other")
      ->check(CLI::IsMember({"b", "c"}));
  rescale->add_flag("--verify", verify_flag, "check the pushforward in both sign branches");
  add_format(rescale);

  auto* fixtures = app.add_subcommand("fixtures", "list the named fixtures");
  add_format(fixtures);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const bool json = format == "json";
  try {
    if (*enumerate) {
      if (count_only) {
        auto n = flagcomb::count_codes(m, length);
        if (json) {
          Json j = document("enumerate");
          j["m"] = m;
          j["length"] = length;
          j["count"] = n;
          emit(out, j);
        } else {
          out << n << "\n";
        }
      } else {
        auto codes = flagcomb::enumerate_codes(m, length);
        if (json) {
          Json j = document("enumerate");
          j["m"] = m;
          j["length"] = length;
          j["count"] = codes.size();
          Json list = Json::array();
          for (const auto& c : codes) list.push_back(c.to_string());
          j["codes"] = list;
          emit(out, j);
        } else {
          for (const auto& c : codes) out << c.to_string() << "\n";
        }
      }
    } else if (*codim || *sandwich) {
      auto code = flagcomb::validate_code(code_text);
      if (json) {
        emit(out, code_json(code));
      } else if (*codim) {
        out << flagcomb::codimension(code) << "\n";
      } else {
        out << flagcomb::sandwich_class(code).to_string() << "\n";
      }
    } else if (*chart_cmd) {
      auto chart = resolve_chart(chart_args);
      if (json) {
        Json j = document("chart");
        merge(j, chart_json(chart));
        emit(out, j);
      } else {
        out << chart_text(chart);
      }
    } else if (*pfaff) {
      auto chart = resolve_chart(chart_args);
      auto forms = charts::pfaffian_system(chart).to_strings();
      if (json) {
        Json j = document("pfaff");
        j["code"] = chart.code().to_string();
        j["constants"] = charts::constant_specs(chart.constants());
        j["forms"] = forms;
        emit(out, j);
      } else {
        for (const auto& f : forms) out << f << " = 0\n";
      }
    } else if (*flag_cmd) {
      auto chart = resolve_chart(chart_args);
      std::size_t d = depth ? depth : chart.length();
      if (d > chart.length()) throw DomainError("--depth exceeds the chart length");
      auto report = geometry::derived_flag(chart.distribution(), d);
      if (json) {
        Json j = document("derived-flag");
        j["code"] = chart.code().to_string();
        merge(j, flag_json(report));
        emit(out, j);
      } else {
        out << flag_text(report);
      }
    } else if (*cauchy) {
      auto chart = resolve_chart(chart_args);
      auto d = chart.distribution();
      if (of_square) d = geometry::derived_flag_levels(d, 1).back();
      auto l = geometry::cauchy_characteristics(d);
      auto fields = field_strings(l);
      if (json) {
        Json j = document("cauchy");
        j["code"] = chart.code().to_string();
        j["of_square"] = of_square;
        j["rank"] = l.rank();
        j["basis"] = fields;
        emit(out, j);
      } else {
        out << "rank " << l.rank() << "\n";
        for (const auto& f : fields) out << f << "\n";
      }
    } else if (*verify) {
      auto chart = resolve_chart(chart_args);
      auto report = geometry::verify_sandwich(chart);
      if (json) {
        Json j = document("verify-sandwich");
        j["code"] = chart.code().to_string();
        merge(j, flag_json(report));
        emit(out, j);
      } else {
        out << flag_text(report);
      }
    } else if (*sym) {
      if (chart_args.jet_order == 0) {
        ChartArgs plain = chart_args;
        plain.values.clear();
        chart_args.jet_order = resolve_chart(plain).length() + 1;
      }
      auto chart = resolve_chart(chart_args);
      auto base = symmetry::BaseField::generic(chart.ring());
      auto v = symmetry::prolong_symmetry(base, chart);
      std::vector<algebra::Polynomial> comps = at_origin || constrained ? symmetry::evaluate_at_origin(v) : v.components;
      Json j = document("symmetries");
      j["code"] = chart.code().to_string();
      j["at_origin"] = at_origin || constrained;
      Json cj = Json::object();
      std::ostringstream text;
      for (std::size_t i = 0; i < chart.dim(); ++i) {
        cj[chart.frame()->name(i)] = comps[i].to_string();
        if (!comps[i].is_zero()) text << "d_" << chart.frame()->name(i) << ": " << comps[i].to_string() << "\n";
      }
      j["components"] = cj;
      if (constrained) {
        auto res = symmetry::constrained_residual(comps, chart.frame());
        auto report = symmetry::analyze_moduli(chart);
        Json rj = Json::array();
        for (const auto& c : res.components) rj.push_back(c.to_string());
        j["residual"] = rj;
        j["span_dim"] = res.span_dim;
        j["verdict"] = symmetry::to_string(report.verdict);
        text << "residual d_" << chart.frame()->name(chart.dim() - 2) << ": " << res.components[0].to_string() << "\n";
        text << "residual d_" << chart.frame()->name(chart.dim() - 1) << ": " << res.components[1].to_string() << "\n";
        text << "span " << res.span_dim << " " << symmetry::to_string(report.verdict) << "\n";
      }
      if (json) {
        emit(out, j);
      } else {
        out << text.str();
      }
    } else if (*scan) {
      std::vector<Scalar> grid;
      for (const auto& g : split(grid_text, ',')) grid.push_back(algebra::parse_scalar(g));
      if (grid.empty()) throw DomainError("--grid needs at least one value");
      auto reports = symmetry::moduli_scan(scan_length, grid);
      std::map<std::string, std::pair<std::size_t, std::vector<const symmetry::ModuliReport*>>> by_code;
      std::vector<std::string> order;
      for (const auto& r : reports) {
        auto key = r.code.to_string();
        auto [it, fresh] = by_code.try_emplace(key);
        if (fresh) order.push_back(key);
        ++it->second.first;
        if (r.verdict == symmetry::Verdict::candidate_modulus) it->second.second.push_back(&r);
      }
      if (json) {
        Json j = document("moduli-scan");
        j["length"] = scan_length;
        Json gj = Json::array();
        for (const auto& g : grid) gj.push_back(g.get_str());
        j["grid"] = gj;
        j["jobs"] = reports.size();
        Json cands = Json::array();
        for (const auto& key : order) {
          const auto& [total, flagged] = by_code[key];
          if (flagged.empty()) continue;
          Json c;
          c["code"] = key;
          c["assignments"] = total;
          Json fl = Json::array();
          for (const auto* r : flagged) fl.push_back(moduli_json(*r));
          c["flagged"] = fl;
          cands.push_back(c);
        }
        j["candidates"] = cands;
        if (show_all) {
          Json all = Json::array();
          for (const auto& r : reports) all.push_back(moduli_json(r));
          j["reports"] = all;
        }
        emit(out, j);
      } else if (show_all) {
        for (const auto& r : reports) out << moduli_line(r) << "\n";
      } else {
        for (const auto& key : order) {
          const auto& [total, flagged] = by_code[key];
          if (flagged.empty()) continue;
          out << key << " (" << flagged.size() << " of " << total << " assignments)\n";
          for (const auto* r : flagged) out << "  " << moduli_line(*r) << "\n";
        }
      }
    } else if (*rescale) {
      auto chart = resolve_chart(chart_args);
      charts::Chart work = chart;
      normalization::Target target;
      normalization::ScalingSolution solution;
      bool verified_positive = false, verified_negative = false;
      if (!boundary.empty()) {
        auto result = normalization::normalize_boundary_cases(
            chart, boundary == "b" ? normalization::Boundary::b_zero : normalization::Boundary::c_zero);
        work = result.chart;
        target = result.target;
        solution = result.solution;
        verified_positive = result.verified_positive;
        verified_negative = result.verified_negative;
      } else {
        target = normalization::parse_target(target_text);
        solution = normalization::solve_scaling_weights(chart, target);
        if (solution.consistent && verify_flag) {
          using normalization::SignBranch;
          verified_positive = normalization::verify_scaling(chart, solution.scaling, target, SignBranch::positive);
          verified_negative = normalization::verify_scaling(chart, solution.scaling, target, SignBranch::negative);
        }
      }
      if (!solution.consistent) {
        std::string t;
        for (const auto& [k, v] : target) t += (t.empty() ? "" : ",") + k + "=" + v.to_string();
        throw DomainError("no diagonal scaling achieves the target " + t);
      }
      const bool show_verify = verify_flag || !boundary.empty();
      if (json) {
        Json j = document("rescale");
        j["code"] = work.code().to_string();
        j["constants"] = charts::constant_specs(work.constants());
        Json tj = Json::object();
        for (const auto& [k, v] : target) tj[k] = v.to_string();
        j["target"] = tj;
        j["scaling"] = scaling_json(work, solution.scaling);
        j["multiplier"] = solution.multiplier.to_string();
        j["free_weights"] = {{"b", solution.b_part.kernel.size()},
                             {"c", solution.c_part.kernel.size()},
                             {"sign", solution.sign_part.kernel.size()}};
        if (show_verify) j["verified"] = {{"c>0", verified_positive}, {"c<0", verified_negative}};
        emit(out, j);
      } else {
        out << "target";
        for (const auto& [k, v] : target) out << " " << k << "=" << v.to_string();
        out << "\n" << scaling_text(work, solution.scaling);
        out << "multiplier " << solution.multiplier.to_string() << "\n";
        if (show_verify) {
          out << "verified c>0: " << (verified_positive ? "yes" : "no") << "\n";
          out << "verified c<0: " << (verified_negative ? "yes" : "no") << "\n";
        }
      }
    } else if (*fixtures) {
      const auto& all = charts::named_fixtures();
      if (json) {
        Json j = document("fixtures");
        Json list = Json::array();
        for (const auto& f : all) {
          Json e;
          e["name"] = f.name;
          e["code"] = f.code;
          e["constants"] = charts::constant_specs(f.constants);
          e["pfaffian"] = f.pfaffian;
          e["note"] = f.note;
          list.push_back(e);
        }
        j["fixtures"] = list;
        emit(out, j);
      } else {
        for (const auto& f : all) {
          out << f.name << "\t" << f.code;
          for (const auto& c : charts::constant_specs(f.constants)) out << " " << c;
          out << "\n";
        }
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mtower::cli
