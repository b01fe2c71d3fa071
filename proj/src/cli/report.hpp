#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mtower/charts.hpp"
#include "mtower/geometry.hpp"
#include "mtower/normalization.hpp"
#include "mtower/symmetry.hpp"

namespace mtower::cli {

using Json = nlohmann::ordered_json;

Json document(const std::string& kind);

Json chart_json(const charts::Chart& chart);
std::string chart_text(const charts::Chart& chart);

Json flag_json(const geometry::FlagReport& report);
std::string flag_text(const geometry::FlagReport& report);

std::vector<std::string> field_strings(const geometry::Distribution& d);

Json moduli_json(const symmetry::ModuliReport& report);
std::string moduli_line(const symmetry::ModuliReport& report);

Json scaling_json(const charts::Chart& chart, const normalization::DiagonalScaling& scaling);
std::string scaling_text(const charts::Chart& chart, const normalization::DiagonalScaling& scaling);

}  // namespace mtower::cli
