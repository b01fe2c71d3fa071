#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtower::cli {

/// Schema tag stamped on every JSON document.
inline constexpr const char* kSchema = "mtower/1";

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on domain errors (bad codes, constants, fixture names, flags) and 1 on
/// internal failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtower::cli
