#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mtower::algebra {

/// Exact rational number, always in lowest terms with positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

/// "p/q" or "p".
std::string to_string(const Scalar& s);
/// Parses "p", "-p" or "p/q"; throws DomainError on malformed text or q = 0.
Scalar parse_scalar(std::string_view text);

}  // namespace mtower::algebra
