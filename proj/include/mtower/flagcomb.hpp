#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtower::flagcomb {

/// A singularity class word j1.j2...jr over {1, ..., m+1} obeying the
/// least-upward-jumps rule: j1 = 1 and each letter is at most one more than
/// the largest letter before it.
struct ClassCode {
  unsigned m = 2;
  std::vector<unsigned> letters;

  std::size_t length() const { return letters.size(); }
  unsigned max_letter() const;
  /// Dotted form, e.g. "1.2.3.1.2".
  std::string to_string() const;
  friend bool operator==(const ClassCode&, const ClassCode&) = default;
};

/// Which positions of a code are singular (letter >= 2).
struct SandwichCode {
  std::vector<bool> singular;

  /// Regular positions print as "1", singular ones as "S", e.g. "1.S.S.1.S".
  std::string to_string() const;
  friend bool operator==(const SandwichCode&, const SandwichCode&) = default;
};

/// Parses and checks a dotted word. Throws DomainError on malformed text,
/// a first letter other than 1, an upward jump of more than one, or a letter
/// above m+1.
ClassCode validate_code(std::string_view word, unsigned m = 2);

/// All codes of length r in lexicographic order.
std::vector<ClassCode> enumerate_codes(unsigned m, unsigned r);

/// Number of codes of length r, without materializing them.
std::uint64_t count_codes(unsigned m, unsigned r);

/// Sum of the letters minus the length.
unsigned codimension(const ClassCode& code);

SandwichCode sandwich_class(const ClassCode& code);

}  // namespace mtower::flagcomb
