#include "mtower/flagcomb.hpp"

#include <algorithm>
#include <charconv>

#include "mtower/errors.hpp"

namespace mtower::flagcomb {

unsigned ClassCode::max_letter() const {
  return letters.empty() ? 0 : *std::max_element(letters.begin(), letters.end());
}

std::string ClassCode::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(letters[i]);
  }
  return s;
}

std::string SandwichCode::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < singular.size(); ++i) {
    if (i) s += '.';
    s += singular[i] ? 'S' : '1';
  }
  return s;
}

ClassCode validate_code(std::string_view word, unsigned m) {
  if (m < 2) throw DomainError("width m must be at least 2");
  ClassCode code{m, {}};
  const std::string quoted = "'" + std::string(word) + "'";
  std::size_t pos = 0;
  while (true) {
    auto dot = word.find('.', pos);
    auto piece = word.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    unsigned letter = 0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), letter);
    if (piece.empty() || ec != std::errc() || end != piece.data() + piece.size() || letter == 0) {
      throw DomainError("class code " + quoted + " is not a dot-separated list of positive integers");
    }
    code.letters.push_back(letter);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  unsigned running = 0;
  for (std::size_t k = 0; k < code.letters.size(); ++k) {
    unsigned j = code.letters[k];
    if (k == 0 && j != 1) throw DomainError("class code " + quoted + " must start with 1");
    if (j > m + 1) {
      throw DomainError("letter " + std::to_string(j) + " in " + quoted + " exceeds m+1 = " + std::to_string(m + 1));
    }
    if (j > running + 1) {
      throw DomainError("letter " + std::to_string(j) + " at position " + std::to_string(k + 1) + " in " + quoted +
                        " jumps above the running maximum " + std::to_string(running) + " by more than one");
    }
    running = std::max(running, j);
  }
  return code;
}

namespace {

void extend(unsigned m, unsigned r, std::vector<unsigned>& prefix, unsigned running, std::vector<ClassCode>& out) {
  if (prefix.size() == r) {
    out.push_back({m, prefix});
    return;
  }
  unsigned top = std::min(m + 1, running + 1);
  for (unsigned j = 1; j <= top; ++j) {
    prefix.push_back(j);
    extend(m, r, prefix, std::max(running, j), out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<ClassCode> enumerate_codes(unsigned m, unsigned r) {
  if (m < 2) throw DomainError("width m must be at least 2");
  if (r < 1) throw DomainError("length must be at least 1");
  std::vector<ClassCode> out;
  std::vector<unsigned> prefix{1};
  extend(m, r, prefix, 1, out);
  return out;
}

std::uint64_t count_codes(unsigned m, unsigned r) {
  if (m < 2) throw DomainError("width m must be at least 2");
  if (r < 1) throw DomainError("length must be at least 1");
  // ways[k] = number of prefixes whose running maximum is k + 1
  std::vector<std::uint64_t> ways(m + 1, 0);
  ways[0] = 1;
  for (unsigned step = 1; step < r; ++step) {
    std::vector<std::uint64_t> next(m + 1, 0);
    for (unsigned k = 0; k <= m; ++k) {
      if (!ways[k]) continue;
      next[k] += ways[k] * (k + 1);
      if (k < m) next[k + 1] += ways[k];
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

unsigned codimension(const ClassCode& code) {
  unsigned sum = 0;
  for (auto j : code.letters) sum += j;
  return sum - static_cast<unsigned>(code.letters.size());
}

SandwichCode sandwich_class(const ClassCode& code) {
  SandwichCode s;
  s.singular.reserve(code.letters.size());
  for (auto j : code.letters) s.singular.push_back(j >= 2);
  return s;
}

}  // namespace mtower::flagcomb
