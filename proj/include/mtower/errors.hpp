#pragma once

#include <stdexcept>
#include <string>

namespace mtower {

/// Invalid input or a request that is undefined for the given data
/// (malformed class codes, unknown variables, vanishing denominators, ...).
/// The CLI maps this to exit status 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A jet symbol beyond the allocated truncation order was needed.
class TruncationError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace mtower
