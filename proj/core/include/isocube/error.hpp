#pragma once

#include <stdexcept>
#include <string>

namespace isocube {

/// Malformed arguments: out-of-range indices, invalid partitions, bad files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The quantity is mathematically undefined for this input (e.g. the
/// isoperimetric excess of the empty set), or the input lies outside the
/// range where the checked inequality makes any claim.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The request is well formed but exceeds what an exhaustive routine can do.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isocube
