#pragma once

#include <stdexcept>
#include <string>

namespace tpd {

/// Bad input: malformed instance, wrong shape, precondition not met.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configurable ceiling (trees, states, subsets) would be exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration that the underlying proofs rule out was reached. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tpd
