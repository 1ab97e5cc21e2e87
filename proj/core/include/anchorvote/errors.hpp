#pragma once

#include <stdexcept>
#include <string>

namespace anchorvote {

/// Malformed arguments: points off the simplex, empty menus, alpha >= 1, ...
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is well formed but the operation does not support it
/// (veto sufficient-condition bounds, exact geometry for m != 3).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An enumeration would exceed its configured budget.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anchorvote
