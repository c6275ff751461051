#pragma once

#include <stdexcept>
#include <string>

namespace crossnorm {

// Malformed input: dimension mismatches, invalid exponents, bad configs.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The requested computation has no implemented route (e.g. extreme points of
// a strictly convex ball, a tag that cannot attach to a space pair).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// The exact route exists but would exceed the configured enumeration budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crossnorm
