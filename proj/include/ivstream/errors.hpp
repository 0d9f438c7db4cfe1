#pragma once

#include <stdexcept>
#include <string>

namespace ivstream {

/// Raised when a linear-algebra step cannot be completed (singular solve,
/// failed factorization). The message carries condition diagnostics.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ivstream
