#pragma once

#include <stdexcept>
#include <string>

namespace crystallize {

// Raised when a numerical routine cannot deliver its contract (non-convergence,
// cancellation below the resolvable scale, ...). Precondition violations use
// std::invalid_argument / std::out_of_range instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crystallize
