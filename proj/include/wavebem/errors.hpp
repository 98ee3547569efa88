#pragma once

#include <stdexcept>
#include <string>

namespace wavebem {

// Input violates a documented precondition (e.g. data not vanishing at t=0).
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Linear solve failed or produced a residual far above roundoff.
struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wavebem
