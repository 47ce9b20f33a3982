#pragma once

#include <stdexcept>
#include <string>

namespace bgn {

// Base class for every failure the solver core raises on purpose.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// nu = lambda - 1/bo fell below nu0: surface tension too strong for the model.
struct NonPositiveNu : ModelError {
  using ModelError::ModelError;
};

// Non-zero depth condition (H1) failed: a layer depth reached zero.
struct DepthViolation : ModelError {
  using ModelError::ModelError;
};

// Ellipticity condition (H2) failed: q1 or q2 lost positivity.
struct EllipticityViolation : ModelError {
  using ModelError::ModelError;
};

// Symmetrizer positivity (H3) failed on an energy reference state.
struct SymmetrizerViolation : ModelError {
  using ModelError::ModelError;
};

// Direct factorization hit a non-positive pivot; the operator is not SPD.
struct SolveFailure : ModelError {
  using ModelError::ModelError;
};

struct NonFiniteState : ModelError {
  using ModelError::ModelError;
};

struct NonFiniteSpeed : ModelError {
  using ModelError::ModelError;
};

struct EmptySeries : ModelError {
  using ModelError::ModelError;
};

// An order study needs at least three ladder points with nonzero residuals.
struct DegenerateLadder : ModelError {
  using ModelError::ModelError;
};

struct ParseError : ModelError {
  ParseError(const std::string& what, int line_number = 0)
      : ModelError(line_number > 0 ? what + " (line " + std::to_string(line_number) + ")" : what),
        line(line_number) {}
  int line;
};

struct IoError : ModelError {
  using ModelError::ModelError;
};

}  // namespace bgn
