#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmsba {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero denominators, broken exponent invariants, symbol-kind clashes.
class MalformedExpression : public Error {
 public:
  using Error::Error;
};

class UnregisteredSymbol : public Error {
 public:
  using Error::Error;
};

// A pole deeper than the caller allowed for. Carries the order that would be needed.
class PoleOrderExceeded : public Error {
 public:
  PoleOrderExceeded(int required, int allowed)
      : Error("pole of order " + std::to_string(required) + " exceeds allowed order " +
              std::to_string(allowed)),
        required_order(required),
        allowed_order(allowed) {}
  int required_order;
  int allowed_order;
};

class UnsupportedSingularity : public Error {
 public:
  using Error::Error;
};

class ResidueError : public Error {
 public:
  ResidueError(std::size_t step, const std::string& what)
      : Error("residue step " + std::to_string(step) + ": " + what), step_index(step) {}
  std::size_t step_index;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class NearSingular : public Error {
 public:
  using Error::Error;
};

class BranchCutCrossing : public Error {
 public:
  using Error::Error;
};

class CertificateViolation : public Error {
 public:
  using Error::Error;
};

class QuadratureNonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace cmsba
