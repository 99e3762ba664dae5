#pragma once

#include <stdexcept>
#include <string>

namespace nsac {

/// Bad argument or violated precondition of a library call.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Density left the admissible range (rho <= 0).
class VacuumError : public std::runtime_error {
 public:
  explicit VacuumError(double rho)
      : std::runtime_error("vacuum reached: rho = " + std::to_string(rho) + " <= 0"),
        rho_(rho) {}
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

/// A field contains NaN or Inf.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(std::string field)
      : std::runtime_error("non-finite value in field '" + field + "'"),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Adaptive quadrature did not reach its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual estimate " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed or infeasible run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nsac
