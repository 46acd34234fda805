#pragma once

#include <stdexcept>
#include <string>

namespace tumorbim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Curve whose arclength derivative has collapsed.
class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration for equal-arclength markers failed.
class ReparametrizationError : public Error {
 public:
  using Error::Error;
};

/// Invalid geometry: self-intersection, non-containment, non-positive radius.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An integral-equation solve did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// The interface update produced a non-physical state (e.g. s_alpha <= 0).
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent simulation configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tumorbim
