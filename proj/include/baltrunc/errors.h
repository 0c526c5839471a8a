#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace baltrunc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix(const std::string& what, double pivot)
      : Error(what), pivot_(pivot) {}
  /// Magnitude of the smallest pivot encountered.
  double pivot() const { return pivot_; }

 private:
  double pivot_;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& what, double value)
      : Error(what), value_(value) {}
  /// The offending pivot or eigenvalue.
  double value() const { return value_; }

 private:
  double value_;
};

class UnstableSystem : public Error {
 public:
  UnstableSystem(const std::string& what, double spectral_abscissa)
      : Error(what), spectral_abscissa_(spectral_abscissa) {}
  double spectral_abscissa() const { return spectral_abscissa_; }

 private:
  double spectral_abscissa_;
};

/// iωI − A is singular at the requested frequency.
class Resonance : public Error {
 public:
  Resonance(const std::string& what, double omega)
      : Error(what), omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

/// No strict gap h_r > h_{r+1} exists at or below the requested order.
class NoValidGap : public Error {
 public:
  NoValidGap(const std::string& what, std::vector<double> cluster)
      : Error(what), cluster_(std::move(cluster)) {}
  const std::vector<double>& cluster() const { return cluster_; }

 private:
  std::vector<double> cluster_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace baltrunc
