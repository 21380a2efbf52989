#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nbmaj {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// series_pow requires a unit constant term.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class InternalConsistency : public Error {
 public:
  using Error::Error;
};

class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  explicit NumericFailure(const std::string& what) : NumericFailure(what, -1.0) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

class SingularConfiguration : public Error {
 public:
  SingularConfiguration(std::size_t i, std::size_t j, const std::string& what)
      : Error(what), i_(i), j_(j) {}

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace nbmaj
