#pragma once

#include <stdexcept>
#include <string>

namespace qmhd {

/// Argument outside the domain of a constitutive law (e.g. negative density).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A law that blows up at vacuum was evaluated at n <= 0.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid parameter set (violated invariant).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Density fell below the configured floor during a solve or a step.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration limit.
class IterationLimitError : public std::runtime_error {
 public:
  IterationLimitError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The implicit velocity fixed point did not contract; try a smaller dt.
class FixedPointDivergenceError : public IterationLimitError {
 public:
  using IterationLimitError::IterationLimitError;
};

/// NaN or Inf appeared in a field.
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration; carries the offending line when known (0 = unknown).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, unsigned long line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  unsigned long line() const noexcept { return line_; }

 private:
  unsigned long line_;
};

/// Malformed binary snapshot or checkpoint.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmhd
