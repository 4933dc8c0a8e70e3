#pragma once

#include <stdexcept>
#include <string>

namespace lzeros {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Evaluation at a pole (nonpositive integer for Gamma, s = 1 for zeta).
struct PoleError : DomainError {
  using DomainError::DomainError;
};

/// The root finder was given a bracket whose endpoints have the same sign.
struct NoSignChange : std::runtime_error {
  NoSignChange(const std::string& what, double f_lo, double f_hi)
      : std::runtime_error(what), f_lo(f_lo), f_hi(f_hi) {}
  double f_lo;
  double f_hi;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A truncated series would need more terms than the available data supports.
struct CutoffInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidCharacter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace lzeros
