#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Mandel Q requested for a field with zero mean photon number.
class UndefinedQ : public Error {
 public:
  using Error::Error;
};

/// Second moments that violate var >= 0 or Cauchy-Schwarz.
class InconsistentMoments : public Error {
 public:
  using Error::Error;
};

/// F_dd vanished, so the phase-sum QFI cannot be reduced. Carries F_ss.
class DegenerateQfim : public Error {
 public:
  DegenerateQfim(const std::string& what, double f_ss) : Error(what), f_ss_(f_ss) {}
  double f_ss() const noexcept { return f_ss_; }

 private:
  double f_ss_;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// Fock truncation too small. `required_cutoff` is a best-effort estimate.
class InsufficientCutoff : public Error {
 public:
  InsufficientCutoff(const std::string& what, int required_cutoff)
      : Error(what), required_cutoff_(required_cutoff) {}
  int required_cutoff() const noexcept { return required_cutoff_; }

 private:
  int required_cutoff_;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace su11
