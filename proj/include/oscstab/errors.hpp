#ifndef OSCSTAB_ERRORS_HPP
#define OSCSTAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oscstab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// The zero polynomial was supplied where a phase is required.
class EmptyJet : public Error {
public:
  EmptyJet() : Error("jet has no nonzero terms") {}
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// A sign or zero decision could not be certified, or the coefficients
/// would leave the supported algebraic extension.
class PrecisionInsufficient : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class NotRayDivisible : public Error {
public:
  using Error::Error;
};

class HypothesesFail : public Error {
public:
  using Error::Error;
};

class WrongCase : public Error {
public:
  using Error::Error;
};

class NonIntegrable : public Error {
public:
  using Error::Error;
};

class FitUnstable : public Error {
public:
  using Error::Error;
};

/// The oscillatory integral could not be resolved within the point budget.
class Unresolved : public Error {
public:
  using Error::Error;
};

/// The phase violates S(0,0)=0 or grad S(0,0)=0.
class PhaseConditionError : public Error {
public:
  using Error::Error;
};

}  // namespace oscstab

#endif  // OSCSTAB_ERRORS_HPP
