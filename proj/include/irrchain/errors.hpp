#pragma once

#include <stdexcept>
#include <string>

namespace irrchain {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotPrimeError : public Error {
  public:
    using Error::Error;
};
class OutOfRangeError : public Error {
  public:
    using Error::Error;
};
class OrderOverflowError : public Error {
  public:
    using Error::Error;
};
class DivisionByZeroError : public Error {
  public:
    using Error::Error;
};
class CtxMismatchError : public Error {
  public:
    using Error::Error;
};
class ZeroInputError : public Error {
  public:
    using Error::Error;
};
class LNotDividingGroupOrderError : public Error {
  public:
    using Error::Error;
};
class NoSuchRootError : public Error {
  public:
    using Error::Error;
};
class ZeroPolynomialError : public Error {
  public:
    using Error::Error;
};
class BudgetExceededError : public Error {
  public:
    using Error::Error;
};
class FactorizationBudgetExceededError : public BudgetExceededError {
  public:
    using BudgetExceededError::BudgetExceededError;
};
class PreconditionViolatedError : public Error {
  public:
    using Error::Error;
};
class EvenCharacteristicError : public Error {
  public:
    using Error::Error;
};
class PoleAtSeedError : public Error {
  public:
    using Error::Error;
};
class PoleAtIterateError : public Error {
  public:
    using Error::Error;
};
class DegreeDroppedError : public Error {
  public:
    using Error::Error;
};
class NotNonSquareError : public Error {
  public:
    using Error::Error;
};
class ReducibleModulusError : public Error {
  public:
    using Error::Error;
};
class InternalDescentFailureError : public Error {
  public:
    using Error::Error;
};
class HypothesisViolatedError : public Error {
  public:
    using Error::Error;
};
class ZeroZetaError : public Error {
  public:
    using Error::Error;
};
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

}  // namespace irrchain
