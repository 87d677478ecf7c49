#pragma once

#include <stdexcept>
#include <string>

namespace youngref {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation
/// (non-positive ratio, non-finite value, matrix not positive definite).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent input: size mismatches, weights that do not
/// sum to one, empty scan domains, unparsable documents.
class InputError : public Error {
public:
  using Error::Error;
};

/// An iterative routine failed to converge.
class NumericError : public Error {
public:
  using Error::Error;
};

/// The spectral separation hypotheses of the multiplicative operator chain
/// do not hold for the given pair.
class ConditionError : public Error {
public:
  using Error::Error;
};

} // namespace youngref
