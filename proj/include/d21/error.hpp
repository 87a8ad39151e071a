#ifndef D21_ERROR_HPP
#define D21_ERROR_HPP

#include <stdexcept>
#include <string>

namespace d21 {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied parameter: modulus, alpha, weight regime, size guard.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic misuse: inverting zero, mixing moduli.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace d21

#endif  // D21_ERROR_HPP
