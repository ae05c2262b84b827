#pragma once

#include <stdexcept>
#include <string>

namespace bellmax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition (bad bounds, malformed
/// representation, measures that do not sum to one).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Parameters lie outside the region where a quantity is defined, or an
/// integral diverges. The message names the violated inequality.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to meet its tolerance (quadrature did not
/// converge, a root bracket was lost).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The parameter combination is outside what an evaluator supports.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

namespace detail {

[[noreturn]] void throw_precondition(const std::string& what);
[[noreturn]] void throw_domain(const std::string& what);
[[noreturn]] void throw_numerical(const std::string& what);

// Shortest round-trip decimal representation, for error messages.
std::string fmt_num(double x);

}  // namespace detail
}  // namespace bellmax
