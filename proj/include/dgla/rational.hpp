#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dgla {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Arithmetic results are canonical, but the two-argument constructor is
/// not: use ratio() for fractions that may be unreduced.
using Rational = mpq_class;

/// p/q in canonical form. Throws Error when q = 0.
Rational ratio(long p, long q);

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class LocalityError : public Error {
 public:
  using Error::Error;
};

class OrderCapError : public Error {
 public:
  using Error::Error;
};

class ShellingError : public Error {
 public:
  using Error::Error;
};

class TermLimitError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q" or "p" (optional sign). Throws Error on malformed input or q = 0.
Rational parse_rational(std::string_view text);

/// Reduced "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace dgla
