#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace edc {

using Integer = mpz_class;
using Rational = mpq_class;

// Base error type. Subclasses carry the category the CLI maps to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructuralError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct InputError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};

std::string to_string(const Integer& x);
// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view s);

// num/den in lowest terms; mpq_class(num, den) alone is not canonical.
Rational ratio(long num, long den);
bool is_integer(const Rational& x);
Integer floor(const Rational& x);
// Representative of x mod 1 in [0, 1).
Rational frac(const Rational& x);
Integer lcm(const Integer& a, const Integer& b);
// Nonnegative residue of a mod m (m > 0).
Integer mod(const Integer& a, const Integer& m);

}  // namespace edc
