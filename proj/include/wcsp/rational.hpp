#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace wcsp {

// Exact rationals. mpq_class canonicalizes after every arithmetic operation,
// so values compare equal iff they are equal as numbers.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad arity, negative weight, bad JSON...).
class InputError : public Error {
public:
    using Error::Error;
};

/// The request is well formed but outside what an operation accepts:
/// enumeration budget exceeded, a precondition of a fast path fails, or an
/// unsupported case.
class Refusal : public Error {
public:
    using Error::Error;
};

/// Parses "n", "n/d" (or a plain decimal like "0.5"). Negative values and zero
/// denominators are rejected with InputError.
Rational parseRational(std::string_view text);

/// Integer string when the denominator is 1, "num/den" otherwise.
std::string toString(const Rational& value);

/// Decimal rendering with `digits` significant digits; for human display only.
std::string toDecimal(const Rational& value, int digits = 12);

/// value^exponent for exponent >= 0.
Rational power(const Rational& value, unsigned long exponent);

/// Exact square root if value is the square of a rational.
bool exactSqrt(const Rational& value, Rational& root);

}  // namespace wcsp
