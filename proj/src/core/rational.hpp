#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace freelip {

using Rational = mpq_class;

// Accepts "p", "-p", "p/q" and plain decimals such as "1.25" or "-0.5".
// The result is canonicalized. Throws freelip::Error(ParseError) on bad input.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers are printed without a denominator.
std::string to_string(const Rational& value);

// num/den in canonical form; den must be nonzero.
inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace freelip
