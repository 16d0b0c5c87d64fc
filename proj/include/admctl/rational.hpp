#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace admctl {

// All costs, weights and thresholds in this library are exact rationals.
// Comparisons that decide algorithm behaviour must never flip on rounding,
// so floating point only appears in reports and in interval refinement
// (see exact_compare.hpp).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// base^exp for integer exp (exp may be negative; base must be nonzero then).
Rat rat_pow(const Rat& base, long exp);

// Parses "7", "-3/4" or a decimal string like "1.25" into an exact rational.
Rat rat_parse(const std::string& text);

// Canonical text form: "p" or "p/q" with q > 1.
std::string rat_str(const Rat& value);

double rat_double(const Rat& value);

// floor(value) as an arbitrary-size integer.
mpz_class rat_floor(const Rat& value);

}  // namespace admctl
