#pragma once

#include <map>
#include <utility>
#include <vector>

#include "admctl/rational.hpp"

namespace admctl {

// Exact decision procedures for the comparisons the algorithms and the bound
// checks rely on. Two ingredients:
//
//  * an algebraic shortcut that detects the (only possible) exact-equality
//    cases without numerics, and
//  * interval evaluation with MPFR directed rounding, refined until the sign
//    of the difference is decided. Once equality has been excluded the
//    difference is a nonzero real, so refinement terminates.

// Compares x against y * max(1, log2(z)).  Requires y >= 0 and z > 0.
// Returns -1, 0 or +1. Exact: the equality case reduces to z being an exact
// power of two, every other case has an irrational right-hand side.
int cmp_with_log2_bound(const Rat& x, const Rat& y, const Rat& z);

// Smallest integer >= q * log2(z); requires q >= 0 and z >= 1.
long ceil_mul_log2(const Rat& q, const Rat& z);

// Smallest dyadic rational with `frac_bits` fractional bits that is
// >= max(1, log2(z)). Used to pin rational rounding parameters.
Rat log2_upper_dyadic(const Rat& z, int frac_bits);

// A sum  sum_i coeff_i * n^(e_i)  with rational coefficients and rational
// exponents over a fixed integer base n >= 1. This is the shape of the
// covering potential and of its conditional expectations, whose comparisons
// decide which sets the derandomized algorithm picks.
//
// Internally n is reduced to b^t with b not a perfect power, exponents are
// rescaled to base b and split into an integer part (absorbed into the
// coefficient) and a fractional part in [0,1). Distinct fractional powers of
// a non-power base are linearly independent over Q, so a difference of two
// sums is zero exactly when all grouped coefficients cancel; otherwise
// interval refinement decides the sign.
class PowerSum {
 public:
  explicit PowerSum(unsigned long n);

  // Adds coeff * n^exponent.
  void add(const Rat& coeff, const Rat& exponent);

  unsigned long base() const { return n_; }
  bool empty() const { return terms_.empty(); }

  // -1, 0, +1; both operands must share the same base n.
  static int compare(const PowerSum& lhs, const PowerSum& rhs);

  double to_double() const;

 private:
  unsigned long n_;       // original base
  unsigned long root_;    // n = root_^power_, root_ not a perfect power
  unsigned long power_;
  // fractional exponent of root_ in [0,1) -> rational coefficient (nonzero)
  std::map<Rat, Rat> terms_;

};

// A product  prod_i base_i^(exp_i)  of positive rationals raised to rational
// powers. Used for the proof-potential diagnostics, where exact ties can
// occur but only need to be recognised, not ordered further.
class PowerProduct {
 public:
  PowerProduct() = default;

  static PowerProduct one() { return PowerProduct(); }

  // Multiplies by base^exp; base must be positive.
  void mul(const Rat& base, const Rat& exp);

  // True when the comparison "*this >= other" cannot be refuted: either it
  // is provably true, or the two values agree to the precision cap (which,
  // for the proof potentials, only happens at exact ties).
  bool not_provably_less(const PowerProduct& other) const;

  double log2_double() const;
  double to_double() const;

 private:
  // canonical base (> 1, reduced from perfect powers) -> exponent
  std::map<Rat, Rat> factors_;

  // sign of sum q_i*log2(r_i) for this/other difference; 0 when undecided
  // within the precision cap or exactly zero.
  static int log_sign(const std::map<Rat, Rat>& diff);
};

}  // namespace admctl
