#include "admctl/exact_compare.hpp"

#include <mpfr.h>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace admctl {
namespace {

constexpr mpfr_prec_t kStartPrec = 128;
constexpr mpfr_prec_t kMaxPrec = 1 << 16;

struct MpfrScoped {
  mpfr_t v;
  explicit MpfrScoped(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrScoped() { mpfr_clear(v); }
  MpfrScoped(const MpfrScoped&) = delete;
  MpfrScoped& operator=(const MpfrScoped&) = delete;
};

// Is |z| an exact power of two? If so reports z = sign * 2^exp.
bool power_of_two_exponent(const mpz_class& z, long* exp) {
  mpz_class a = abs(z);
  if (a == 0) return false;
  mp_bitcnt_t low = mpz_scan1(a.get_mpz_t(), 0);
  mpz_class shifted;
  mpz_tdiv_q_2exp(shifted.get_mpz_t(), a.get_mpz_t(), low);
  if (shifted != 1) return false;
  *exp = static_cast<long>(low);
  return true;
}

// z = 2^k for integer k (num and den both powers of two)?
bool rational_power_of_two(const Rat& z, long* k) {
  long num_exp = 0, den_exp = 0;
  if (z <= 0) return false;
  if (!power_of_two_exponent(z.get_num(), &num_exp)) return false;
  if (!power_of_two_exponent(z.get_den(), &den_exp)) return false;
  *k = num_exp - den_exp;
  return true;
}

// Sign of x - log2(z), assuming log2(z) is irrational (z not a power of two),
// so the difference is nonzero and refinement terminates.
int sign_minus_log2(const Rat& x, const Rat& z, mpfr_prec_t prec) {
  MpfrScoped zl(prec), zh(prec), ll(prec), lh(prec), xl(prec), xh(prec);
  mpfr_set_q(zl.v, z.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(zh.v, z.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(ll.v, zl.v, MPFR_RNDD);
  mpfr_log2(lh.v, zh.v, MPFR_RNDU);
  mpfr_set_q(xl.v, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(xh.v, x.get_mpq_t(), MPFR_RNDU);
  // x - log2(z): lower bound xl - lh, upper bound xh - ll
  MpfrScoped lo(prec), hi(prec);
  mpfr_sub(lo.v, xl.v, lh.v, MPFR_RNDD);
  mpfr_sub(hi.v, xh.v, ll.v, MPFR_RNDU);
  if (mpfr_sgn(lo.v) > 0) return 1;
  if (mpfr_sgn(hi.v) < 0) return -1;
  return 0;
}

}  // namespace

int cmp_with_log2_bound(const Rat& x, const Rat& y, const Rat& z) {
  if (y < 0) throw std::invalid_argument("cmp_with_log2_bound: negative multiplier");
  if (z <= 0) throw std::invalid_argument("cmp_with_log2_bound: nonpositive log argument");
  if (z <= 2 || y == 0) {
    // max(1, log2 z) = 1, or the product is zero either way.
    Rat rhs = z <= 2 ? y : Rat(0);
    return cmp(x, rhs);
  }
  Rat t = x / y;
  long k = 0;
  if (rational_power_of_two(z, &k)) return cmp(t, Rat(k));
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    int s = sign_minus_log2(t, z, prec);
    if (s != 0) return s;
  }
  throw std::logic_error("cmp_with_log2_bound: undecided at precision cap");
}

long ceil_mul_log2(const Rat& q, const Rat& z) {
  if (q < 0 || z < 1) throw std::invalid_argument("ceil_mul_log2: bad arguments");
  if (q == 0 || z == 1) return 0;
  long k = 0;
  if (rational_power_of_two(z, &k)) {
    Rat v = q * Rat(k);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    if (!c.fits_slong_p()) throw std::overflow_error("ceil_mul_log2 overflow");
    return c.get_si();
  }
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    MpfrScoped zl(prec), zh(prec), ql(prec), qh(prec), lo(prec), hi(prec);
    mpfr_set_q(zl.v, z.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(zh.v, z.get_mpq_t(), MPFR_RNDU);
    mpfr_log2(lo.v, zl.v, MPFR_RNDD);
    mpfr_log2(hi.v, zh.v, MPFR_RNDU);
    mpfr_set_q(ql.v, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(qh.v, q.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(lo.v, lo.v, ql.v, MPFR_RNDD);  // q, log2(z) both positive
    mpfr_mul(hi.v, hi.v, qh.v, MPFR_RNDU);
    mpfr_ceil(lo.v, lo.v);
    mpfr_ceil(hi.v, hi.v);
    if (mpfr_cmp(lo.v, hi.v) == 0)
      return mpfr_get_si(lo.v, MPFR_RNDN);
    // ceil differs: an integer sits inside the interval; q*log2(z) is
    // irrational here, so shrinking eventually expels it.
  }
  throw std::logic_error("ceil_mul_log2: undecided at precision cap");
}

Rat log2_upper_dyadic(const Rat& z, int frac_bits) {
  if (z <= 0) throw std::invalid_argument("log2_upper_dyadic: nonpositive argument");
  if (z <= 2) return Rat(1);
  mpfr_prec_t prec = frac_bits + 96;
  MpfrScoped zf(prec), lg(prec);
  mpfr_set_q(zf.v, z.get_mpq_t(), MPFR_RNDU);
  mpfr_log2(lg.v, zf.v, MPFR_RNDU);
  mpfr_mul_2ui(lg.v, lg.v, frac_bits, MPFR_RNDU);
  mpfr_ceil(lg.v, lg.v);
  mpz_class scaled;
  mpfr_get_z(scaled.get_mpz_t(), lg.v, MPFR_RNDN);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, frac_bits);
  return rat(scaled, den);
}

// ---------------------------------------------------------------------------
// PowerSum

namespace {

void reduce_integer_base(unsigned long n, unsigned long* root, unsigned long* power) {
  // smallest root such that n = root^power
  for (unsigned long base = 2; base * base <= n; ++base) {
    unsigned long value = base, exp = 1;
    while (value <= n / base) {
      value *= base;
      ++exp;
      if (value == n) {
        *root = base;
        *power = exp;
        return;
      }
    }
  }
  *root = n;
  *power = 1;
}

// Sign of sum coeff_i * b^(frac_i) with b >= 2 and the value known nonzero.
int interval_sum_sign(const std::map<Rat, Rat>& terms, unsigned long b) {
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    MpfrScoped lo_acc(prec), hi_acc(prec);
    mpfr_set_zero(lo_acc.v, 1);
    mpfr_set_zero(hi_acc.v, 1);
    MpfrScoped el(prec), eh(prec), pl(prec), ph(prec), cl(prec), ch(prec), tl(prec), th(prec);
    for (const auto& [frac, coeff] : terms) {
      mpfr_set_q(el.v, frac.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(eh.v, frac.get_mpq_t(), MPFR_RNDU);
      mpfr_ui_pow(pl.v, b, el.v, MPFR_RNDD);  // monotone in the exponent
      mpfr_ui_pow(ph.v, b, eh.v, MPFR_RNDU);
      mpfr_set_q(cl.v, coeff.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(ch.v, coeff.get_mpq_t(), MPFR_RNDU);
      if (coeff > 0) {
        mpfr_mul(tl.v, cl.v, pl.v, MPFR_RNDD);
        mpfr_mul(th.v, ch.v, ph.v, MPFR_RNDU);
      } else {
        mpfr_mul(tl.v, cl.v, ph.v, MPFR_RNDD);
        mpfr_mul(th.v, ch.v, pl.v, MPFR_RNDU);
      }
      mpfr_add(lo_acc.v, lo_acc.v, tl.v, MPFR_RNDD);
      mpfr_add(hi_acc.v, hi_acc.v, th.v, MPFR_RNDU);
    }
    if (mpfr_sgn(lo_acc.v) > 0) return 1;
    if (mpfr_sgn(hi_acc.v) < 0) return -1;
  }
  throw std::logic_error("PowerSum comparison undecided at precision cap");
}

}  // namespace

PowerSum::PowerSum(unsigned long n) : n_(n) {
  if (n == 0) throw std::invalid_argument("PowerSum: base must be >= 1");
  if (n == 1) {
    root_ = 1;
    power_ = 1;
  } else {
    reduce_integer_base(n, &root_, &power_);
  }
}

void PowerSum::add(const Rat& coeff, const Rat& exponent) {
  if (coeff == 0) return;
  Rat key(0);
  Rat scaled_coeff = coeff;
  if (root_ != 1) {
    Rat e = exponent * Rat(static_cast<long>(power_));
    mpz_class fl = rat_floor(e);
    key = e - Rat(fl);
    if (!fl.fits_slong_p())
      throw std::overflow_error("PowerSum: exponent out of range");
    scaled_coeff *= rat_pow(Rat(static_cast<long>(root_)), fl.get_si());
  }
  Rat& slot = terms_[key];
  slot += scaled_coeff;
  if (slot == 0) terms_.erase(key);
}

int PowerSum::compare(const PowerSum& lhs, const PowerSum& rhs) {
  if (lhs.n_ != rhs.n_)
    throw std::invalid_argument("PowerSum: comparing sums over different bases");
  std::map<Rat, Rat> diff = lhs.terms_;
  for (const auto& [key, coeff] : rhs.terms_) {
    Rat& slot = diff[key];
    slot -= coeff;
    if (slot == 0) diff.erase(key);
  }
  if (diff.empty()) return 0;
  bool has_pos = false, has_neg = false;
  for (const auto& [key, coeff] : diff) (coeff > 0 ? has_pos : has_neg) = true;
  if (!has_neg) return 1;
  if (!has_pos) return -1;
  return interval_sum_sign(diff, lhs.root_);
}

double PowerSum::to_double() const {
  double acc = 0.0;
  for (const auto& [frac, coeff] : terms_)
    acc += rat_double(coeff) * std::pow(static_cast<double>(root_), rat_double(frac));
  return acc;
}

// ---------------------------------------------------------------------------
// PowerProduct

namespace {

// value = root^exp with exp maximal (root = smallest integral root); for
// value 1 returns exp 0.
void reduce_mpz_base(const mpz_class& value, mpz_class* root, unsigned long* exp) {
  assert(value >= 1);
  if (value == 1) {
    *root = 1;
    *exp = 0;
    return;
  }
  if (mpz_perfect_power_p(value.get_mpz_t())) {
    unsigned long bits = mpz_sizeinbase(value.get_mpz_t(), 2);
    for (unsigned long e = bits; e >= 2; --e) {
      mpz_class r;
      if (mpz_root(r.get_mpz_t(), value.get_mpz_t(), e) != 0) {
        *root = r;
        *exp = e;
        return;
      }
    }
  }
  *root = value;
  *exp = 1;
}

unsigned long gcd_ul(unsigned long a, unsigned long b) {
  while (b != 0) {
    unsigned long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

void PowerProduct::mul(const Rat& base, const Rat& exp) {
  if (base <= 0) throw std::invalid_argument("PowerProduct: base must be positive");
  if (base == 1 || exp == 0) return;
  Rat b = base;
  Rat e = exp;
  if (b < 1) {
    b = 1 / b;
    e = -e;
  }
  // canonicalize perfect-power structure so that e.g. 4^x and 2^(2x) merge
  mpz_class num_root, den_root;
  unsigned long num_exp = 0, den_exp = 0;
  reduce_mpz_base(b.get_num(), &num_root, &num_exp);
  reduce_mpz_base(b.get_den(), &den_root, &den_exp);
  unsigned long k;
  if (num_exp == 0)
    k = den_exp;
  else if (den_exp == 0)
    k = num_exp;
  else
    k = gcd_ul(num_exp, den_exp);
  if (k > 1) {
    mpz_class cn, cd;
    mpz_pow_ui(cn.get_mpz_t(), num_root.get_mpz_t(), num_exp / k);
    mpz_pow_ui(cd.get_mpz_t(), den_root.get_mpz_t(), den_exp / k);
    b = rat(cn, cd);
    e *= Rat(static_cast<unsigned long>(k));
  }
  Rat& slot = factors_[b];
  slot += e;
  if (slot == 0) factors_.erase(b);
}

int PowerProduct::log_sign(const std::map<Rat, Rat>& diff) {
  if (diff.empty()) return 0;
  bool has_pos = false, has_neg = false;
  for (const auto& [base, e] : diff) (e > 0 ? has_pos : has_neg) = true;
  if (!has_neg) return 1;   // all bases > 1
  if (!has_pos) return -1;
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    MpfrScoped lo_acc(prec), hi_acc(prec);
    mpfr_set_zero(lo_acc.v, 1);
    mpfr_set_zero(hi_acc.v, 1);
    MpfrScoped bl(prec), bh(prec), ll(prec), lh(prec), ql(prec), qh(prec), tl(prec), th(prec);
    for (const auto& [base, e] : diff) {
      mpfr_set_q(bl.v, base.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(bh.v, base.get_mpq_t(), MPFR_RNDU);
      mpfr_log2(ll.v, bl.v, MPFR_RNDD);  // base > 1: log positive
      mpfr_log2(lh.v, bh.v, MPFR_RNDU);
      mpfr_set_q(ql.v, e.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(qh.v, e.get_mpq_t(), MPFR_RNDU);
      if (e > 0) {
        mpfr_mul(tl.v, ql.v, ll.v, MPFR_RNDD);
        mpfr_mul(th.v, qh.v, lh.v, MPFR_RNDU);
      } else {
        mpfr_mul(tl.v, ql.v, lh.v, MPFR_RNDD);
        mpfr_mul(th.v, qh.v, ll.v, MPFR_RNDU);
      }
      mpfr_add(lo_acc.v, lo_acc.v, tl.v, MPFR_RNDD);
      mpfr_add(hi_acc.v, hi_acc.v, th.v, MPFR_RNDU);
    }
    if (mpfr_sgn(lo_acc.v) > 0) return 1;
    if (mpfr_sgn(hi_acc.v) < 0) return -1;
  }
  return 0;  // tie (or multiplicatively dependent bases): undecided
}

bool PowerProduct::not_provably_less(const PowerProduct& other) const {
  std::map<Rat, Rat> diff = factors_;
  for (const auto& [base, e] : other.factors_) {
    Rat& slot = diff[base];
    slot -= e;
    if (slot == 0) diff.erase(base);
  }
  return log_sign(diff) >= 0;
}

double PowerProduct::log2_double() const {
  double acc = 0.0;
  for (const auto& [base, e] : factors_)
    acc += rat_double(e) * std::log2(rat_double(base));
  return acc;
}

double PowerProduct::to_double() const { return std::exp2(log2_double()); }

}  // namespace admctl
