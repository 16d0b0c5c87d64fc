#include "doctest.h"

#include "admctl/exact_compare.hpp"
#include "admctl/rational.hpp"

using namespace admctl;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_parse("3/2") == rat(3, 2));
  CHECK(rat_parse("7") == Rat(7));
  CHECK(rat_parse("1.25") == rat(5, 4));
  CHECK(rat_parse("-3/6") == rat(-1, 2));
  CHECK(rat_str(rat(6, 4)) == "3/2");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("abc"), std::invalid_argument);
}

TEST_CASE("rat_pow handles negative exponents") {
  CHECK(rat_pow(rat(2, 3), 3) == rat(8, 27));
  CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
  CHECK(rat_pow(rat(5, 1), 0) == Rat(1));
}

TEST_CASE("cmp_with_log2_bound exact cases") {
  // z a power of two: equality is decidable exactly
  CHECK(cmp_with_log2_bound(Rat(3), Rat(1), Rat(8)) == 0);    // 3 == log2 8
  CHECK(cmp_with_log2_bound(Rat(2), Rat(1), Rat(8)) < 0);
  CHECK(cmp_with_log2_bound(Rat(4), Rat(1), Rat(8)) > 0);
  // max(1, log2 z) floors at 1
  CHECK(cmp_with_log2_bound(Rat(1), Rat(1), rat(3, 2)) == 0);
  CHECK(cmp_with_log2_bound(Rat(2), Rat(2), Rat(1)) == 0);
  // irrational boundary: log2(3) = 1.58496...
  CHECK(cmp_with_log2_bound(rat(158496, 100000), Rat(1), Rat(3)) < 0);
  CHECK(cmp_with_log2_bound(rat(158497, 100000), Rat(1), Rat(3)) > 0);
  // zero multiplier
  CHECK(cmp_with_log2_bound(Rat(0), Rat(0), Rat(100)) == 0);
  CHECK(cmp_with_log2_bound(Rat(1), Rat(0), Rat(100)) > 0);
}

TEST_CASE("ceil_mul_log2") {
  CHECK(ceil_mul_log2(Rat(2), Rat(2)) == 2);   // 2*log2(2) = 2
  CHECK(ceil_mul_log2(Rat(2), Rat(4)) == 4);
  CHECK(ceil_mul_log2(Rat(2), Rat(3)) == 4);   // 2*1.585 = 3.17 -> 4
  CHECK(ceil_mul_log2(Rat(2), Rat(5)) == 5);   // 4.643 -> 5
  CHECK(ceil_mul_log2(Rat(2), Rat(6)) == 6);   // 5.169 -> 6
  CHECK(ceil_mul_log2(Rat(0), Rat(6)) == 0);
  CHECK(ceil_mul_log2(rat(1, 2), Rat(1)) == 0);
}

TEST_CASE("log2_upper_dyadic is an upper bound and exact on powers of two") {
  CHECK(log2_upper_dyadic(Rat(8), 32) == Rat(3));
  CHECK(log2_upper_dyadic(Rat(2), 32) == Rat(1));
  CHECK(log2_upper_dyadic(rat(3, 2), 32) == Rat(1));  // floored at 1
  Rat l3 = log2_upper_dyadic(Rat(3), 32);
  CHECK(rat_double(l3) >= 1.5849625007211561);
  CHECK(rat_double(l3) <= 1.5849625007211562 + 1e-9);
}

TEST_CASE("PowerSum exact comparison") {
  // base 2: 2^(1/2) + 2^(1/2) == 2^(3/2)
  PowerSum a(2), b(2);
  a.add(Rat(1), rat(1, 2));
  a.add(Rat(1), rat(1, 2));
  b.add(Rat(1), rat(3, 2));
  CHECK(PowerSum::compare(a, b) == 0);

  // 4^(1/2) == 2 exactly (base reduction)
  PowerSum c(4), d(4);
  c.add(Rat(1), rat(1, 2));
  d.add(Rat(2), Rat(0));
  CHECK(PowerSum::compare(c, d) == 0);

  // strict: 3^(2/3) vs 3^(0.66), close but decidable
  PowerSum e(3), f(3);
  e.add(Rat(1), rat(2, 3));
  f.add(Rat(1), rat(66, 100));
  CHECK(PowerSum::compare(e, f) > 0);
  CHECK(PowerSum::compare(f, e) < 0);

  // mixed-sign cancellation: 2^(1/3) + 2^(2/3) - 2^(1/3) == 2^(2/3)
  PowerSum g(2), h(2);
  g.add(Rat(1), rat(1, 3));
  g.add(Rat(1), rat(2, 3));
  g.add(Rat(-1), rat(1, 3));
  h.add(Rat(1), rat(2, 3));
  CHECK(PowerSum::compare(g, h) == 0);

  // base 1 degenerates to plain rationals
  PowerSum i(1), j(1);
  i.add(rat(5, 2), rat(7, 3));
  j.add(rat(5, 2), Rat(0));
  CHECK(PowerSum::compare(i, j) == 0);
}

TEST_CASE("PowerSum to_double sanity") {
  PowerSum a(2);
  a.add(Rat(1), Rat(3));       // 8
  a.add(Rat(1), rat(1, 2));    // sqrt 2
  CHECK(a.to_double() == doctest::Approx(8 + 1.4142135623730951));
}

TEST_CASE("PowerProduct diagnostics") {
  PowerProduct a, b;
  a.mul(Rat(4), rat(1, 2));   // 4^(1/2) = 2
  b.mul(Rat(2), Rat(1));
  CHECK(a.not_provably_less(b));
  CHECK(b.not_provably_less(a));  // exact tie recognized via base reduction

  PowerProduct c, d;
  c.mul(rat(1, 2), Rat(2));   // 1/4
  d.mul(Rat(2), Rat(-1));     // 1/2
  CHECK(d.not_provably_less(c));
  CHECK_FALSE(c.not_provably_less(d));
  CHECK(c.to_double() == doctest::Approx(0.25));
}
