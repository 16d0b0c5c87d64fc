#include "admctl/rational.hpp"

#include <cctype>

namespace admctl {

Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0) {
    if (exp < 0) throw std::domain_error("0 raised to negative power");
    return Rat(0);
  }
  unsigned long mag = exp < 0 ? static_cast<unsigned long>(-exp)
                              : static_cast<unsigned long>(exp);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), mag);
  if (exp < 0) std::swap(num, den);
  return rat(num, den);
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat rat_parse(const std::string& text) {
  std::string s = text;
  // strip surrounding blanks
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(s.begin());
  }

  Rat value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("bad rational literal: " + text);
    value = rat(mpz_class(num), mpz_class(den));
  } else if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("bad decimal literal: " + text);
    mpz_class num(whole + frac);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = rat(num, den);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad integer literal: " + text);
    value = Rat(mpz_class(s));
  }
  if (negative) value = -value;
  return value;
}

std::string rat_str(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double rat_double(const Rat& value) { return value.get_d(); }

mpz_class rat_floor(const Rat& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return q;
}

}  // namespace admctl
