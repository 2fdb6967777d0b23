#pragma once

// Exact rational scalar used by every step-weight computation.
//
// Backed by GMP's mpq_class. Values are always kept canonical (reduced,
// positive denominator), so equality is structural.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace a1w {

using Rational = mpq_class;

/// num / den in lowest terms. GMP arithmetic assumes canonical operands, so
/// every two-argument construction goes through here.
inline Rational fraction(unsigned long num, unsigned long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", an integer, or a decimal such as "-0.125" or "2.5e-3".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t lead = 0;
  while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
  s.erase(0, lead);
  if (s.empty()) throw fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    auto integral = [](const std::string& d, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && i < d.size() && (d[i] == '-' || d[i] == '+')) ++i;
      if (i == d.size()) return false;
      for (; i < d.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
      return true;
    };
    if (!integral(num, true) || !integral(den, false)) throw fail();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '-' || s[i] == '+') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) ++scale;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw fail();
    ++i;
    std::string exp_text = s.substr(i);
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != exp_text.size() || exponent > 4096 || exponent < -4096) throw fail();
  }
  mpz_class mantissa(digits, 10);
  long shift = exponent - scale;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(mantissa * pow10) : Rational(mantissa, pow10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite binary64 value.
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);
}

}  // namespace a1w
