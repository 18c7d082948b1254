#ifndef OSCSTAB_RATIONAL_HPP
#define OSCSTAB_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace oscstab {

/// Arbitrary-precision rational, always canonical (reduced, denominator > 0).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Accepts "7", "-3/2", "0.125" and "1e-3".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational", 0);
  auto bad = [&](std::size_t pos) { return ParseError("malformed rational '" + s + "'", pos); };
  if (s.find_first_of(".eE") != std::string::npos) {
    // Decimal literal: convert exactly as mantissa * 10^exponent.
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
      try {
        std::size_t used = 0;
        exp10 = std::stol(s.substr(epos + 1), &used);
        if (used != s.size() - epos - 1) throw bad(epos);
      } catch (const std::logic_error&) {
        throw bad(epos);
      }
    }
    bool neg = false;
    std::size_t i = 0;
    if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) neg = mant[i++] == '-';
    std::string digits;
    bool seen_dot = false, seen_digit = false;
    for (; i < mant.size(); ++i) {
      if (mant[i] == '.') {
        if (seen_dot) throw bad(i);
        seen_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(mant[i]))) {
        digits += mant[i];
        seen_digit = true;
        if (seen_dot) --exp10;
      } else {
        throw bad(i);
      }
    }
    if (!seen_digit) throw bad(0);
    Integer m(digits);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational q = exp10 >= 0 ? Rational(m * p) : Rational(m, p);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '-' || c == '+') && (i == 0));
    if (!ok) throw bad(i);
  }
  if (s.front() == '+') s.erase(0, 1);
  if (s.empty() || s.back() == '/' || s.front() == '/' ||
      std::count(s.begin(), s.end(), '/') > 1)
    throw bad(0);
  Rational q;
  if (q.set_str(s, 10) != 0) throw bad(0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", s.find('/'));
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational pow(const Rational& q, unsigned long k) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), k);
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline long lcm(long a, long b) {
  Integer r = lcm(Integer(a), Integer(b));
  return r.get_si();
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Exact rational value of a finite double.
inline Rational from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value cannot become a rational");
  return Rational(v);
}

/// Closed rational interval [lo, hi] with exact endpoint arithmetic.
struct RationalInterval {
  Rational lo, hi;

  RationalInterval() = default;
  explicit RationalInterval(const Rational& v) : lo(v), hi(v) {}
  RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  /// +1 / -1 when the interval excludes zero, 0 otherwise.
  int certain_sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  Rational magnitude() const { return std::max(abs(lo), abs(hi)); }
};

inline RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

inline RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline RationalInterval operator*(const Rational& s, const RationalInterval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

}  // namespace oscstab

#endif  // OSCSTAB_RATIONAL_HPP
