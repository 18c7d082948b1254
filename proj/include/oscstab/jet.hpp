#ifndef OSCSTAB_JET_HPP
#define OSCSTAB_JET_HPP

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebraic.hpp"

namespace oscstab {

/// Exponent (a, b) of x^a y^b; a may be fractional, b is a nonnegative integer.
struct Exponent {
  Rational a;
  int b = 0;
  friend bool operator<(const Exponent& l, const Exponent& r) {
    int c = cmp(l.a, r.a);
    return c < 0 || (c == 0 && l.b < r.b);
  }
  friend bool operator==(const Exponent& l, const Exponent& r) { return l.a == r.a && l.b == r.b; }
};

/// Term with floating coefficient for fast evaluation.
struct NumericTerm {
  double a;
  int ia;         // a when integral
  bool integral;  // a is an integer
  int b;
  double c;
};

/// Finite Taylor jet sum c_ab x^a y^b, a in (1/n)Z, b in Z, exact coefficients.
class Jet {
public:
  using Terms = std::map<Exponent, Number>;

  Jet() = default;
  explicit Jet(long ramification) : n_(ramification) {
    if (n_ < 1) throw DomainError("ramification must be positive");
  }

  /// Adds c x^a y^b to the jet, merging with an existing term.
  void add(const Rational& a, int b, const Number& c) {
    if (a < 0 || b < 0) throw DomainError("negative exponent");
    if (c.is_zero()) return;
    n_ = lcm(n_, a.get_den().get_si());
    Exponent e{a, b};
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    Number s = it->second + c;
    if (s.is_zero()) terms_.erase(it);
    else it->second = std::move(s);
  }

  static Jet monomial(const Rational& a, int b, const Number& c = Number(1)) {
    Jet j;
    j.add(a, b, c);
    return j;
  }

  long ramification() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Number coefficient(const Rational& a, int b) const {
    auto it = terms_.find(Exponent{a, b});
    return it == terms_.end() ? Number(0) : it->second;
  }

  bool integer_exponents() const {
    for (const auto& [e, c] : terms_)
      if (!is_integer(e.a)) return false;
    return true;
  }

  bool rational_coefficients() const {
    for (const auto& [e, c] : terms_)
      if (!c.is_rational()) return false;
    return true;
  }

  int max_b() const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e.b);
    return m;
  }

  std::vector<NumericTerm> numeric() const {
    std::vector<NumericTerm> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
      bool integral = is_integer(e.a);
      out.push_back({e.a.get_d(), integral ? static_cast<int>(e.a.get_num().get_si()) : 0, integral,
                     e.b, c.to_double()});
    }
    return out;
  }

  Jet operator-() const {
    Jet r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend Jet operator+(const Jet& p, const Jet& q) {
    Jet r = p;
    r.n_ = lcm(p.n_, q.n_);
    for (const auto& [e, c] : q.terms_) r.add(e.a, e.b, c);
    return r;
  }
  friend Jet operator-(const Jet& p, const Jet& q) { return p + (-q); }
  friend Jet operator*(const Number& s, const Jet& p) {
    Jet r(p.n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
    return r;
  }
  friend Jet operator*(const Jet& p, const Jet& q) {
    Jet r(lcm(p.n_, q.n_));
    for (const auto& [e1, c1] : p.terms_)
      for (const auto& [e2, c2] : q.terms_) r.add(Rational(e1.a + e2.a), e1.b + e2.b, c1 * c2);
    return r;
  }
  friend bool operator==(const Jet& p, const Jet& q) { return (p - q).is_zero(); }
  friend bool operator!=(const Jet& p, const Jet& q) { return !(p == q); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print by descending total degree feel: iterate in stored order.
    for (const auto& [e, c] : terms_) {
      std::string coef;
      bool neg = false;
      if (c.is_rational()) {
        Rational v = c.rational();
        neg = v < 0;
        coef = to_string(abs(v));
      } else {
        coef = "(" + c.str() + ")";
      }
      std::string mono;
      auto pw = [](const char* v, const std::string& k) {
        if (k == "1") return std::string(v);
        if (k.find('/') != std::string::npos) return std::string(v) + "^(" + k + ")";
        return std::string(v) + "^" + k;
      };
      if (sgn(e.a) != 0) mono = pw("x", to_string(e.a));
      if (e.b != 0) mono += (mono.empty() ? "" : "*") + pw("y", std::to_string(e.b));
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      if (mono.empty()) os << coef;
      else if (coef == "1") os << mono;
      else os << coef << "*" << mono;
    }
    return os.str();
  }

private:
  long n_ = 1;
  Terms terms_;
};

namespace detail {

class JetParser {
public:
  explicit JetParser(std::string_view s) : s_(s) {}

  Jet parse() {
    Jet j = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return j;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
  }

  Jet expr() {
    Jet acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }
  Jet term() {
    Jet acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
        continue;
      }
      // Juxtaposition such as "2x" or "x y" or "3(x+y)".
      skip();
      if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'y' || s_[pos_] == '(')) {
        acc = acc * unary();
        continue;
      }
      return acc;
    }
  }
  Jet unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  Jet power() {
    std::size_t at = pos_;
    Jet base = atom();
    if (!accept('^')) return base;
    std::size_t epos = pos_;
    Rational e;
    if (accept('(')) {
      bool neg = accept('-');
      if (!neg) accept('+');
      e = number();
      if (neg) e = -e;
      if (!accept(')')) throw ParseError("expected ')'", pos_);
    } else {
      if (accept('-')) throw ParseError("negative exponent", epos);
      e = number();
    }
    if (e < 0) throw ParseError("negative exponent", epos);
    if (is_integer(e)) {
      unsigned long k = e.get_num().get_ui();
      if (k > 4096) throw ParseError("exponent too large", epos);
      Jet r = Jet::monomial(0, 0);
      for (unsigned long i = 0; i < k; ++i) r = r * base;
      return r;
    }
    // Fractional powers only of a pure power of x.
    if (base.size() == 1) {
      const auto& [ex, c] = *base.terms().begin();
      if (ex.b == 0 && c == Number(1)) return Jet::monomial(Rational(ex.a * e), 0);
    }
    throw ParseError("fractional exponent allowed only on x", at);
  }
  Jet atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      return Jet::monomial(1, 0);
    }
    if (c == 'y') {
      ++pos_;
      return Jet::monomial(0, 1);
    }
    if (c == '(') {
      ++pos_;
      Jet j = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return j;
    }
    if (peek_digit()) {
      Rational v = number();
      return Jet::monomial(0, 0, Number(v));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }
  Rational number() {
    skip();
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      digits();
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t d0 = pos_;
        digits();
        if (pos_ == d0) pos_ = save;
      }
    } else if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      throw ParseError("malformed number", start);
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial expression such as "x^2*y - 3/2*y^4" or "x^(3/2)*y".
/// The JSON term-list format is handled by parse_jet_json in report.hpp.
inline Jet parse_jet_expression(std::string_view text) {
  Jet j = detail::JetParser(text).parse();
  if (j.is_zero()) throw EmptyJet();
  return j;
}

enum class PhaseCondition { ok, nonzero_constant, nonzero_gradient };

inline const char* to_string(PhaseCondition c) {
  switch (c) {
    case PhaseCondition::ok: return "ok";
    case PhaseCondition::nonzero_constant: return "nonzero_constant";
    case PhaseCondition::nonzero_gradient: return "nonzero_gradient";
  }
  return "?";
}

/// Classifies the low-order part. A gradient term wins over a constant term,
/// since stripping the constant does not rescue a phase with nonzero gradient.
/// Fractional terms of total degree at most 1 count as gradient terms.
inline PhaseCondition check_phase_conditions(const Jet& S) {
  if (S.is_zero()) throw EmptyJet();
  bool constant = false, gradient = false;
  for (const auto& [e, c] : S.terms()) {
    Rational deg = e.a + e.b;
    if (deg == 0) constant = true;
    else if (deg <= 1) gradient = true;
  }
  if (gradient) return PhaseCondition::nonzero_gradient;
  if (constant) return PhaseCondition::nonzero_constant;
  return PhaseCondition::ok;
}

/// True iff every term has total degree >= 2 (the jet vanishes to second order).
inline bool vanishes_to_second_order(const Jet& S) {
  for (const auto& [e, c] : S.terms())
    if (e.a + e.b < 2) return false;
  return true;
}

/// S with its constant term removed.
inline Jet strip_constant(const Jet& S) {
  Jet r(S.ramification());
  for (const auto& [e, c] : S.terms())
    if (!(sgn(e.a) == 0 && e.b == 0)) r.add(e.a, e.b, c);
  return r;
}

namespace detail {

/// Neumaier compensated sum.
class CompensatedSum {
public:
  void add(double v) {
    double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) comp_ += (sum_ - t) + v;
    else comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0, comp_ = 0;
};

inline double xpow(const NumericTerm& t, double x) {
  if (t.integral) {
    double r = 1;
    for (int i = 0; i < t.ia; ++i) r *= x;
    return r;
  }
  if (x < 0) throw DomainError("fractional exponent at negative x");
  return std::pow(x, t.a);
}

inline double ipowd(double y, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= y;
  return r;
}

}  // namespace detail

inline double eval(const std::vector<NumericTerm>& terms, double x, double y) {
  detail::CompensatedSum s;
  for (const auto& t : terms) s.add(t.c * detail::xpow(t, x) * detail::ipowd(y, t.b));
  return s.value();
}

inline double eval(const Jet& S, double x, double y) { return eval(S.numeric(), x, y); }

/// Exact value at a rational point; integer exponents only.
inline Number eval_exact(const Jet& S, const Rational& x, const Rational& y) {
  Number s(0);
  for (const auto& [e, c] : S.terms()) {
    if (!is_integer(e.a)) throw DomainError("exact evaluation needs integer exponents");
    s += c * Number(Rational(pow(x, e.a.get_num().get_ui()) * pow(y, static_cast<unsigned long>(e.b))));
  }
  return s;
}

/// Formal partial derivative d^dx/dx^dx d^dy/dy^dy.
inline Jet partial(const Jet& S, unsigned dx, unsigned dy) {
  Jet r(S.ramification());
  for (const auto& [e, c] : S.terms()) {
    if (static_cast<unsigned>(e.b) < dy) continue;
    Rational f(1);
    Rational a = e.a;
    for (unsigned i = 0; i < dx; ++i) {
      f *= a;
      a -= 1;
    }
    if (sgn(f) == 0 || a < 0) continue;
    for (unsigned i = 0; i < dy; ++i) f *= Rational(e.b - static_cast<int>(i));
    r.add(a, e.b - static_cast<int>(dy), Number(f) * c);
  }
  return r;
}

namespace detail {
inline Rational binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}
}  // namespace detail

/// Jet of S(x, y + r x^m).
inline Jet shear(const Jet& S, const Number& r, const Rational& m) {
  if (m < 0) throw DomainError("shear exponent must be nonnegative");
  Jet out(lcm(S.ramification(), m.get_den().get_si()));
  if (r.is_zero()) {
    for (const auto& [e, c] : S.terms()) out.add(e.a, e.b, c);
    return out;
  }
  int maxb = S.max_b();
  std::vector<Number> rp{Number(1)};
  for (int i = 1; i <= maxb; ++i) rp.push_back(rp.back() * r);
  for (const auto& [e, c] : S.terms()) {
    for (int k = 0; k <= e.b; ++k) {
      int j = e.b - k;
      out.add(Rational(e.a + m * j), k, c * rp[static_cast<std::size_t>(j)] * Number(detail::binomial(e.b, k)));
    }
  }
  return out;
}

/// (x, y) -> (y, x); integer exponents only.
inline Jet swap_axes(const Jet& S) {
  if (!S.integer_exponents()) throw DomainError("swap_axes needs integer exponents");
  Jet out;
  for (const auto& [e, c] : S.terms()) {
    long b = e.a.get_num().get_si();
    out.add(Rational(e.b), static_cast<int>(b), c);
  }
  return out;
}

/// S(-x, y); integer exponents only.
inline Jet reflect_x(const Jet& S) {
  if (!S.integer_exponents()) throw DomainError("reflection needs integer exponents");
  Jet out;
  for (const auto& [e, c] : S.terms()) {
    bool odd = e.a.get_num().get_si() % 2 != 0;
    out.add(e.a, e.b, odd ? Number(-c) : c);
  }
  return out;
}

inline Jet square_sum(const Jet& g, const Jet& h) { return g * g + h * h; }

/// Cutoff function: the standard bump on the disk of radius r, or the
/// indicator of the square [-r, r]^2.
struct Cutoff {
  enum class Kind { bump, indicator };
  double r = 1;
  Kind kind = Kind::bump;
  double scale = 1;

  static Cutoff bump(double r) { return {r, Kind::bump, 1}; }
  static Cutoff indicator(double r) { return {r, Kind::indicator, 1}; }

  double operator()(double x, double y) const {
    if (kind == Kind::indicator) return (std::fabs(x) <= r && std::fabs(y) <= r) ? scale : 0.0;
    double rho2 = x * x + y * y, r2 = r * r;
    if (rho2 >= r2) return 0.0;
    return scale * std::exp(1.0 - r2 / (r2 - rho2));
  }
  double at_origin() const { return scale; }
  double sup() const { return std::fabs(scale); }
};

inline const char* to_string(Cutoff::Kind k) { return k == Cutoff::Kind::bump ? "bump" : "indicator"; }

}  // namespace oscstab

#endif  // OSCSTAB_JET_HPP
