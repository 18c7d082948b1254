#ifndef OSCSTAB_ALGEBRAIC_HPP
#define OSCSTAB_ALGEBRAIC_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unipoly.hpp"

namespace oscstab {

using QPoly = UniPoly<Rational>;

namespace detail {

/// Interval enclosure of p over [lo, hi] (Horner on rational intervals).
inline RationalInterval interval_eval(const QPoly& p, const RationalInterval& x) {
  if (p.is_zero()) return RationalInterval(Rational(0));
  RationalInterval acc(p.leading());
  for (int i = p.degree() - 1; i >= 0; --i)
    acc = acc * x + RationalInterval(p.coefficients()[static_cast<std::size_t>(i)]);
  return acc;
}

/// Centered form p(c) + p'([x]) ([x] - c); tighter than Horner on narrow boxes.
inline RationalInterval centered_eval(const QPoly& p, const RationalInterval& x) {
  if (x.lo == x.hi) return RationalInterval(p(x.lo));
  Rational c = x.mid();
  RationalInterval d = interval_eval(p.derivative(), x);
  RationalInterval r = RationalInterval(p(c)) + d * RationalInterval(x.lo - c, x.hi - c);
  RationalInterval h = interval_eval(p, x);
  return {std::max(r.lo, h.lo), std::min(r.hi, h.hi)};
}

/// Integer multiple of p with coprime integer coefficients.
inline QPoly primitive_integer(const QPoly& p) {
  Integer den = 1;
  for (const auto& c : p.coefficients()) den = lcm(den, Integer(c.get_den()));
  std::vector<Rational> c2;
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    Rational v = c * Rational(den);
    c2.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (g == 0) return p;
  for (auto& c : c2) c /= Rational(g);
  return QPoly(std::move(c2));
}

}  // namespace detail

/// Shared, refinable state of a real algebraic number: a square-free defining
/// polynomial and an isolating interval. The polynomial may shrink to a
/// factor when a zero test splits it; the interval only narrows.
class AlgebraicState {
public:
  AlgebraicState(QPoly poly, RootEnclosure enc) : poly_(std::move(poly)), enc_(std::move(enc)) {
    normalize_locked();
  }

  QPoly poly() const {
    std::lock_guard<std::mutex> lk(mu_);
    return poly_;
  }

  /// Enclosure narrowed to width <= w.
  RootEnclosure enclosure(const Rational& w) const {
    std::lock_guard<std::mutex> lk(mu_);
    refine_root(poly_, enc_, w);
    if (enc_.exact()) collapse_locked();
    return enc_;
  }

  RootEnclosure current() const {
    std::lock_guard<std::mutex> lk(mu_);
    return enc_;
  }

  std::optional<Rational> rational_value() const {
    std::lock_guard<std::mutex> lk(mu_);
    if (poly_.degree() == 1) return Rational(-poly_.coeff(0) / poly_.coeff(1));
    return std::nullopt;
  }

  /// True iff the value is a root of g, for g dividing the defining polynomial
  /// up to a constant. Replaces the polynomial by the factor containing it.
  bool split(const QPoly& g) const {
    std::lock_guard<std::mutex> lk(mu_);
    QPoly gg = gcd(g, poly_);
    if (gg.degree() < 1) return false;
    bool is_root;
    if (enc_.exact()) {
      is_root = sgn(gg(enc_.lo)) == 0;
    } else {
      is_root = sgn(gg(enc_.lo)) * sgn(gg(enc_.hi)) < 0;
    }
    if (gg.degree() < poly_.degree()) {
      poly_ = is_root ? gg : exact_div(poly_, gg);
      normalize_locked();
    }
    return is_root;
  }

  double to_double() const {
    RootEnclosure e = enclosure(Rational(1, 1) / Rational(Integer(1) << 80));
    return e.mid().get_d();
  }

private:
  void normalize_locked() const {
    poly_ = detail::primitive_integer(poly_);
    if (poly_.degree() == 1) {
      Rational r = -poly_.coeff(0) / poly_.coeff(1);
      enc_ = {r, r};
      return;
    }
    if (enc_.exact()) {
      collapse_locked();
      return;
    }
    // A rational root b/L must have L | lc; once the interval is narrower
    // than 1/L there is at most one candidate inside it.
    Integer lc = poly_.leading().get_num();
    if (lc < 0) lc = -lc;
    Rational step(1, 1);
    step /= Rational(lc);
    refine_root(poly_, enc_, step / 2);
    if (enc_.exact()) {
      collapse_locked();
      return;
    }
    Rational k = Rational(ceil_of(enc_.lo * Rational(lc)));
    Rational cand = k / Rational(lc);
    cand.canonicalize();
    if (cand > enc_.lo && cand < enc_.hi && sgn(poly_(cand)) == 0) {
      enc_ = {cand, cand};
      collapse_locked();
    }
  }
  void collapse_locked() const {
    Rational r = enc_.lo;
    poly_ = QPoly{Rational(-r), Rational(1)};
  }

  mutable std::mutex mu_;
  mutable QPoly poly_;
  mutable RootEnclosure enc_;
};

/// A real algebraic number given by a defining polynomial and isolating interval.
class RealAlgebraic {
public:
  RealAlgebraic() : RealAlgebraic(Rational(0)) {}
  RealAlgebraic(const Rational& r)  // NOLINT(google-explicit-constructor)
      : s_(std::make_shared<AlgebraicState>(QPoly{Rational(-r), Rational(1)}, RootEnclosure{r, r})) {}
  /// poly square-free with exactly one root in the open enclosure (or exact enclosure).
  RealAlgebraic(QPoly poly, RootEnclosure enc)
      : s_(std::make_shared<AlgebraicState>(std::move(poly), std::move(enc))) {}
  explicit RealAlgebraic(std::shared_ptr<AlgebraicState> s) : s_(std::move(s)) {}

  const std::shared_ptr<AlgebraicState>& state() const { return s_; }
  QPoly poly() const { return s_->poly(); }
  RootEnclosure enclosure(const Rational& width) const { return s_->enclosure(width); }
  RootEnclosure enclosure() const { return s_->current(); }
  std::optional<Rational> rational_value() const { return s_->rational_value(); }
  bool is_rational() const { return rational_value().has_value(); }
  double to_double() const {
    if (auto r = rational_value()) return r->get_d();
    return s_->to_double();
  }

  int sign() const { return compare(*this, RealAlgebraic(Rational(0))); }

  /// Exact three-way comparison.
  friend int compare(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.s_ == b.s_) return 0;
    auto ra = a.rational_value(), rb = b.rational_value();
    if (ra && rb) return cmp(*ra, *rb);
    // Equality certificate: both are roots of G = gcd and the hull of the
    // two enclosures contains only one root of G.
    QPoly G = gcd(a.poly(), b.poly());
    bool maybe_equal = G.degree() >= 1 && a.s_->split(G) && b.s_->split(G);
    std::vector<QPoly> seq;
    if (maybe_equal) seq = sturm_sequence(G);
    Rational w(1);
    for (int iter = 0; iter < 4000; ++iter) {
      RootEnclosure ea = a.enclosure(w), eb = b.enclosure(w);
      if (ea.hi < eb.lo) return -1;
      if (eb.hi < ea.lo) return 1;
      if (ea.exact() && eb.exact()) return cmp(ea.lo, eb.lo);
      if (maybe_equal) {
        Rational lo = std::min(ea.lo, eb.lo), hi = std::max(ea.hi, eb.hi);
        // Count roots of G in [lo, hi]; endpoints of enclosures are not roots
        // of the defining polynomials unless exact.
        Rational lo2 = lo - w, hi2 = hi + w;
        if (sgn(G(lo2)) != 0 && sgn(G(hi2)) != 0 && count_roots(seq, lo2, hi2) == 1) return 0;
      }
      w /= 16;
    }
    throw PrecisionInsufficient("could not separate two algebraic numbers");
  }

  friend bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == 0; }
  friend bool operator!=(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) != 0; }
  friend bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) < 0; }

  std::string str() const {
    if (auto r = rational_value()) return to_string(*r);
    RootEnclosure e = enclosure();
    return "root(" + poly().str() + " in [" + to_string(e.lo) + ", " + to_string(e.hi) + "])";
  }

private:
  std::shared_ptr<AlgebraicState> s_;
};

/// Real roots of a nonzero rational polynomial with their multiplicities.
struct RealRoot {
  RealAlgebraic value;
  int multiplicity;
};

inline std::vector<RealRoot> real_roots(const QPoly& p) {
  if (p.is_zero()) throw DomainError("real_roots of the zero polynomial");
  std::vector<RealRoot> out;
  for (auto& [f, mult] : squarefree_decomposition(p)) {
    for (auto& enc : isolate_real_roots(f)) out.push_back({RealAlgebraic(f, enc), mult});
  }
  std::sort(out.begin(), out.end(),
            [](const RealRoot& x, const RealRoot& y) { return x.value < y.value; });
  return out;
}

/// Element of Q(alpha) for a single real algebraic generator alpha, or of Q
/// when no generator is attached. Zero tests and signs are exact.
class Number {
public:
  Number() : q_(0) {}
  Number(const Rational& q) : q_(q) {}  // NOLINT(google-explicit-constructor)
  Number(long v) : q_(v) {}             // NOLINT(google-explicit-constructor)
  Number(int v) : q_(v) {}              // NOLINT(google-explicit-constructor)

  /// The generator itself.
  static Number generator(const RealAlgebraic& a) {
    if (auto r = a.rational_value()) return Number(*r);
    Number n;
    n.gen_ = a.state();
    n.rep_ = QPoly{Rational(0), Rational(1)};
    n.reduce();
    return n;
  }
  /// rep(alpha).
  static Number from_rep(const std::shared_ptr<AlgebraicState>& g, QPoly rep) {
    Number n;
    n.gen_ = g;
    n.rep_ = std::move(rep);
    n.reduce();
    return n;
  }

  bool is_rational() const { return gen_ == nullptr; }
  const Rational& rational() const {
    if (gen_) throw PrecisionInsufficient("irrational value where a rational is required");
    return q_;
  }
  const std::shared_ptr<AlgebraicState>& generator_state() const { return gen_; }
  const QPoly& rep() const { return rep_; }

  bool is_zero() const {
    if (!gen_) return sgn(q_) == 0;
    if (rep_.is_zero()) return true;
    if (rep_.degree() == 0) return false;
    QPoly g = gcd(rep_, gen_->poly());
    if (g.degree() < 1) return false;
    return gen_->split(g);
  }

  int sign() const {
    if (!gen_) return sgn(q_);
    if (is_zero()) return 0;
    Rational w(1);
    for (int iter = 0; iter < 4000; ++iter) {
      RootEnclosure e = gen_->enclosure(w);
      RationalInterval v = detail::centered_eval(rep_, RationalInterval(e.lo, e.hi));
      if (int s = v.certain_sign()) return s;
      if (e.exact()) return sgn(rep_(e.lo));
      w /= 16;
    }
    throw PrecisionInsufficient("sign of algebraic number not certified");
  }

  /// Enclosure of the value with width <= w.
  RationalInterval enclose(const Rational& w) const {
    if (!gen_) return RationalInterval(q_);
    Rational ww(1);
    for (int iter = 0; iter < 4000; ++iter) {
      RootEnclosure e = gen_->enclosure(ww);
      RationalInterval v = detail::centered_eval(rep_, RationalInterval(e.lo, e.hi));
      if (v.width() <= w) return v;
      ww /= 16;
    }
    throw PrecisionInsufficient("enclosure not reached");
  }

  double to_double() const {
    if (!gen_) return q_.get_d();
    return enclose(Rational(1) / Rational(Integer(1) << 70)).mid().get_d();
  }

  /// The value as a standalone real algebraic number (via its characteristic polynomial).
  RealAlgebraic to_algebraic() const;

  Number inverse() const {
    if (!gen_) {
      if (sgn(q_) == 0) throw DomainError("division by zero");
      return Number(Rational(1) / q_);
    }
    if (is_zero()) throw DomainError("division by zero");
    QPoly m = gen_->poly();
    auto [g, s] = xgcd_mod(rep_, m);
    if (g.degree() >= 1) {
      // is_zero has already split the modulus; retry on the reduced one.
      return Number::from_rep(gen_, rep_).inverse();
    }
    return Number::from_rep(gen_, s);
  }

  Number operator-() const {
    Number n = *this;
    n.q_ = -n.q_;
    n.rep_ = -n.rep_;
    return n;
  }

  friend Number operator+(const Number& a, const Number& b) {
    if (!a.gen_ && !b.gen_) return Number(Rational(a.q_ + b.q_));
    auto g = common(a, b);
    return from_rep(g, a.as_rep() + b.as_rep());
  }
  friend Number operator-(const Number& a, const Number& b) { return a + (-b); }
  friend Number operator*(const Number& a, const Number& b) {
    if (!a.gen_ && !b.gen_) return Number(Rational(a.q_ * b.q_));
    auto g = common(a, b);
    if (!a.gen_) return from_rep(g, a.q_ * b.rep_);
    if (!b.gen_) return from_rep(g, b.q_ * a.rep_);
    return from_rep(g, a.rep_ * b.rep_);
  }
  friend Number operator/(const Number& a, const Number& b) { return a * b.inverse(); }
  Number& operator+=(const Number& o) { return *this = *this + o; }
  Number& operator-=(const Number& o) { return *this = *this - o; }
  Number& operator*=(const Number& o) { return *this = *this * o; }

  friend bool operator==(const Number& a, const Number& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Number& a, const Number& b) { return !(a == b); }
  friend bool operator<(const Number& a, const Number& b) { return (a - b).sign() < 0; }

  std::string str() const {
    if (!gen_) return to_string(q_);
    return rep_.str("a") + " where a = " + RealAlgebraic(gen_).str();
  }

private:
  QPoly as_rep() const { return gen_ ? rep_ : QPoly::constant(q_); }

  static std::shared_ptr<AlgebraicState> common(const Number& a, const Number& b) {
    if (!a.gen_) return b.gen_;
    if (!b.gen_ || a.gen_ == b.gen_) return a.gen_;
    if (compare(RealAlgebraic(a.gen_), RealAlgebraic(b.gen_)) == 0) {
      // Same value under two descriptions: rewrite is not attempted for
      // distinct polynomials; only identical moduli are merged.
      if (a.gen_->poly() == b.gen_->poly()) return a.gen_;
    }
    throw PrecisionInsufficient("values from two different algebraic extensions");
  }

  void reduce() {
    if (!gen_) return;
    QPoly m = gen_->poly();
    if (m.degree() == 1) {
      Rational r = -m.coeff(0) / m.coeff(1);
      q_ = rep_(r);
      gen_.reset();
      rep_ = QPoly();
      return;
    }
    if (rep_.degree() >= m.degree()) rep_ = rep_ % m;
    if (rep_.degree() <= 0) {
      q_ = rep_.coeff(0);
      gen_.reset();
      rep_ = QPoly();
    }
  }

  Rational q_;
  std::shared_ptr<AlgebraicState> gen_;
  QPoly rep_;
};

template <>
struct FieldTraits<Number> {
  static Number zero() { return Number(0); }
  static Number one() { return Number(1); }
  static bool is_zero(const Number& v) { return v.is_zero(); }
  static int sign(const Number& v) { return v.sign(); }
  static Number inverse(const Number& v) { return v.inverse(); }
  static Number from_rational(const Rational& v) { return Number(v); }
  static Rational magnitude_bound(const Number& v) {
    return v.enclose(Rational(1, 1024)).magnitude() + Rational(1, 1024);
  }
  static Rational magnitude_lower_bound(const Number& v) {
    if (v.is_rational()) return abs(v.rational());
    int s = v.sign();
    Rational w(1);
    for (;;) {
      RationalInterval e = v.enclose(w);
      if (e.certain_sign() == s) return s > 0 ? e.lo : Rational(-e.hi);
      w /= 16;
    }
  }
  static std::string str(const Number& v) { return v.str(); }
};

using KPoly = UniPoly<Number>;

/// Characteristic polynomial Res_z(m(z), t - rep(z)) by evaluation/interpolation.
inline QPoly characteristic_polynomial(const QPoly& m, const QPoly& rep) {
  int n = m.degree();
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= n; ++i) {
    Rational t(i);
    xs.push_back(t);
    ys.push_back(resultant(m, QPoly::constant(t) - rep));
  }
  return interpolate(xs, ys);
}

inline RealAlgebraic Number::to_algebraic() const {
  if (!gen_) return RealAlgebraic(q_);
  QPoly P = squarefree_part(characteristic_polynomial(gen_->poly(), rep_));
  auto encs = isolate_real_roots(P);
  std::vector<RealAlgebraic> cands;
  for (auto& e : encs) cands.emplace_back(P, e);
  Rational w(1);
  for (int iter = 0; iter < 4000; ++iter) {
    RationalInterval v = enclose(w);
    int hits = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      RootEnclosure e = cands[i].enclosure(w);
      if (!(e.hi < v.lo || v.hi < e.lo)) {
        ++hits;
        which = i;
      }
    }
    if (hits == 1) return cands[which];
    w /= 16;
  }
  throw PrecisionInsufficient("could not identify the algebraic value");
}

/// Polynomial over Q from one over the (rational) Number field.
inline QPoly to_qpoly(const KPoly& p) {
  std::vector<Rational> c;
  for (const auto& v : p.coefficients()) c.push_back(v.rational());
  return QPoly(std::move(c));
}

inline KPoly to_kpoly(const QPoly& p) {
  std::vector<Number> c;
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return KPoly(std::move(c));
}

inline bool all_rational(const KPoly& p) {
  for (const auto& v : p.coefficients())
    if (!v.is_rational()) return false;
  return true;
}

}  // namespace oscstab

#endif  // OSCSTAB_ALGEBRAIC_HPP
