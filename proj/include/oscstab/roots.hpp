#ifndef OSCSTAB_ROOTS_HPP
#define OSCSTAB_ROOTS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "algebraic.hpp"

namespace oscstab {

/// A real root of a polynomial over K: isolated inside a square-free factor.
struct KRoot {
  KPoly factor;
  RootEnclosure enc;
  int multiplicity = 1;

  Rational mid() const { return enc.mid(); }
  bool is_zero() const {
    if (enc.exact()) return sgn(enc.lo) == 0;
    return factor.coeff(0).is_zero() && enc.lo < 0 && enc.hi > 0;
  }
};

/// Real roots over K with exact multiplicities, ascending.
inline std::vector<KRoot> real_roots(const KPoly& p) {
  if (p.is_zero()) throw DomainError("real_roots of the zero polynomial");
  std::vector<KRoot> out;
  for (auto& [f, mult] : squarefree_decomposition(p)) {
    for (auto& enc : isolate_real_roots(f)) {
      KRoot r{f, enc, mult};
      // Separate an isolated zero root from its neighbours so is_zero is exact.
      if (f.coeff(0).is_zero() && !enc.exact() && enc.lo < 0 && enc.hi > 0) r.enc = {0, 0};
      out.push_back(std::move(r));
    }
  }
  // Roots of different factors are distinct; narrow until enclosures are disjoint.
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        KRoot& x = out[i];
        KRoot& y = out[j];
        if (x.enc.hi < y.enc.lo || y.enc.hi < x.enc.lo) continue;
        refine_root(x.factor, x.enc, x.enc.width() / 2);
        refine_root(y.factor, y.enc, y.enc.width() / 2);
        again = true;
      }
  }
  std::sort(out.begin(), out.end(), [](const KRoot& x, const KRoot& y) { return x.enc.hi < y.enc.lo; });
  return out;
}

/// The root as an exact value. Rational roots and roots of rational
/// polynomials always succeed; a root over a proper extension succeeds when
/// its factor is linear.
inline Number root_value(const KRoot& r) {
  if (r.enc.exact()) return Number(r.enc.lo);
  if (r.factor.degree() == 1) return -r.factor.coeff(0) / r.factor.coeff(1);
  if (all_rational(r.factor)) return Number::generator(RealAlgebraic(to_qpoly(r.factor), r.enc));
  throw PrecisionInsufficient("root lies outside the current algebraic extension");
}

inline RealAlgebraic root_algebraic(const KRoot& r) {
  if (r.enc.exact()) return RealAlgebraic(r.enc.lo);
  if (all_rational(r.factor)) return RealAlgebraic(to_qpoly(r.factor), r.enc);
  return root_value(r).to_algebraic();
}

/// Vanishing order of p at x0.
inline int ord_at(KPoly p, const Number& x0) {
  if (p.is_zero()) throw DomainError("ord_at of the zero polynomial");
  int k = 0;
  while (Number(p.eval<Number>(x0)).is_zero()) {
    p = p.derivative();
    ++k;
  }
  return k;
}

inline int ord_at(const QPoly& p, const RealAlgebraic& x0) {
  return ord_at(to_kpoly(p), Number::generator(x0));
}

/// Largest multiplicity of a nonzero real root (0 if there is none).
inline int max_nonzero_root_order(const KPoly& p) {
  if (p.is_zero()) throw DomainError("root orders of the zero polynomial");
  int best = 0;
  for (auto& [f, mult] : squarefree_decomposition(p)) {
    if (mult <= best) continue;
    int n = count_real_roots(f);
    if (f.coeff(0).is_zero()) --n;
    if (n > 0) best = mult;
  }
  return best;
}

/// sup over nonzero real x of min(ord_x p, ord_x q).
inline int min_order_sup(const KPoly& p, const KPoly& q) {
  if (p.is_zero() || q.is_zero()) throw DomainError("min_order_sup needs nonzero polynomials");
  KPoly g = gcd(p, q);
  if (g.degree() < 1) return 0;
  return max_nonzero_root_order(g);
}

inline int min_order_sup(const QPoly& p, const QPoly& q) { return min_order_sup(to_kpoly(p), to_kpoly(q)); }

/// A parameter t at which a pencil degenerates.
struct ExceptionalValue {
  RealAlgebraic t;
  std::string reason;  // vertex-cancellation | multiple-root | ratio-value | base-phase
  bool confirmed = false;
};

class ExceptionalSet {
public:
  /// Adds t unless an equal value is present; a confirmation upgrades the entry.
  void insert(const ExceptionalValue& v) {
    for (auto& e : values_) {
      if (compare(e.t, v.t) == 0) {
        if (v.confirmed && !e.confirmed) {
          e.confirmed = true;
          e.reason = v.reason;
        }
        return;
      }
    }
    values_.push_back(v);
    std::sort(values_.begin(), values_.end(),
              [](const ExceptionalValue& a, const ExceptionalValue& b) { return a.t < b.t; });
  }
  void merge(const ExceptionalSet& o) {
    for (const auto& v : o.values_) insert(v);
  }
  bool contains(const RealAlgebraic& t) const {
    for (const auto& e : values_)
      if (compare(e.t, t) == 0) return true;
    return false;
  }
  /// True if some member lies within `radius` of the double value t.
  bool near(double t, double radius) const {
    for (const auto& e : values_)
      if (std::fabs(e.t.to_double() - t) <= radius) return true;
    return false;
  }
  std::vector<ExceptionalValue>& values() { return values_; }
  const std::vector<ExceptionalValue>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

private:
  std::vector<ExceptionalValue> values_;
};

struct PencilOrderResult {
  int m = 0;
  ExceptionalSet I;
};

namespace detail {

/// p + t q with t given as an algebraic value.
inline KPoly pencil_at(const QPoly& p, const QPoly& q, const RealAlgebraic& t) {
  Number tn = Number::generator(t);
  return to_kpoly(p) + tn * to_kpoly(q);
}

/// Res_y(f_t, f_t') of f_t = p + t q as a polynomial in t, by interpolation at
/// parameters where the degree of f_t does not drop.
inline QPoly pencil_discriminant(const QPoly& p, const QPoly& q) {
  int n = std::max(p.degree(), q.degree());
  if (n < 1) return QPoly();
  int npts = 2 * n + 1;
  std::vector<Rational> xs, ys;
  for (long k = 0; static_cast<int>(xs.size()) < npts; ++k) {
    Rational t = (k % 2 == 0) ? Rational(k / 2) : Rational(-(k + 1) / 2);
    QPoly f = p + t * q;
    if (f.degree() != n) continue;
    xs.push_back(t);
    ys.push_back(resultant(f, f.derivative()));
  }
  return interpolate(xs, ys);
}

}  // namespace detail

/// Finite I such that for t outside I every nonzero real root of p + t q has
/// order at most max(1, m), m = min_order_sup(p, q).
inline PencilOrderResult lemma31_exceptional(const QPoly& p, const QPoly& q) {
  if (p.is_zero() || q.is_zero()) throw DomainError("pencil orders need nonzero polynomials");
  PencilOrderResult res;
  res.m = min_order_sup(p, q);
  int M = std::max(1, res.m);
  // Proportional pencils: nothing to exclude.
  if (p.degree() == q.degree() && (p.leading() * q - q.leading() * p).is_zero()) return res;

  auto degenerate = [&](const RealAlgebraic& t) {
    return max_nonzero_root_order(detail::pencil_at(p, q, t)) > M;
  };

  // Ratio values at points of J = roots of W, p, q.
  QPoly W = p * q.derivative() - p.derivative() * q;
  std::vector<RealAlgebraic> J;
  for (const QPoly* h : std::initializer_list<const QPoly*>{&W, &p, &q}) {
    if (h->degree() < 1) continue;
    for (auto& r : real_roots(*h)) {
      if (r.value.sign() == 0) continue;
      bool dup = false;
      for (auto& x : J)
        if (compare(x, r.value) == 0) dup = true;
      if (!dup) J.push_back(r.value);
    }
  }
  for (const auto& x0 : J) {
    int kp = ord_at(p, x0), kq = ord_at(q, x0);
    if (kp != kq) continue;
    Number a = Number::generator(x0);
    Number pv = to_kpoly(p.derivative(static_cast<unsigned>(kp))).eval<Number>(a);
    Number qv = to_kpoly(q.derivative(static_cast<unsigned>(kq))).eval<Number>(a);
    RealAlgebraic t = Number(-pv / qv).to_algebraic();
    res.I.insert({t, "ratio-value", degenerate(t)});
  }

  // Multiple roots of the coprime part p1 + t q1 via its discriminant.
  QPoly G = gcd(p, q);
  QPoly p1 = exact_div(p, G), q1 = exact_div(q, G);
  QPoly D = detail::pencil_discriminant(p1, q1);
  if (!D.is_zero() && D.degree() >= 1) {
    for (auto& r : real_roots(D))
      if (degenerate(r.value)) res.I.insert({r.value, "multiple-root", true});
  }
  // t = 0: p itself.
  if (max_nonzero_root_order(to_kpoly(p)) > M) res.I.insert({RealAlgebraic(Rational(0)), "multiple-root", true});
  return res;
}

}  // namespace oscstab

#endif  // OSCSTAB_ROOTS_HPP
