#ifndef OSCSTAB_COEFF_HPP
#define OSCSTAB_COEFF_HPP

#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "stability.hpp"

namespace oscstab {

enum class CoeffMethod { closed_form_edge, closed_form_ray, closed_form_vertex, oracle_fit, stationary_phase };

inline const char* to_string(CoeffMethod m) {
  switch (m) {
    case CoeffMethod::closed_form_edge: return "closed-form-edge";
    case CoeffMethod::closed_form_ray: return "closed-form-ray";
    case CoeffMethod::closed_form_vertex: return "closed-form-vertex";
    case CoeffMethod::oracle_fit: return "oracle-fit";
    case CoeffMethod::stationary_phase: return "stationary-phase";
  }
  return "?";
}

/// Leading coefficients: I(eps) ~ B eps^delta |ln eps|^p for S (B_plus) and
/// -S (B_minus); J(lambda) ~ A lambda^-delta (ln lambda)^p.
struct LeadingCoeff {
  double B_plus = 0, B_minus = 0;
  double B_plus_err = 0, B_minus_err = 0;
  std::complex<double> A;
  Rational delta;
  int p = 0;
  CoeffMethod method = CoeffMethod::closed_form_edge;
  CaseTag tag;
  Rational d;
  std::vector<std::string> notes;
};

struct CoeffPair {
  double plus = 0, minus = 0;
  double plus_err = 0, minus_err = 0;
};

namespace detail {

/// Rational approximation of a polynomial over K, coefficients within 2^-200.
inline QPoly approx_qpoly(const KPoly& p) {
  std::vector<Rational> c;
  Rational w = Rational(1) / Rational(Integer(1) << 200);
  for (const auto& v : p.coefficients()) c.push_back(v.is_rational() ? v.rational() : v.enclose(w).mid());
  return QPoly(std::move(c));
}

inline KPoly reflect(const KPoly& p) {
  std::vector<Number> c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return KPoly(std::move(c));
}

/// u^n p(1/u), n = deg p.
inline KPoly reverse(const KPoly& p) {
  std::vector<Number> c = p.coefficients();
  std::reverse(c.begin(), c.end());
  return KPoly(std::move(c));
}

struct Breakpoint {
  Rational at;
  int order = 0;
};

/// Integral over (0, L) of w(v) v^gamma (Q(v)^+)^(-1/d), or of |Q|^(-1/d)
/// when `absolute`. Pieces between real roots of Q are split at their
/// midpoints; each half is integrated by tanh-sinh using the exact Taylor
/// expansion of Q at the singular end, so the factor |t|^(-l/d) is evaluated
/// in closed form.
inline QuadResult power_integral(const KPoly& Q, double L, const Rational& inv_d, double gamma, bool absolute,
                                 const std::function<double(double)>& w = {}) {
  QuadResult out;
  if (Q.is_zero()) throw NonIntegrable("zero polynomial under a negative power");
  const double id = inv_d.get_d();
  QPoly Qq = approx_qpoly(Q);
  Rational Lr = from_double(L);
  Rational fine = Rational(1) / Rational(Integer(1) << 140);

  std::vector<Breakpoint> bps{{Rational(0), 0}};
  Breakpoint end{Lr, 0};
  for (auto& r : real_roots(Q)) {
    if (r.is_zero()) {
      bps.front().order = r.multiplicity;
      continue;
    }
    refine_root(r.factor, r.enc, fine);
    Rational m = r.mid();
    if (m <= 0 || m > Lr) continue;
    if (Rational(r.multiplicity) * inv_d >= 1) throw NonIntegrable("root of order " + std::to_string(r.multiplicity) + " is not integrable");
    if (m == Lr || (r.enc.lo <= Lr && r.enc.hi >= Lr)) {
      end.order = r.multiplicity;
      continue;
    }
    bps.push_back({m, r.multiplicity});
  }
  bps.push_back(end);
  if (gamma - bps.front().order * id <= -1) throw NonIntegrable("singularity at 0 is not integrable");

  struct Expansion {
    double beta;
    bool at_zero;
    int l;
    std::vector<double> q;
    double eval_q(double t) const {
      double s = 0;
      for (std::size_t i = q.size(); i-- > 0;) s = s * t + q[i];
      return s;
    }
  };
  auto expand = [&](const Breakpoint& b) {
    QPoly sh = taylor_shift(Qq, b.at);
    Expansion e{b.at.get_d(), sgn(b.at) == 0, b.order, {}};
    for (int k = b.order; k <= sh.degree(); ++k) e.q.push_back(sh.coeff(static_cast<std::size_t>(k)).get_d());
    return e;
  };
  auto value = [&](const Expansion& e, double t) {
    // t is the signed offset from the breakpoint.
    double x = e.beta + t;
    double qv = std::fabs(e.eval_q(t));
    if (qv == 0) return 0.0;
    double at = std::fabs(t);
    double v;
    if (e.at_zero) v = std::pow(at, gamma - e.l * id);
    else v = std::pow(x, gamma) * std::pow(at, -e.l * id);
    v *= std::pow(qv, -id);
    if (w) v *= w(x);
    return v;
  };

  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const Breakpoint& a = bps[i];
    const Breakpoint& b = bps[i + 1];
    if (a.at >= b.at) continue;
    Rational mid = (a.at + b.at) / 2;
    if (!absolute && sgn(Qq(mid)) <= 0) continue;
    Expansion ea = expand(a), eb = expand(b);
    double c = mid.get_d();
    double lo = a.at.get_d(), hi = b.at.get_d();
    auto left = tanh_sinh([&](double, double dl, double) { return value(ea, dl); }, lo, c);
    auto right = tanh_sinh([&](double, double, double dr) { return value(eb, -dr); }, c, hi);
    out.value += left.value + right.value;
    out.error += left.error + right.error;
  }
  return out;
}

/// Integral over the whole line of (P(y)^+)^(-1/d), |y| > 1 through y -> 1/y.
inline QuadResult line_integral(const KPoly& P, const Rational& inv_d) {
  int n = P.degree();
  double gamma = n * inv_d.get_d() - 2;
  if (gamma <= -1) throw NonIntegrable("edge polynomial degree does not exceed d");
  KPoly R = reverse(P);
  KPoly Rm = reflect(R);
  if (n % 2 != 0) Rm = -Rm;
  QuadResult s;
  for (auto part : {power_integral(P, 1.0, inv_d, 0, false), power_integral(reflect(P), 1.0, inv_d, 0, false),
                    power_integral(R, 1.0, inv_d, gamma, false), power_integral(Rm, 1.0, inv_d, gamma, false)}) {
    s.value += part.value;
    s.error += part.error;
  }
  return s;
}

inline void require_case(const Jet& S, CaseKind kind, BisectrixHit& hit, Polygon& P) {
  P = newton_polygon(S);
  hit = bisectrix(P);
  if (hit.tag.kind != kind)
    throw WrongCase(std::string("expected ") + case_name(kind) + ", got " + case_name(hit.tag.kind));
}

}  // namespace detail

/// B for S and -S in Case 1 from the bisectrix edge polynomial; S must be
/// superadapted. Linear in phi0.
inline CoeffPair edge_coefficient_case1(const Jet& S, double phi0) {
  Polygon P;
  BisectrixHit hit;
  detail::require_case(S, CaseKind::edge, hit, P);
  const Edge& e = P.edges()[hit.tag.index];
  Rational inv_d = Rational(1) / hit.d;
  double pre = phi0 / (e.m.get_d() + 1);
  CoeffPair out;
  for (int sign : {1, -1}) {
    if (sign < 0 && !S.integer_exponents()) continue;
    KPoly Pe = edge_restriction(S, edge_face(P, hit.tag.index), Variable::y, sign);
    auto pl = detail::line_integral(Pe, inv_d);
    auto mi = detail::line_integral(-Pe, inv_d);
    out.plus += pre * pl.value;
    out.minus += pre * mi.value;
    out.plus_err += std::fabs(pre) * pl.error;
    out.minus_err += std::fabs(pre) * mi.error;
  }
  return out;
}

/// B for S and -S in Case 3 (horizontal ray) from the ray coefficient a(x):
/// positive part for even d, absolute value for odd d. phi0x(x) = phi(x, 0)
/// in the coordinates of S, supported in [-support, support].
inline CoeffPair ray_coefficient_case3(const Jet& S, const std::function<double(double)>& phi0x, double support) {
  Polygon P;
  BisectrixHit hit;
  detail::require_case(S, CaseKind::ray, hit, P);
  if (hit.tag.ray != RayOrientation::horizontal) throw WrongCase("vertical ray: swap axes first");
  if (!is_integer(hit.d)) throw DomainError("ray height must be an integer");
  int d = static_cast<int>(hit.d.get_num().get_si());
  Rational inv_d = Rational(1) / hit.d;
  long n = S.ramification();
  // a(u^n) as a polynomial in u.
  std::vector<Number> c;
  for (const auto& [ex, v] : S.terms()) {
    if (ex.b != d) continue;
    Rational k = ex.a * n;
    std::size_t i = k.get_num().get_ui();
    if (c.size() <= i) c.resize(i + 1, Number(0));
    c[i] += v;
  }
  KPoly a(std::move(c));
  bool even = d % 2 == 0;
  CoeffPair out;
  auto side = [&](const KPoly& q, int xsign, bool neg) {
    std::function<double(double)> w;
    double L = support;
    double gamma = 0;
    if (n == 1) {
      w = [&, xsign](double v) { return phi0x(xsign * v); };
    } else {
      L = std::pow(support, 1.0 / static_cast<double>(n));
      gamma = static_cast<double>(n - 1);
      w = [&, n](double u) { return static_cast<double>(n) * phi0x(std::pow(u, static_cast<double>(n))); };
    }
    KPoly qq = neg ? -q : q;
    return detail::power_integral(qq, L, inv_d, gamma, !even, w);
  };
  double factor = even ? 2.0 : 1.0;
  for (bool neg : {false, true}) {
    QuadResult total;
    for (int xsign : {1, -1}) {
      if (xsign < 0 && n != 1) continue;
      auto r = side(xsign > 0 ? a : detail::reflect(a), xsign, neg);
      total.value += r.value;
      total.error += r.error;
    }
    (neg ? out.minus : out.plus) = factor * total.value;
    (neg ? out.minus_err : out.plus_err) = factor * total.error;
  }
  return out;
}

/// A from B_plus, B_minus. Cases 1 and 3 use the Gamma transfer; Case 2 the
/// same expression with an overall minus sign.
inline std::complex<double> transfer_AB(double B_plus, double B_minus, const Rational& d, const CaseTag& tag) {
  if (d <= 0) throw DomainError("d must be positive");
  double dd = d.get_d();
  double g = std::tgamma(1 / dd) / dd;
  std::complex<double> e = std::polar(1.0, std::numbers::pi / (2 * dd));
  std::complex<double> A = g * (e * B_plus + std::conj(e) * B_minus);
  return tag.kind == CaseKind::vertex ? -A : A;
}

/// Case 2 coefficient in closed form at the bisectrix vertex (d, d) with
/// coefficient s: B = phi0 kappa |s|^(-1/d) Q / d, where Q counts the
/// quadrants in which s x^d y^d > 0 and kappa = mu(m_low) - mu(m_up),
/// mu(m) = m / (1 + m), over the lines adjacent to the vertex (vertical ray
/// m = 0, horizontal ray mu = 1). Requires nonzero roots of the adjacent edge
/// polynomials to have order below d; returns nullopt otherwise.
inline std::optional<CoeffPair> vertex_coefficient_case2(const Jet& S, double phi0) {
  Polygon P;
  BisectrixHit hit;
  detail::require_case(S, CaseKind::vertex, hit, P);
  std::size_t vi = hit.tag.index;
  const auto& V = P.vertices();
  const auto& E = P.edges();
  auto mu = [](const Rational& m) { return Rational(m / (1 + m)); };
  Rational mu_up = vi > 0 ? mu(E[vi - 1].m) : Rational(0);
  Rational mu_low = vi < E.size() ? mu(E[vi].m) : Rational(1);
  for (std::size_t e : detail::bisectrix_edges(P, hit.tag))
    for (int sign : {1, -1}) {
      if (sign < 0 && !S.integer_exponents()) continue;
      if (Rational(max_nonzero_root_order(edge_restriction(S, edge_face(P, e), Variable::y, sign))) >= hit.d)
        return std::nullopt;
    }
  if (!is_integer(hit.d)) return std::nullopt;
  long dd = hit.d.get_num().get_si();
  Number s = S.coefficient(V[vi].a, static_cast<int>(dd));
  double sv = s.to_double();
  double kappa = Rational(mu_low - mu_up).get_d();
  double mag = phi0 * kappa * std::pow(std::fabs(sv), -1.0 / static_cast<double>(dd)) / static_cast<double>(dd);
  bool half = !S.integer_exponents();
  auto quadrants = [&](int sgn_s) {
    int q = 0;
    for (int sx : {1, -1})
      for (int sy : {1, -1}) {
        if (half && sx < 0) continue;
        int v = sgn_s;
        if (dd % 2 != 0) v *= sx * sy;
        q += v > 0;
      }
    return q;
  };
  int sg = sv > 0 ? 1 : -1;
  CoeffPair out;
  out.plus = mag * quadrants(sg);
  out.minus = mag * quadrants(-sg);
  out.plus_err = out.minus_err = 1e-12 * std::max(out.plus, out.minus);
  return out;
}

struct Case2Fit {
  CoeffPair B;
  FitResult fit_plus, fit_minus;
};

/// Case 2 coefficient from the oracle: I(eps) = eps^(1/d) (B |ln eps| + C) fitted
/// by least squares on sublevel samples, for S and -S.
inline Case2Fit case2_fit(const Jet& S, const Cutoff& phi, const OracleOptions& o = {}, double eps_hi = 1e-3,
                          double decades = 7, int per_decade = 2) {
  Polygon P;
  BisectrixHit hit;
  detail::require_case(S, CaseKind::vertex, hit, P);
  double delta = 1 / hit.d.get_d();
  auto grid = log_grid(eps_hi * std::pow(10.0, -decades), eps_hi, per_decade);
  Case2Fit out;
  for (bool neg : {false, true}) {
    auto sw = sublevel_sweep(neg ? -S : S, phi, grid, o);
    std::vector<double> X, V;
    for (std::size_t i = 0; i < sw.eps.size(); ++i) {
      if (sw.value[i] <= 0) continue;
      X.push_back(std::log(sw.eps[i]));
      V.push_back(sw.value[i]);
    }
    double B = 0, err = 0;
    if (V.size() >= 3) {
      auto m = detail::fixed_delta_model(X, V, delta, true, delta < 0.9);
      if (!std::isfinite(m.ssr)) throw FitUnstable("Case 2 fit failed");
      double rms = std::sqrt(m.ssr / static_cast<double>(V.size()));
      if (rms > 0.05) throw FitUnstable("Case 2 fit residual " + std::to_string(rms));
      B = m.c[0];
      // Residual scale over the log lever arm as a rough interval.
      err = rms * (std::fabs(m.c[0]) + std::fabs(m.c[1]) / -X.back()) * 2;
      FitResult fr;
      fr.delta = fr.delta0 = delta;
      fr.p = 1;
      fr.B = m.c[0];
      fr.C = m.c[1];
      if (m.c.size() > 2) fr.linear = m.c[2];
      fr.residual = rms;
      fr.window_lo = grid.front();
      fr.window_hi = grid.back();
      (neg ? out.fit_minus : out.fit_plus) = fr;
    }
    (neg ? out.B.minus : out.B.plus) = std::max(B, 0.0);
    (neg ? out.B.minus_err : out.B.plus_err) = err;
  }
  return out;
}

inline LeadingCoeff case2_coefficient(const Jet& S, const Cutoff& phi, const OracleOptions& o = {}) {
  auto f = case2_fit(S, phi, o);
  Polygon P;
  BisectrixHit hit;
  detail::require_case(S, CaseKind::vertex, hit, P);
  LeadingCoeff lc;
  lc.B_plus = f.B.plus;
  lc.B_minus = f.B.minus;
  lc.B_plus_err = f.B.plus_err;
  lc.B_minus_err = f.B.minus_err;
  lc.d = hit.d;
  lc.tag = hit.tag;
  lc.delta = Rational(1) / hit.d;
  lc.p = 1;
  lc.method = CoeffMethod::oracle_fit;
  lc.A = transfer_AB(lc.B_plus, lc.B_minus, hit.d, hit.tag);
  return lc;
}

/// phi in adapted coordinates, restricted to the x axis after an optional swap.
inline std::function<double(double)> transported_axis_cutoff(const CoordChange& coords, const Cutoff& phi, bool swapped) {
  return [coords, phi, swapped](double x) {
    auto [u, v] = swapped ? coords.to_old(0, x) : coords.to_old(x, 0);
    return phi(u, v);
  };
}

/// Half-width of the support of g on the real line, found on a grid.
inline double axis_support(const std::function<double(double)>& g, double guess) {
  double R = 0;
  const int n = 4000;
  double span = 8 * guess;
  for (int k = 1; k <= n; ++k) {
    double x = span * k / n;
    if (g(x) != 0 || g(-x) != 0) R = x;
  }
  return std::min(span, R + span / n);
}

struct CoeffOptions {
  bool prefer_oracle_case2 = false;
  OracleOptions oracle;
  std::size_t budget = 64;
};

/// Log exponent of the sublevel measure |{0 < S < eps}| ~ B eps^delta |ln eps|^p'.
/// It equals the oscillatory p except when d = 1: a Case 2 vertex always
/// carries the log, and so does a Case 1 edge whose polynomial has a nonzero
/// real root (an indefinite quadratic part).
inline int sublevel_log_power(const AnalysisResult& a) {
  if (a.d != 1) return a.type.p;
  if (a.tag.kind == CaseKind::vertex) return 1;
  if (a.tag.kind == CaseKind::edge) {
    Face face = edge_face(a.polygon, a.tag.index);
    std::vector<int> signs{1};
    if (!a.half_plane) signs.push_back(-1);
    for (int sg : signs)
      if (max_nonzero_root_order(edge_restriction(a.adapted, face, Variable::y, sg)) > 0) return 1;
  }
  return a.type.p;
}

/// Nondegenerate quadratic part with a real null direction: the sublevel
/// coefficient diverges (its measure carries a log) while J is Morse.
inline bool indefinite_morse(const AnalysisResult& a) {
  if (a.d != 1 || a.half_plane) return false;
  if (a.tag.kind == CaseKind::vertex) return true;
  return sublevel_log_power(a) == 1;
}

/// Full pipeline: superadapt, then the case formula, then the transfer to A.
inline LeadingCoeff leading_coefficient(const AnalysisResult& a, const Cutoff& phi, const CoeffOptions& opt = {}) {
  LeadingCoeff lc;
  lc.d = a.d;
  lc.tag = a.tag;
  lc.delta = a.type.delta;
  lc.p = a.type.p;
  double phi0 = phi.at_origin();
  if (indefinite_morse(a)) {
    // J ~ 2 pi phi(0) / (lambda sqrt|det H|) e^{i pi sgn H / 4}; B is infinite.
    const Jet& S = a.original;
    double A2 = S.coefficient(Rational(2), 0).to_double(), B2 = S.coefficient(Rational(1), 1).to_double(),
           C2 = S.coefficient(Rational(0), 2).to_double();
    double det = 4 * A2 * C2 - B2 * B2;
    int sig = det > 0 ? (A2 > 0 ? 2 : -2) : 0;
    lc.A = std::polar(2 * std::numbers::pi * phi0 / std::sqrt(std::fabs(det)), std::numbers::pi * sig / 4);
    lc.B_plus = lc.B_minus = std::numeric_limits<double>::infinity();
    lc.method = CoeffMethod::stationary_phase;
    lc.notes.push_back("indefinite quadratic part: J decays like 1/lambda without a log; the sublevel measure has a log");
    return lc;
  }
  switch (a.tag.kind) {
    case CaseKind::edge: {
      auto b = edge_coefficient_case1(a.adapted, phi0);
      lc.B_plus = b.plus;
      lc.B_minus = b.minus;
      lc.B_plus_err = b.plus_err;
      lc.B_minus_err = b.minus_err;
      lc.method = CoeffMethod::closed_form_edge;
      if (a.half_plane) lc.notes.push_back("ramified coordinates: only x > 0 contributes");
      break;
    }
    case CaseKind::ray: {
      bool swapped = a.tag.ray == RayOrientation::vertical;
      Jet S = swapped ? swap_axes(a.adapted) : a.adapted;
      auto g = transported_axis_cutoff(a.coords, phi, swapped);
      double R = axis_support(g, phi.r * (phi.kind == Cutoff::Kind::indicator ? std::sqrt(2.0) : 1.0));
      auto b = ray_coefficient_case3(S, g, R);
      lc.B_plus = b.plus;
      lc.B_minus = b.minus;
      lc.B_plus_err = b.plus_err;
      lc.B_minus_err = b.minus_err;
      lc.method = CoeffMethod::closed_form_ray;
      break;
    }
    case CaseKind::vertex: {
      std::optional<CoeffPair> b;
      if (!opt.prefer_oracle_case2) b = vertex_coefficient_case2(a.adapted, phi0);
      if (b) {
        lc.B_plus = b->plus;
        lc.B_minus = b->minus;
        lc.B_plus_err = b->plus_err;
        lc.B_minus_err = b->minus_err;
        lc.method = CoeffMethod::closed_form_vertex;
      } else {
        // The fit runs in original coordinates; the sublevel functional is
        // invariant under the measure preserving coordinate changes.
        auto f = case2_fit(a.original, phi, opt.oracle);
        lc.B_plus = f.B.plus;
        lc.B_minus = f.B.minus;
        lc.B_plus_err = f.B.plus_err;
        lc.B_minus_err = f.B.minus_err;
        lc.method = CoeffMethod::oracle_fit;
      }
      if (a.morse_saddle) lc.notes.push_back("d = 1 at a vertex: the oscillatory log factor may be absent");
      break;
    }
  }
  lc.A = transfer_AB(lc.B_plus, lc.B_minus, a.d, a.tag);
  return lc;
}

inline LeadingCoeff leading_coefficient(const Jet& S, const Cutoff& phi, const CoeffOptions& opt = {}) {
  return leading_coefficient(superadapt(S, opt.budget), phi, opt);
}

struct HolderSample {
  double dA = 0;
  double norm = 0;
  std::complex<double> A1, A2;
};

/// |A(S + f2) - A(S + f1)| against the norm of f2 - f1 in the adapted
/// coordinates of S.
inline HolderSample holder_check(const Jet& S, const Jet& f1, const Jet& f2, const Cutoff& phi, double r, unsigned N,
                                 const CoeffOptions& opt = {}) {
  AnalysisResult a = superadapt(S, opt.budget);
  HolderSample h;
  h.A1 = f1.is_zero() ? leading_coefficient(a, phi, opt).A : leading_coefficient(S + f1, phi, opt).A;
  h.A2 = (f2 == f1) ? h.A1 : (f2.is_zero() ? leading_coefficient(a, phi, opt).A : leading_coefficient(S + f2, phi, opt).A);
  h.dA = std::abs(h.A2 - h.A1);
  Jet diff = f2 - f1;
  h.norm = diff.is_zero() ? 0.0 : direction_norm(a, a.coords.apply(diff), r, N);
  return h;
}

struct HolderFit {
  double alpha = 0;
  double r2 = 0;
  std::size_t used = 0;
};

/// Slope of log |dA| against log ||df|| over samples with both positive.
inline HolderFit holder_fit(const std::vector<HolderSample>& samples) {
  std::vector<double> X, Y;
  for (const auto& s : samples)
    if (s.dA > 0 && s.norm > 0) {
      X.push_back(std::log(s.norm));
      Y.push_back(std::log(s.dA));
    }
  if (X.size() < 3) throw FitUnstable("need at least 3 nonzero Hoelder samples");
  auto f = detail::line_fit(X, Y);
  return {f.b1, f.r2, X.size()};
}

}  // namespace oscstab

#endif  // OSCSTAB_COEFF_HPP
