#ifndef OSCSTAB_ORACLE_HPP
#define OSCSTAB_ORACLE_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "norms.hpp"
#include "quadrature.hpp"

namespace oscstab {

struct OracleOptions {
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  double target_rel_stderr = 1e-3;  // sublevel: stop refining below this
  std::size_t max_strata = 6000;
  int points = 8;       // per stratum and replicate
  int replicates = 4;   // independent random shifts
  int levels = 34;      // geometric strata toward x = 0
  int max_grid = 12000;  // oscillatory: largest points per axis
  double rel_change = 1e-6;
};

namespace detail {

/// Runs f(i) for i in [0, n) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  unsigned t = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += t) f(i);
    });
  for (auto& th : pool) th.join();
}

inline std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Coefficients A_j(x) of S(x, y) = sum_j A_j(x) y^j.
inline DPoly y_poly(const std::vector<NumericTerm>& terms, int max_b, double x) {
  DPoly p;
  p.c.assign(static_cast<std::size_t>(max_b + 1), 0.0);
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(max_b + 1));
  for (const auto& t : terms) acc[static_cast<std::size_t>(t.b)].add(t.c * xpow(t, x));
  for (std::size_t j = 0; j < acc.size(); ++j) p.c[j] = acc[j].value();
  return p;
}

/// Preimage of the open interval (lo, hi) under a monotone piece of p on [a, b].
inline std::pair<double, double> monotone_preimage(const DPoly& p, double a, double b, double lo, double hi) {
  double va = p(a), vb = p(b);
  bool inc = vb >= va;
  double vmin = std::min(va, vb), vmax = std::max(va, vb);
  if (vmax <= lo || vmin >= hi) return {0, 0};
  auto solve = [&](double level) {
    auto g = [&](double y) { return p(y) - level; };
    return bisect(g, a, b, va - level);
  };
  double y_lo = vmin >= lo ? (inc ? a : b) : solve(lo);
  double y_hi = vmax <= hi ? (inc ? b : a) : solve(hi);
  if (y_lo > y_hi) std::swap(y_lo, y_hi);
  return {y_lo, y_hi};
}

/// Cutoff-weighted measure of {y in [ylo, yhi] : lo < S(x, y) < hi}.
template <class W>
double slice(const DPoly& p, double ylo, double yhi, double lo, double hi, W&& weight, const GaussLegendre* gl) {
  if (yhi <= ylo) return 0;
  std::vector<double> cuts{ylo};
  if (p.degree() >= 2)
    for (double r : real_roots_in(p.derivative(), ylo, yhi)) cuts.push_back(r);
  cuts.push_back(yhi);
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    auto [a, b] = monotone_preimage(p, cuts[i], cuts[i + 1], lo, hi);
    if (b <= a) continue;
    total += gl ? gl->integrate(weight, a, b) : (b - a);
  }
  return total;
}

/// Shared driver: stratified, randomly shifted midpoint sampling in x of an
/// exactly computed slice function G(x).
struct StratifiedResult {
  double value = 0;
  double stderr_ = 0;
  std::size_t strata = 0;
};

template <class G>
StratifiedResult stratified_x(G&& slice_fn, double x0, double x1, bool graded_at_zero, const OracleOptions& o) {
  struct Stratum {
    double a, b;
    std::uint64_t key;
    double mean = 0, var = 0;
  };
  auto evaluate = [&](Stratum& s) {
    std::mt19937_64 rng(splitmix(o.seed ^ splitmix(s.key)));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> est(static_cast<std::size_t>(o.replicates));
    double h = (s.b - s.a) / o.points;
    for (auto& e : est) {
      double u = U(rng);
      CompensatedSum sum;
      for (int k = 0; k < o.points; ++k) sum.add(slice_fn(s.a + (k + u) * h));
      e = sum.value() * h;
    }
    double m = std::accumulate(est.begin(), est.end(), 0.0) / static_cast<double>(est.size());
    double v = 0;
    for (double e : est) v += (e - m) * (e - m);
    s.mean = m;
    s.var = est.size() > 1 ? v / static_cast<double>(est.size() - 1) / static_cast<double>(est.size()) : 0;
  };

  std::vector<Stratum> strata;
  auto add_side = [&](double lo, double hi, std::uint64_t side) {
    if (hi <= lo) return;
    if (!graded_at_zero) {
      for (int k = 0; k < 16; ++k)
        strata.push_back({lo + (hi - lo) * k / 16, lo + (hi - lo) * (k + 1) / 16, side * 1000 + static_cast<std::uint64_t>(k)});
      return;
    }
    // Geometric toward the end that touches x = 0.
    bool zero_at_lo = lo == 0;
    double len = hi - lo;
    double prev = len;
    for (int k = 1; k <= o.levels; ++k) {
      double cur = len * std::ldexp(1.0, -k);
      double a = zero_at_lo ? lo + cur : hi - prev;
      double b = zero_at_lo ? lo + prev : hi - cur;
      strata.push_back({a, b, side * 1000 + static_cast<std::uint64_t>(k)});
      prev = cur;
    }
    strata.push_back(zero_at_lo ? Stratum{lo, lo + prev, side * 1000}
                                : Stratum{hi - prev, hi, side * 1000});
  };
  if (graded_at_zero && x0 < 0 && x1 > 0) {
    add_side(x0, 0, 1);
    add_side(0, x1, 2);
  } else {
    add_side(x0, x1, 3);
  }
  parallel_for(strata.size(), o.threads, [&](std::size_t i) { evaluate(strata[i]); });

  for (;;) {
    double total = 0, var = 0;
    for (const auto& s : strata) {
      total += s.mean;
      var += s.var;
    }
    if (std::sqrt(var) <= o.target_rel_stderr * std::fabs(total) || total == 0 || strata.size() >= o.max_strata)
      return {total, std::sqrt(var), strata.size()};
    // Split the strata carrying the largest variance.
    std::vector<std::size_t> idx(strata.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
      return strata[i].var > strata[j].var || (strata[i].var == strata[j].var && i < j);
    });
    std::size_t nsplit = std::max<std::size_t>(1, strata.size() / 8);
    std::vector<Stratum> fresh;
    std::vector<bool> drop(strata.size(), false);
    for (std::size_t k = 0; k < nsplit && k < idx.size(); ++k) {
      const Stratum& s = strata[idx[k]];
      if (s.var == 0) break;
      drop[idx[k]] = true;
      for (int c = 0; c < 4; ++c)
        fresh.push_back({s.a + (s.b - s.a) * c / 4, s.a + (s.b - s.a) * (c + 1) / 4,
                         splitmix(s.key * 4 + static_cast<std::uint64_t>(c) + 1)});
    }
    if (fresh.empty()) return {total, std::sqrt(var), strata.size()};
    parallel_for(fresh.size(), o.threads, [&](std::size_t i) { evaluate(fresh[i]); });
    std::vector<Stratum> next;
    for (std::size_t i = 0; i < strata.size(); ++i)
      if (!drop[i]) next.push_back(strata[i]);
    for (auto& f : fresh) next.push_back(f);
    // Keep a fixed order so the reduction does not depend on the split history layout.
    std::sort(next.begin(), next.end(), [](const Stratum& p, const Stratum& q) { return p.a < q.a; });
    strata = std::move(next);
  }
}

inline const GaussLegendre& gauss16() {
  static const GaussLegendre gl(16);
  return gl;
}

}  // namespace detail

struct SublevelValue {
  double value = 0;
  double stderr_ = 0;
  std::size_t strata = 0;
};

/// Integral of the cutoff over {0 < S < eps}.
inline SublevelValue sublevel_integral(const Jet& S, const Cutoff& phi, double eps, const OracleOptions& o = {}) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  auto terms = S.numeric();
  int mb = S.max_b();
  bool half = !S.integer_exponents();
  double r = phi.r;
  auto fn = [&](double x) {
    DPoly p = detail::y_poly(terms, mb, x);
    if (phi.kind == Cutoff::Kind::indicator)
      return phi.scale * detail::slice(p, -r, r, 0.0, eps, [](double) { return 1.0; }, nullptr);
    double h = r * r - x * x;
    if (h <= 0) return 0.0;
    double yr = std::sqrt(h);
    auto w = [&](double y) { return phi(x, y); };
    return detail::slice(p, -yr, yr, 0.0, eps, w, &detail::gauss16());
  };
  auto res = detail::stratified_x(fn, half ? 0.0 : -r, r, true, o);
  return {res.value, res.stderr_, res.strata};
}

/// Plain measure of {|S| < eps} in the disk of radius r, or its x > 0 half.
inline SublevelValue sublevel_measure(const Jet& S, double r, double eps, bool half_plane, const OracleOptions& o = {}) {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  auto terms = S.numeric();
  int mb = S.max_b();
  half_plane = half_plane || !S.integer_exponents();
  auto fn = [&](double x) {
    double h = r * r - x * x;
    if (h <= 0) return 0.0;
    double yr = std::sqrt(h);
    return detail::slice(detail::y_poly(terms, mb, x), -yr, yr, -eps, eps, [](double) { return 1.0; }, nullptr);
  };
  auto res = detail::stratified_x(fn, half_plane ? 0.0 : -r, r, true, o);
  return {res.value, res.stderr_, res.strata};
}

/// Upper bound for sup |grad S| on the cutoff support.
inline double gradient_bound(const Jet& S, const Cutoff& phi) {
  double R = phi.kind == Cutoff::Kind::indicator ? phi.r * std::sqrt(2.0) : phi.r;
  if (!S.integer_exponents()) {
    // Crude coefficient bound for ramified jets.
    double g = 0;
    for (const auto& t : S.numeric())
      g += std::fabs(t.c) * (t.a + t.b) * std::pow(R, std::max(0.0, t.a + t.b - 1));
    return g;
  }
  Jet sx = partial(S, 1, 0), sy = partial(S, 0, 1);
  double gx = sx.is_zero() ? 0 : detail::disk_sup(sx, R, 1e-3, 20000);
  double gy = sy.is_zero() ? 0 : detail::disk_sup(sy, R, 1e-3, 20000);
  return std::hypot(gx, gy) * 1.01;
}

/// J(lambda) = integral of exp(i lambda S) phi by the tensor trapezoid rule,
/// doubling the grid until the relative change is below o.rel_change.
inline std::complex<double> oscillatory_integral(const Jet& S, const Cutoff& phi, double lambda,
                                                 const OracleOptions& o = {}) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  auto terms = S.numeric();
  int mb = S.max_b();
  bool half = !S.integer_exponents();
  double r = phi.r;
  double G = std::max(gradient_bound(S, phi), 1e-12);
  double h0 = 2 * std::numbers::pi / (lambda * G * 12);
  long n = std::max<long>(64, static_cast<long>(std::ceil(2 * r / h0)));
  if (n > o.max_grid) throw Unresolved("lambda " + std::to_string(lambda) + " needs " + std::to_string(n) + " points per axis");

  // Sum over grid points (i, j) of spacing 2r/n, selecting either all points
  // or only those with an odd index (the ones new at this level).
  auto level_sum = [&](long N, bool only_new) {
    double h = 2 * r / static_cast<double>(N);
    std::vector<std::complex<double>> rows(static_cast<std::size_t>(N + 1));
    detail::parallel_for(static_cast<std::size_t>(N + 1), o.threads, [&](std::size_t ii) {
      long i = static_cast<long>(ii);
      double x = -r + h * static_cast<double>(i);
      if (half && x < 0) return;
      DPoly p = detail::y_poly(terms, mb, x);
      double s_re = 0, s_im = 0;
      for (long j = 0; j <= N; ++j) {
        if (only_new && i % 2 == 0 && j % 2 == 0) continue;
        double y = -r + h * static_cast<double>(j);
        double w = phi(x, y);
        if (w == 0) continue;
        double ph = lambda * p(y);
        s_re += w * std::cos(ph);
        s_im += w * std::sin(ph);
      }
      rows[ii] = {s_re, s_im};
    });
    std::complex<double> s = 0;
    for (auto& v : rows) s += v;
    return s;
  };
  std::complex<double> sum = level_sum(n, false);
  double h = 2 * r / static_cast<double>(n);
  std::complex<double> prev = sum * h * h;
  for (;;) {
    long n2 = 2 * n;
    if (n2 > o.max_grid) throw Unresolved("lambda " + std::to_string(lambda) + " not converged at the grid limit");
    sum += level_sum(n2, true);
    n = n2;
    h = 2 * r / static_cast<double>(n);
    std::complex<double> cur = sum * h * h;
    if (std::abs(cur - prev) <= o.rel_change * std::abs(cur)) return cur;
    prev = cur;
  }
}

enum class FitModel { sublevel, oscillatory };

struct FitResult {
  double delta = 0;
  int p = 0;
  double B = 0;
  double C = 0;       // constant companion of the log term
  double linear = 0;  // coefficient of the regular eps term (sublevel)
  double delta0 = 0;  // exponent of the best model without a log
  double residual = 0;
  double ssr0 = 0, ssr1 = 0;
  double window_lo = 0, window_hi = 0;
};

namespace detail {

struct LineFit {
  double b0 = 0, b1 = 0, ssr = 0, r2 = 0;
};

inline LineFit line_fit(const std::vector<double>& X, const std::vector<double>& Y) {
  double n = static_cast<double>(X.size());
  double mx = std::accumulate(X.begin(), X.end(), 0.0) / n, my = std::accumulate(Y.begin(), Y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  LineFit f;
  f.b1 = sxx > 0 ? sxy / sxx : 0;
  f.b0 = my - f.b1 * mx;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double e = Y[i] - f.b0 - f.b1 * X[i];
    f.ssr += e * e;
  }
  f.r2 = syy > 0 ? 1 - f.ssr / syy : 1;
  return f;
}

/// Least squares for v ~ sum_k c_k basis_k with relative residuals; small
/// dense normal equations solved by partial pivoting.
struct LinearModel {
  std::vector<double> c;
  double ssr = INFINITY;
};

inline LinearModel relative_lsq(const std::vector<std::vector<double>>& basis, const std::vector<double>& v) {
  std::size_t k = basis.size(), n = v.size();
  std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1 / (v[i] * v[i]);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) A[a][b] += w * basis[a][i] * basis[b][i];
      A[a][k] += w * basis[a][i] * v[i];
    }
  }
  LinearModel m;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    if (A[piv][col] == 0) return m;
    std::swap(A[col], A[piv]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c <= k; ++c) A[r][c] -= f * A[col][c];
    }
  }
  m.c.resize(k);
  for (std::size_t a = 0; a < k; ++a) m.c[a] = A[a][k] / A[a][a];
  m.ssr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double model = 0;
    for (std::size_t a = 0; a < k; ++a) model += m.c[a] * basis[a][i];
    if (!(model > 0)) {
      m.ssr = INFINITY;
      return m;
    }
    double e = std::log(v[i] / model);
    m.ssr += e * e;
  }
  return m;
}

/// Model family at a fixed exponent. X is the signed log scale (ln eps or
/// -ln lambda), L = -X.
inline LinearModel fixed_delta_model(const std::vector<double>& X, const std::vector<double>& V, double delta,
                                     bool with_log, bool with_linear) {
  std::vector<std::vector<double>> basis;
  std::vector<double> pw(X.size()), lg(X.size()), ln(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    pw[i] = std::exp(delta * X[i]);
    lg[i] = pw[i] * -X[i];
    ln[i] = std::exp(X[i]);
  }
  if (with_log) basis.push_back(lg);
  basis.push_back(pw);
  if (with_linear) basis.push_back(ln);
  return relative_lsq(basis, V);
}

struct ScanFit {
  double delta = 0;
  LinearModel m;
};

/// Minimizes the log residual over the exponent: grid scan, then golden section.
template <class M>
ScanFit scan_delta(M&& model_at, double lo, double hi) {
  ScanFit best{lo, model_at(lo)};
  const int n = 600;
  for (int k = 1; k <= n; ++k) {
    double d = lo + (hi - lo) * k / n;
    auto m = model_at(d);
    if (m.ssr < best.m.ssr) best = {d, m};
  }
  double a = std::max(lo, best.delta - (hi - lo) / n), b = std::min(hi, best.delta + (hi - lo) / n);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 80; ++it) {
    double c = b - g * (b - a), e = a + g * (b - a);
    if (model_at(c).ssr < model_at(e).ssr) b = e;
    else a = c;
  }
  double d = 0.5 * (a + b);
  auto m = model_at(d);
  if (m.ssr < best.m.ssr) best = {d, m};
  return best;
}

}  // namespace detail

/// Fits value ~ B eps^delta |ln eps|^p (sublevel) or B lambda^-delta (ln lambda)^p
/// (oscillatory) on the asymptotic two thirds of the samples. Both sublevel
/// models carry a regular term proportional to eps, the contribution of the
/// part of the level set where the gradient does not vanish; it is dropped
/// for delta near 1, where it would imitate a log factor. The log model also
/// carries a constant companion C: eps^delta (B |ln eps| + C). p = 1 when the
/// log model halves the summed squared log residual and the model without a
/// log misfits by more than `noise_floor` rms.
inline FitResult fit_type(std::vector<std::pair<double, double>> samples, FitModel model, double noise_floor = 3e-3) {
  if (samples.size() < 6) throw FitUnstable("need at least 6 samples");
  for (const auto& [s, v] : samples)
    if (!(s > 0) || !(v > 0)) throw FitUnstable("samples must be positive");
  auto toX = [&](double s) { return model == FitModel::sublevel ? std::log(s) : -std::log(s); };
  std::sort(samples.begin(), samples.end(), [&](auto& a, auto& b) { return toX(a.first) < toX(b.first); });
  double span = std::fabs(toX(samples.back().first) - toX(samples.front().first)) / std::log(10.0);
  if (span < 3 - 1e-9) throw FitUnstable("samples span fewer than 3 decades");
  if (toX(samples.back().first) >= 0) throw FitUnstable("scales must lie in the asymptotic range (eps < 1, lambda > 1)");
  std::size_t keep = samples.size() - samples.size() / 3;
  samples.resize(keep);

  std::vector<double> X, V;
  for (const auto& [s, v] : samples) {
    X.push_back(toX(s));
    V.push_back(v);
  }
  FitResult f;
  f.window_lo = std::min(samples.front().first, samples.back().first);
  f.window_hi = std::max(samples.front().first, samples.back().first);

  bool sub = model == FitModel::sublevel;
  auto linear_ok = [&](double d) { return sub && d < 0.9; };
  // The leading term must be positive and dominate the regular term at the
  // most asymptotic sample.
  auto admissible = [&](detail::LinearModel& m, double d, bool with_log) {
    if (m.c.empty() || m.c[0] <= 0) {
      m.ssr = INFINITY;
      return;
    }
    double x = X.front();
    double lead = std::exp(d * x) * (with_log ? m.c[0] * -x + m.c[1] : m.c[0]);
    double reg = linear_ok(d) ? std::fabs(m.c.back()) * std::exp(x) : 0.0;
    if (!(lead > 2 * reg)) m.ssr = INFINITY;
  };
  auto m0_at = [&](double d) {
    auto m = detail::fixed_delta_model(X, V, d, false, linear_ok(d));
    admissible(m, d, false);
    return m;
  };
  auto m1_at = [&](double d) {
    auto m = detail::fixed_delta_model(X, V, d, true, linear_ok(d));
    admissible(m, d, true);
    return m;
  };
  double lo = 0.02, hi = sub ? 1.2 : 2.0;
  auto s0 = detail::scan_delta(m0_at, lo, hi);
  auto s1 = detail::scan_delta(m1_at, lo, hi);
  f.ssr0 = s0.m.ssr;
  f.ssr1 = s1.m.ssr;
  f.delta0 = s0.delta;
  double n = static_cast<double>(X.size());
  double floor = n * noise_floor * noise_floor;
  bool use_log = std::isfinite(s1.m.ssr) && s1.m.ssr < f.ssr0 / 2 && f.ssr0 > floor;
  if (use_log) {
    f.p = 1;
    f.delta = s1.delta;
    f.B = s1.m.c[0];
    f.C = s1.m.c[1];
    if (s1.m.c.size() > 2) f.linear = s1.m.c[2];
    f.residual = std::sqrt(s1.m.ssr / n);
  } else {
    if (!std::isfinite(s0.m.ssr)) throw FitUnstable("no admissible power model");
    f.p = 0;
    f.delta = s0.delta;
    f.B = s0.m.c[0];
    if (s0.m.c.size() > 1) f.linear = s0.m.c[1];
    f.residual = std::sqrt(s0.m.ssr / n);
  }
  if (!std::isfinite(f.delta) || !std::isfinite(f.B) || f.residual > 0.25)
    throw FitUnstable("fit residual " + std::to_string(f.residual) + " too large");
  return f;
}

/// Log-spaced grid from lo to hi (inclusive) with `per_decade` points per decade.
inline std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> g;
  double decades = std::log10(hi / lo);
  int n = std::max(1, static_cast<int>(std::lround(decades * per_decade)));
  for (int k = 0; k <= n; ++k) g.push_back(lo * std::pow(10.0, decades * k / n));
  return g;
}

struct SublevelSweep {
  std::vector<double> eps, value, stderr_;
  std::vector<std::pair<double, double>> samples() const {
    std::vector<std::pair<double, double>> s;
    for (std::size_t i = 0; i < eps.size(); ++i)
      if (value[i] > 0) s.emplace_back(eps[i], value[i]);
    return s;
  }
};

inline SublevelSweep sublevel_sweep(const Jet& S, const Cutoff& phi, const std::vector<double>& eps,
                                    const OracleOptions& o = {}) {
  SublevelSweep sw;
  for (double e : eps) {
    auto v = sublevel_integral(S, phi, e, o);
    sw.eps.push_back(e);
    sw.value.push_back(v.value);
    sw.stderr_.push_back(v.stderr_);
  }
  return sw;
}

/// Sublevel fit of S with the default eps window 1e-2 .. 1e-8.
inline FitResult sublevel_fit(const Jet& S, const Cutoff& phi, const OracleOptions& o = {}, double eps_hi = 1e-2,
                              double decades = 6, int per_decade = 2) {
  auto sw = sublevel_sweep(S, phi, log_grid(eps_hi * std::pow(10.0, -decades), eps_hi, per_decade), o);
  return fit_type(sw.samples(), FitModel::sublevel);
}

struct ScanEntry {
  std::size_t direction = 0;
  double sup_ratio = 0;
  std::vector<double> ratios;
  std::vector<std::string> unresolved;
};

struct ScanReport {
  std::vector<double> lambdas;
  double baseline = 0;   // plateau of the unperturbed phase
  double overall = 0;    // sup over all directions
  std::vector<ScanEntry> entries;
  bool bounded(double factor) const { return overall <= factor * baseline; }
};

/// |J_{S+f}(lambda)| lambda^delta / (ln lambda)^p over a lambda grid for each f.
inline ScanReport uniformity_scan(const Jet& S, const std::vector<Jet>& directions, const std::vector<double>& lambdas,
                                  const Cutoff& phi, double delta, int p, const OracleOptions& o = {}) {
  ScanReport rep;
  rep.lambdas = lambdas;
  auto ratios_for = [&](const Jet& phase, ScanEntry& e) {
    for (double lam : lambdas) {
      try {
        double v = std::abs(oscillatory_integral(phase, phi, lam, o)) * std::pow(lam, delta) / std::pow(std::log(lam), p);
        e.ratios.push_back(v);
        e.sup_ratio = std::max(e.sup_ratio, v);
      } catch (const Unresolved& u) {
        e.ratios.push_back(NAN);
        e.unresolved.push_back(u.what());
      }
    }
  };
  ScanEntry base;
  ratios_for(S, base);
  rep.baseline = base.sup_ratio;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    ScanEntry e;
    e.direction = i;
    ratios_for(S + directions[i], e);
    rep.overall = std::max(rep.overall, e.sup_ratio);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

/// CSV side files for plotting.
inline void write_oscillatory_csv(std::ostream& os, const std::vector<double>& lambdas,
                                  const std::vector<std::complex<double>>& J) {
  os << "lambda,re,im,abs\n";
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    os << lambdas[i] << ',' << J[i].real() << ',' << J[i].imag() << ',' << std::abs(J[i]) << '\n';
}

inline void write_sublevel_csv(std::ostream& os, const SublevelSweep& sw) {
  os << "eps,I,stderr\n";
  for (std::size_t i = 0; i < sw.eps.size(); ++i) os << sw.eps[i] << ',' << sw.value[i] << ',' << sw.stderr_[i] << '\n';
}

}  // namespace oscstab

#endif  // OSCSTAB_ORACLE_HPP
