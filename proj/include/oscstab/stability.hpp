#ifndef OSCSTAB_STABILITY_HPP
#define OSCSTAB_STABILITY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adapt.hpp"
#include "norms.hpp"

namespace oscstab {

struct DirectionVerdict {
  bool good = false;
  CaseTag tag;
  Rational d;
  std::string witness;
  // Case 2 witness slopes; m1 = nullopt stands for the horizontal line y = d.
  std::optional<Rational> m1, m2;
  TypePair generic_type;
  TypePair phase_type;
  AnalysisResult analysis;
  Jet f_adapted;
};

namespace detail {

inline void require_direction(const Jet& f) {
  if (f.is_zero()) throw EmptyJet();
  if (!vanishes_to_second_order(f)) throw PhaseConditionError("direction does not vanish to second order");
}

/// Interval of slopes m in [0, inf] for which every (a, b) satisfies
/// (a - d) + m (b - d) >= 0. Returns false when empty.
struct SlopeRange {
  Rational lo = 0;
  std::optional<Rational> hi;  // nullopt: unbounded, and m = inf admissible
  bool inf_ok = true;
  bool empty = false;
};

inline SlopeRange vertex_slopes(const Jet& f, const Rational& d) {
  SlopeRange s;
  for (const auto& [e, c] : f.terms()) {
    Rational u = e.a - d, v = Rational(e.b) - d;
    if (sgn(v) > 0) {
      Rational lb = -u / v;
      if (lb > s.lo) s.lo = lb;
    } else if (sgn(v) == 0) {
      if (sgn(u) < 0) s.empty = true;
    } else {
      s.inf_ok = false;
      if (sgn(u) < 0) {
        s.empty = true;
        continue;
      }
      Rational ub = u / (-v);
      if (!s.hi || ub < *s.hi) s.hi = ub;
    }
  }
  return s;
}

}  // namespace detail

struct GenericTypeResult {
  TypePair type;                     // from the sum of squares
  std::optional<TypePair> direct;    // from S + t f at a sample t
  Rational direct_t;
  bool agree = true;
};

/// (delta, p) where (-delta/2, p) is the type of S^2 + f^2; cross-checked
/// against the type of S + t f at a few fixed rational t.
inline GenericTypeResult generic_type(const Jet& S, const Jet& f, std::size_t budget = 64) {
  detail::require_direction(f);
  TypePair sq = oscillation_type(square_sum(S, f), budget);
  GenericTypeResult g;
  g.type = {Rational(2 * sq.delta), sq.p};
  const Rational samples[] = {Rational(7, 13), Rational(-11, 17), Rational(23, 9)};
  std::vector<TypePair> direct;
  for (const auto& t : samples) {
    try {
      Jet P = S + Number(t) * f;
      if (P.is_zero() || !vanishes_to_second_order(P)) continue;
      direct.push_back(oscillation_type(P, budget));
    } catch (const PrecisionInsufficient&) {
    } catch (const BudgetExceeded&) {
    }
  }
  // Majority of the direct samples; an exceptional t can spoil at most one.
  for (std::size_t i = 0; i < direct.size(); ++i) {
    int votes = 0;
    for (const auto& x : direct) votes += x == direct[i];
    if (2 * votes > static_cast<int>(direct.size())) {
      g.direct = direct[i];
      break;
    }
  }
  if (g.direct) g.agree = *g.direct == g.type;
  return g;
}

/// Good-direction test in the superadapted coordinates of S.
inline DirectionVerdict good_direction(const Jet& S, const Jet& f, std::size_t budget = 64) {
  detail::require_direction(f);
  DirectionVerdict v;
  v.analysis = superadapt(S, budget);
  const Jet& Sa = v.analysis.adapted;
  Jet fa = v.analysis.coords.apply(f);
  v.f_adapted = fa;
  v.tag = v.analysis.tag;
  v.d = v.analysis.d;
  v.phase_type = v.analysis.type;
  const Polygon& P = v.analysis.polygon;
  switch (v.tag.kind) {
    case CaseKind::edge: {
      const Edge& e = P.edges()[v.tag.index];
      v.good = true;
      for (const auto& [ex, c] : fa.terms())
        if (ex.a + e.m * ex.b < e.c) v.good = false;
      v.witness = "x + " + to_string(e.m) + "*y >= " + to_string(e.c);
      break;
    }
    case CaseKind::vertex: {
      // Both polygons must lie above the two lines, so slopes are cut by S and f together.
      Jet both(lcm(Sa.ramification(), fa.ramification()));
      for (const Jet* j : {&Sa, static_cast<const Jet*>(&fa)})
        for (const auto& [ex, c] : j->terms()) both.add(ex.a, ex.b, Number(1));
      auto s = detail::vertex_slopes(both, v.d);
      // Need m1 > m2 in the admissible range.
      bool ok = !s.empty && (!s.hi || s.lo < *s.hi);
      v.good = ok;
      if (ok) {
        v.m2 = s.lo;
        if (s.hi) v.m1 = *s.hi;
        else v.m1 = Rational(s.lo + 1);
        v.witness = "lines through (" + to_string(v.d) + "," + to_string(v.d) + ") with m1 = " + to_string(*v.m1) +
                    ", m2 = " + to_string(*v.m2);
      } else {
        v.witness = "no pair of lines through the vertex";
      }
      break;
    }
    case CaseKind::ray: {
      bool horizontal = v.tag.ray == RayOrientation::horizontal;
      v.good = true;
      for (const auto& [ex, c] : fa.terms()) {
        Rational coord = horizontal ? Rational(ex.b) : ex.a;
        if (coord < v.d) v.good = false;
      }
      v.witness = std::string(horizontal ? "y" : "x") + " >= " + to_string(v.d);
      break;
    }
  }
  v.generic_type = v.good ? v.phase_type : generic_type(Sa, fa, budget).type;
  return v;
}

struct PencilReport {
  Polygon common_polygon;  // in adapted coordinates of S
  Rational d;
  ExceptionalSet exceptional;
  TypePair generic_type;
  std::vector<CoordStep> iterations;
  std::vector<std::string> notes;
  CoordChange coords;
};

namespace detail {

struct PencilSearch {
  std::size_t budget;
  std::size_t steps = 0;
  ExceptionalSet* out;
  std::vector<CoordStep>* iterations;

  static RealAlgebraic as_algebraic(const Number& t) { return t.to_algebraic(); }

  void vertex_cancellations(const Jet& g, const Jet& h, const Polygon& N) {
    for (const auto& v : N.vertices()) {
      Number gv = g.coefficient(v.a, static_cast<int>(v.b.get_num().get_si()));
      Number hv = h.coefficient(v.a, static_cast<int>(v.b.get_num().get_si()));
      if (gv.is_zero() || hv.is_zero()) continue;
      out->insert({as_algebraic(-gv / hv), "vertex-cancellation", false});
    }
  }

  void run(Jet g, Jet h) {
    for (;;) {
      Polygon N = newton_polygon(g, h);
      BisectrixHit hit = bisectrix(N);
      vertex_cancellations(g, h, N);
      std::optional<Offender> generic;
      for (std::size_t ei : bisectrix_edges(N, hit.tag)) {
        Face face = edge_face(N, ei);
        KPoly p = edge_restriction(g, face), q = edge_restriction(h, face);
        if (!p.is_zero() && !q.is_zero() && all_rational(p) && all_rational(q)) {
          PencilOrderResult l = lemma31_exceptional(to_qpoly(p), to_qpoly(q));
          out->merge(l.I);
        }
        // A root shared by every member of the pencil (all of q when p = 0).
        KPoly common = p.is_zero() ? q : (q.is_zero() ? p : gcd(p, q));
        if (common.degree() < 1) continue;
        for (auto& r : real_roots(common)) {
          if (r.is_zero() || !offends(r.multiplicity, hit.d, hit.tag.kind)) continue;
          if (!generic || r.multiplicity > generic->order ||
              (r.multiplicity == generic->order && r.mid() < generic->root.mid()))
            generic = Offender{ei, 1, r, r.multiplicity};
        }
      }
      if (!generic) return;
      if (++steps > budget) throw BudgetExceeded("pencil search exceeded its budget");
      const Edge& e = N.edges()[generic->edge];
      if (e.m < 1) {
        if (!g.integer_exponents() || !h.integer_exponents()) throw DomainError("axis swap needed on a ramified jet");
        g = swap_axes(g);
        h = swap_axes(h);
        iterations->push_back({CoordStep::Kind::swap, Number(0), Rational(0)});
        continue;
      }
      Number r = root_value(generic->root);
      g = shear(g, r, e.m);
      h = shear(h, r, e.m);
      iterations->push_back({CoordStep::Kind::shear, r, e.m});
    }
  }
};

}  // namespace detail

/// Exceptional parameters of the pencil S + t f, each confirmed by recomputing
/// the type of S + t f when possible.
inline PencilReport exceptional_set(const Jet& S, const Jet& f, std::size_t budget = 64) {
  DirectionVerdict v = good_direction(S, f, budget);
  PencilReport rep;
  rep.coords = v.analysis.coords;
  const Jet& g = v.analysis.adapted;
  const Jet& h = v.f_adapted;
  rep.common_polygon = newton_polygon(g, h);
  rep.d = newton_distance(rep.common_polygon);
  rep.generic_type = v.generic_type;
  ExceptionalSet cand;
  detail::PencilSearch search{budget, 0, &cand, &rep.iterations};
  search.run(g, h);
  if (g.integer_exponents() && h.integer_exponents()) {
    detail::PencilSearch left{budget, 0, &cand, &rep.iterations};
    left.run(reflect_x(g), reflect_x(h));
  } else {
    rep.notes.push_back("ramified coordinates: only the x > 0 half-plane was searched");
  }
  if (!v.good) cand.insert({RealAlgebraic(Rational(0)), "base-phase", true});
  for (auto& e : cand.values()) {
    if (e.reason == "base-phase") {
      rep.exceptional.insert(e);
      continue;
    }
    ExceptionalValue out = e;
    try {
      Jet P = g + Number::generator(e.t) * h;
      out.confirmed = P.is_zero() || oscillation_type(P, budget) != rep.generic_type;
    } catch (const PrecisionInsufficient&) {
      out.confirmed = false;
      rep.notes.push_back("type at t = " + e.t.str() + " not recomputed (nested extension)");
    } catch (const BudgetExceeded&) {
      out.confirmed = false;
    }
    rep.exceptional.insert(out);
  }
  return rep;
}

struct EdgeHypothesis {
  std::size_t edge;
  Rational m, c;
  int value;         // sup over nonzero y of min(ord g^e(1,y), ord h^e(1,y))
  bool strict;       // value < d(N)
  bool non_strict;   // value <= d(N)
};

struct EdgeHypothesesReport {
  Polygon N;
  Rational d;
  bool vertex_on_bisectrix = false;
  std::vector<EdgeHypothesis> edges;
  bool a_holds = true;  // strict bound on every edge, bisectrix not at a vertex
  bool b_holds = true;  // non-strict bound on every edge, bisectrix at a vertex
};

inline EdgeHypothesesReport lemma33_check(const Jet& g, const Jet& h) {
  EdgeHypothesesReport rep;
  rep.N = newton_polygon(g, h);
  BisectrixHit hit = bisectrix(rep.N);
  rep.d = hit.d;
  rep.vertex_on_bisectrix = hit.tag.kind == CaseKind::vertex;
  for (std::size_t i = 0; i < rep.N.edges().size(); ++i) {
    Face face = edge_face(rep.N, i);
    KPoly p = edge_restriction(g, face), q = edge_restriction(h, face);
    int value;
    if (p.is_zero()) value = max_nonzero_root_order(q);
    else if (q.is_zero()) value = max_nonzero_root_order(p);
    else value = min_order_sup(p, q);
    EdgeHypothesis eh{i, rep.N.edges()[i].m, rep.N.edges()[i].c, value, Rational(value) < rep.d,
                      Rational(value) <= rep.d};
    rep.a_holds = rep.a_holds && eh.strict;
    rep.b_holds = rep.b_holds && eh.non_strict;
    rep.edges.push_back(eh);
  }
  if (rep.vertex_on_bisectrix) rep.a_holds = false;
  else rep.b_holds = false;
  return rep;
}

/// Norm appropriate to the case of adapted S: |.|_{r,N} in Cases 1 and 2, the
/// ray norm in Case 3.
inline double direction_norm(const AnalysisResult& a, const Jet& f_adapted, double r, unsigned N) {
  if (a.tag.kind != CaseKind::ray) return cnorm(f_adapted, r, N);
  int d = static_cast<int>(a.d.get_num().get_si());
  if (a.tag.ray == RayOrientation::horizontal) return ray_norm(f_adapted, r, N, d);
  return ray_norm(swap_axes(f_adapted), r, N, d);
}

namespace detail {

/// Integer in [0, n) from a raw 64-bit draw (multiply-shift, no library mapping).
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace detail

/// Deterministic random good directions of S, scaled to norm below eta.
/// Directions are returned in the original coordinates of S.
inline std::vector<Jet> sample_good_directions(const Jet& S, std::size_t count, double eta, double r, unsigned N,
                                               std::uint64_t seed) {
  std::vector<Jet> out;
  if (count == 0) return out;
  AnalysisResult a = superadapt(S);
  std::mt19937_64 rng(seed);
  long dceil = ceil_of(a.d).get_si();
  long box = std::max<long>(dceil + 3, 4);
  auto admissible = [&](long i, long j) {
    if (i + j < 2) return false;
    Rational A(i), B(j);
    switch (a.tag.kind) {
      case CaseKind::edge: {
        const Edge& e = a.polygon.edges()[a.tag.index];
        return A + e.m * B >= e.c;
      }
      case CaseKind::vertex:
        return A >= a.d && B >= a.d;
      case CaseKind::ray:
        return a.tag.ray == RayOrientation::horizontal ? B >= a.d : A >= a.d;
    }
    return false;
  };
  std::vector<std::pair<long, long>> lattice;
  for (long i = 0; i <= box; ++i)
    for (long j = 0; j <= box; ++j)
      if (admissible(i, j)) lattice.emplace_back(i, j);
  while (out.size() < count) {
    Jet fa;
    std::size_t nterms = 1 + detail::draw(rng, 3);
    for (std::size_t k = 0; k < nterms; ++k) {
      auto [i, j] = lattice[detail::draw(rng, lattice.size())];
      long num = static_cast<long>(detail::draw(rng, 33)) - 16;
      if (num == 0) num = 1;
      fa.add(Rational(i), static_cast<int>(j), Number(make_rational(num, 16)));
    }
    if (fa.is_zero()) continue;
    double n = direction_norm(a, fa, r, N);
    if (n <= 0) continue;
    // Norm halfway to eta; the double factor is an exact dyadic rational.
    Jet scaled = Number(from_double(0.5 * eta / n)) * fa;
    out.push_back(a.coords.unapply(scaled));
  }
  return out;
}

}  // namespace oscstab

#endif  // OSCSTAB_STABILITY_HPP
