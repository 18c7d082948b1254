#ifndef OSCSTAB_ADAPT_HPP
#define OSCSTAB_ADAPT_HPP

#include <optional>
#include <string>
#include <vector>

#include <ostream>

#include "polygon.hpp"
#include "roots.hpp"

namespace oscstab {

/// Oscillatory type (-delta, p). Ordered lexicographically on (-delta, p):
/// a smaller type decays faster.
struct TypePair {
  Rational delta;
  int p = 0;

  friend bool operator==(const TypePair& x, const TypePair& y) { return x.delta == y.delta && x.p == y.p; }
  friend bool operator!=(const TypePair& x, const TypePair& y) { return !(x == y); }
  friend bool operator<(const TypePair& x, const TypePair& y) {
    if (x.delta != y.delta) return x.delta > y.delta;
    return x.p < y.p;
  }
  friend bool operator<=(const TypePair& x, const TypePair& y) { return x < y || x == y; }
  std::string str() const { return "(-" + to_string(delta) + ", " + std::to_string(p) + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const TypePair& t) { return os << t.str(); }
};

/// One coordinate change: (x, y) -> (x, y + r x^m) or (x, y) -> (y, x).
struct CoordStep {
  enum class Kind { shear, swap };
  Kind kind = Kind::shear;
  Number r;
  Rational m;
};

/// Ordered coordinate changes T1, ..., Tk. The adapted jet is S o T1 o ... o Tk,
/// so a point p in adapted coordinates corresponds to T1(T2(...Tk(p))).
class CoordChange {
public:
  void push(CoordStep s) { steps_.push_back(std::move(s)); }
  const std::vector<CoordStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  std::size_t shear_count() const {
    std::size_t n = 0;
    for (const auto& s : steps_) n += s.kind == CoordStep::Kind::shear;
    return n;
  }

  /// The jet in the new coordinates.
  Jet apply(Jet S) const {
    for (const auto& s : steps_) S = s.kind == CoordStep::Kind::swap ? swap_axes(S) : shear(S, s.r, s.m);
    return S;
  }

  /// Old coordinates of a point given in new coordinates (floating point).
  std::pair<double, double> to_old(double x, double y) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      if (it->kind == CoordStep::Kind::swap) {
        std::swap(x, y);
      } else {
        double xm = is_integer(it->m) ? std::pow(x, it->m.get_d()) : std::pow(std::max(x, 0.0), it->m.get_d());
        y += it->r.to_double() * xm;
      }
    }
    return {x, y};
  }

  /// Inverse change: maps a jet in new coordinates back to old ones.
  Jet unapply(Jet S) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
      S = it->kind == CoordStep::Kind::swap ? swap_axes(S) : shear(S, -it->r, it->m);
    return S;
  }

private:
  std::vector<CoordStep> steps_;
};

/// A nonzero root of an edge polynomial whose order is too large for the
/// current coordinates to be superadapted.
struct Offender {
  std::size_t edge = 0;
  int sign = 1;
  KRoot root;
  int order = 0;
};

struct AnalysisResult {
  Jet original;
  Jet adapted;
  CoordChange coords;
  Polygon polygon;
  Rational d;
  CaseTag tag;
  TypePair type;
  bool half_plane = false;      // fractional exponents: only x > 0 was examined
  bool morse_saddle = false;    // d = 1 in Case 2; the oscillatory log may be absent
  std::size_t iterations = 0;
};

namespace detail {

/// Edges of P touching the point where the bisectrix meets it.
inline std::vector<std::size_t> bisectrix_edges(const Polygon& P, const CaseTag& tag) {
  std::vector<std::size_t> out;
  if (tag.kind == CaseKind::edge) {
    out.push_back(tag.index);
  } else if (tag.kind == CaseKind::vertex) {
    if (tag.index > 0) out.push_back(tag.index - 1);
    if (tag.index < P.edges().size()) out.push_back(tag.index);
  }
  return out;
}

/// Is a nonzero root of this order offending? Case 1 allows orders below d
/// (order 1 when d = 1); at a bisectrix vertex orders up to d are allowed.
inline bool offends(int order, const Rational& d, CaseKind kind) {
  if (kind == CaseKind::vertex) return Rational(order) > d;
  if (d == 1 && order == 1) return false;
  return Rational(order) >= d;
}

inline std::vector<Offender> find_offenders(const Jet& S, const Polygon& P, const BisectrixHit& hit) {
  std::vector<Offender> out;
  bool both_signs = S.integer_exponents();
  for (std::size_t e : bisectrix_edges(P, hit.tag)) {
    for (int sign : {1, -1}) {
      if (sign < 0 && !both_signs) continue;
      KPoly poly = edge_restriction(S, edge_face(P, e), Variable::y, sign);
      if (poly.degree() < 1) continue;
      for (auto& r : real_roots(poly)) {
        if (r.is_zero()) continue;
        if (offends(r.multiplicity, hit.d, hit.tag.kind)) out.push_back({e, sign, r, r.multiplicity});
      }
    }
  }
  return out;
}

}  // namespace detail

/// Superadaptedness check with a witness on failure.
struct SuperadaptedCheck {
  bool ok = true;
  std::optional<Offender> witness;
  bool half_plane = false;
};

inline SuperadaptedCheck is_superadapted(const Jet& S) {
  if (!vanishes_to_second_order(S)) throw PhaseConditionError("phase does not vanish to second order");
  Polygon P = newton_polygon(S);
  BisectrixHit hit = bisectrix(P);
  auto off = detail::find_offenders(S, P, hit);
  SuperadaptedCheck c;
  c.half_plane = !S.integer_exponents();
  if (!off.empty()) {
    c.ok = false;
    c.witness = off.front();
  }
  return c;
}

inline TypePair type_from_polygon(const BisectrixHit& hit) {
  return {Rational(1) / hit.d, hit.tag.kind == CaseKind::vertex ? 1 : 0};
}

/// Repeated shears at offending roots until the coordinates are superadapted.
inline AnalysisResult superadapt(const Jet& S0, std::size_t budget = 64) {
  if (S0.is_zero()) throw EmptyJet();
  if (!vanishes_to_second_order(S0)) throw PhaseConditionError("phase does not vanish to second order");
  if (budget < 1) throw DomainError("budget must be at least 1");
  AnalysisResult res;
  res.original = S0;
  Jet S = S0;
  for (std::size_t iter = 0;; ++iter) {
    Polygon P = newton_polygon(S);
    BisectrixHit hit = bisectrix(P);
    auto off = detail::find_offenders(S, P, hit);
    if (off.empty()) {
      res.adapted = S;
      res.polygon = P;
      res.d = hit.d;
      res.tag = hit.tag;
      res.type = type_from_polygon(hit);
      res.half_plane = !S.integer_exponents();
      res.morse_saddle = hit.tag.kind == CaseKind::vertex && hit.d == 1;
      res.iterations = iter;
      return res;
    }
    if (iter >= budget) throw BudgetExceeded("superadapt did not finish within " + std::to_string(budget) + " steps");
    // Largest order first, then smallest midpoint.
    const Offender* best = &off.front();
    for (const auto& o : off) {
      if (o.order > best->order || (o.order == best->order && o.root.mid() < best->root.mid())) best = &o;
    }
    const Edge& e = P.edges()[best->edge];
    if (e.m < 1) {
      if (!S.integer_exponents()) throw DomainError("axis swap needed on a ramified jet");
      res.coords.push({CoordStep::Kind::swap, Number(0), Rational(0)});
      S = swap_axes(S);
      continue;
    }
    Number r = root_value(best->root);
    if (best->sign < 0) {
      if (!is_integer(e.m)) throw DomainError("fractional shear on the x < 0 side");
      if (e.m.get_num().get_si() % 2 != 0) r = -r;
    }
    res.coords.push({CoordStep::Kind::shear, r, e.m});
    S = shear(S, r, e.m);
  }
}

inline TypePair oscillation_type(const Jet& S, std::size_t budget = 64) { return superadapt(S, budget).type; }

struct EdgeOrderReport {
  std::size_t edge;
  Rational m, c;
  int max_order_plus = 0;   // largest nonzero-root order of g_e(1, y)
  int max_order_minus = -1;  // of g_e(-1, y); -1 when not examined
};

struct SquareSumReport {
  TypePair type;
  Rational d;
  bool vertex_case = false;
  std::vector<EdgeOrderReport> edges;
};

/// Type rule: checks the root-order hypotheses on every compact edge and
/// returns (-1/d, p) with p = 1 iff the bisectrix meets N(g) at a vertex.
inline SquareSumReport lemma32_type(const Jet& g, bool half_plane) {
  Polygon P = newton_polygon(g);
  const Point& left = P.vertices().front();
  if (!is_integer(left.a) || !is_integer(left.b)) throw HypothesesFail("leftmost vertex is not a lattice point");
  BisectrixHit hit = bisectrix(P);
  SquareSumReport rep;
  rep.d = hit.d;
  rep.vertex_case = hit.tag.kind == CaseKind::vertex;
  for (std::size_t i = 0; i < P.edges().size(); ++i) {
    const Edge& e = P.edges()[i];
    EdgeOrderReport er{i, e.m, e.c};
    er.max_order_plus = max_nonzero_root_order(edge_restriction(g, edge_face(P, i), Variable::y, 1));
    if (!half_plane && g.integer_exponents())
      er.max_order_minus = max_nonzero_root_order(edge_restriction(g, edge_face(P, i), Variable::y, -1));
    rep.edges.push_back(er);
    int worst = std::max(er.max_order_plus, er.max_order_minus);
    bool ok = rep.vertex_case ? Rational(worst) <= hit.d
                              : (worst == 0 || Rational(worst) < hit.d || (worst == 1 && hit.d == 1));
    if (!ok)
      throw HypothesesFail("edge x + " + to_string(e.m) + "y = " + to_string(e.c) + " has a root of order " +
                           std::to_string(worst));
  }
  rep.type = type_from_polygon(hit);
  return rep;
}

}  // namespace oscstab

#endif  // OSCSTAB_ADAPT_HPP
