#ifndef OSCSTAB_POLYGON_HPP
#define OSCSTAB_POLYGON_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "jet.hpp"

namespace oscstab {

struct Point {
  Rational a, b;
  friend bool operator==(const Point& p, const Point& q) { return p.a == q.a && p.b == q.b; }
  friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
};

/// Compact edge on the line x + m y = c, from the upper-left endpoint to the
/// lower-right one.
struct Edge {
  Point upper, lower;
  Rational m, c;
};

enum class CaseKind { edge = 1, vertex = 2, ray = 3 };
enum class RayOrientation { horizontal, vertical };

struct CaseTag {
  CaseKind kind = CaseKind::edge;
  std::size_t index = 0;  // edge index (Case 1) or vertex index (Case 2, Case 3)
  RayOrientation ray = RayOrientation::horizontal;

  int number() const { return static_cast<int>(kind); }
  friend bool operator==(const CaseTag& x, const CaseTag& y) {
    return x.kind == y.kind && x.index == y.index && (x.kind != CaseKind::ray || x.ray == y.ray);
  }
};

class Polygon {
public:
  Polygon() = default;
  /// vertices in increasing a (decreasing b), strictly convex chain.
  explicit Polygon(std::vector<Point> vertices) : v_(std::move(vertices)) {
    for (std::size_t i = 0; i + 1 < v_.size(); ++i) {
      Rational m = (v_[i + 1].a - v_[i].a) / (v_[i].b - v_[i + 1].b);
      e_.push_back({v_[i], v_[i + 1], m, Rational(v_[i].a + m * v_[i].b)});
    }
  }

  const std::vector<Point>& vertices() const { return v_; }
  const std::vector<Edge>& edges() const { return e_; }
  bool empty() const { return v_.empty(); }
  /// Origin of the vertical ray {(a0, y): y >= b0}.
  const Point& vertical_ray_origin() const { return v_.front(); }
  /// Origin of the horizontal ray {(x, bk): x >= ak}.
  const Point& horizontal_ray_origin() const { return v_.back(); }

  /// Whether (a, b) lies in the polygon (the convex hull of upper-right quadrants).
  bool contains(const Point& p) const {
    if (v_.empty()) return false;
    if (p.a < v_.front().a || p.b < v_.back().b) return false;
    for (const auto& e : e_)
      if (p.a + e.m * p.b < e.c) return false;
    return true;
  }

  friend bool operator==(const Polygon& x, const Polygon& y) { return x.v_ == y.v_; }
  friend bool operator!=(const Polygon& x, const Polygon& y) { return !(x == y); }

  std::string str() const {
    std::string s;
    for (const auto& p : v_) s += "(" + to_string(p.a) + "," + to_string(p.b) + ")";
    return s;
  }

private:
  std::vector<Point> v_;
  std::vector<Edge> e_;
};

inline Rational cross(const Point& o, const Point& p, const Point& q) {
  return (p.a - o.a) * (q.b - o.b) - (p.b - o.b) * (q.a - o.a);
}

/// Newton polygon of a set of support points.
inline Polygon newton_polygon(std::vector<Point> pts) {
  if (pts.empty()) return Polygon();
  std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) {
    int c = cmp(p.a, q.a);
    return c < 0 || (c == 0 && p.b < q.b);
  });
  // Quadrant domination: keep the staircase of strictly decreasing b.
  std::vector<Point> stair;
  for (const auto& p : pts)
    if (stair.empty() || p.b < stair.back().b) stair.push_back(p);
  std::vector<Point> hull;
  for (const auto& p : stair) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  return Polygon(std::move(hull));
}

inline std::vector<Point> support(const Jet& S) {
  std::vector<Point> pts;
  for (const auto& [e, c] : S.terms()) pts.push_back({e.a, Rational(e.b)});
  return pts;
}

inline Polygon newton_polygon(const Jet& S) { return newton_polygon(support(S)); }

/// Polygon of the union of the supports (the common polygon of a generic pencil).
inline Polygon newton_polygon(const Jet& S, const Jet& f) {
  auto p = support(S), q = support(f);
  p.insert(p.end(), q.begin(), q.end());
  return newton_polygon(std::move(p));
}

/// Where the bisectrix meets the polygon boundary.
struct BisectrixHit {
  Rational d;
  CaseTag tag;
};

inline BisectrixHit bisectrix(const Polygon& P) {
  if (P.empty()) throw EmptyJet();
  const auto& V = P.vertices();
  const Point& top = V.front();
  if (top.a >= top.b) {
    if (top.a == top.b) return {top.a, {CaseKind::vertex, 0, RayOrientation::horizontal}};
    return {top.a, {CaseKind::ray, 0, RayOrientation::vertical}};
  }
  const Point& bot = V.back();
  if (bot.b >= bot.a) {
    if (bot.a == bot.b) return {bot.a, {CaseKind::vertex, V.size() - 1, RayOrientation::horizontal}};
    return {bot.b, {CaseKind::ray, V.size() - 1, RayOrientation::horizontal}};
  }
  for (std::size_t i = 0; i < V.size(); ++i)
    if (V[i].a == V[i].b) return {V[i].a, {CaseKind::vertex, i, RayOrientation::horizontal}};
  for (std::size_t i = 0; i < P.edges().size(); ++i) {
    const Edge& e = P.edges()[i];
    if (e.upper.b > e.upper.a && e.lower.b < e.lower.a)
      return {e.c / (1 + e.m), {CaseKind::edge, i, RayOrientation::horizontal}};
  }
  throw DomainError("bisectrix does not meet the polygon");
}

inline Rational newton_distance(const Polygon& P) { return bisectrix(P).d; }
inline CaseTag bisectrix_case(const Polygon& P) { return bisectrix(P).tag; }

/// A face of a polygon or a supporting line that may miss the support.
/// For a vertex face the line is a supporting line touching only that vertex.
struct Face {
  enum class Kind { edge, vertex, line };
  Kind kind = Kind::line;
  std::size_t index = 0;
  Rational m, c;
  std::optional<Point> vertex;

  bool on_face(const Rational& a, const Rational& b) const {
    if (kind == Kind::vertex) return a == vertex->a && b == vertex->b;
    return a + m * b == c;
  }
};

inline Face edge_face(const Polygon& P, std::size_t i) {
  const Edge& e = P.edges().at(i);
  return {Face::Kind::edge, i, e.m, e.c, std::nullopt};
}

inline Face vertex_face(const Polygon& P, std::size_t i) {
  const Point& v = P.vertices().at(i);
  return {Face::Kind::vertex, i, 0, 0, v};
}

inline Face line_face(const Rational& m, const Rational& c) { return {Face::Kind::line, 0, m, c, std::nullopt}; }

/// The face touched by the lowest line x + m y = c, m > 0.
inline Face supporting_face(const Polygon& P, const Rational& m) {
  if (m <= 0) throw DomainError("supporting line parameter must be positive");
  const auto& V = P.vertices();
  std::size_t best = 0;
  for (std::size_t i = 1; i < V.size(); ++i)
    if (V[i].a + m * V[i].b < V[best].a + m * V[best].b) best = i;
  Rational c = V[best].a + m * V[best].b;
  for (std::size_t i = 0; i < P.edges().size(); ++i)
    if (P.edges()[i].m == m) return edge_face(P, i);
  Face f = vertex_face(P, best);
  f.m = m;
  f.c = c;
  return f;
}

/// The lowest line of slope -1/m under the polygon as a line face.
inline Face supporting_line(const Polygon& P, const Rational& m) {
  Face f = supporting_face(P, m);
  if (f.kind == Face::Kind::vertex) {
    const Point& v = *f.vertex;
    return line_face(m, Rational(v.a + m * v.b));
  }
  return f;
}

enum class Variable { x, y };

/// S_face(sign, y) (variable y) or S_face(x, sign) (variable x) as a univariate
/// polynomial; exponents are the y (resp. x) exponents.
inline KPoly edge_restriction(const Jet& S, const Face& face, Variable var = Variable::y, int sign = 1) {
  std::vector<Number> c;
  for (const auto& [e, v] : S.terms()) {
    if (!face.on_face(e.a, Rational(e.b))) continue;
    if (var == Variable::y) {
      if (sign < 0 && !is_integer(e.a)) throw DomainError("sign -1 restriction with fractional exponent");
      bool flip = sign < 0 && e.a.get_num().get_si() % 2 != 0;
      std::size_t k = static_cast<std::size_t>(e.b);
      if (c.size() <= k) c.resize(k + 1, Number(0));
      c[k] += flip ? Number(-v) : v;
    } else {
      if (!is_integer(e.a)) throw DomainError("x restriction with fractional exponent");
      bool flip = sign < 0 && e.b % 2 != 0;
      std::size_t k = e.a.get_num().get_ui();
      if (c.size() <= k) c.resize(k + 1, Number(0));
      c[k] += flip ? Number(-v) : v;
    }
  }
  return KPoly(std::move(c));
}

/// Sum of the terms of S on the face, as a jet.
inline Jet face_part(const Jet& S, const Face& face) {
  Jet r(S.ramification());
  for (const auto& [e, v] : S.terms())
    if (face.on_face(e.a, Rational(e.b))) r.add(e.a, e.b, v);
  return r;
}

inline Polygon dilate(const Polygon& P, long k) {
  if (k < 1) throw DomainError("dilation factor must be positive");
  std::vector<Point> v;
  for (const auto& p : P.vertices()) v.push_back({Rational(p.a * k), Rational(p.b * k)});
  return Polygon(std::move(v));
}

/// Mirror across the bisectrix.
inline Polygon mirror(const Polygon& P) {
  std::vector<Point> v;
  for (auto it = P.vertices().rbegin(); it != P.vertices().rend(); ++it) v.push_back({it->b, it->a});
  return Polygon(std::move(v));
}

inline const char* case_name(CaseKind k) {
  switch (k) {
    case CaseKind::edge: return "Case1";
    case CaseKind::vertex: return "Case2";
    case CaseKind::ray: return "Case3";
  }
  return "?";
}

}  // namespace oscstab

#endif  // OSCSTAB_POLYGON_HPP
