#ifndef OSCSTAB_REPORT_HPP
#define OSCSTAB_REPORT_HPP

#include <complex>
#include <string>

#include <json.hpp>

#include "coeff.hpp"

namespace oscstab {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Width 2^-bits of the root enclosures written for irrational values.
inline int& report_precision_bits() {
  static int bits = 30;
  return bits;
}

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const RealAlgebraic& a) {
  if (auto r = a.rational_value()) return to_string(*r);
  json poly = json::array();
  QPoly q = a.poly();  // coefficients() refers into q, keep it alive
  for (const auto& c : q.coefficients()) poly.push_back(to_string(c));
  Rational w(1);
  w /= Rational(Integer(1) << report_precision_bits());
  RootEnclosure e = a.enclosure(w);
  return {{"poly", poly}, {"enclosure", {to_string(e.lo), to_string(e.hi)}}, {"approx", a.to_double()}};
}

inline json to_json(const Number& v) {
  if (v.is_rational()) return to_string(v.rational());
  return to_json(v.to_algebraic());
}

/// {"ramification": n, "terms": [{"a": "3/2", "b": 1, "c": "-2/5"}, ...]}
inline json to_json(const Jet& S) {
  json terms = json::array();
  for (const auto& [e, c] : S.terms()) terms.push_back({{"a", to_string(e.a)}, {"b", e.b}, {"c", to_json(c)}});
  return {{"ramification", S.ramification()}, {"terms", terms}, {"text", S.str()}};
}

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational string", 0);
}

/// Parses the JSON term-list format. Coefficients must be rational.
inline Jet parse_jet_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) throw ParseError("missing \"terms\" array", 0);
  long n = 1;
  if (j.contains("ramification")) {
    n = j["ramification"].get<long>();
    if (n < 1) throw ParseError("ramification must be positive", 0);
  }
  Jet S(n);
  std::size_t k = 0;
  for (const auto& t : j["terms"]) {
    if (!t.contains("a") || !t.contains("b") || !t.contains("c")) throw ParseError("term needs a, b, c", k);
    Rational a = rational_from_json(t["a"]);
    long b = t["b"].get<long>();
    if (sgn(a) < 0 || b < 0) throw ParseError("negative exponent", k);
    if (!t["c"].is_string() && !t["c"].is_number_integer()) throw ParseError("coefficient must be rational", k);
    S.add(a, static_cast<int>(b), Number(rational_from_json(t["c"])));
    ++k;
  }
  if (j.contains("ramification") && S.ramification() != n)
    throw ParseError("ramification does not cover the exponents", 0);
  if (S.is_zero()) throw EmptyJet();
  return S;
}

inline Jet parse_jet_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  return parse_jet_json(j);
}

inline json to_json(const TypePair& t) { return {{"delta", to_string(t.delta)}, {"p", t.p}, {"text", t.str()}}; }

inline json to_json(const CaseTag& t) {
  json j{{"case", t.number()}, {"name", case_name(t.kind)}, {"index", t.index}};
  if (t.kind == CaseKind::ray) j["ray"] = t.ray == RayOrientation::horizontal ? "horizontal" : "vertical";
  return j;
}

inline json to_json(const Polygon& P) {
  json v = json::array(), e = json::array();
  for (const auto& p : P.vertices()) v.push_back({to_string(p.a), to_string(p.b)});
  for (const auto& ed : P.edges())
    e.push_back({{"upper", {to_string(ed.upper.a), to_string(ed.upper.b)}},
                 {"lower", {to_string(ed.lower.a), to_string(ed.lower.b)}},
                 {"m", to_string(ed.m)},
                 {"c", to_string(ed.c)}});
  json j{{"vertices", v}, {"edges", e}};
  if (!P.empty()) {
    auto hit = bisectrix(P);
    j["d"] = to_string(hit.d);
    j["tag"] = to_json(hit.tag);
  }
  return j;
}

inline json to_json(const CoordChange& c) {
  json a = json::array();
  for (const auto& s : c.steps()) {
    if (s.kind == CoordStep::Kind::swap) a.push_back({{"kind", "swap"}});
    else a.push_back({{"kind", "shear"}, {"r", to_json(s.r)}, {"m", to_string(s.m)}});
  }
  return a;
}

inline json to_json(const AnalysisResult& a) {
  json j{{"original", to_json(a.original)},
         {"adapted", to_json(a.adapted)},
         {"coords", to_json(a.coords)},
         {"polygon", to_json(a.polygon)},
         {"d", to_string(a.d)},
         {"case", to_json(a.tag)},
         {"type", to_json(a.type)},
         {"half_plane", a.half_plane},
         {"iterations", a.iterations}};
  if (a.morse_saddle) j["advisory"] = "d = 1 at a vertex: the oscillatory log factor may be absent while the sublevel log persists";
  return j;
}

inline json to_json(const DirectionVerdict& v) {
  json j{{"good", v.good},
         {"case", to_json(v.tag)},
         {"d", to_string(v.d)},
         {"witness", v.witness},
         {"phase_type", to_json(v.phase_type)},
         {"generic_type", to_json(v.generic_type)},
         {"f_adapted", to_json(v.f_adapted)}};
  if (v.m1) j["m1"] = to_string(*v.m1);
  if (v.m2) j["m2"] = to_string(*v.m2);
  return j;
}

inline json to_json(const ExceptionalSet& I) {
  json a = json::array();
  for (const auto& e : I.values())
    a.push_back({{"t", to_json(e.t)}, {"approx", e.t.to_double()}, {"reason", e.reason}, {"confirmed", e.confirmed}});
  return a;
}

inline json to_json(const PencilReport& r) {
  json steps = json::array();
  for (const auto& s : r.iterations) {
    if (s.kind == CoordStep::Kind::swap) steps.push_back({{"kind", "swap"}});
    else steps.push_back({{"kind", "shear"}, {"r", to_json(s.r)}, {"m", to_string(s.m)}});
  }
  return {{"common_polygon", to_json(r.common_polygon)},
          {"d", to_string(r.d)},
          {"generic_type", to_json(r.generic_type)},
          {"exceptional", to_json(r.exceptional)},
          {"search_steps", steps},
          {"notes", r.notes}};
}

inline json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

inline json to_json(const LeadingCoeff& c) {
  return {{"B_plus", c.B_plus},
          {"B_plus_err", c.B_plus_err},
          {"B_minus", c.B_minus},
          {"B_minus_err", c.B_minus_err},
          {"A", to_json(c.A)},
          {"delta", to_string(c.delta)},
          {"p", c.p},
          {"d", to_string(c.d)},
          {"case", to_json(c.tag)},
          {"method", to_string(c.method)},
          {"notes", c.notes}};
}

inline json to_json(const FitResult& f) {
  return {{"delta", f.delta},       {"p", f.p},         {"B", f.B},
          {"C", f.C},               {"linear", f.linear}, {"delta_power_model", f.delta0},
          {"residual", f.residual}, {"ssr_power", f.ssr0}, {"ssr_log", f.ssr1},
          {"window", {f.window_lo, f.window_hi}}};
}

inline json to_json(const ScanReport& s) {
  json e = json::array();
  for (const auto& x : s.entries) {
    json r = json::array();
    for (double v : x.ratios) r.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    e.push_back({{"direction", x.direction}, {"sup", x.sup_ratio}, {"ratios", r}, {"unresolved", x.unresolved}});
  }
  return {{"lambdas", s.lambdas}, {"baseline", s.baseline}, {"overall", s.overall}, {"entries", e}};
}

inline json new_report(const std::string& command, const std::string& input) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"input", input}, {"warnings", json::array()}};
}

}  // namespace oscstab

#endif  // OSCSTAB_REPORT_HPP
