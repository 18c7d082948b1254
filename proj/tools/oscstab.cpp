// Command-line front end: analyze | stability | coeff | verify.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <oscstab/oscstab.hpp>

namespace {

using namespace oscstab;

enum Exit { ok = 0, failed = 1, parse = 2, phase = 3, precision = 4, budget = 5 };

struct Globals {
  std::string json_file;
  std::string out;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::size_t budget = 64;
  int precision = 30;
  double lambda_max = 1000;
  double eps_decades = 6;
  std::size_t samples = 20;
  double eta = 0.05;
  std::string cutoff = "bump";
  double radius = 0.5;
  bool pretty = false;
};

Cutoff make_cutoff(const Globals& g) {
  return g.cutoff == "indicator" ? Cutoff::indicator(g.radius) : Cutoff::bump(g.radius);
}

VerifyOptions make_verify(const Globals& g) {
  VerifyOptions v;
  v.oracle.seed = g.seed;
  v.oracle.threads = g.threads;
  v.phi = make_cutoff(g);
  v.lambda_max = g.lambda_max;
  v.eps_decades = g.eps_decades;
  v.samples = g.samples;
  v.eta = g.eta;
  return v;
}

Jet read_phase(const Globals& g, const std::string& expr, std::string& echo) {
  if (!g.json_file.empty()) {
    std::ifstream in(g.json_file);
    if (!in) throw ParseError("cannot open " + g.json_file, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    echo = ss.str();
    return parse_jet_json(echo);
  }
  if (expr.empty()) throw ParseError("no phase given", 0);
  echo = expr;
  return parse_jet_expression(expr);
}

void require_phase(const Jet& S) {
  switch (check_phase_conditions(S)) {
    case PhaseCondition::ok: return;
    case PhaseCondition::nonzero_constant: throw PhaseConditionError("S(0,0) != 0: subtract the constant term first");
    case PhaseCondition::nonzero_gradient:
      throw PhaseConditionError("grad S(0,0) != 0: J decays faster than any power of lambda");
  }
}

void warn(json& rep, const std::string& w) { rep["warnings"].push_back(w); }

void analysis_warnings(json& rep, const AnalysisResult& a) {
  if (a.morse_saddle)
    warn(rep, "advisory: d = 1 at a vertex, the oscillatory log factor is absent while the sublevel log persists");
  if (a.half_plane) warn(rep, "fractional exponents: only the half-plane x > 0 was examined");
}

void coeff_warnings(json& rep, const LeadingCoeff& lc) {
  if (lc.tag.kind == CaseKind::vertex && lc.method != CoeffMethod::stationary_phase)
    warn(rep, "vertex case: A carries the printed overall minus sign; the oscillatory oracle finds the opposite sign");
}

std::ofstream open_csv(const Globals& g, const std::string& suffix) {
  std::ofstream os(g.out + suffix);
  if (!os) throw Error("cannot write " + g.out + suffix);
  return os;
}

json run_analyze(const Globals& g, const std::string& expr) {
  std::string echo;
  Jet S = read_phase(g, expr, echo);
  require_phase(S);
  json rep = new_report("analyze", echo);
  AnalysisResult a = superadapt(S, g.budget);
  rep["analysis"] = to_json(a);
  rep["analysis"]["sublevel_log_power"] = sublevel_log_power(a);
  analysis_warnings(rep, a);
  return rep;
}

json run_stability(const Globals& g, const std::string& expr, const std::string& dir) {
  std::string echo;
  Jet S = read_phase(g, expr, echo);
  require_phase(S);
  Jet f = parse_jet_expression(dir);
  json rep = new_report("stability", echo);
  rep["direction"] = to_json(f);
  DirectionVerdict v = good_direction(S, f, g.budget);
  PencilReport p = exceptional_set(S, f, g.budget);
  rep["analysis"] = to_json(v.analysis);
  rep["stability"] = {{"verdict", to_json(v)}, {"pencil", to_json(p)}};
  analysis_warnings(rep, v.analysis);
  for (const auto& e : p.exceptional.values())
    if (!e.confirmed) warn(rep, "unconfirmed exceptional value t = " + e.t.str() + " (" + e.reason + ")");
  return rep;
}

json run_coeff(const Globals& g, const std::string& expr, bool oracle) {
  std::string echo;
  Jet S = read_phase(g, expr, echo);
  require_phase(S);
  json rep = new_report("coeff", echo);
  VerifyOptions v = make_verify(g);
  AnalysisResult a = superadapt(S, g.budget);
  CoeffOptions co;
  co.oracle = v.oracle;
  co.budget = g.budget;
  LeadingCoeff lc = leading_coefficient(a, v.phi, co);
  rep["analysis"] = to_json(a);
  rep["cutoff"] = {{"kind", to_string(v.phi.kind)}, {"r", v.phi.r}};
  rep["coefficients"] = to_json(lc);
  analysis_warnings(rep, a);
  coeff_warnings(rep, lc);
  if (oracle) {
    PlateauFit pf;
    auto checks = verify_oscillatory(a, lc, v, &pf);
    json c = json::array();
    for (const auto& k : checks) c.push_back({{"name", k.name}, {"pass", k.pass}, {"asserted", k.asserted}, {"detail", k.detail}});
    rep["oracle"] = {{"plateau_A", to_json(pf.A)}, {"gamma", pf.gamma}, {"residual", pf.residual},
                     {"last_step", pf.last_step}, {"checks", c}};
    if (!g.out.empty()) {
      auto os = open_csv(g, "_oscillatory.csv");
      write_oscillatory_csv(os, pf.lambdas, pf.J);
    }
  }
  return rep;
}

json checks_json(const std::vector<VerifyCheck>& checks, bool& all) {
  json c = json::array();
  for (const auto& k : checks) {
    c.push_back({{"name", k.name}, {"pass", k.pass}, {"asserted", k.asserted}, {"detail", k.detail}});
    if (k.asserted && !k.pass) all = false;
  }
  return c;
}

json verify_phase(const Globals& g, const Jet& S, const std::string& protocol, bool& all, const std::string& tag) {
  VerifyOptions v = make_verify(g);
  AnalysisResult a = superadapt(S, g.budget);
  json r{{"phase", S.str()}, {"type", to_json(a.type)}, {"case", to_json(a.tag)}};
  bool every = protocol == "all";
  if (every || protocol == "sublevel") {
    FitResult f;
    auto c = verify_sublevel(a, v, &f);
    r["sublevel"] = {{"fit", to_json(f)},
                     {"checks", checks_json(c, all)},
                     {"note", "sublevel bound read as eps^(+1/d(g)): the printed negative exponent would grow as eps -> 0"}};
    if (!g.out.empty()) {
      auto sw = sublevel_sweep(a.original, v.phi, log_grid(1e-2 * std::pow(10.0, -v.eps_decades), 1e-2, 2), v.oracle);
      auto os = open_csv(g, tag + "_sublevel.csv");
      write_sublevel_csv(os, sw);
    }
  }
  if (every || protocol == "oscillatory") {
    LeadingCoeff lc = leading_coefficient(a, v.phi, {false, v.oracle, g.budget});
    PlateauFit pf;
    auto c = verify_oscillatory(a, lc, v, &pf);
    r["oscillatory"] = {{"A", to_json(lc.A)}, {"method", to_string(lc.method)}, {"plateau_A", to_json(pf.A)},
                        {"last_step", pf.last_step}, {"checks", checks_json(c, all)}};
    if (!g.out.empty()) {
      auto os = open_csv(g, tag + "_oscillatory.csv");
      write_oscillatory_csv(os, pf.lambdas, pf.J);
    }
  }
  if (protocol == "uniformity") {
    auto dirs = sample_good_directions(S, v.samples, v.eta, v.norm_r, v.norm_N, v.oracle.seed);
    auto lambdas = log_grid(10, v.lambda_max, 3);
    auto scan = uniformity_scan(S, dirs, lambdas, v.phi, a.type.delta.get_d(), a.type.p, v.oracle);
    bool pass = scan.bounded(2.0);
    r["uniformity"] = to_json(scan);
    json d = json::array();
    for (const auto& f : dirs) d.push_back(f.str());
    r["uniformity"]["directions"] = d;
    r["uniformity"]["checks"] =
        checks_json({{"sup ratio within 2x baseline", pass, true,
                      std::to_string(scan.overall) + " vs baseline " + std::to_string(scan.baseline)}},
                    all);
  }
  if (protocol == "holder") {
    auto dirs = sample_good_directions(S, 1, 1.0, v.norm_r, v.norm_N, v.oracle.seed);
    if (dirs.empty()) throw FitUnstable("no good direction sampled");
    std::vector<HolderSample> hs;
    json samples = json::array();
    for (double s : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
      Jet f2 = Number(from_double(s)) * dirs[0];
      auto h = holder_check(S, Jet(), f2, v.phi, v.norm_r, v.norm_N, {false, v.oracle, g.budget});
      hs.push_back(h);
      samples.push_back({{"scale", s}, {"dA", h.dA}, {"norm", h.norm}});
    }
    auto hf = holder_fit(hs);
    bool pass = hf.alpha > 0.2 && hf.r2 > 0.9;
    r["holder"] = {{"direction", dirs[0].str()}, {"samples", samples}, {"alpha", hf.alpha}, {"r2", hf.r2}};
    r["holder"]["checks"] = checks_json(
        {{"Hoelder slope", pass, true, "alpha " + std::to_string(hf.alpha) + " r2 " + std::to_string(hf.r2)}}, all);
  }
  return r;
}

json run_verify(const Globals& g, const std::string& expr, const std::string& protocol, const std::string& corpus,
                bool& all) {
  static const std::vector<std::string> protocols{"sublevel", "oscillatory", "uniformity", "holder", "all"};
  if (std::find(protocols.begin(), protocols.end(), protocol) == protocols.end())
    throw ParseError("unknown protocol " + protocol, 0);
  json rep = new_report("verify", corpus.empty() ? expr : "corpus:" + corpus);
  rep["protocol"] = protocol;
  all = true;
  if (!corpus.empty()) {
    if (corpus != "builtin") throw ParseError("unknown corpus " + corpus, 0);
    json entries = json::array();
    std::size_t k = 0;
    for (const auto& e : builtin_corpus()) {
      Jet S = parse_jet_expression(e.expr);
      json r = verify_phase(g, S, protocol, all, "_" + std::to_string(k++));
      bool typed = to_string(superadapt(S, g.budget).type.delta) == e.delta && superadapt(S, g.budget).type.p == e.p;
      r["expected_type"] = {{"delta", e.delta}, {"p", e.p}, {"match", typed}};
      if (!typed) all = false;
      entries.push_back(r);
    }
    rep["results"] = entries;
  } else {
    std::string echo;
    Jet S = read_phase(g, expr, echo);
    require_phase(S);
    rep["input"] = echo;
    rep["results"] = json::array({verify_phase(g, S, protocol, all, "")});
  }
  rep["pass"] = all;
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillatory integral types, stability and leading coefficients of planar phases"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--json", g.json_file, "read the phase from a JSON term list instead of an expression");
  app.add_option("--out", g.out, "prefix for CSV side files");
  app.add_option("--seed", g.seed, "oracle seed");
  app.add_option("--threads", g.threads, "oracle worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "coordinate change budget")->check(CLI::PositiveNumber);
  app.add_option("--precision", g.precision, "bits of the root enclosures in reports")->check(CLI::Range(4, 4096));
  app.add_option("--lambda-max", g.lambda_max, "largest lambda for oscillatory checks")->check(CLI::Range(20.0, 1e5));
  app.add_option("--eps-decades", g.eps_decades, "decades of the epsilon sweep")->check(CLI::Range(3.0, 10.0));
  app.add_option("--samples", g.samples, "number of sampled directions");
  app.add_option("--eta", g.eta, "norm bound of sampled directions");
  app.add_option("--cutoff", g.cutoff, "bump or indicator")->check(CLI::IsMember({"bump", "indicator"}));
  app.add_option("--radius", g.radius, "cutoff radius")->check(CLI::PositiveNumber);
  app.add_flag("--pretty", g.pretty, "indent the JSON report");

  std::string expr, dir, protocol = "all", corpus;
  bool no_oracle = false;
  auto* analyze = app.add_subcommand("analyze", "Newton polygon, superadapted coordinates and oscillatory type");
  analyze->add_option("phase", expr, "phase expression, e.g. x^2*y^2+x*y^3");
  auto* stability = app.add_subcommand("stability", "good-direction verdict and exceptional pencil parameters");
  stability->add_option("phase", expr)->required();
  stability->add_option("direction", dir)->required();
  auto* coeff = app.add_subcommand("coeff", "leading asymptotic coefficients B and A");
  coeff->add_option("phase", expr);
  coeff->add_flag("--no-oracle", no_oracle, "skip the oscillatory cross-check");
  auto* verify = app.add_subcommand("verify", "cross-check the symbolic predictions against the numerical oracle");
  verify->add_option("phase", expr);
  verify->add_option("--protocol", protocol, "sublevel | oscillatory | uniformity | holder | all");
  verify->add_option("--corpus", corpus, "run a named corpus instead of one phase (builtin)");

  for (auto* sub : {analyze, stability, coeff, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : Exit::parse;
  }
  report_precision_bits() = g.precision;

  try {
    json rep;
    bool all = true;
    if (*analyze) rep = run_analyze(g, expr);
    else if (*stability) rep = run_stability(g, expr, dir);
    else if (*coeff) rep = run_coeff(g, expr, !no_oracle);
    else rep = run_verify(g, expr, protocol, corpus, all);
    std::cout << rep.dump(g.pretty ? 2 : -1) << '\n';
    return all ? Exit::ok : Exit::failed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return Exit::parse;
  } catch (const EmptyJet& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return Exit::parse;
  } catch (const PhaseConditionError& e) {
    std::cerr << "phase conditions: " << e.what() << '\n';
    return Exit::phase;
  } catch (const PrecisionInsufficient& e) {
    std::cerr << "precision: " << e.what() << '\n';
    return Exit::precision;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return Exit::budget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::failed;
  }
}
