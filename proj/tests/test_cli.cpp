#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

namespace {

struct Run {
  int code = -1;
  std::string out;
  json doc() const { return json::parse(out); }
};

Run run(const std::string& args) {
  std::string cmd = std::string(OSCSTAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, AnalyzeSchema) {
  auto r = run("analyze 'x^2*y^2+x*y^3'");
  ASSERT_EQ(r.code, 0);
  auto d = r.doc();
  EXPECT_EQ(d["schema"], kSchemaVersion);
  EXPECT_EQ(d["command"], "analyze");
  EXPECT_TRUE(d["warnings"].is_array());
  EXPECT_EQ(d["analysis"]["type"]["delta"], "1/2");
  EXPECT_EQ(d["analysis"]["type"]["p"], 1);
  EXPECT_EQ(d["analysis"]["case"]["name"], "Case2");
  EXPECT_EQ(d["analysis"]["sublevel_log_power"], 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("analyze 'x^2+'").code, 2);
  EXPECT_EQ(run("analyze '0'").code, 2);
  EXPECT_EQ(run("analyze 'x+y^3'").code, 3);
  EXPECT_EQ(run("analyze '1+x^2'").code, 3);
  EXPECT_EQ(run("stability 'x^2+y^2' 'x'").code, 3);
  EXPECT_EQ(run("--budget 1 analyze '(y-x^2-x^3)^2+x^9'").code, 5);
  EXPECT_NE(run("frobnicate").code, 0);
}

TEST(Cli, JsonTermsMatchExpression) {
  std::string path = temp_file("terms.json",
                               R"({"ramification":1,"terms":[{"a":"2","b":2,"c":"1"},{"a":"1","b":3,"c":"1"}]})");
  auto a = run("--json " + path + " analyze").doc();
  auto b = run("analyze 'x^2*y^2+x*y^3'").doc();
  EXPECT_EQ(a["analysis"], b["analysis"]);
  auto bad = temp_file("bad.json", R"({"ramification":2,"terms":[{"a":"1/3","b":2,"c":"1"}]})");
  EXPECT_EQ(run("--json " + bad + " analyze").code, 2);
}

TEST(Cli, RationalFieldsRoundTrip) {
  auto d = run("analyze 'y^2+x^(5/2)'").doc();
  Jet back = parse_jet_json(d["analysis"]["adapted"]);
  EXPECT_EQ(back, superadapt(parse_jet_expression("y^2+x^(5/2)")).adapted);
  EXPECT_EQ(parse_rational(d["analysis"]["d"].get<std::string>()), make_rational(10, 9));
  EXPECT_TRUE(d["analysis"]["half_plane"].get<bool>());
}

TEST(Cli, IrrationalShearIsEnclosed) {
  auto d = run("--precision 40 analyze '(y^2-2*x^2)^2+x^6'").doc();
  auto c = d["analysis"]["coords"];
  ASSERT_EQ(c.size(), 1u);
  auto r = c[0]["r"];
  ASSERT_TRUE(r.is_object()) << r.dump();
  EXPECT_NEAR(std::fabs(r["approx"].get<double>()), std::sqrt(2.0), 1e-9);
}

TEST(Cli, Stability) {
  auto d = run("stability 'x^2+y^2' 'x*y'").doc();
  EXPECT_TRUE(d["stability"]["verdict"]["good"].get<bool>());
  std::vector<std::string> ts;
  for (const auto& e : d["stability"]["pencil"]["exceptional"])
    if (e["confirmed"].get<bool>()) ts.push_back(e["t"]);
  EXPECT_EQ(ts, (std::vector<std::string>{"-2", "2"}));
  auto n = run("stability 'x^4+y^4' 'x^2*y'").doc();
  EXPECT_FALSE(n["stability"]["verdict"]["good"].get<bool>());
  EXPECT_EQ(n["stability"]["verdict"]["generic_type"]["delta"], "5/8");
}

TEST(Cli, CoeffWithoutOracle) {
  auto r = run("--pretty coeff 'x^2+y^2' --no-oracle");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find('\n'), r.out.size() - 1);
  auto d = r.doc();
  EXPECT_EQ(d["coefficients"]["method"], "closed-form-edge");
  EXPECT_NEAR(d["coefficients"]["A"]["im"].get<double>(), std::numbers::pi, 1e-7);
  EXPECT_FALSE(d.contains("oracle"));
}

TEST(Cli, VerifySublevel) {
  auto r = run("--eps-decades 5 verify 'x^2+y^2' --protocol sublevel");
  ASSERT_EQ(r.code, 0) << r.out;
  auto d = r.doc();
  EXPECT_TRUE(d["pass"].get<bool>());
  EXPECT_EQ(d["protocol"], "sublevel");
}
