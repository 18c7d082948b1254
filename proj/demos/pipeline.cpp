// Walks one phase through the library: polygon, adaptation, pencil, coefficients, oracle.

#include <iostream>

#include <oscstab/oscstab.hpp>

using namespace oscstab;

int main(int argc, char** argv) {
  std::string expr = argc > 1 ? argv[1] : "(y-x^2)^2+x^5";
  std::string dir = argc > 2 ? argv[2] : "x^3*y";
  Jet S = parse_jet_expression(expr);

  AnalysisResult a = superadapt(S);
  std::cout << "phase        " << S.str() << "\n";
  std::cout << "polygon      " << newton_polygon(S).str() << "\n";
  std::cout << "adapted      " << a.adapted.str() << " after " << a.coords.size() << " change(s)\n";
  std::cout << "d, case      " << to_string(a.d) << ", " << case_name(a.tag.kind) << "\n";
  std::cout << "type         " << a.type.str() << "\n";

  Jet f = parse_jet_expression(dir);
  DirectionVerdict v = good_direction(S, f);
  std::cout << "direction    " << f.str() << (v.good ? " is good" : " is not good") << ", generic type "
            << v.generic_type.str() << "\n";
  PencilReport p = exceptional_set(S, f);
  std::cout << "exceptional ";
  for (const auto& e : p.exceptional.values()) std::cout << " " << e.t.str() << (e.confirmed ? "" : "?");
  std::cout << "\n";

  Cutoff phi = Cutoff::bump(0.5);
  LeadingCoeff lc = leading_coefficient(a, phi);
  std::cout << "B+, B-       " << lc.B_plus << ", " << lc.B_minus << " (" << to_string(lc.method) << ")\n";
  std::cout << "A            " << lc.A << "\n";

  FitResult fit = sublevel_fit(S, phi);
  std::cout << "sublevel fit delta " << fit.delta << " p " << fit.p << " B " << fit.B << "\n";
  for (double lam : {100.0, 300.0, 1000.0}) {
    auto J = oscillatory_integral(S, phi, lam);
    std::cout << "J(" << lam << ") lambda^delta = " << J * std::pow(lam, a.type.delta.get_d()) << "\n";
  }
}
