#pragma once

#include <string>
#include <vector>

#include "gcl/twisted.hpp"

namespace gcl {

// zeta^m e_k, the units of the trigonometric polynomial ring
struct Unit {
  long zeta_exp = 0;
  Freq freq{};
  bool operator==(const Unit&) const = default;
};

Unit unit_mul(const Unit& a, const Unit& b);
Unit unit_inv(const Unit& a);
Unit unit_act(const Model& md, const Unit& a, int g);
Form unit_form(const Model& md, const Unit& a, int level = 0);
bool unit_equal(const Model& md, const Unit& a, const Unit& b);

struct GerbeDatum {
  std::vector<Form> a;                    // a[g]: 1-form potential of nabla_g
  std::vector<std::vector<Unit>> lambda;  // multiplier mu_{g,h} = lambda[g][h]

  static GerbeDatum trivial(const Model& md);
};

Form derive_alpha(const Model& md, const GerbeDatum& d, int g, int h);
Form curvature_theta(const Model& md, const GerbeDatum& d, int g);

struct CheckList {
  long checks = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void merge(const CheckList& o) {
    checks += o.checks;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

CheckList check_lambda_cocycle(const Model& md, const GerbeDatum& d);
CheckList check_theta_relation(const Model& md, const GerbeDatum& d);
// alpha(g1, g2..gi) - alpha(g1, g2..gj) + alpha(g1..gi, g(i+1)..gj) = alpha(g2..gi, g(i+1)..gj)^{g1}
CheckList check_alpha_identity(const Model& md, const GerbeDatum& d, int max_len = 3);
CheckList verify_gerbe(const Model& md, const GerbeDatum& d);

struct DDCocycle {
  std::vector<std::vector<Form>> alpha;
  std::vector<Form> theta;
};

DDCocycle dd_cocycle(const Model& md, const GerbeDatum& d);
// integrates Theta_(1), Theta_(2), Theta_(3) over the simplices and compares
DDCocycle dd_from_Theta(const Model& md, const GerbeDatum& d, const TwistTriple& th, CheckList* rep);

}  // namespace gcl
