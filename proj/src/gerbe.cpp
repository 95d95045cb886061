#include "gcl/gerbe.hpp"

namespace gcl {

Unit unit_mul(const Unit& a, const Unit& b) {
  Unit r;
  r.zeta_exp = a.zeta_exp + b.zeta_exp;
  for (int j = 0; j < kMaxDim; ++j) r.freq[j] = a.freq[j] + b.freq[j];
  return r;
}

Unit unit_inv(const Unit& a) {
  Unit r;
  r.zeta_exp = -a.zeta_exp;
  for (int j = 0; j < kMaxDim; ++j) r.freq[j] = -a.freq[j];
  return r;
}

Unit unit_act(const Model& md, const Unit& a, int g) {
  const auto& act = md.G.action[g];
  Unit r;
  r.zeta_exp = a.zeta_exp;
  for (int j = 0; j < md.dim(); ++j) {
    long s = 0;
    for (int i = 0; i < md.dim(); ++i) s += long(act.A[i][j]) * a.freq[i];
    r.freq[j] = int(s);
    r.zeta_exp += long(a.freq[j]) * act.bN[j];
  }
  int N = md.N();
  r.zeta_exp = ((r.zeta_exp % N) + N) % N;
  return r;
}

Form unit_form(const Model& md, const Unit& a, int level) {
  return Form::character(md.dim(), level, a.freq, CycScalar::zeta(md.N(), a.zeta_exp));
}

bool unit_equal(const Model& md, const Unit& a, const Unit& b) {
  int N = md.N();
  return a.freq == b.freq && ((a.zeta_exp - b.zeta_exp) % N + N) % N == 0;
}

GerbeDatum GerbeDatum::trivial(const Model& md) {
  GerbeDatum d;
  int n = md.G.order();
  d.a.assign(n, md.zero(0));
  d.lambda.assign(n, std::vector<Unit>(n));
  return d;
}

Form derive_alpha(const Model& md, const GerbeDatum& d, int g, int h) {
  int gh = md.G.mul(g, h);
  return d.a[gh] + dlog_unit(md.dim(), 0, d.lambda[g][h].freq) - d.a[g] - md.act(d.a[h], g);
}

Form curvature_theta(const Model& md, const GerbeDatum& d, int g) {
  (void)md;
  return d_manifold(d.a[g]);
}

CheckList check_lambda_cocycle(const Model& md, const GerbeDatum& d) {
  CheckList r;
  const auto& G = md.G;
  int n = G.order();
  for (int g = 0; g < n; ++g) {
    r.expect(unit_equal(md, d.lambda[G.identity][g], Unit{}) && unit_equal(md, d.lambda[g][G.identity], Unit{}),
             "lambda not normalized at " + G.names[g]);
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < n; ++x) {
        Unit lhs = unit_mul(d.lambda[g][h], d.lambda[G.mul(g, h)][x]);
        Unit rhs = unit_mul(d.lambda[g][G.mul(h, x)], unit_act(md, d.lambda[h][x], g));
        r.expect(unit_equal(md, lhs, rhs),
                 "lambda cocycle fails at (" + G.names[g] + "," + G.names[h] + "," + G.names[x] + ")");
      }
  return r;
}

CheckList check_theta_relation(const Model& md, const GerbeDatum& d) {
  CheckList r;
  const auto& G = md.G;
  for (int g = 0; g < G.order(); ++g) {
    r.expect(d_manifold(curvature_theta(md, d, g)).is_zero(), "theta not closed at " + G.names[g]);
    for (int h = 0; h < G.order(); ++h) {
      Form lhs = curvature_theta(md, d, g) + md.act(curvature_theta(md, d, h), g) - curvature_theta(md, d, G.mul(g, h));
      Form rhs = -d_manifold(derive_alpha(md, d, g, h));
      r.expect(lhs == rhs, "delta theta != -d alpha at (" + G.names[g] + "," + G.names[h] + "): " + (lhs - rhs).str());
    }
  }
  return r;
}

CheckList check_alpha_identity(const Model& md, const GerbeDatum& d, int max_len) {
  CheckList r;
  const auto& G = md.G;
  for (int n = 1; n <= max_len; ++n)
    for (auto& t : all_tuples(G.order(), n))
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
          int g1 = t[0];
          int b = G.product(t, 1, i), bc = G.product(t, 1, j);
          int ab = G.product(t, 0, i), c = G.product(t, i, j);
          Form lhs = derive_alpha(md, d, g1, b) - derive_alpha(md, d, g1, bc) + derive_alpha(md, d, ab, c);
          Form rhs = md.act(derive_alpha(md, d, b, c), g1);
          r.expect(lhs == rhs, "alpha identity fails at " + tuple_str(t) + " i=" + std::to_string(i) +
                                   " j=" + std::to_string(j));
        }
  return r;
}

CheckList verify_gerbe(const Model& md, const GerbeDatum& d) {
  CheckList r;
  int n = md.G.order();
  r.expect((int)d.a.size() == n && (int)d.lambda.size() == n, "gerbe datum size mismatch");
  if (!r.pass()) return r;
  for (int g = 0; g < n; ++g) {
    int deg = 1;
    r.expect(d.a[g].level() == 0 && (d.a[g].is_zero() || (d.a[g].is_homogeneous(&deg) && deg == 1)),
             "potential a is not a 1-form on M at " + md.G.names[g]);
    r.expect((int)d.lambda[g].size() == n, "lambda row size mismatch");
  }
  if (!r.pass()) return r;
  r.merge(check_lambda_cocycle(md, d));
  r.merge(check_theta_relation(md, d));
  r.merge(check_alpha_identity(md, d, 3));
  return r;
}

DDCocycle dd_cocycle(const Model& md, const GerbeDatum& d) {
  DDCocycle c;
  int n = md.G.order();
  c.alpha.assign(n, std::vector<Form>(n));
  for (int g = 0; g < n; ++g) {
    c.theta.push_back(curvature_theta(md, d, g));
    for (int h = 0; h < n; ++h) c.alpha[g][h] = derive_alpha(md, d, g, h);
  }
  return c;
}

DDCocycle dd_from_Theta(const Model& md, const GerbeDatum& d, const TwistTriple& th, CheckList* rep) {
  int n = md.G.order();
  DDCocycle out;
  out.alpha.assign(n, std::vector<Form>(n));
  CheckList local;
  for (int g = 0; g < n; ++g) {
    out.theta.push_back(integrate_simplex(th.window()({g})));
    local.expect(out.theta[g] == curvature_theta(md, d, g), "int Theta_(1) != theta at " + md.G.names[g]);
    for (int h = 0; h < n; ++h) {
      out.alpha[g][h] = integrate_simplex(th.window()({g, h}));
      local.expect(out.alpha[g][h] == derive_alpha(md, d, g, h),
                   "int Theta_(2) != alpha at (" + md.G.names[g] + "," + md.G.names[h] + ")");
    }
  }
  if (th.window().max_level >= 3)
    for (auto& t : all_tuples(n, 3))
      local.expect(integrate_simplex(th.window()(t)).is_zero(), "int Theta_(3) != 0 at " + tuple_str(t));
  if (rep) rep->merge(local);
  return out;
}

}  // namespace gcl
