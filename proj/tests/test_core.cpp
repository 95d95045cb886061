#include <doctest.h>

#include "gcl/form.hpp"
#include "gcl/group.hpp"

using namespace gcl;

namespace {

CycScalar z(int N, long e) { return CycScalar::zeta(N, e); }

Form poly_t(int level, std::vector<int> exps) {
  Form f = Form::scalar(0, level, CycScalar(1));
  for (int i = 0; i < (int)exps.size(); ++i)
    for (int e = 0; e < exps[i]; ++e) f = wedge(f, Form::t_var(0, level, i + 1));
  return f;
}

Form top(int level) {
  Form f = Form::scalar(0, level, CycScalar(1));
  for (int i = 1; i <= level; ++i) f = wedge(f, Form::dt_var(0, level, i));
  return f;
}

CycScalar integral(const Form& w) { return integrate_total(w); }

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  CHECK(z(3, 1) + z(3, 2) == CycScalar(-1));
  CHECK(z(4, 1) * z(4, 1) == CycScalar(-1));
  CHECK(z(4, 3) * z(4, 1) == CycScalar(1));
  // mixed orders lift to the common field
  CHECK(z(6, 1) == -z(3, 2));
  CHECK(z(2, 1) == CycScalar(-1));
  CycScalar s;
  for (int e = 0; e < 5; ++e) s += z(5, e);
  CHECK(s.is_zero());
  CHECK(z(12, 3) * z(12, 3) == CycScalar(-1));
  CHECK(z(8, 2) == z(4, 1));
  CHECK_FALSE(z(7, 1).is_rational());
  CHECK((z(5, 1) * mpq_class(1, 3) + z(5, 1) * mpq_class(2, 3)) == z(5, 1));
}

TEST_CASE("simplex integrals") {
  // int_0^1 t^a dt = 1/(a+1)
  for (int a = 0; a < 5; ++a) CHECK(integral(wedge(poly_t(1, {a}), top(1))) == CycScalar(mpq_class(1, a + 1)));
  CHECK(integral(top(2)) == CycScalar(mpq_class(1, 2)));
  CHECK(integral(top(3)) == CycScalar(mpq_class(1, 6)));
  CHECK(integral(wedge(poly_t(2, {1, 1}), top(2))) == CycScalar(mpq_class(1, 24)));
  CHECK(integral(wedge(poly_t(2, {2, 0}), top(2))) == CycScalar(mpq_class(1, 12)));
  CHECK(integral(wedge(poly_t(3, {1, 1, 1}), top(3))) == CycScalar(mpq_class(1, 720)));
  // missing dt: zero
  CHECK(integral(Form::dt_var(0, 2, 1)).is_zero());
  TExp e{};
  e[0] = 2;
  e[1] = 1;
  CHECK(simplex_monomial_integral(e, 2) == mpq_class(2, 120));
}

TEST_CASE("wedge signs") {
  Form dx1 = Form::dx_var(2, 1, 1), dx2 = Form::dx_var(2, 1, 2), dt = Form::dt_var(2, 1, 1);
  CHECK(wedge(dx1, dx1).is_zero());
  CHECK(wedge(dx1, dx2) == -wedge(dx2, dx1));
  CHECK(wedge(dt, dx1) == -wedge(dx1, dt));
  CHECK(wedge(dt, dt).is_zero());
}

TEST_CASE("manifold derivative and integral on the torus") {
  Form e = Form::character(2, 0, {1, -2, 0}, CycScalar(1));
  CHECK(d_manifold(e) == wedge(e, Form::dx_var(2, 0, 1)) - wedge(e, Form::dx_var(2, 0, 2)) * mpq_class(2));
  CHECK(integrate_manifold(e).is_zero());
  CHECK(integrate_manifold(wedge(Form::scalar(2, 0, CycScalar(3)), wedge(Form::dx_var(2, 0, 1), Form::dx_var(2, 0, 2)))) ==
        CycScalar(3));
  CHECK(d_manifold(Form::scalar(2, 0, z(3, 1))).is_zero());
  CHECK(dlog_unit(2, 0, {1, -2, 0}) == Form::dx_var(2, 0, 1) - Form::dx_var(2, 0, 2) * mpq_class(2));
}

TEST_CASE("face maps") {
  // face i drops vertex i of (t0, t1, t2), t0 = 1 - t1 - t2
  Form t1 = Form::t_var(0, 2, 1), t2 = Form::t_var(0, 2, 2);
  Form s1 = Form::t_var(0, 1, 1), one = Form::scalar(0, 1, CycScalar(1));
  CHECK(pullback_face(t1, 0) == one - s1);
  CHECK(pullback_face(t2, 0) == s1);
  CHECK(pullback_face(t1, 2) == s1);
  CHECK(pullback_face(t2, 2).is_zero());
  CHECK(pullback_face(t1, 1).is_zero());
  CHECK(pullback_face(t2, 1) == s1);
}

TEST_CASE("simplex differential on a 1-simplex") {
  // d_Delta(t1) = dt1; signed variant flips on odd manifold degree
  Form t = Form::t_var(1, 1, 1), dx = Form::dx_var(1, 1, 1);
  CHECK(d_simplex(t) == Form::dt_var(1, 1, 1));
  CHECK(d_simplex(wedge(dx, t), SimplexD::signed_) == -d_simplex(wedge(dx, t)));
  CHECK(d_total(t) == Form::dt_var(1, 1, 1));
}

TEST_CASE("group action pullback") {
  AffineAction half = AffineAction::identity(1);
  half.bN = {1, 0, 0};
  Form e = Form::character(1, 0, {1, 0, 0}, CycScalar(1));
  CHECK(act_group(e, half, 2) == -e);
  AffineAction flip = AffineAction::identity(1);
  flip.A[0][0] = -1;
  CHECK(act_group(e, flip, 1) == Form::character(1, 0, {-1, 0, 0}, CycScalar(1)));
  CHECK(act_group(Form::dx_var(1, 0, 1), flip, 1) == -Form::dx_var(1, 0, 1));
}

TEST_CASE("group tables") {
  GroupData g = GroupData::product_of(GroupData::cyclic(3), GroupData::cyclic(3));
  CHECK(g.order() == 9);
  CHECK(g.names[5] == "(1,2)");
  CHECK(g.mul(5, 5) == 7);
  CHECK(g.mul(5, g.inv(5)) == g.identity);
  CHECK(g.product({1, 3, 4}) == g.mul(g.mul(1, 3), 4));
  CHECK(all_tuples(3, 2).size() == 9);
  CHECK(tuple_str({1, 2}) == "(1,2)");

  Model bad;
  bad.M.kind = ModelManifold::Kind::torus;
  bad.M.dim = 1;
  bad.M.N = 2;
  bad.G = GroupData::cyclic(2, 1);
  bad.G.action[1].A[0][0] = 2;
  CHECK_THROWS_AS(validate_model(bad), std::invalid_argument);
}
