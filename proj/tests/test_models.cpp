#include <doctest.h>

#include "gcl/suites.hpp"

using namespace gcl;

namespace {

const Scenario& fixture(const std::string& name) {
  static std::map<std::string, Scenario> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_scenario(std::string(GCL_DATA_DIR) + "/" + name + ".json")).first;
  return it->second;
}

json base_scenario() {
  return json::parse(R"({
    "schema_version": 1, "name": "z2",
    "manifold": {"kind": "torus", "dim": 1, "cyclotomic_order": 2},
    "group": {"elements": ["e", "s"], "mult_table": [["e", "s"], ["s", "e"]],
              "action": {"s": {"matrix": [[1]], "translation": ["1/2"]}}}
  })");
}

std::string parse_error(const json& j) {
  try {
    parse_scenario(j);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

Form one(int m, int k) { return Form::scalar(m, k, CycScalar(1)); }

}  // namespace

TEST_CASE("noncommutative torus multiplication") {
  const Scenario& s = fixture("nct3");
  auto d = [&](int g) { return ConvSection::delta(g, one(0, 0)); };
  // (0,1) * (1,0) = zeta (1,1), (1,0) * (0,1) = (1,1)
  ConvSection uv = conv_mul(s.md, s.d, d(1), d(3));
  ConvSection vu = conv_mul(s.md, s.d, d(3), d(1));
  CHECK(conv_equal(uv, ConvSection::delta(4, Form::scalar(0, 0, CycScalar::zeta(3, 1)))));
  CHECK(conv_equal(vu, d(4)));
  ConvSection u3 = conv_mul(s.md, s.d, d(1), conv_mul(s.md, s.d, d(1), d(1)));
  CHECK(conv_equal(u3, d(0)));
  ConvSection twice = d(5);
  twice *= CycScalar(2);
  CHECK(conv_equal(conv_mul(s.md, s.d, ConvSection::one(CycScalar(2)), d(5)), twice));
}

TEST_CASE("gerbe data on the half-shift circle") {
  const Scenario& s = fixture("t1z2");
  // alpha(s,s) = dlog(-e_2) - a_s - a_s^s = 2dx - 6dx
  CHECK(derive_alpha(s.md, s.d, 1, 1) == Form::dx_var(1, 0, 1) * mpq_class(-4));
  CHECK(derive_alpha(s.md, s.d, 0, 1).is_zero());
  CHECK(curvature_theta(s.md, s.d, 1).is_zero());
  CHECK(verify_gerbe(s.md, s.d).pass());
  DDCocycle dd = dd_cocycle(s.md, s.d);
  CHECK(dd.alpha[1][1] == Form::dx_var(1, 0, 1) * mpq_class(-4));
}

TEST_CASE("gerbe checks catch a broken multiplier") {
  Scenario s = fixture("nct3");
  s.d.lambda[1][3].zeta_exp += 1;
  CHECK_FALSE(check_lambda_cocycle(s.md, s.d).pass());
}

TEST_CASE("endomorphism algebra") {
  const Scenario& s = fixture("nct3");
  int n = s.md.G.order();
  EndForm e12 = EndForm::elementary(1, 2, one(0, 0)), e21 = EndForm::elementary(2, 1, one(0, 0));
  CHECK(endo_trace(e12, n).is_zero());
  CHECK(endo_trace(endo_mul(e12, e21), n) == one(0, 0));
  CHECK(endo_mul(e12, e12).is_zero());
  CHECK(endo_trace(EndForm::unit(0, 0, CycScalar(1)), n) == Form::scalar(0, 0, CycScalar(9)));
  CHECK(endo_trace(graded_commutator(e12, e21), n).is_zero());
  // g.E_{y,z} lands on E_{gy,gz}
  EndForm a = endo_act(s.md, s.d, 3, e12);
  CHECK(a.entries().size() == 1);
  CHECK(a.entries().begin()->first == std::make_pair(s.md.G.mul(3, 1), s.md.G.mul(3, 2)));
}

TEST_CASE("connection data vanish on a point with constant multipliers") {
  const Scenario& s = fixture("nct3");
  CHECK(vartheta(s.md, s.d, {1, 3}).is_zero());
  CHECK(theta3(s.md, s.d, {1, 3, 5}).is_zero());
  CHECK(discrepancy_A(s.md, s.d, 4).is_zero());
}

TEST_CASE("vartheta on the half-shift circle") {
  const Scenario& s = fixture("t1z2");
  // level 0: the curvature of diag(a), zero in dimension one
  CHECK(vartheta(s.md, s.d, {}).is_zero());
  EndForm v = vartheta(s.md, s.d, {1});
  CHECK_FALSE(v.is_zero());
  CHECK(theta3_from_nabla(s.md, s.d, {1}) == EndForm::scalar_id(theta3(s.md, s.d, {1}), 2));
  CHECK(check_vartheta_compatible(s.md, s.d, 2).pass());
}

TEST_CASE("cyclic operators on a trace") {
  const Scenario& s = fixture("nct3");
  auto A = end_algebra(s.md, s.d);
  int n = s.md.G.order();
  Cochain<EndSection> tr = [n](const std::vector<EndSection>& a) {
    UScalar r;
    if (a.size() == 1) r.add(0, integrate_total(endo_trace(a[0], n)));
    return r;
  };
  Sampler S(s.md, 4);
  for (int i = 0; i < 10; ++i) CHECK(b_apply(A, tr)(S.end_chain(1, true)).is_zero());
  // B tr lands in arity one, where tr vanishes
  for (int i = 0; i < 5; ++i) CHECK(B_apply(A, tr)(S.end_chain(0, true)).is_zero());
  UScalar want;
  want.add(0, CycScalar(1));
  CHECK(tr({EndForm::elementary(2, 2, one(0, 0))}) == want);
}

TEST_CASE("homotopy and group coboundary") {
  const Scenario& s = fixture("t1z2");
  auto A = end_algebra(s.md, s.d);
  Sampler S(s.md, 9);
  S.freq = 1;
  for (int i = 0; i < 10; ++i) {
    auto E = random_equivariant_gcochain(s.md, s.d, S.rng());
    Tuple g = S.tuple(2);
    auto a = S.end_chain(1, false);
    CHECK(delta_homog(homotopy_h(A, E))(g, a) + homotopy_h(A, delta_homog(E))(g, a) == E(g, a));
  }
  GroupCochain c = [](const Tuple& g) { return CycScalar(long(g.size() * 3 + (g.empty() ? 0 : g[0]))); };
  GroupCochain dc = group_coboundary(c, s.md.G);
  GroupCochain ddc = group_coboundary(dc, s.md.G);
  for (auto& t : all_tuples(2, 3)) CHECK(ddc(t).is_zero());
}

TEST_CASE("Whitney forms integrate to the cochain") {
  const Scenario& s = fixture("nct3");
  GroupCochain c = [](const Tuple& g) {
    long v = 1;
    for (int x : g) v = v * 3 + x;
    return CycScalar(v);
  };
  for (int p = 1; p <= 2; ++p) {
    Window w = whitney_extend(c, p, s.md, 3);
    for (auto& t : all_tuples(9, p)) {
      if (t[0] == 0 || t.back() == 0) continue;
      CHECK(integrate_total(w(t)) == c(t));
    }
    CHECK(check_compatible(w, s.md).pass());
  }
}

TEST_CASE("JLO cochain in degree zero is the trace") {
  const Scenario& s = fixture("nct3");
  JLO j(s.md, s.d);
  UForm w = omega_by_name(s, "one", 3, 1);
  EndSection a0 = EndForm::elementary(8, 8, Form::scalar(0, 0, CycScalar::zeta(3, 1)));
  UScalar v = j.tau_eval(w, {}, {a0});
  UScalar want;
  want.add(0, CycScalar::zeta(3, 1));
  CHECK(v == want);
  CHECK(j.tau_eval(w, {}, {EndForm::elementary(1, 2, one(0, 0))}).is_zero());
}

TEST_CASE("JLO chain identity on a sample") {
  const Scenario& s = fixture("t1z2");
  JLO j(s.md, s.d);
  TwistTriple th = twist_of(s.md, s.d, 3);
  UForm w = omega_by_name(s, "whit1", 3, 2);
  Sampler S(s.md, 12);
  S.freq = 1;
  for (int i = 0; i < 12; ++i) {
    auto c = tau_chain_check(j, w, th, S.tuple(1 + i % 2), S.end_chain(i % 2, true));
    CHECK(c.pass);
  }
}

TEST_CASE("scenario loader") {
  CHECK(parse_error(base_scenario()).empty());
  Scenario s = parse_scenario(base_scenario());
  CHECK(s.md.G.identity == 0);
  CHECK(s.md.G.action[1].bN[0] == 1);
  CHECK(s.digest.size() == 16);

  json j = base_scenario();
  j["group"]["mult_table"] = json::parse(R"([["e", "s"], ["s", "s"]])");
  CHECK(parse_error(j).find("inverse") != std::string::npos);

  j = base_scenario();
  j["group"]["action"]["s"]["translation"] = json::parse(R"(["1/3"])");
  CHECK(parse_error(j).find("does not divide") != std::string::npos);

  j = base_scenario();
  j["colour"] = 1;
  CHECK(parse_error(j).find("colour") != std::string::npos);

  j = base_scenario();
  j["schema_version"] = 2;
  CHECK(parse_error(j).find("schema_version") != std::string::npos);

  // identity and inverses but no group law
  json k = json::parse(R"({
    "schema_version": 1,
    "manifold": {"kind": "point", "dim": 0, "cyclotomic_order": 1},
    "group": {"elements": ["e", "a", "b", "c"],
              "mult_table": [["e","a","b","c"],["a","e","c","b"],["b","c","e","a"],["c","a","b","e"]]}
  })");
  std::string err = parse_error(k);
  CHECK(err.find("associat") != std::string::npos);
  CHECK(err.find("(") != std::string::npos);

  // potentials must be 1-forms
  j = base_scenario();
  j["gerbe"] = json::parse(R"({"a": {"s": [{"freq": [1], "coeff": 1}]}})");
  CHECK(parse_error(j).find("1-forms") != std::string::npos);

  // a non-cocycle multiplier is rejected
  j = base_scenario();
  j["gerbe"] = json::parse(R"({"lambda": [{"g": "s", "h": "e", "zeta_exp": 1}]})");
  CHECK(parse_error(j).find("verification") != std::string::npos);
}

TEST_CASE("scenario round trip") {
  for (auto name : {"nct3", "t1z2", "t2z4", "z2z2", "point_z2"}) {
    const Scenario& s = fixture(name);
    Scenario t = parse_scenario(scenario_json(s));
    CHECK(t.digest == s.digest);
    CHECK(scenario_json(t).dump() == scenario_json(s).dump());
  }
}

TEST_CASE("form and scalar json") {
  CycScalar c = CycScalar::zeta(4, 1) * mpq_class(3, 2) + CycScalar(1);
  CHECK(parse_scalar(scalar_json(c), 4) == c);
  CHECK(parse_scalar(json("5/7"), 1) == CycScalar(mpq_class(5, 7)));
  Form f = Form::character(2, 1, {1, -1, 0}, c) * Form::dx_var(2, 1, 2) * Form::t_var(2, 1, 1) +
           Form::dt_var(2, 1, 1) * CycScalar(3);
  CHECK(parse_form(form_json(f), 2, 1, 4) == f);
}

TEST_CASE("reports are sorted and omit timings by default") {
  Report r;
  r.suite = "x";
  CheckResult a, b;
  a.id = "b";
  a.wall_ms = 3;
  b.id = "a";
  b.pass = false;
  r.add(a);
  r.add(b);
  json j = r.to_json();
  CHECK(j["checks"][0]["id"] == "a");
  CHECK_FALSE(j["pass"].get<bool>());
  CHECK_FALSE(j["checks"][1].contains("wall_ms"));
  CHECK(r.to_json(true)["checks"][1].contains("wall_ms"));
}

TEST_CASE("serial and parallel suites agree") {
  const Scenario& s = fixture("t1z2");
  SuiteOptions o = options_for(s);
  Report r1 = homological_suite(s, o);
  o.jobs = 3;
  Report r3 = homological_suite(s, o);
  CHECK(r1.to_json().dump() == r3.to_json().dump());
  CHECK(r1.pass());
}
