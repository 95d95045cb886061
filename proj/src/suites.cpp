#include "gcl/suites.hpp"

#include <chrono>

#include "gcl/exec.hpp"

namespace gcl {

namespace {

std::uint64_t seed_for(std::uint64_t base, const std::string& id, long i) {
  std::uint64_t h = 1469598103934665603ULL ^ base;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= (std::uint64_t)i * 0x9e3779b97f4a7c15ULL;
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

struct Outcome {
  bool pass = true;
  bool nonzero = false;
  json witness;
};

using Probe = std::function<Outcome(long, Sampler&)>;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

CheckResult run_check(const std::string& id, long n, const Model& md, const SuiteOptions& o, const Probe& f,
                      bool track_nonzero = false) {
  auto t0 = std::chrono::steady_clock::now();
  auto res = parallel_map(
      (std::size_t)n,
      [&](std::size_t i) {
        Sampler S(md, seed_for(o.seed, id, (long)i));
        S.freq = 1;
        try {
          return f((long)i, S);
        } catch (const std::exception& e) {
          Outcome r;
          r.pass = false;
          r.witness = {{"exception", e.what()}};
          return r;
        }
      },
      o.jobs);
  CheckResult c;
  c.id = id;
  c.count = n;
  if (track_nonzero) c.nonzero = 0;
  for (long i = 0; i < n; ++i) {
    if (track_nonzero && res[i].nonzero) ++c.nonzero;
    if (!res[i].pass && c.pass) {
      c.pass = false;
      c.witness = res[i].witness;
      c.witness["sample"] = i;
    }
  }
  c.wall_ms = ms_since(t0);
  return c;
}

Outcome same(const UScalar& l, const UScalar& r) {
  Outcome o;
  o.pass = l == r;
  o.nonzero = !l.is_zero() || !r.is_zero();
  if (!o.pass) o.witness = {{"lhs", uscalar_json(l)}, {"rhs", uscalar_json(r)}};
  return o;
}

Outcome vanishes(const UScalar& v) { return same(v, UScalar{}); }

Outcome same_form(const Form& l, const Form& r) {
  Outcome o;
  o.pass = l == r;
  o.nonzero = !l.is_zero() || !r.is_zero();
  if (!o.pass) o.witness = {{"lhs", form_json(l)}, {"rhs", form_json(r)}};
  return o;
}

Outcome same_end(const EndForm& l, const EndForm& r) {
  Outcome o;
  o.pass = l == r;
  o.nonzero = !l.is_zero() || !r.is_zero();
  if (!o.pass) o.witness = {{"lhs", l.str()}, {"rhs", r.str()}};
  return o;
}

CheckResult from_checklist(const std::string& id, const CheckList& cl, double ms) {
  CheckResult c;
  c.id = id;
  c.count = cl.checks;
  c.pass = cl.pass();
  if (!c.pass) {
    json f = json::array();
    for (size_t i = 0; i < cl.failures.size() && i < 5; ++i) f.push_back(cl.failures[i]);
    c.witness = {{"failures", f}, {"total", cl.failures.size()}};
  }
  c.wall_ms = ms;
  return c;
}

CheckResult from_compat(const std::string& id, const CompatReport& r, double ms) {
  CheckResult c;
  c.id = id;
  c.count = r.checks;
  c.pass = r.pass();
  if (!c.pass) {
    const auto& f = r.failures.front();
    c.witness = {{"level", f.level}, {"face", f.face}, {"tuple", tuple_str(f.tuple)}, {"diff", f.diff},
                 {"total", r.failures.size()}};
  }
  c.wall_ms = ms;
  return c;
}

Report make_report(const std::string& suite, const std::string& digest) {
  Report r;
  r.suite = suite;
  r.digest = digest;
  return r;
}

// normalized group cochain with small cyclotomic values
GroupCochain random_group_cochain(const Model& md, std::uint64_t seed) {
  int N = md.N(), id = md.G.identity;
  return [seed, N, id](const Tuple& g) {
    for (int x : g)
      if (x == id) return CycScalar();
    std::uint64_t h = seed;
    for (int x : g) h = seed_for(h, "c", x + 1);
    CycScalar s((long)(h % 5) - 2);
    if (N > 1) s *= CycScalar::zeta(N, (long)((h >> 8) % (std::uint64_t)N));
    return s;
  };
}

Form invariant_one_form(const Model& md) {
  int m = md.dim();
  Form b0 = Form::dx_var(m, 0, 1) + Form::character(m, 0, {1, 0, 0}, CycScalar(1)) * Form::dx_var(m, 0, m);
  Form b(m, 0);
  for (int g = 0; g < md.G.order(); ++g) b += md.act(b0, g);
  return b;
}

Form linear_seed_form(const Model& md) {
  int m = md.dim();
  Form b = Form::scalar(m, 0, CycScalar(2));
  if (m) b += Form::character(m, 0, {1, 0, 0}, CycScalar(1)) * Form::dx_var(m, 0, 1);
  if (m > 1) b += Form::character(m, 0, {0, 1, 0}, CycScalar(-1)) * Form::dx_var(m, 0, 2);
  return b;
}

}  // namespace

SuiteOptions options_for(const Scenario& s) {
  SuiteOptions o;
  o.seed = s.seed;
  o.max_level = s.trunc.max_level;
  o.max_arity = s.trunc.max_cyclic_arity;
  o.exp_cap = s.trunc.exp_order_cap;
  return o;
}

Model torus_model(int m) {
  Model md;
  md.M.kind = ModelManifold::Kind::torus;
  md.M.dim = m;
  md.M.N = 1;
  md.G = GroupData::cyclic(1, m);
  return md;
}

std::vector<std::string> omega_names(const Model& md) {
  std::vector<std::string> v{"one", "lin", "whit1", "whit2", "d_one", "d_lin", "d_whit1"};
  if (md.dim() > 0) {
    v.push_back("inv1");
    v.push_back("d_inv1");
  }
  return v;
}

UForm omega_by_name(const Scenario& s, const std::string& name, int max_level, std::uint64_t seed) {
  const Model& md = s.md;
  int m = md.dim();
  if (name.rfind("d_", 0) == 0) {
    TwistTriple th = twist_of(md, s.d, max_level);
    return d_twisted(omega_by_name(s, name.substr(2), max_level, seed), th);
  }
  Window w;
  if (name == "one") {
    w.max_level = max_level;
    w.at = [m](const Tuple& t) { return Form::scalar(m, (int)t.size(), CycScalar(1)); };
  } else if (name == "lin") {
    w = linear_extend(linear_seed_form(md), md, max_level);
  } else if (name == "inv1") {
    w = invariant_extend(invariant_one_form(md), md, max_level);
  } else if (name == "whit1") {
    w = whitney_extend(random_group_cochain(md, seed_for(seed, "whit1", 0)), 1, md, max_level);
  } else if (name == "whit2") {
    w = whitney_extend(random_group_cochain(md, seed_for(seed, "whit2", 0)), 2, md, max_level);
  } else {
    throw std::invalid_argument("unknown test form '" + name + "'");
  }
  return UForm::from_window(memoize(w));
}

Report cdga_suite(const Model& md, const SuiteOptions& o) {
  Report r = make_report("cdga", "");
  long n = std::max(100, 5 * o.samples);
  std::string tag = "cdga.T" + std::to_string(md.dim()) + ".";
  auto pick_form = [&](Sampler& S, int min_level = 0) {
    int k = min_level + S.pick(4 - min_level);
    return S.form(k, 4);
  };
  auto leib = [](const Form& w, const Form& e, auto d) {
    Form rhs(w.dim(), w.level());
    for (int p = 0; p <= w.dim() + w.level(); ++p) {
      Form wp = w.degree_part(p);
      if (wp.is_zero()) continue;
      rhs += wedge(d(wp), e);
      Form t = wedge(wp, d(e));
      rhs += (p & 1) ? -t : t;
    }
    return rhs;
  };
  auto dsig = [](const Form& w) { return d_simplex(w, SimplexD::signed_); };
  auto duns = [](const Form& w) { return d_simplex(w, SimplexD::unsigned_); };
  r.add(run_check(tag + "D_squared", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S);
    return same_form(d_manifold(d_manifold(w)), md.zero(w.level()));
  }));
  r.add(run_check(tag + "dsimplex_squared", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S, 1);
    return same_form(duns(duns(w)) + dsig(dsig(w)), md.zero(w.level()));
  }));
  r.add(run_check(tag + "D_dsimplex_signed_anticommute", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S, 1);
    return same_form(d_manifold(dsig(w)) + dsig(d_manifold(w)), md.zero(w.level()));
  }));
  r.add(run_check(tag + "D_dsimplex_unsigned_commute", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S, 1);
    return same_form(d_manifold(duns(w)), duns(d_manifold(w)));
  }));
  r.add(run_check(tag + "total_squared", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S);
    return same_form(d_total(d_total(w)), md.zero(w.level()));
  }));
  r.add(run_check(tag + "leibniz_D", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S);
    Form e = S.form(w.level(), 3);
    return same_form(d_manifold(wedge(w, e)), leib(w, e, [](const Form& x) { return d_manifold(x); }));
  }));
  r.add(run_check(tag + "leibniz_dsimplex_signed", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S, 1);
    Form e = S.form(w.level(), 3);
    return same_form(dsig(wedge(w, e)), leib(w, e, dsig));
  }));
  r.add(run_check(tag + "leibniz_total", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S);
    Form e = S.form(w.level(), 3);
    return same_form(d_total(wedge(w, e)), leib(w, e, [](const Form& x) { return d_total(x); }));
  }));
  r.add(run_check(tag + "stokes_simplex", n, md, o, [&](long, Sampler& S) {
    Form w = pick_form(S, 1);
    Form rhs(md.dim(), 0);
    for (int i = 0; i <= w.level(); ++i) {
      Form p = integrate_simplex(pullback_face(w, i));
      rhs += (i & 1) ? -p : p;
    }
    return same_form(integrate_simplex(duns(w)), rhs);
  }));
  r.add(run_check(tag + "stokes_manifold", n, md, o, [&](long, Sampler& S) {
    Form w = S.form(0, 4);
    UScalar v;
    v.add(0, integrate_manifold(d_manifold(w)));
    return vanishes(v);
  }));
  return r;
}

Report gerbe_suite(const Scenario& s, const SuiteOptions& o) {
  Report r = make_report("gerbe", s.digest);
  const std::string tag = "gerbe." + s.name + ".";
  auto t0 = std::chrono::steady_clock::now();
  r.add(from_checklist(tag + "lambda_cocycle", check_lambda_cocycle(s.md, s.d), ms_since(t0)));
  t0 = std::chrono::steady_clock::now();
  r.add(from_checklist(tag + "delta_theta_eq_minus_d_alpha", check_theta_relation(s.md, s.d), ms_since(t0)));
  t0 = std::chrono::steady_clock::now();
  r.add(from_checklist(tag + "alpha_identity", check_alpha_identity(s.md, s.d, std::max(3, o.max_level)), ms_since(t0)));
  return r;
}

Report bundle_suite(const Scenario& s, const SuiteOptions& o) {
  Report r = make_report("bundle", s.digest);
  const Model& md = s.md;
  const GerbeDatum& d = s.d;
  const std::string tag = "bundle." + s.name + ".";
  int K = o.max_level, order = md.G.order();
  auto t0 = std::chrono::steady_clock::now();
  r.add(from_compat(tag + "vartheta_compatible", check_vartheta_compatible(md, d, K, o.jobs), ms_since(t0)));
  Window Th = theta3_window(md, d, K);
  t0 = std::chrono::steady_clock::now();
  r.add(from_compat(tag + "Theta_compatible", check_compatible(Th, md, o.jobs), ms_since(t0)));

  std::vector<Tuple> tuples;
  for (int k = 0; k <= K; ++k)
    for (auto& t : all_tuples(order, k)) tuples.push_back(t);
  auto vts = parallel_map(tuples.size(), [&](std::size_t i) { return vartheta(md, d, tuples[i]); }, o.jobs);

  // (nabla^k)^2 a = [vartheta, a]: o.samples per tuple, cycling through the tuples
  long per = std::max(20, o.samples);
  r.add(run_check(tag + "nabla_squared", (long)tuples.size() * per, md, o, [&](long i, Sampler& S) {
    const Tuple& t = tuples[i / per];
    int k = (int)t.size();
    EndForm a = S.end_random(2).at_level(k);
    if (S.pick(2)) a = endo_mul(a, EndForm::scalar_id(S.form(k, 2), order));
    EndForm lhs = nabla_k_apply(md, d, t, nabla_k_apply(md, d, t, a));
    return same_end(lhs, graded_commutator(vts[i / per], a));
  }, true));
  r.add(run_check(tag + "Theta_eq_minus_nabla_vartheta", (long)tuples.size(), md, o, [&](long i, Sampler&) {
    return same_end(theta3_from_nabla(md, d, tuples[i]), EndForm::scalar_id(theta3(md, d, tuples[i]), order));
  }, true));
  t0 = std::chrono::steady_clock::now();
  TwistTriple tt(Th, md);
  CheckList cl;
  Tuple wit;
  cl.expect(tt.closed(md, &wit), "Theta not closed at " + tuple_str(wit));
  r.add(from_checklist(tag + "Theta_closed", cl, ms_since(t0)));
  t0 = std::chrono::steady_clock::now();
  CheckList dd;
  dd_from_Theta(md, d, tt, &dd);
  r.add(from_checklist(tag + "integrated_Theta_eq_alpha_theta", dd, ms_since(t0)));
  r.add(run_check(tag + "duhamel", o.samples, md, o, [&](long, Sampler& S) {
    int k = S.pick(std::min(K, 2) + 1);
    Tuple t = S.tuple(k);
    EndForm vt = vartheta(md, d, t);
    Outcome out;
    out.pass = duhamel_holds(vt, S.end_random(2).at_level(k), (md.dim() + k) / 2 + 1, order);
    return out;
  }));
  r.add(run_check(tag + "trace_of_commutator", o.samples, md, o, [&](long, Sampler& S) {
    int k = S.pick(3);
    EndForm x = endo_mul(S.end_random(2).at_level(k), EndForm::scalar_id(S.form(k, 2), order));
    EndForm y = endo_mul(S.end_random(2).at_level(k), EndForm::scalar_id(S.form(k, 2), order));
    return same_form(endo_trace(graded_commutator(x, y), order), md.zero(k));
  }));
  r.add(run_check(tag + "action_composition", o.samples, md, o, [&](long, Sampler& S) {
    int g = S.pick(order), h = S.pick(order);
    EndForm f = S.end_random(3);
    return same_end(endo_act(md, d, h, endo_act(md, d, g, f)), endo_act(md, d, md.G.mul(h, g), f));
  }));
  return r;
}

Report homological_suite(const Scenario& s, const SuiteOptions& o) {
  Report r = make_report("homological", s.digest);
  const Model& md = s.md;
  const GerbeDatum& d = s.d;
  const std::string tag = "hom." + s.name + ".";
  auto A = end_algebra(md, d);
  auto C = conv_algebra(md, d);
  int n = std::max(20, o.samples), NA = o.max_arity;
  int order = md.G.order();
  auto arity = [&](Sampler& S) { return S.pick(NA + 1); };

  r.add(run_check(tag + "b_squared", n, md, o, [&](long, Sampler& S) {
    auto c = random_end_cochain(md, S.rng());
    return vanishes(b_apply(A, b_apply(A, c))(S.end_chain(arity(S) + 1, true)));
  }));
  r.add(run_check(tag + "B_squared", n, md, o, [&](long, Sampler& S) {
    auto c = random_end_cochain(md, S.rng());
    return vanishes(B_apply(A, B_apply(A, c))(S.end_chain(arity(S), true)));
  }));
  r.add(run_check(tag + "bB_plus_Bb", n, md, o, [&](long, Sampler& S) {
    auto c = random_end_cochain(md, S.rng());
    auto a = S.end_chain(arity(S), true);
    return vanishes(b_apply(A, B_apply(A, c))(a) + B_apply(A, b_apply(A, c))(a));
  }));
  r.add(run_check(tag + "delta_group_squared", n, md, o, [&](long, Sampler& S) {
    auto F = random_end_gcochain(md, S.rng());
    auto g = S.tuple(2 + S.pick(2));
    return vanishes(delta_group(A, delta_group(A, F))(g, S.end_chain(S.pick(2), true)));
  }));
  r.add(run_check(tag + "delta_homog_squared", n, md, o, [&](long, Sampler& S) {
    auto F = random_end_gcochain(md, S.rng());
    auto g = S.tuple(3 + S.pick(2));
    return vanishes(delta_homog(delta_homog(F))(g, S.end_chain(S.pick(2), true)));
  }));
  r.add(run_check(tag + "homotopy_identity", n, md, o, [&](long, Sampler& S) {
    auto E = random_equivariant_gcochain(md, d, S.rng());
    auto g = S.tuple(2 + S.pick(2));
    auto a = S.end_chain(S.pick(2), false);
    return same(delta_homog(homotopy_h(A, E))(g, a) + homotopy_h(A, delta_homog(E))(g, a), E(g, a));
  }, true));
  r.add(run_check(tag + "psi0_intertwines", n, md, o, [&](long, Sampler& S) {
    auto f = random_end_gcochain(md, S.rng());
    auto g = S.tuple(2 + S.pick(2));
    auto a = S.end_chain(S.pick(2), true);
    return same(psi0(A, delta_group(A, f))(g, a), delta_homog(psi0(A, f))(g, a));
  }, true));
  r.add(run_check(tag + "psi0_equivariant", n, md, o, [&](long, Sampler& S) {
    auto f = random_end_gcochain(md, S.rng());
    auto g = S.tuple(1 + S.pick(3));
    auto a = S.end_chain(S.pick(2), true);
    int x = S.pick(order);
    Tuple xg;
    for (int v : g) xg.push_back(md.G.mul(x, v));
    return same(psi0(A, f)(xg, act_args(A, x, a)), psi0(A, f)(g, a));
  }, true));
  r.add(run_check(tag + "psi1_invariant", n, md, o, [&](long, Sampler& S) {
    auto E = random_equivariant_gcochain(md, d, S.rng());
    auto c = psi1_component(A, E, S.pick(3));
    auto a = S.end_chain(S.pick(2), false);
    return same(c(act_args(A, S.pick(order), a)), c(a));
  }, true));
  r.add(run_check(tag + "psi1_chain_map", n, md, o, [&](long, Sampler& S) {
    auto E = random_equivariant_gcochain(md, d, S.rng());
    int k = S.pick(3);
    auto a = S.end_chain(S.pick(2), false);
    auto lhs = bB_apply(A, psi1_component(A, E, k))(a);
    auto rhs = psi1_component(A, delta_homog(E), k + 1)(a) + psi1_component(A, D_total(A, E), k)(a);
    return same(lhs, rhs);
  }, true));
  r.add(run_check(tag + "psi2_b", n, md, o, [&](long, Sampler& S) {
    auto c = psi1_component(A, random_equivariant_gcochain(md, d, S.rng()), S.pick(2));
    auto a = S.conv_args(S.pick(NA + 1));
    return same(psi2(md, d, b_apply(A, c))(a), b_apply(C, psi2(md, d, c))(a));
  }, true));
  r.add(run_check(tag + "psi2_uB", n, md, o, [&](long, Sampler& S) {
    auto c = psi1_component(A, random_equivariant_gcochain(md, d, S.rng()), S.pick(2));
    auto a = S.conv_args(S.pick(NA + 1));
    Cochain<EndSection> Bc = B_apply(A, c);
    auto lhs = psi2(md, d, [Bc](const std::vector<EndSection>& x) { return Bc(x).shifted(1); })(a);
    auto rhs = B_apply(C, psi2(md, d, c))(a).shifted(1);
    return same(lhs, rhs);
  }, true));
  r.add(run_check(tag + "conv_associative", n, md, o, [&](long, Sampler& S) {
    ConvSection x = S.conv_random(), y = S.conv_random(), z = S.conv_random();
    Outcome out;
    out.pass = conv_equal(conv_mul(md, d, conv_mul(md, d, x, y), z), conv_mul(md, d, x, conv_mul(md, d, y, z)));
    return out;
  }));
  r.add(run_check(tag + "end_associative", n, md, o, [&](long, Sampler& S) {
    EndForm x = S.end_random(3), y = S.end_random(3), z = S.end_random(3);
    return same_end(endo_mul(endo_mul(x, y), z), endo_mul(x, endo_mul(y, z)));
  }));
  return r;
}

Report jlo_suite(const Scenario& s, const SuiteOptions& o) {
  Report r = make_report("chain-check", s.digest);
  const Model& md = s.md;
  int K = std::min(2, o.max_level), NA = std::min(1, o.max_arity);
  JLO j(md, s.d, o.exp_cap);
  TwistTriple th = twist_of(md, s.d, K + 1);
  // stratified: at least 10 samples in every (k, n) cell
  long per = (long)(K + 1) * (NA + 1) * std::max(10, o.samples / 2);
  for (auto& name : omega_names(md)) {
    UForm w = omega_by_name(s, name, K + 1, o.seed);
    r.add(run_check("jlo." + s.name + ".chain." + name, per, md, o, [&](long i, Sampler& S) {
      int k = int(i % (K + 1)), n = int(i / (K + 1)) % (NA + 1);
      auto c = tau_chain_check(j, w, th, S.tuple(k), S.end_chain(n, true));
      Outcome out = same(c.lhs, c.rhs);
      if (!out.pass) out.witness["k"] = k, out.witness["n"] = n;
      return out;
    }, true));
  }
  return r;
}

Report composite_suite(const Scenario& s, const SuiteOptions& o) {
  Report r = make_report("composite", s.digest);
  const Model& md = s.md;
  int NA = std::min(2, o.max_arity), L = NA + 2;
  JLO j(md, s.d, o.exp_cap);
  TwistTriple th = twist_of(md, s.d, L);
  auto C = conv_algebra(md, s.d);
  long per = std::max<long>(o.samples / 2, 3L * (NA + 1));
  for (auto& name : omega_names(md)) {
    UForm w = omega_by_name(s, name, L, o.seed);
    r.add(run_check("composite." + s.name + ".chain." + name, per, md, o, [&](long i, Sampler& S) {
      auto a = S.conv_args(int(i % (NA + 1)));
      auto c = composite_chain_check(j, w, th, a);
      return same(c.lhs, c.rhs);
    }, true));
    if (name.rfind("d_", 0) != 0) continue;
    // d_Theta-closed: the composite is a (b + uB)-cocycle; nonzero counts the composite values themselves
    r.add(run_check("composite." + s.name + ".closed." + name, per, md, o, [&](long i, Sampler& S) {
      auto a = S.conv_args(int(i % (NA + 1)));
      auto f = composite(j, w);
      Outcome out = vanishes(bB_apply(C, f)(a));
      out.nonzero = !f(a).is_zero();
      return out;
    }, true));
  }
  return r;
}

Report cap_suite(const Scenario& s, const SuiteOptions& o) {
  Report r = make_report("caps", s.digest);
  const Model& md = s.md;
  int K = std::min(2, o.max_level), NA = std::min(2, o.max_arity);
  JLO j0(md, s.d, o.exp_cap), j1(md, s.d, (md.dim() + K) / 2 + 2);
  auto names = omega_names(md);
  r.add(run_check("caps." + s.name + ".exp_order", o.samples, md, o, [&](long i, Sampler& S) {
    UForm w = omega_by_name(s, names[i % names.size()], K + 1, o.seed);
    Tuple g = S.tuple(S.pick(K + 1));
    auto a = S.end_chain(S.pick(2), true);
    return same(j0.tau_eval(w, g, a), j1.tau_eval(w, g, a));
  }, true));
  r.add(run_check("caps." + s.name + ".max_level", o.samples, md, o, [&](long i, Sampler& S) {
    const std::string& nm = names[i % names.size()];
    UForm w0 = omega_by_name(s, nm, K + 1, o.seed), w1 = omega_by_name(s, nm, K + 3, o.seed);
    Tuple g = S.tuple(S.pick(K + 1));
    auto a = S.end_chain(S.pick(2), true);
    return same(j0.tau_eval(w0, g, a), j0.tau_eval(w1, g, a));
  }, true));
  r.add(run_check("caps." + s.name + ".composite_degree", o.samples / 2, md, o, [&](long i, Sampler& S) {
    const std::string& nm = names[i % names.size()];
    UForm w0 = omega_by_name(s, nm, NA + 2, o.seed), w1 = omega_by_name(s, nm, NA + 3, o.seed);
    auto a = S.conv_args(S.pick(NA + 1));
    return same(composite(j0, w0)(a), composite(j0, w1)(a));
  }, true));
  return r;
}

Report dd_report(const Scenario& s, const SuiteOptions&) {
  Report r = make_report("dd", s.digest);
  const auto& G = s.md.G;
  auto t0 = std::chrono::steady_clock::now();
  TwistTriple tt = twist_of(s.md, s.d, 3);
  CheckList cl;
  DDCocycle got = dd_from_Theta(s.md, s.d, tt, &cl);
  DDCocycle ref = dd_cocycle(s.md, s.d);
  CheckList tab;
  json alpha = json::object(), theta = json::object();
  for (int g = 0; g < G.order(); ++g) {
    tab.expect(got.theta[g] == ref.theta[g], "theta table mismatch at " + G.names[g]);
    theta[G.names[g]] = form_json(got.theta[g]);
    for (int h = 0; h < G.order(); ++h) {
      tab.expect(got.alpha[g][h] == ref.alpha[g][h], "alpha table mismatch at (" + G.names[g] + "," + G.names[h] + ")");
      alpha[G.names[g] + "," + G.names[h]] = form_json(got.alpha[g][h]);
    }
  }
  r.add(from_checklist("dd." + s.name + ".integrated_Theta", cl, ms_since(t0)));
  CheckResult c = from_checklist("dd." + s.name + ".tables", tab, ms_since(t0));
  c.values = {{"alpha", alpha}, {"theta", theta}};
  r.add(c);
  return r;
}

Report pair_report(const Scenario& s, const json& args, const SuiteOptions& o) {
  Report r = make_report("pair", s.digest);
  if (!args.is_object() || args.value("schema_version", 0) != kSchemaVersion)
    throw ScenarioError("args: expected an object with schema_version " + std::to_string(kSchemaVersion));
  std::vector<std::vector<ConvSection>> tuples;
  for (auto& t : args.at("tuples")) {
    std::vector<ConvSection> a;
    for (auto& x : t) a.push_back(parse_conv(x, s.md));
    if (a.empty()) throw ScenarioError("args: empty argument tuple");
    tuples.push_back(a);
  }
  std::vector<std::string> names{"one"};
  if (args.contains("omega")) names = args.at("omega").get<std::vector<std::string>>();
  int L = 2;
  for (auto& a : tuples) L = std::max(L, (int)a.size() + 1);
  JLO j(s.md, s.d, o.exp_cap);
  TwistTriple th = twist_of(s.md, s.d, L);
  for (auto& name : names) {
    UForm w = omega_by_name(s, name, L, o.seed);
    auto t0 = std::chrono::steady_clock::now();
    auto res = parallel_map(tuples.size(), [&](std::size_t i) {
      return std::make_pair(composite(j, w)(tuples[i]), composite_chain_check(j, w, th, tuples[i]));
    }, o.jobs);
    CheckResult c;
    c.id = "pair." + s.name + "." + name;
    c.count = (long)tuples.size();
    c.values = json::array();
    for (size_t i = 0; i < res.size(); ++i) {
      c.values.push_back({{"tuple", i}, {"value", uscalar_json(res[i].first)}});
      if (!res[i].second.pass && c.pass) {
        c.pass = false;
        c.witness = {{"tuple", i}, {"lhs", uscalar_json(res[i].second.lhs)}, {"rhs", uscalar_json(res[i].second.rhs)}};
      }
    }
    c.wall_ms = ms_since(t0);
    r.add(c);
  }
  return r;
}

Report run_command(const std::string& cmd, const Scenario& s, const SuiteOptions& o, const json* args) {
  Report r = make_report(cmd, s.digest);
  auto verify = [&] {
    if (s.md.dim() > 0) r.merge(cdga_suite(torus_model(s.md.dim()), o));
    r.merge(gerbe_suite(s, o));
    r.merge(bundle_suite(s, o));
    r.merge(homological_suite(s, o));
  };
  if (cmd == "verify") {
    verify();
  } else if (cmd == "dd") {
    r.merge(dd_report(s, o));
  } else if (cmd == "chain-check") {
    r.merge(jlo_suite(s, o));
  } else if (cmd == "pair") {
    if (!args) throw ScenarioError("pair needs --args");
    r.merge(pair_report(s, *args, o));
  } else if (cmd == "all") {
    verify();
    r.merge(dd_report(s, o));
    r.merge(jlo_suite(s, o));
    r.merge(composite_suite(s, o));
    r.merge(cap_suite(s, o));
    if (args) r.merge(pair_report(s, *args, o));
  } else {
    throw std::invalid_argument("unknown command '" + cmd + "'");
  }
  return r;
}

}  // namespace gcl
