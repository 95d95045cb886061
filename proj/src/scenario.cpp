#include "gcl/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gcl {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ScenarioError(where + ": " + what); }

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

int need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
  return v.get<int>();
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) bad(where, "unknown field '" + it.key() + "'");
  }
}

mpq_class parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) bad(where, "expected an integer or a \"p/q\" string");
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0) bad(where, "cannot parse rational '" + j.get<std::string>() + "'");
  if (q.get_den() == 0) bad(where, "zero denominator");
  q.canonicalize();
  return q;
}

std::string qstr(const mpq_class& q) { return q.get_str(); }

int group_index(const json& j, const GroupData& G, const std::string& where) {
  if (j.is_number_integer()) {
    int i = j.get<int>();
    if (i < 0 || i >= G.order()) bad(where, "element index out of range");
    return i;
  }
  if (!j.is_string()) bad(where, "expected an element name");
  auto it = std::find(G.names.begin(), G.names.end(), j.get<std::string>());
  if (it == G.names.end()) bad(where, "unknown element '" + j.get<std::string>() + "'");
  return int(it - G.names.begin());
}

std::uint16_t parse_set(const json& j, int bound, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of 1-based indices");
  std::uint16_t m = 0;
  for (auto& v : j) {
    if (!v.is_number_integer()) bad(where, "expected integer indices");
    int i = v.get<int>();
    if (i < 1 || i > bound) bad(where, "index " + std::to_string(i) + " out of range 1.." + std::to_string(bound));
    if (m & (1u << (i - 1))) bad(where, "repeated index " + std::to_string(i));
    m |= std::uint16_t(1u << (i - 1));
  }
  return m;
}

json set_json(std::uint16_t m, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i)
    if (m & (1u << i)) a.push_back(i + 1);
  return a;
}

}  // namespace

json scalar_json(const CycScalar& c) {
  mpz_class den = 1;
  for (auto& q : c.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  json num = json::array();
  for (auto& q : c.coeffs()) {
    mpq_class s = q * den;
    num.push_back(s.get_num().get_str());
  }
  json j;
  j["N"] = c.order();
  j["num"] = num;
  j["den"] = den.get_str();
  return j;
}

CycScalar parse_scalar(const json& j, int N) {
  if (!j.is_object()) return CycScalar(parse_rational(j, "scalar"));
  only_keys(j, {"N", "num", "den"}, "scalar");
  int n = need_int(j, "N", "scalar");
  if (n < 1 || N % n != 0) bad("scalar", "order " + std::to_string(n) + " does not divide N = " + std::to_string(N));
  mpq_class den = j.contains("den") ? parse_rational(j.at("den"), "scalar.den") : mpq_class(1);
  if (den == 0) bad("scalar.den", "zero");
  std::vector<mpq_class> c;
  for (auto& v : need(j, "num", "scalar")) c.push_back(parse_rational(v, "scalar.num") / den);
  if (c.empty()) return CycScalar();
  return CycScalar::from_coeffs(n, c);
}

json uscalar_json(const UScalar& u) {
  json a = json::array();
  for (auto& [p, v] : u.terms) {
    json t;
    t["u"] = p;
    t["value"] = scalar_json(v);
    t["str"] = v.str();
    a.push_back(t);
  }
  return a;
}

json form_json(const Form& f) {
  json a = json::array();
  for (auto& [m, c] : f.terms()) {
    json t;
    t["freq"] = std::vector<int>(m.k.begin(), m.k.begin() + f.dim());
    std::vector<int> te;
    for (int i = 0; i < f.level(); ++i) te.push_back(m.t[i]);
    t["t_exps"] = te;
    t["dx_set"] = set_json(m.dx, f.dim());
    t["dt_set"] = set_json(m.dt, f.level());
    t["coeff"] = scalar_json(c);
    a.push_back(t);
  }
  return a;
}

Form parse_form(const json& j, int dim, int level, int N) {
  if (!j.is_array()) bad("form", "expected a list of terms");
  Form f(dim, level);
  for (auto& t : j) {
    only_keys(t, {"freq", "t_exps", "dx_set", "dt_set", "coeff"}, "form term");
    Mono m;
    if (t.contains("freq")) {
      auto& k = t.at("freq");
      if (!k.is_array() || (int)k.size() != dim) bad("form term.freq", "expected " + std::to_string(dim) + " integers");
      for (int i = 0; i < dim; ++i) m.k[i] = k[i].get<int>();
    }
    if (t.contains("t_exps")) {
      auto& e = t.at("t_exps");
      if (!e.is_array() || (int)e.size() != level) bad("form term.t_exps", "expected " + std::to_string(level) + " exponents");
      for (int i = 0; i < level; ++i) m.t[i] = std::uint8_t(e[i].get<int>());
    }
    if (t.contains("dx_set")) m.dx = parse_set(t.at("dx_set"), dim, "form term.dx_set");
    if (t.contains("dt_set")) m.dt = parse_set(t.at("dt_set"), level, "form term.dt_set");
    f.add_term(m, parse_scalar(need(t, "coeff", "form term"), N));
  }
  return f;
}

json conv_json(const ConvSection& c, const GroupData& G) {
  json j;
  json comp = json::array();
  for (auto& [g, f] : c.comp) comp.push_back({{"g", G.names[g]}, {"f", form_json(f)}});
  j["comp"] = comp;
  if (!c.unit.is_zero()) j["unit"] = scalar_json(c.unit);
  return j;
}

ConvSection parse_conv(const json& j, const Model& md) {
  only_keys(j, {"comp", "unit"}, "conv section");
  ConvSection c;
  if (j.contains("comp"))
    for (auto& e : j.at("comp")) {
      only_keys(e, {"g", "f"}, "conv component");
      int g = group_index(need(e, "g", "conv component"), md.G, "conv component.g");
      Form f = parse_form(need(e, "f", "conv component"), md.dim(), 0, md.N());
      if (f.degree_part(0) != f) bad("conv component.f", "sections are functions (no dx)");
      c += ConvSection::delta(g, f);
    }
  if (j.contains("unit")) c += ConvSection::one(parse_scalar(j.at("unit"), md.N()));
  return c;
}

json scenario_json(const Scenario& s) {
  const auto& G = s.md.G;
  int m = s.md.dim(), N = s.md.N();
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  j["manifold"] = {{"kind", s.md.M.kind == ModelManifold::Kind::point ? "point" : "torus"},
                   {"dim", m},
                   {"cyclotomic_order", N}};
  json table = json::array();
  for (auto& row : G.table) {
    json r = json::array();
    for (int v : row) r.push_back(G.names[v]);
    table.push_back(r);
  }
  json action = json::object();
  for (int g = 0; g < G.order(); ++g) {
    json mat = json::array(), tr = json::array();
    for (int i = 0; i < m; ++i) {
      mat.push_back(std::vector<int>(G.action[g].A[i].begin(), G.action[g].A[i].begin() + m));
      tr.push_back(qstr(mpq_class(G.action[g].bN[i], N)));
    }
    action[G.names[g]] = {{"matrix", mat}, {"translation", tr}};
  }
  j["group"] = {{"elements", G.names}, {"mult_table", table}, {"action", action}};
  json a = json::object();
  for (int g = 0; g < G.order(); ++g)
    if (!s.d.a[g].is_zero()) a[G.names[g]] = form_json(s.d.a[g]);
  json lam = json::array();
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) {
      const Unit& u = s.d.lambda[g][h];
      if (unit_equal(s.md, u, Unit{})) continue;
      lam.push_back({{"g", G.names[g]},
                     {"h", G.names[h]},
                     {"zeta_exp", ((u.zeta_exp % N) + N) % N},
                     {"freq", std::vector<int>(u.freq.begin(), u.freq.begin() + m)}});
    }
  j["gerbe"] = {{"a", a}, {"lambda", lam}};
  j["truncation"] = {{"max_level", s.trunc.max_level},
                     {"max_cyclic_arity", s.trunc.max_cyclic_arity},
                     {"exp_order_cap", s.trunc.exp_order_cap}};
  j["seed"] = s.seed;
  return j;
}

std::string digest_of(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

Scenario parse_scenario(const json& j, const std::string& origin) {
  const std::string w = origin;
  only_keys(j, {"schema_version", "name", "manifold", "group", "gerbe", "truncation", "seed"}, w);
  int ver = need_int(j, "schema_version", w);
  if (ver != kSchemaVersion) bad(w, "unsupported schema_version " + std::to_string(ver));
  Scenario s;
  s.name = j.value("name", std::string("unnamed"));

  const json& mj = need(j, "manifold", w);
  only_keys(mj, {"kind", "dim", "cyclotomic_order"}, w + ".manifold");
  std::string kind = need(mj, "kind", w + ".manifold").get<std::string>();
  if (kind == "point") s.md.M.kind = ModelManifold::Kind::point;
  else if (kind == "torus") s.md.M.kind = ModelManifold::Kind::torus;
  else bad(w + ".manifold.kind", "expected \"point\" or \"torus\"");
  s.md.M.dim = need_int(mj, "dim", w + ".manifold");
  s.md.M.N = need_int(mj, "cyclotomic_order", w + ".manifold");
  int m = s.md.M.dim, N = s.md.M.N;
  if (m < 0 || m > kMaxDim) bad(w + ".manifold.dim", "supported range is 0.." + std::to_string(kMaxDim));
  if (N < 1) bad(w + ".manifold.cyclotomic_order", "must be >= 1");

  const json& gj = need(j, "group", w);
  only_keys(gj, {"elements", "mult_table", "action"}, w + ".group");
  auto& G = s.md.G;
  for (auto& e : need(gj, "elements", w + ".group")) G.names.push_back(e.get<std::string>());
  int n = (int)G.names.size();
  if (n == 0) bad(w + ".group.elements", "empty group");
  if (std::set<std::string>(G.names.begin(), G.names.end()).size() != G.names.size())
    bad(w + ".group.elements", "duplicate element names");
  const json& tj = need(gj, "mult_table", w + ".group");
  if (!tj.is_array() || (int)tj.size() != n) bad(w + ".group.mult_table", "expected " + std::to_string(n) + " rows");
  G.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    if (!tj[a].is_array() || (int)tj[a].size() != n)
      bad(w + ".group.mult_table", "row " + std::to_string(a) + " must have " + std::to_string(n) + " entries");
    for (int b = 0; b < n; ++b) G.table[a][b] = group_index(tj[a][b], G, w + ".group.mult_table");
  }
  G.identity = -1;
  for (int e = 0; e < n && G.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a) ok = ok && G.table[e][a] == a && G.table[a][e] == a;
    if (ok) G.identity = e;
  }
  if (G.identity < 0) bad(w + ".group.mult_table", "no identity element");
  G.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.table[a][b] == G.identity && G.table[b][a] == G.identity) G.inverse[a] = b;
  for (int a = 0; a < n; ++a)
    if (G.inverse[a] < 0) bad(w + ".group.mult_table", "element " + G.names[a] + " has no inverse");
  G.action.assign(n, AffineAction::identity(m));
  if (gj.contains("action")) {
    const json& aj = gj.at("action");
    if (!aj.is_object()) bad(w + ".group.action", "expected an object keyed by element");
    for (auto it = aj.begin(); it != aj.end(); ++it) {
      std::string where = w + ".group.action." + it.key();
      int g = group_index(json(it.key()), G, where);
      only_keys(it.value(), {"matrix", "translation"}, where);
      AffineAction act = AffineAction::identity(m);
      if (it.value().contains("matrix")) {
        auto& mat = it.value().at("matrix");
        if (!mat.is_array() || (int)mat.size() != m) bad(where + ".matrix", "expected " + std::to_string(m) + " rows");
        for (int r = 0; r < m; ++r) {
          if (!mat[r].is_array() || (int)mat[r].size() != m) bad(where + ".matrix", "row size must be " + std::to_string(m));
          for (int c = 0; c < m; ++c) act.A[r][c] = mat[r][c].get<int>();
        }
      }
      if (it.value().contains("translation")) {
        auto& tr = it.value().at("translation");
        if (!tr.is_array() || (int)tr.size() != m) bad(where + ".translation", "expected " + std::to_string(m) + " entries");
        for (int r = 0; r < m; ++r) {
          mpq_class b = parse_rational(tr[r], where + ".translation") * N;
          if (b.get_den() != 1)
            bad(where + ".translation", "denominator of " + qstr(b / N) + " does not divide N = " + std::to_string(N));
          mpz_class v = b.get_num() % N;
          if (v < 0) v += N;
          act.bN[r] = (int)v.get_si();
        }
      }
      G.action[g] = act;
    }
  }
  try {
    validate_model(s.md);
  } catch (const std::invalid_argument& e) {
    bad(w + ".group", e.what());
  }

  s.d = GerbeDatum::trivial(s.md);
  if (j.contains("gerbe")) {
    const json& dj = j.at("gerbe");
    only_keys(dj, {"a", "lambda"}, w + ".gerbe");
    if (dj.contains("a")) {
      const json& aj = dj.at("a");
      if (!aj.is_object()) bad(w + ".gerbe.a", "expected an object keyed by element");
      for (auto it = aj.begin(); it != aj.end(); ++it) {
        int g = group_index(json(it.key()), G, w + ".gerbe.a");
        Form f = parse_form(it.value(), m, 0, N);
        for (auto& [mo, c] : f.terms())
          if (popcount16(mo.dx) != 1) bad(w + ".gerbe.a." + it.key(), "potentials must be 1-forms");
        s.d.a[g] = f;
      }
    }
    if (dj.contains("lambda"))
      for (auto& e : dj.at("lambda")) {
        std::string where = w + ".gerbe.lambda";
        only_keys(e, {"g", "h", "zeta_exp", "freq"}, where);
        int g = group_index(need(e, "g", where), G, where + ".g");
        int h = group_index(need(e, "h", where), G, where + ".h");
        Unit u;
        u.zeta_exp = e.value("zeta_exp", 0L);
        if (e.contains("freq")) {
          auto& k = e.at("freq");
          if (!k.is_array() || (int)k.size() != m) bad(where + ".freq", "expected " + std::to_string(m) + " integers");
          for (int i = 0; i < m; ++i) u.freq[i] = k[i].get<int>();
        }
        s.d.lambda[g][h] = u;
      }
  }
  if (j.contains("truncation")) {
    const json& tr = j.at("truncation");
    only_keys(tr, {"max_level", "max_cyclic_arity", "exp_order_cap"}, w + ".truncation");
    s.trunc.max_level = tr.value("max_level", s.trunc.max_level);
    s.trunc.max_cyclic_arity = tr.value("max_cyclic_arity", s.trunc.max_cyclic_arity);
    s.trunc.exp_order_cap = tr.value("exp_order_cap", s.trunc.exp_order_cap);
    if (s.trunc.max_level < 0 || s.trunc.max_level > kMaxLevel - 2) bad(w + ".truncation.max_level", "out of range");
    if (s.trunc.max_cyclic_arity < 0) bad(w + ".truncation.max_cyclic_arity", "must be >= 0");
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();

  CheckList gv = verify_gerbe(s.md, s.d);
  if (!gv.pass()) {
    std::string msg = "gerbe datum fails verification (" + std::to_string(gv.failures.size()) + " failures)";
    for (size_t i = 0; i < gv.failures.size() && i < 3; ++i) msg += "; " + gv.failures[i];
    bad(w, msg);
  }
  s.digest = digest_of(scenario_json(s).dump());
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  try {
    return parse_scenario(j, path);
  } catch (const json::exception& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void Report::merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

json Report::to_json(bool timings) const {
  std::vector<const CheckResult*> v;
  for (auto& c : checks) v.push_back(&c);
  std::stable_sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->id < b->id; });
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolVersion;
  j["suite"] = suite;
  j["scenario_digest"] = digest;
  j["pass"] = pass();
  json arr = json::array();
  for (auto* c : v) {
    json e;
    e["id"] = c->id;
    e["status"] = c->pass ? "pass" : "fail";
    e["count"] = c->count;
    if (c->nonzero >= 0) e["nonzero"] = c->nonzero;
    if (!c->witness.is_null()) e["witness"] = c->witness;
    if (!c->values.is_null()) e["values"] = c->values;
    if (timings) e["wall_ms"] = c->wall_ms;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  long fails = 0;
  for (auto& c : checks) {
    os << (c.pass ? "  ok    " : "  FAIL  ") << c.id << " (" << c.count;
    if (c.nonzero >= 0) os << ", nonzero " << c.nonzero;
    os << ")\n";
    fails += !c.pass;
  }
  os << suite << ": " << checks.size() - fails << "/" << checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace gcl
