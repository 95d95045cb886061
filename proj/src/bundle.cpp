#include "gcl/bundle.hpp"

#include <climits>
#include <sstream>
#include <stdexcept>

#include "gcl/exec.hpp"

namespace gcl {

EndForm EndForm::elementary(int y, int z, const Form& f) {
  EndForm r(f.dim(), f.level());
  r.add_entry(y, z, f);
  return r;
}

EndForm EndForm::unit(int dim, int level, const CycScalar& c) {
  EndForm r(dim, level);
  r.unit_ = c;
  return r;
}

EndForm EndForm::diagonal(const std::vector<Form>& d) {
  EndForm r;
  for (size_t g = 0; g < d.size(); ++g) {
    if (g == 0) r = EndForm(d[0].dim(), d[0].level());
    r.add_entry((int)g, (int)g, d[g]);
  }
  return r;
}

EndForm EndForm::scalar_id(const Form& s, int order) {
  EndForm r(s.dim(), s.level());
  for (int g = 0; g < order; ++g) r.add_entry(g, g, s);
  return r;
}

Form EndForm::entry(int y, int z) const {
  auto it = e_.find({y, z});
  return it == e_.end() ? Form(dim_, level_) : it->second;
}

void EndForm::add_entry(int y, int z, const Form& f) {
  if (f.is_zero()) return;
  if (e_.empty() && unit_.is_zero()) {
    dim_ = f.dim();
    level_ = f.level();
  } else if (f.level() != level_ || f.dim() != dim_) {
    throw std::invalid_argument("EndForm: level/dimension mismatch");
  }
  auto it = e_.find({y, z});
  if (it == e_.end()) {
    e_.emplace(Key{y, z}, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) e_.erase(it);
}

EndForm& EndForm::operator+=(const EndForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    dim_ = o.dim_;
    level_ = o.level_;
  }
  for (auto& [k, f] : o.e_) add_entry(k.first, k.second, f);
  unit_ += o.unit_;
  return *this;
}

EndForm& EndForm::operator-=(const EndForm& o) { return *this += -o; }

EndForm& EndForm::operator*=(const CycScalar& c) {
  if (c.is_zero()) {
    e_.clear();
    unit_ = CycScalar();
    return *this;
  }
  for (auto& [k, f] : e_) f *= c;
  unit_ *= c;
  return *this;
}

EndForm& EndForm::operator*=(const mpq_class& q) { return *this *= CycScalar(q); }

EndForm EndForm::operator-() const {
  EndForm r = *this;
  for (auto& [k, f] : r.e_) f = -f;
  r.unit_ = -r.unit_;
  return r;
}

EndForm EndForm::materialized(int order) const {
  EndForm r = *this;
  r.unit_ = CycScalar();
  if (!unit_.is_zero())
    for (int g = 0; g < order; ++g) r.add_entry(g, g, Form::scalar(dim_, level_, unit_));
  return r;
}

EndForm EndForm::map_entries(const std::function<Form(const Form&)>& f) const {
  EndForm r(dim_, level_);
  for (auto& [k, v] : e_) {
    Form w = f(v);
    if (!w.is_zero()) {
      r.dim_ = w.dim();
      r.level_ = w.level();
    }
    r.add_entry(k.first, k.second, w);
  }
  return r;
}

EndForm EndForm::component(int r, int s) const {
  EndForm out = map_entries([&](const Form& f) { return f.component(r, s); });
  if (r <= 0 && s <= 0) out.unit_ = unit_;
  return out;
}

EndForm EndForm::parity_part(int parity) const {
  EndForm out(dim_, level_);
  for (auto& [k, v] : e_) {
    Form w(v.dim(), v.level());
    for (auto& [m, c] : v.terms())
      if (((popcount16(m.dx) + popcount16(m.dt)) & 1) == parity) w.add_term(m, c);
    out.add_entry(k.first, k.second, w);
  }
  if (parity == 0) out.unit_ = unit_;
  return out;
}

EndForm EndForm::at_level(int k) const {
  EndForm r = map_entries([k](const Form& f) { return f.at_level(k); });
  r.level_ = k;
  r.unit_ = unit_;
  return r;
}

std::string EndForm::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, f] : e_) {
    os << (first ? "" : " + ") << "E(" << k.first << "," << k.second << ")[" << f.str() << "]";
    first = false;
  }
  if (!unit_.is_zero()) os << (first ? "" : " + ") << unit_.str() << "*1";
  return os.str();
}

EndForm endo_mul(const EndForm& a, const EndForm& b) {
  EndForm r(a.is_zero() ? b.dim() : a.dim(), a.is_zero() ? b.level() : a.level());
  for (auto& [ka, fa] : a.entries()) {
    auto it = b.entries().lower_bound({ka.second, INT_MIN});
    for (; it != b.entries().end() && it->first.first == ka.second; ++it)
      r.add_entry(ka.first, it->first.second, wedge(fa, it->second));
  }
  const CycScalar& ua = a.unit_part();
  const CycScalar& ub = b.unit_part();
  if (!ua.is_zero())
    for (auto& [k, f] : b.entries()) r.add_entry(k.first, k.second, f * ua);
  if (!ub.is_zero())
    for (auto& [k, f] : a.entries()) r.add_entry(k.first, k.second, f * ub);
  if (!ua.is_zero() && !ub.is_zero()) r += EndForm::unit(r.dim(), r.level(), ua * ub);
  return r;
}

EndForm graded_commutator(const EndForm& a, const EndForm& b) {
  EndForm r(a.dim(), a.level());
  for (int pa = 0; pa < 2; ++pa) {
    EndForm A = a.parity_part(pa);
    if (A.is_zero()) continue;
    for (int pb = 0; pb < 2; ++pb) {
      EndForm B = b.parity_part(pb);
      if (B.is_zero()) continue;
      r += endo_mul(A, B);
      if (pa & pb)
        r += endo_mul(B, A);
      else
        r -= endo_mul(B, A);
    }
  }
  return r;
}

Form endo_trace(const EndForm& f, int order) {
  Form r(f.dim(), f.level());
  for (auto& [k, v] : f.entries())
    if (k.first == k.second) r += v;
  if (!f.unit_part().is_zero()) r += Form::scalar(f.dim(), f.level(), f.unit_part() * CycScalar(long(order)));
  return r;
}

EndForm endo_act(const Model& md, const GerbeDatum& d, int g, const EndForm& f) {
  EndForm r = EndForm::unit(f.dim(), f.level(), f.unit_part());
  for (auto& [k, v] : f.entries()) {
    auto [y, z] = k;
    Unit ratio = unit_mul(d.lambda[g][y], unit_inv(d.lambda[g][z]));
    Form w = wedge(unit_form(md, ratio, v.level()), md.act(v, g));
    r.add_entry(md.G.mul(g, y), md.G.mul(g, z), w);
  }
  return r;
}

EndForm d_end(const EndForm& f) { return f.map_entries([](const Form& w) { return d_total(w); }); }

EndForm discrepancy_A(const Model& md, const GerbeDatum& d, int g, int level) {
  std::vector<Form> diag;
  for (int y = 0; y < md.G.order(); ++y)
    diag.push_back(-derive_alpha(md, d, g, md.G.mul(md.G.inv(g), y)).at_level(level));
  EndForm r = EndForm::diagonal(diag);
  return r.is_zero() ? EndForm(md.dim(), level) : r;
}

EndForm theta_E(const Model& md, const GerbeDatum& d, int level) {
  std::vector<Form> diag;
  for (int y = 0; y < md.G.order(); ++y) diag.push_back(curvature_theta(md, d, y).at_level(level));
  EndForm r = EndForm::diagonal(diag);
  return r.is_zero() ? EndForm(md.dim(), level) : r;
}

EndForm connection_potential(const Model& md, const GerbeDatum& d, const Tuple& t) {
  int k = (int)t.size();
  std::vector<Form> diag;
  for (int y = 0; y < md.G.order(); ++y) diag.push_back(d.a[y].at_level(k));
  EndForm X = EndForm::diagonal(diag);
  if (X.is_zero()) X = EndForm(md.dim(), k);
  for (int i = 1; i <= k; ++i) {
    Form ti = Form::t_var(md.dim(), k, i);
    EndForm A = discrepancy_A(md, d, md.G.product(t, 0, i), k);
    X += A.map_entries([&](const Form& f) { return wedge(ti, f); });
  }
  return X;
}

EndForm nabla_k_apply(const Model& md, const GerbeDatum& d, const Tuple& t, const EndForm& eta, NablaPart part) {
  if (!eta.is_zero() && eta.level() != (int)t.size()) throw std::invalid_argument("nabla: level mismatch");
  EndForm r(md.dim(), (int)t.size());
  if (part != NablaPart::manifold) r += eta.map_entries([](const Form& f) { return d_simplex(f, SimplexD::signed_); });
  if (part != NablaPart::simplex) {
    r += eta.map_entries([](const Form& f) { return d_manifold(f); });
    r += graded_commutator(connection_potential(md, d, t), eta);
  }
  return r;
}

namespace {

// alpha(P_i, P_i^{-1} P_j) with P_i = g_1..g_i
Form alpha_ij(const Model& md, const GerbeDatum& d, const Tuple& t, int i, int j) {
  return derive_alpha(md, d, md.G.product(t, 0, i), md.G.product(t, i, j));
}

}  // namespace

EndForm vartheta(const Model& md, const GerbeDatum& d, const Tuple& t) {
  int k = (int)t.size(), m = md.dim();
  EndForm X = connection_potential(md, d, t);
  EndForm F = d_end(X) + endo_mul(X, X);
  Form s(m, k);
  for (int i = 1; i <= k; ++i)
    s += wedge(Form::t_var(m, k, i), curvature_theta(md, d, md.G.product(t, 0, i)).at_level(k));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      Form w = wedge(Form::t_var(m, k, i), Form::dt_var(m, k, j)) - wedge(Form::t_var(m, k, j), Form::dt_var(m, k, i));
      s -= wedge(alpha_ij(md, d, t, i, j).at_level(k), w);
    }
  return F - EndForm::scalar_id(s, md.G.order());
}

Form theta3(const Model& md, const GerbeDatum& d, const Tuple& t) {
  int k = (int)t.size(), m = md.dim();
  Form r(m, k);
  for (int i = 1; i <= k; ++i)
    r += wedge(Form::dt_var(m, k, i), curvature_theta(md, d, md.G.product(t, 0, i)).at_level(k));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      Form a = alpha_ij(md, d, t, i, j).at_level(k);
      Form w = wedge(Form::t_var(m, k, i), Form::dt_var(m, k, j)) - wedge(Form::t_var(m, k, j), Form::dt_var(m, k, i));
      r -= wedge(d_manifold(a), w);
      r += wedge(a, wedge(Form::dt_var(m, k, i), Form::dt_var(m, k, j))) * mpq_class(2);
    }
  return r;
}

EndForm theta3_from_nabla(const Model& md, const GerbeDatum& d, const Tuple& t) {
  return -nabla_k_apply(md, d, t, vartheta(md, d, t));
}

Window theta3_window(const Model& md, const GerbeDatum& d, int max_level) {
  Window w;
  w.max_level = max_level;
  w.at = [md, d](const Tuple& t) { return theta3(md, d, t); };
  return memoize(w);
}

TwistTriple twist_of(const Model& md, const GerbeDatum& d, int max_level) {
  return TwistTriple(theta3_window(md, d, max_level), md);
}

CompatReport check_vartheta_compatible(const Model& md, const GerbeDatum& d, int max_level, int jobs) {
  std::vector<Tuple> ts;
  for (int k = 1; k <= max_level; ++k)
    for (auto& t : all_tuples(md.G.order(), k)) ts.push_back(t);
  auto res = parallel_map(
      ts.size(),
      [&](std::size_t n) {
        const Tuple& t = ts[n];
        int k = (int)t.size();
        std::vector<CompatFailure> fails;
        EndForm top = vartheta(md, d, t);
        for (int i = 0; i <= k; ++i) {
          EndForm lhs = top.map_entries([i](const Form& f) { return pullback_face(f, i); });
          EndForm rhs = vartheta(md, d, face_tuple(md.G, t, i));
          if (i == 0) rhs = endo_act(md, d, t[0], rhs);
          EndForm diff = lhs - rhs;
          if (!diff.is_zero()) fails.push_back({k, i, t, diff.str()});
        }
        return fails;
      },
      jobs);
  CompatReport rep;
  for (size_t n = 0; n < ts.size(); ++n) {
    rep.checks += (long)ts[n].size() + 1;
    for (auto& f : res[n]) rep.failures.push_back(f);
  }
  return rep;
}

LEnd lend_mul(const LEnd& a, const LEnd& b) {
  LEnd r;
  for (auto& [p, x] : a.terms)
    for (auto& [q, y] : b.terms) r.add(p + q, endo_mul(x, y));
  return r;
}

LEnd rescale_end(const EndForm& f, int shift) {
  LEnd r;
  for (auto& [k, v] : f.entries())
    for (auto& [p, w] : rescale(v, shift).terms) r.add(p, EndForm::elementary(k.first, k.second, w));
  if (!f.unit_part().is_zero()) {
    if (shift & 1) throw std::invalid_argument("rescale: odd weight");
    r.add(shift / 2, EndForm::unit(f.dim(), f.level(), f.unit_part()));
  }
  return r;
}

LEnd nabla_u_apply(const Model& md, const GerbeDatum& d, const Tuple& t, const LEnd& eta) {
  LEnd r;
  for (auto& [p, x] : eta.terms) {
    r.add(p, nabla_k_apply(md, d, t, x, NablaPart::manifold));
    r.add(p - 1, nabla_k_apply(md, d, t, x, NablaPart::simplex));
  }
  return r;
}

}  // namespace gcl
