#include "gcl/jlo.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace gcl {

Window linear_extend(const Form& beta, const Model& md, int max_level) {
  Window w;
  w.max_level = max_level;
  w.at = [beta, md](const Tuple& t) {
    int k = (int)t.size(), m = md.dim();
    Form b0 = beta.at_level(k);
    Form r = b0;
    for (int i = 1; i <= k; ++i) {
      Form ti = Form::t_var(m, k, i);
      r += wedge(ti, md.act(beta, md.G.product(t, 0, i)).at_level(k) - b0);
    }
    return r;
  };
  return w;
}

Window whitney_extend(GroupCochain c, int p, const Model& md, int max_level) {
  Window w;
  w.max_level = max_level;
  GroupData G = md.G;
  w.at = [c, p, G, m = md.dim()](const Tuple& g) {
    int k = (int)g.size();
    Form out(m, k);
    if (p > k) return out;
    // barycentric t_0 = 1 - sum t_i
    std::vector<Form> t(k + 1, Form(m, k)), dt(k + 1, Form(m, k));
    t[0] = Form::scalar(m, k, CycScalar(1));
    for (int i = 1; i <= k; ++i) {
      t[i] = Form::t_var(m, k, i);
      dt[i] = Form::dt_var(m, k, i);
      t[0] -= t[i];
      dt[0] -= dt[i];
    }
    mpz_class pf;
    mpz_fac_ui(pf.get_mpz_t(), (unsigned long)p);
    std::vector<int> v(p + 1);
    std::function<void(int, int)> rec = [&](int pos, int from) {
      if (pos == p + 1) {
        Tuple face;
        for (int j = 1; j <= p; ++j) face.push_back(G.product(g, v[j - 1], v[j]));
        CycScalar val = c(face);
        if (val.is_zero()) return;
        Form W(m, k);
        for (int j = 0; j <= p; ++j) {
          Form term = t[v[j]];
          for (int l = 0; l <= p; ++l)
            if (l != j) term = wedge(term, dt[v[l]]);
          if (j & 1) W -= term;
          else W += term;
        }
        out += W * val * mpq_class(pf);
        return;
      }
      for (int i = from; i <= k; ++i) {
        v[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
    return out;
  };
  return w;
}

GroupCochain group_coboundary(GroupCochain c, const GroupData& G) {
  return [c, G](const Tuple& g) {
    int n = (int)g.size();
    CycScalar r;
    for (int i = 0; i <= n; ++i) {
      Tuple f;
      if (i == 0) f.assign(g.begin() + 1, g.end());
      else if (i == n) f.assign(g.begin(), g.end() - 1);
      else {
        f.assign(g.begin(), g.begin() + i - 1);
        f.push_back(G.mul(g[i - 1], g[i]));
        f.insert(f.end(), g.begin() + i + 1, g.end());
      }
      CycScalar v = c(f);
      if (i & 1) r -= v;
      else r += v;
    }
    return r;
  };
}

static mpq_class inv_factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), (unsigned long)n);
  return mpq_class(mpz_class(1), f);
}

static mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), (unsigned long)n);
  return f;
}

std::vector<EndForm> exp_vartheta(const EndForm& vt, int cap, int order) {
  std::vector<EndForm> out;
  EndForm pw = EndForm::unit(vt.dim(), vt.level(), CycScalar(1)).materialized(order);
  for (int p = 0; p <= cap; ++p) {
    EndForm c = pw;
    c *= CycScalar(inv_factorial(p) * (p & 1 ? -1 : 1));
    out.push_back(c);
    pw = endo_mul(pw, vt);
  }
  return out;
}

bool duhamel_holds(const EndForm& vt, const EndForm& a, int cap, int order) {
  std::vector<EndForm> pw{EndForm::unit(vt.dim(), vt.level(), CycScalar(1)).materialized(order)};
  for (int p = 1; p <= cap; ++p) pw.push_back(endo_mul(pw.back(), vt));
  EndForm comm = endo_mul(vt, a) - endo_mul(a, vt);
  for (int p = 1; p <= cap; ++p) {
    EndForm lhs = endo_mul(a, pw[p]) - endo_mul(pw[p], a);
    lhs *= CycScalar(inv_factorial(p) * (p & 1 ? -1 : 1));
    EndForm rhs(vt.dim(), vt.level());
    for (int q = 0; q <= p - 1; ++q) {
      int r = p - 1 - q;
      // (-1)^{q+r}/(q! r!) * int_0^1 (1-x)^q x^r dx
      mpq_class c(factorial(q) * factorial(r), factorial(q + r + 1));
      c *= inv_factorial(q) * inv_factorial(r) * ((q + r) & 1 ? -1 : 1);
      EndForm term = endo_mul(endo_mul(pw[q], comm), pw[r]);
      term *= CycScalar(c);
      rhs += term;
    }
    if (!(lhs == rhs)) return false;
  }
  return true;
}

JLO::JLO(const Model& md, const GerbeDatum& d, int exp_cap)
    : md_(md), d_(d), cap_(exp_cap), cache_(std::make_shared<Cache>()) {}

const EndForm& JLO::vt(const Tuple& g) const {
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->vt.find(g);
    if (it != cache_->vt.end()) return *it->second;
  }
  auto v = std::make_unique<EndForm>(vartheta(md_, d_, g));
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto& slot = cache_->vt[g];
  if (!slot) slot = std::move(v);
  return *slot;
}

LForm JLO::chern(const Tuple& g, const std::vector<EndSection>& a) const {
  int k = (int)g.size(), m = md_.dim(), n = (int)a.size() - 1, order = md_.G.order();
  if (n < 0) throw std::invalid_argument("chern: needs at least one argument");
  int cap = cap_ < 0 ? (m + k) / 2 : cap_;
  const EndForm& v = vt(g);
  std::vector<EndForm> pw{EndForm::unit(m, k, CycScalar(1)).materialized(order)};
  for (int p = 1; p <= cap; ++p) pw.push_back(endo_mul(pw.back(), v));

  // M[P] = sum over p_0 + .. + p_i = P of a0 v^{p0} na1 v^{p1} .. na_i v^{p_i}
  std::vector<EndForm> M;
  EndForm a0 = a[0].at_level(k).materialized(order);
  for (int P = 0; P <= cap; ++P) M.push_back(endo_mul(a0, pw[P]));
  for (int i = 1; i <= n; ++i) {
    EndForm na = nabla_k_apply(md_, d_, g, a[i].at_level(k));
    std::vector<EndForm> nxt(cap + 1, EndForm(m, k));
    for (int P = 0; P <= cap; ++P) {
      if (M[P].is_zero()) continue;
      EndForm x = endo_mul(M[P], na);
      if (x.is_zero()) continue;
      for (int q = 0; P + q <= cap; ++q) nxt[P + q] += endo_mul(x, pw[q]);
    }
    M.swap(nxt);
  }
  Form ch(m, k);
  for (int P = 0; P <= cap; ++P) {
    if (M[P].is_zero()) continue;
    // (-1)^P int_{Delta^n} sigma^p = (-1)^P prod p_i! / (n + P)!, prod p_i! absorbed by 1/p_i!
    ch += endo_trace(M[P], order) * mpq_class(inv_factorial(n + P) * (P & 1 ? -1 : 1));
  }
  LForm out;
  for (auto& [mo, c] : ch.terms()) {
    int e = popcount16(mo.dx) - popcount16(mo.dt) - n;
    if (e & 1) throw std::logic_error("chern: odd u-weight");
    Form one(m, k);
    one.add_term(mo, c);
    out.add(e / 2, one);
  }
  return out;
}

UScalar JLO::tau_eval(const UForm& w, const Tuple& g, const std::vector<EndSection>& a) const {
  LForm wg = w(g);
  UScalar r;
  if (wg.is_zero()) return r;
  LForm integrand = lwedge(wg, chern(g, a));
  int k = (int)g.size();
  bool flip = ((k * (k - 1) / 2) & 1) != 0;
  for (auto& [p, f] : integrand.terms) {
    CycScalar s = integrate_total(f);
    r.add(p, flip ? -s : s);
  }
  return r;
}

GCochain<EndSection> JLO::tau(const UForm& w) const {
  JLO self = *this;
  return [self, w](const Tuple& g, const std::vector<EndSection>& a) {
    if ((int)g.size() > w.max_level) return UScalar{};
    return self.tau_eval(w, g, a);
  };
}

ChainCheck tau_chain_check(const JLO& j, const UForm& w, const TwistTriple& th, const Tuple& g,
                           const std::vector<EndSection>& a) {
  auto alg = end_algebra(j.model(), j.datum());
  ChainCheck c;
  c.lhs = j.tau_eval(d_twisted(w, th), g, a);
  auto T = j.tau(w);
  Cochain<EndSection> Tg = [T, g](const std::vector<EndSection>& x) { return T(g, x); };
  c.rhs = delta_group(alg, T, true)(g, a) - bB_apply(alg, Tg)(a);
  c.pass = c.lhs == c.rhs;
  return c;
}

Cochain<ConvSection> composite(const JLO& j, const UForm& w, int kmax) {
  auto alg = end_algebra(j.model(), j.datum());
  GCochain<EndSection> T = j.tau(w);
  // the Psi recursion revisits the same (g, a) many times
  struct Memo {
    std::mutex mu;
    std::map<std::string, UScalar> v;
  };
  auto memo = std::make_shared<Memo>();
  GCochain<EndSection> Tm = [T, memo](const Tuple& g, const std::vector<EndSection>& a) {
    std::string key = tuple_str(g);
    for (auto& x : a) key += "|" + x.str();
    {
      std::lock_guard<std::mutex> lk(memo->mu);
      auto it = memo->v.find(key);
      if (it != memo->v.end()) return it->second;
    }
    UScalar r = T(g, a);
    std::lock_guard<std::mutex> lk(memo->mu);
    memo->v.emplace(key, r);
    return r;
  };
  GCochain<EndSection> F = sign_swap(psi0(alg, Tm));
  // tau vanishes on tuples longer than the window, so w.max_level is exact
  auto P = psi1(alg, F, kmax < 0 ? w.max_level : kmax);
  return psi2(j.model(), j.datum(), P);
}

ChainCheck composite_chain_check(const JLO& j, const UForm& w, const TwistTriple& th,
                                 const std::vector<ConvSection>& a, int kmax) {
  auto calg = conv_algebra(j.model(), j.datum());
  ChainCheck c;
  c.lhs = composite(j, d_twisted(w, th), kmax)(a);
  c.rhs = bB_apply(calg, composite(j, w, kmax))(a);
  c.pass = c.lhs == c.rhs;
  return c;
}

}  // namespace gcl
