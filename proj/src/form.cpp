#include "gcl/form.hpp"

#include <sstream>
#include <stdexcept>

namespace gcl {

int popcount16(std::uint16_t m) { return __builtin_popcount(m); }

int merge_sign(std::uint16_t a, std::uint16_t b) {
  if (a & b) return 0;
  int inv = 0;
  for (int j = 0; j < 16; ++j)
    if (b >> j & 1) inv += popcount16(std::uint16_t(a >> (j + 1)));
  return (inv & 1) ? -1 : 1;
}

AffineAction AffineAction::identity(int m) {
  AffineAction g;
  for (int i = 0; i < m; ++i) g.A[i][i] = 1;
  return g;
}

static void check_dims(const Form& a, const Form& b) {
  if (a.level() != b.level() || a.dim() != b.dim())
    throw std::invalid_argument("form level/dimension mismatch");
}

Form Form::scalar(int dim, int level, const CycScalar& c) {
  Form f(dim, level);
  f.add_term(Mono{}, c);
  return f;
}

Form Form::character(int dim, int level, const Freq& k, const CycScalar& c) {
  Form f(dim, level);
  Mono m;
  m.k = k;
  f.add_term(m, c);
  return f;
}

Form Form::t_var(int dim, int level, int i) {
  Form f(dim, level);
  Mono m;
  m.t[i - 1] = 1;
  f.add_term(m, CycScalar(1));
  return f;
}

Form Form::dx_var(int dim, int level, int j) {
  Form f(dim, level);
  Mono m;
  m.dx = std::uint16_t(1u << (j - 1));
  f.add_term(m, CycScalar(1));
  return f;
}

Form Form::dt_var(int dim, int level, int i) {
  Form f(dim, level);
  Mono m;
  m.dt = std::uint16_t(1u << (i - 1));
  f.add_term(m, CycScalar(1));
  return f;
}

void Form::add_term(const Mono& m, const CycScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Form& Form::operator+=(const Form& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    dim_ = o.dim_;
    level_ = o.level_;
  } else {
    check_dims(*this, o);
  }
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form& Form::operator*=(const CycScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Form& Form::operator*=(const mpq_class& q) {
  if (sgn(q) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= q;
  return *this;
}

Form Form::operator-() const {
  Form r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Form Form::component(int r, int s) const {
  Form out(dim_, level_);
  for (auto& [m, c] : terms_)
    if ((r < 0 || popcount16(m.dx) == r) && (s < 0 || popcount16(m.dt) == s)) out.terms_.emplace(m, c);
  return out;
}

Form Form::degree_part(int total) const {
  Form out(dim_, level_);
  for (auto& [m, c] : terms_)
    if (popcount16(m.dx) + popcount16(m.dt) == total) out.terms_.emplace(m, c);
  return out;
}

bool Form::is_homogeneous(int* total) const {
  int d = -1;
  for (auto& [m, c] : terms_) {
    int e = popcount16(m.dx) + popcount16(m.dt);
    if (d >= 0 && e != d) return false;
    d = e;
  }
  if (total) *total = d < 0 ? 0 : d;
  return true;
}

Form Form::at_level(int k) const {
  if (k < level_) throw std::invalid_argument("at_level: cannot lower the level");
  Form r = *this;
  r.level_ = k;
  return r;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    bool nzk = false;
    for (int j = 0; j < dim_; ++j) nzk |= m.k[j] != 0;
    if (nzk) {
      os << "*e(";
      for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << m.k[j];
      os << ")";
    }
    for (int i = 0; i < level_; ++i)
      if (m.t[i]) os << "*t" << i + 1 << (m.t[i] > 1 ? "^" + std::to_string(m.t[i]) : "");
    for (int j = 0; j < 16; ++j)
      if (m.dx >> j & 1) os << "*dx" << j + 1;
    for (int j = 0; j < 16; ++j)
      if (m.dt >> j & 1) os << "*dt" << j + 1;
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.is_zero() || b.is_zero()) return Form(a.is_zero() ? b.dim() : a.dim(), a.is_zero() ? b.level() : a.level());
  check_dims(a, b);
  Form r(a.dim(), a.level());
  for (auto& [ma, ca] : a.terms()) {
    for (auto& [mb, cb] : b.terms()) {
      int s1 = merge_sign(ma.dx, mb.dx);
      if (!s1) continue;
      int s2 = merge_sign(ma.dt, mb.dt);
      if (!s2) continue;
      int s = s1 * s2 * ((popcount16(ma.dt) * popcount16(mb.dx)) & 1 ? -1 : 1);
      Mono m;
      for (int j = 0; j < kMaxDim; ++j) m.k[j] = ma.k[j] + mb.k[j];
      for (int i = 0; i < kMaxLevel; ++i) m.t[i] = std::uint8_t(ma.t[i] + mb.t[i]);
      m.dx = ma.dx | mb.dx;
      m.dt = ma.dt | mb.dt;
      CycScalar c = ca * cb;
      r.add_term(m, s < 0 ? -c : c);
    }
  }
  return r;
}

Form d_manifold(const Form& w) {
  Form r(w.dim(), w.level());
  for (auto& [m, c] : w.terms()) {
    for (int j = 0; j < w.dim(); ++j) {
      if (m.k[j] == 0) continue;
      std::uint16_t bit = std::uint16_t(1u << j);
      int s = merge_sign(bit, m.dx);
      if (!s) continue;
      Mono n = m;
      n.dx |= bit;
      r.add_term(n, c * mpq_class(s * m.k[j]));
    }
  }
  return r;
}

Form d_simplex(const Form& w, SimplexD variant) {
  Form r(w.dim(), w.level());
  for (auto& [m, c] : w.terms()) {
    int rs = (variant == SimplexD::signed_ && (popcount16(m.dx) & 1)) ? -1 : 1;
    for (int i = 0; i < w.level(); ++i) {
      if (m.t[i] == 0) continue;
      std::uint16_t bit = std::uint16_t(1u << i);
      int s = merge_sign(bit, m.dt);
      if (!s) continue;
      Mono n = m;
      n.t[i]--;
      n.dt |= bit;
      r.add_term(n, c * mpq_class(rs * s * m.t[i]));
    }
  }
  return r;
}

Form d_total(const Form& w) { return d_manifold(w) + d_simplex(w, SimplexD::signed_); }

namespace {

using Poly = std::map<TExp, mpq_class>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      TExp e;
      for (int i = 0; i < kMaxLevel; ++i) e[i] = std::uint8_t(ea[i] + eb[i]);
      auto& slot = r[e];
      slot += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();)
    it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
  return r;
}

Poly affine_poly(const AffineCoord& a) {
  Poly p;
  if (sgn(a.c0) != 0) p[TExp{}] = a.c0;
  for (size_t j = 0; j < a.lin.size(); ++j) {
    if (sgn(a.lin[j]) == 0) continue;
    TExp e{};
    e[j] = 1;
    p[e] = a.lin[j];
  }
  return p;
}

}  // namespace

Form substitute(const Form& w, int new_level, const std::vector<AffineCoord>& coords) {
  if ((int)coords.size() != w.level()) throw std::invalid_argument("substitute: coordinate count");
  if (new_level > kMaxLevel) throw std::invalid_argument("substitute: level too large");
  std::vector<std::vector<Poly>> powers(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) powers[i].push_back(Poly{{TExp{}, mpq_class(1)}});
  auto power = [&](size_t i, int e) -> const Poly& {
    while ((int)powers[i].size() <= e) powers[i].push_back(poly_mul(powers[i].back(), affine_poly(coords[i])));
    return powers[i][e];
  };
  Form r(w.dim(), new_level);
  for (auto& [m, c] : w.terms()) {
    Poly p{{TExp{}, mpq_class(1)}};
    for (int i = 0; i < w.level(); ++i)
      if (m.t[i]) p = poly_mul(p, power(i, m.t[i]));
    std::map<std::uint16_t, mpq_class> dtp{{0, mpq_class(1)}};
    for (int i = 0; i < w.level(); ++i) {
      if (!(m.dt >> i & 1)) continue;
      std::map<std::uint16_t, mpq_class> nxt;
      for (auto& [mask, v] : dtp)
        for (size_t j = 0; j < coords[i].lin.size(); ++j) {
          if (sgn(coords[i].lin[j]) == 0) continue;
          std::uint16_t bit = std::uint16_t(1u << j);
          int s = merge_sign(mask, bit);
          if (!s) continue;
          nxt[mask | bit] += v * coords[i].lin[j] * s;
        }
      dtp.swap(nxt);
    }
    for (auto& [mask, v] : dtp) {
      if (sgn(v) == 0) continue;
      for (auto& [e, pc] : p) {
        Mono n = m;
        n.t = e;
        n.dt = mask;
        r.add_term(n, c * mpq_class(v * pc));
      }
    }
  }
  return r;
}

Form pullback_face(const Form& w, int i) {
  int k = w.level();
  if (k < 1 || i < 0 || i > k) throw std::out_of_range("pullback_face: index out of range");
  std::vector<AffineCoord> c(k);
  for (auto& a : c) a.lin.assign(k - 1, mpq_class(0));
  if (i == 0) {
    c[0].c0 = 1;
    for (int j = 0; j < k - 1; ++j) c[0].lin[j] = -1;
    for (int p = 1; p < k; ++p) c[p].lin[p - 1] = 1;
  } else {
    for (int p = 0; p < k; ++p) {
      if (p < i - 1) c[p].lin[p] = 1;
      if (p > i - 1) c[p].lin[p - 1] = 1;
    }
  }
  return substitute(w, k - 1, c);
}

Form pullback_degeneracy(const Form& w, int j) {
  int k = w.level();
  if (j < 0 || j > k) throw std::out_of_range("pullback_degeneracy: index out of range");
  std::vector<AffineCoord> c(k);
  for (auto& a : c) a.lin.assign(k + 1, mpq_class(0));
  for (int p = 0; p < k; ++p) {
    if (j == 0) {
      c[p].lin[p + 1] = 1;
    } else if (p < j - 1) {
      c[p].lin[p] = 1;
    } else if (p == j - 1) {
      c[p].lin[p] = 1;
      c[p].lin[p + 1] = 1;
    } else {
      c[p].lin[p + 1] = 1;
    }
  }
  return substitute(w, k + 1, c);
}

Form act_group(const Form& w, const AffineAction& g, int N) {
  int m = w.dim();
  Form r(m, w.level());
  std::map<std::uint16_t, std::map<std::uint16_t, long>> dxcache;
  auto dx_image = [&](std::uint16_t I) -> const std::map<std::uint16_t, long>& {
    auto it = dxcache.find(I);
    if (it != dxcache.end()) return it->second;
    std::map<std::uint16_t, long> cur{{0, 1}};
    for (int i = 0; i < m; ++i) {
      if (!(I >> i & 1)) continue;
      std::map<std::uint16_t, long> nxt;
      for (auto& [mask, v] : cur)
        for (int j = 0; j < m; ++j) {
          if (!g.A[i][j]) continue;
          std::uint16_t bit = std::uint16_t(1u << j);
          int s = merge_sign(mask, bit);
          if (s) nxt[mask | bit] += v * s * g.A[i][j];
        }
      cur.swap(nxt);
    }
    return dxcache.emplace(I, cur).first->second;
  };
  for (auto& [mo, c] : w.terms()) {
    Mono n = mo;
    long phase = 0;
    for (int j = 0; j < m; ++j) {
      long s = 0;
      for (int i = 0; i < m; ++i) s += long(g.A[i][j]) * mo.k[i];
      n.k[j] = int(s);
      phase += long(mo.k[j]) * g.bN[j];
    }
    CycScalar cc = phase % N == 0 ? c : c * CycScalar::zeta(N, phase);
    for (auto& [mask, v] : dx_image(mo.dx)) {
      if (!v) continue;
      n.dx = mask;
      r.add_term(n, cc * mpq_class(v));
    }
  }
  return r;
}

mpq_class simplex_monomial_integral(const TExp& a, int k) {
  mpz_class num = 1, den = 1;
  long tot = k;
  for (int i = 0; i < k; ++i) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), a[i]);
    num *= f;
    tot += a[i];
  }
  mpz_fac_ui(den.get_mpz_t(), (unsigned long)tot);
  return mpq_class(num, den);
}

Form integrate_simplex(const Form& w) {
  int k = w.level();
  std::uint16_t full = std::uint16_t((1u << k) - 1);
  Form r(w.dim(), 0);
  for (auto& [m, c] : w.terms()) {
    if (m.dt != full) continue;
    Mono n;
    n.k = m.k;
    n.dx = m.dx;
    r.add_term(n, c * simplex_monomial_integral(m.t, k));
  }
  return r;
}

CycScalar integrate_manifold(const Form& w) {
  std::uint16_t full = std::uint16_t((1u << w.dim()) - 1);
  CycScalar s;
  for (auto& [m, c] : w.terms()) {
    if (m.dx != full || m.dt != 0 || m.t != TExp{} || m.k != Freq{}) continue;
    s += c;
  }
  return s;
}

CycScalar integrate_total(const Form& w) {
  std::uint16_t fx = std::uint16_t((1u << w.dim()) - 1);
  std::uint16_t ft = std::uint16_t((1u << w.level()) - 1);
  CycScalar s;
  for (auto& [m, c] : w.terms()) {
    if (m.dx != fx || m.dt != ft || m.k != Freq{}) continue;
    s += c * simplex_monomial_integral(m.t, w.level());
  }
  return s;
}

Form dlog_unit(int dim, int level, const Freq& k) {
  Form r(dim, level);
  for (int j = 0; j < dim; ++j) {
    if (!k[j]) continue;
    Mono m;
    m.dx = std::uint16_t(1u << j);
    r.add_term(m, CycScalar(long(k[j])));
  }
  return r;
}

}  // namespace gcl
