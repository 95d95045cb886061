#include "gcl/homological.hpp"

#include <sstream>

namespace gcl {

ConvSection ConvSection::delta(int g, const Form& f) {
  ConvSection a;
  if (!f.is_zero()) a.comp.emplace(g, f);
  return a;
}

ConvSection ConvSection::one(const CycScalar& c) {
  ConvSection a;
  a.unit = c;
  return a;
}

ConvSection& ConvSection::operator+=(const ConvSection& o) {
  for (auto& [g, f] : o.comp) {
    auto it = comp.find(g);
    if (it == comp.end()) {
      comp.emplace(g, f);
      continue;
    }
    it->second += f;
    if (it->second.is_zero()) comp.erase(it);
  }
  unit += o.unit;
  return *this;
}

ConvSection& ConvSection::operator*=(const CycScalar& c) {
  for (auto it = comp.begin(); it != comp.end();) {
    it->second *= c;
    it = it->second.is_zero() ? comp.erase(it) : std::next(it);
  }
  unit *= c;
  return *this;
}

std::string ConvSection::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [g, f] : comp) {
    os << (first ? "" : " + ") << "d" << g << "[" << f.str() << "]";
    first = false;
  }
  if (!unit.is_zero()) os << (first ? "" : " + ") << unit.str() << "*1";
  return os.str();
}

bool conv_equal(const ConvSection& a, const ConvSection& b) {
  ConvSection c = b;
  c *= CycScalar(-1);
  c += a;
  return c.is_zero();
}

ConvSection conv_mul(const Model& md, const GerbeDatum& d, const ConvSection& a, const ConvSection& b) {
  ConvSection r;
  for (auto& [g1, f1] : a.comp)
    for (auto& [g2, f2] : b.comp) {
      Form p = wedge(wedge(unit_form(md, d.lambda[g1][g2]), f1), md.act(f2, g1));
      r += ConvSection::delta(md.G.mul(g1, g2), p);
    }
  if (!a.unit.is_zero()) {
    ConvSection t = b;
    t.unit = CycScalar();
    t *= a.unit;
    r += t;
  }
  if (!b.unit.is_zero()) {
    ConvSection t = a;
    t.unit = CycScalar();
    t *= b.unit;
    r += t;
  }
  r.unit += a.unit * b.unit;
  return r;
}

Algebra<EndSection> end_algebra(const Model& md, const GerbeDatum& d) {
  Algebra<EndSection> A;
  A.mul = [](const EndSection& x, const EndSection& y) { return endo_mul(x, y); };
  A.act = [md, d](int g, const EndSection& x) { return endo_act(md, d, g, x); };
  int m = md.dim();
  A.one = [m]() { return EndSection::unit(m, 0, CycScalar(1)); };
  A.split = [](const EndSection& x) {
    std::vector<std::pair<std::pair<int, int>, EndSection>> out;
    for (auto& [k, f] : x.entries()) out.push_back({k, EndSection::elementary(k.first, k.second, f)});
    if (!x.unit_part().is_zero())
      out.push_back({{-1, -1}, EndSection::unit(x.dim(), x.level(), x.unit_part())});
    return out;
  };
  A.group_order = md.G.order();
  A.identity = md.G.identity;
  auto G = md.G;
  A.inv = [G](int g) { return G.inv(g); };
  A.gmul = [G](int g, int h) { return G.mul(g, h); };
  return A;
}

Algebra<ConvSection> conv_algebra(const Model& md, const GerbeDatum& d) {
  Algebra<ConvSection> A;
  A.mul = [md, d](const ConvSection& x, const ConvSection& y) { return conv_mul(md, d, x, y); };
  A.act = [](int, const ConvSection& x) { return x; };
  A.one = []() { return ConvSection::one(CycScalar(1)); };
  A.split = [](const ConvSection& x) {
    std::vector<std::pair<std::pair<int, int>, ConvSection>> out;
    for (auto& [g, f] : x.comp) out.push_back({{g, g}, ConvSection::delta(g, f)});
    if (!x.unit.is_zero()) out.push_back({{-1, -1}, ConvSection::one(x.unit)});
    return out;
  };
  A.group_order = md.G.order();
  A.identity = md.G.identity;
  auto G = md.G;
  A.inv = [G](int g) { return G.inv(g); };
  A.gmul = [G](int g, int h) { return G.mul(g, h); };
  return A;
}

std::vector<EndSection> psi2_chain(const Model& md, const GerbeDatum& d, const std::vector<ConvSection>& a) {
  std::vector<EndSection> fwd;
  int P = md.G.identity;
  for (auto& x : a) {
    if (x.comp.empty()) {
      fwd.push_back(EndSection::unit(md.dim(), 0, x.unit));
      continue;
    }
    auto& [g, f] = *x.comp.begin();
    Form v = wedge(unit_form(md, d.lambda[P][g]), md.act(f, P));
    int Q = md.G.mul(P, g);
    // transposed: our End algebra is the opposite of the E_{P,Pg} picture
    fwd.push_back(EndSection::elementary(Q, P, v));
    P = Q;
  }
  if (P != md.G.identity) return {};
  std::vector<EndSection> out{fwd[0]};
  for (size_t i = fwd.size(); i-- > 1;) out.push_back(fwd[i]);
  return out;
}

Cochain<ConvSection> psi2(const Model& md, const GerbeDatum& d, Cochain<EndSection> c) {
  Algebra<ConvSection> A = conv_algebra(md, d);
  return [md, d, c, A](const std::vector<ConvSection>& a) {
    UScalar r;
    std::vector<std::vector<std::pair<std::pair<int, int>, ConvSection>>> parts;
    for (auto& x : a) {
      parts.push_back(A.split(x));
      if (parts.back().empty()) return r;
    }
    std::vector<size_t> idx(a.size(), 0);
    while (true) {
      std::vector<ConvSection> el;
      for (size_t i = 0; i < a.size(); ++i) el.push_back(parts[i][idx[i]].second);
      auto chain = psi2_chain(md, d, el);
      if (!chain.empty()) r += c(chain);
      size_t i = a.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < parts[i].size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) {
        // reversal sign, and u -> -u so that uB commutes as well as b
        long n = (long)a.size() - 1;
        UScalar out;
        for (auto& [p, v] : r.terms) out.add(p, (((n * (n + 1) / 2) + p) & 1) ? -v : v);
        return out;
      }
    }
  };
}

CycScalar Sampler::scalar() {
  long v = (long)pick(5) - 2;
  if (v == 0) v = 3;
  CycScalar s(v);
  if (md->N() > 1 && pick(2)) s *= CycScalar::zeta(md->N(), pick(md->N()));
  return s;
}

Form Sampler::function(int level, int terms) {
  Form f(md->dim(), level);
  int n = 1 + pick(terms);
  for (int i = 0; i < n; ++i) {
    Freq k{};
    for (int j = 0; j < md->dim(); ++j) k[j] = pick(2 * freq + 1) - freq;
    f += Form::character(md->dim(), level, k, scalar());
  }
  if (f.is_zero()) f = Form::scalar(md->dim(), level, CycScalar(1));
  return f;
}

Form Sampler::form(int level, int max_terms) {
  Form f(md->dim(), level);
  int n = 1 + pick(max_terms);
  for (int i = 0; i < n; ++i) {
    Mono m;
    for (int j = 0; j < md->dim(); ++j) m.k[j] = pick(2 * freq + 1) - freq;
    for (int j = 0; j < level; ++j) m.t[j] = std::uint8_t(pick(3));
    if (md->dim()) m.dx = std::uint16_t(pick(1 << md->dim()));
    if (level) m.dt = std::uint16_t(pick(1 << level));
    f.add_term(m, scalar());
  }
  return f;
}

EndSection Sampler::end_elem(int y, int z) { return EndSection::elementary(y, z, function()); }

EndSection Sampler::end_random(int entries) {
  EndSection e(md->dim(), 0);
  int n = 1 + pick(entries);
  for (int i = 0; i < n; ++i) e += end_elem(pick(md->G.order()), pick(md->G.order()));
  return e;
}

std::vector<EndSection> Sampler::end_chain(int n, bool noise) {
  int order = md->G.order();
  std::vector<int> g(n + 1);
  for (auto& x : g) x = pick(order);
  std::vector<EndSection> a;
  for (int i = 0; i <= n; ++i) {
    EndSection e = end_elem(g[i], g[(i + 1) % (n + 1)]);
    if (noise && pick(3) == 0) e += end_elem(pick(order), pick(order));
    a.push_back(e);
  }
  return a;
}

ConvSection Sampler::conv_random(int comps) {
  ConvSection c;
  int n = 1 + pick(comps);
  for (int i = 0; i < n; ++i) c += ConvSection::delta(pick(md->G.order()), function());
  return c;
}

std::vector<ConvSection> Sampler::conv_args(int n) {
  std::vector<ConvSection> a;
  int P = md->G.identity;
  for (int i = 0; i <= n; ++i) {
    int g = i < n ? pick(md->G.order()) : md->G.inv(P);
    P = md->G.mul(P, g);
    ConvSection c = ConvSection::delta(g, function());
    if (pick(3) == 0) c += ConvSection::delta(pick(md->G.order()), function());
    a.push_back(c);
  }
  return a;
}

Tuple Sampler::tuple(int k) {
  Tuple t(k);
  for (auto& x : t) x = pick(md->G.order());
  return t;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 31);
}

struct Coord {
  std::uint64_t key;
  CycScalar c;
};

std::vector<Coord> coords(const EndSection& a, bool with_unit) {
  std::vector<Coord> out;
  for (auto& [k, f] : a.entries())
    for (auto& [m, c] : f.terms()) {
      std::uint64_t h = mix(mix(17, (std::uint64_t)k.first), (std::uint64_t)k.second);
      for (int j = 0; j < kMaxDim; ++j) h = mix(h, (std::uint64_t)(std::int64_t)m.k[j]);
      out.push_back({h, c});
    }
  if (with_unit && !a.unit_part().is_zero()) out.push_back({0x5151, a.unit_part()});
  return out;
}

UScalar multilinear(std::uint64_t seed, const std::vector<EndSection>& a) {
  std::vector<std::vector<Coord>> cs;
  for (size_t i = 0; i < a.size(); ++i) {
    cs.push_back(coords(a[i], i == 0));
    if (cs.back().empty()) return {};
  }
  CycScalar total;
  std::vector<size_t> idx(a.size(), 0);
  while (true) {
    std::uint64_t h = mix(seed, a.size());
    CycScalar p(1);
    for (size_t i = 0; i < a.size(); ++i) {
      h = mix(h, cs[i][idx[i]].key);
      p *= cs[i][idx[i]].c;
    }
    long w = (long)(h % 7) - 3;
    if (w) total += p * CycScalar(w);
    size_t i = a.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < cs[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  UScalar r;
  r.add((int)(mix(seed, 99) % 3) - 1, total);
  return r;
}

}  // namespace

Cochain<EndSection> random_end_cochain(const Model&, std::uint64_t seed) {
  return [seed](const std::vector<EndSection>& a) { return multilinear(seed, a); };
}

GCochain<EndSection> random_end_gcochain(const Model&, std::uint64_t seed) {
  return [seed](const Tuple& g, const std::vector<EndSection>& a) {
    std::uint64_t h = mix(seed, g.size());
    for (int x : g) h = mix(h, (std::uint64_t)x);
    return multilinear(h, a);
  };
}

GCochain<EndSection> random_equivariant_gcochain(const Model& md, const GerbeDatum& d, std::uint64_t seed) {
  auto R = random_end_gcochain(md, seed);
  auto alg = end_algebra(md, d);
  return [R, alg](const Tuple& g, const std::vector<EndSection>& a) {
    if (g.empty()) return UScalar{};
    int gi = alg.inv(g[0]);
    Tuple h;
    for (size_t i = 1; i < g.size(); ++i) h.push_back(alg.gmul(gi, g[i]));
    return R(h, act_args(alg, gi, a));
  };
}

}  // namespace gcl
