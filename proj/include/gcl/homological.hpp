#pragma once

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "gcl/bundle.hpp"

namespace gcl {

// sum_g a_g (a_g a function, trivialized section of L_g) plus c * 1
struct ConvSection {
  std::map<int, Form> comp;
  CycScalar unit;

  bool is_zero() const { return comp.empty() && unit.is_zero(); }
  static ConvSection delta(int g, const Form& f);
  static ConvSection one(const CycScalar& c);
  ConvSection& operator+=(const ConvSection& o);
  ConvSection& operator*=(const CycScalar& c);
  std::string str() const;
};

ConvSection conv_mul(const Model& md, const GerbeDatum& d, const ConvSection& a, const ConvSection& b);
bool conv_equal(const ConvSection& a, const ConvSection& b);

// the operations the cyclic and group operators need from an algebra
template <class A>
struct Algebra {
  std::function<A(const A&, const A&)> mul;
  std::function<A(int, const A&)> act;  // left action (identity when absent)
  std::function<A()> one;
  // elementary summands of a, paired with a marker: the (row, col) of an E-entry,
  // or (-1, -1) for the unit
  std::function<std::vector<std::pair<std::pair<int, int>, A>>(const A&)> split;
  int group_order = 1;
  int identity = 0;
  std::function<int(int)> inv;
  std::function<int(int, int)> gmul;
};

Algebra<EndSection> end_algebra(const Model& md, const GerbeDatum& d);
Algebra<ConvSection> conv_algebra(const Model& md, const GerbeDatum& d);

// mixed-arity cyclic cochain: arity n = args.size() - 1
template <class A>
using Cochain = std::function<UScalar(const std::vector<A>&)>;
// group-cochain valued in cyclic cochains; group degree read from the tuple
template <class A>
using GCochain = std::function<UScalar(const Tuple&, const std::vector<A>&)>;

template <class A>
Cochain<A> b_apply(const Algebra<A>& alg, Cochain<A> f) {
  return [alg, f](const std::vector<A>& a) {
    int n = (int)a.size() - 1;
    UScalar r;
    if (n < 1) return r;
    for (int i = 0; i < n; ++i) {
      std::vector<A> x;
      for (int j = 0; j < i; ++j) x.push_back(a[j]);
      x.push_back(alg.mul(a[i], a[i + 1]));
      for (int j = i + 2; j <= n; ++j) x.push_back(a[j]);
      UScalar v = f(x);
      r += (i & 1) ? -v : v;
    }
    std::vector<A> x{alg.mul(a[n], a[0])};
    for (int j = 1; j < n; ++j) x.push_back(a[j]);
    UScalar v = f(x);
    r += (n & 1) ? -v : v;
    return r;
  };
}

template <class A>
Cochain<A> B_apply(const Algebra<A>& alg, Cochain<A> f) {
  return [alg, f](const std::vector<A>& a) {
    int n = (int)a.size() - 1;
    UScalar r;
    for (int i = 0; i <= n; ++i) {
      std::vector<A> x{alg.one()};
      for (int j = i; j <= n; ++j) x.push_back(a[j]);
      for (int j = 0; j < i; ++j) x.push_back(a[j]);
      UScalar v = f(x);
      r += ((n * i) & 1) ? -v : v;
    }
    return r;
  };
}

// b + u B
template <class A>
Cochain<A> bB_apply(const Algebra<A>& alg, Cochain<A> f) {
  auto b = b_apply(alg, f), B = B_apply(alg, f);
  return [b, B](const std::vector<A>& a) { return b(a) + B(a).shifted(1); };
}

template <class A>
GCochain<A> valuewise(GCochain<A> f, std::function<Cochain<A>(Cochain<A>)> op) {
  return [f, op](const Tuple& g, const std::vector<A>& a) {
    Cochain<A> fg = [f, g](const std::vector<A>& x) { return f(g, x); };
    return op(fg)(a);
  };
}

// (g.c)(a_0..a_n) = c(g^{-1} a_0, .., g^{-1} a_n)
template <class A>
std::vector<A> act_args(const Algebra<A>& alg, int g, const std::vector<A>& a) {
  std::vector<A> r;
  for (auto& x : a) r.push_back(alg.act(g, x));
  return r;
}

// inhomogeneous: (d f)(g1..gk) = g1.f(g2..gk) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^k f(g1..g_{k-1})
template <class A>
GCochain<A> delta_group(const Algebra<A>& alg, GCochain<A> f, bool primed = false) {
  return [alg, f, primed](const Tuple& g, const std::vector<A>& a) {
    int k = (int)g.size();
    UScalar r;
    if (k == 0) return r;
    r += f(Tuple(g.begin() + 1, g.end()), act_args(alg, alg.inv(g[0]), a));
    for (int i = 1; i < k; ++i) {
      Tuple h;
      for (int j = 0; j < k; ++j) {
        if (j == i - 1) {
          h.push_back(alg.gmul(g[j], g[j + 1]));
          ++j;
        } else {
          h.push_back(g[j]);
        }
      }
      UScalar v = f(h, a);
      r += (i & 1) ? -v : v;
    }
    UScalar v = f(Tuple(g.begin(), g.end() - 1), a);
    r += (k & 1) ? -v : v;
    if (primed && ((a.size() - 1) & 1)) r = -r;
    return r;
  };
}

template <class A>
GCochain<A> delta_homog(GCochain<A> f, bool primed = false) {
  return [f, primed](const Tuple& g, const std::vector<A>& a) {
    UScalar r;
    for (size_t i = 0; i < g.size(); ++i) {
      Tuple h;
      for (size_t j = 0; j < g.size(); ++j)
        if (j != i) h.push_back(g[j]);
      UScalar v = f(h, a);
      r += (i & 1) ? -v : v;
    }
    if (primed && ((a.size() - 1) & 1)) r = -r;
    return r;
  };
}

// F(g0..gk) = g0.f(g0^{-1} g1, .., g_{k-1}^{-1} g_k)
template <class A>
GCochain<A> psi0(const Algebra<A>& alg, GCochain<A> f) {
  return [alg, f](const Tuple& g, const std::vector<A>& a) {
    Tuple h;
    for (size_t i = 1; i < g.size(); ++i) h.push_back(alg.gmul(alg.inv(g[i - 1]), g[i]));
    return f(h, act_args(alg, alg.inv(g[0]), a));
  };
}

template <class A>
GCochain<A> psi0_inverse(const Algebra<A>& alg, GCochain<A> F) {
  return [alg, F](const Tuple& h, const std::vector<A>& a) {
    Tuple g{alg.identity};
    for (int x : h) g.push_back(alg.gmul(g.back(), x));
    return F(g, a);
  };
}

// elementary chains of the argument tuple with their gamma marker; chains whose
// non-unit slots are not cyclically matched are dropped
template <class A>
std::vector<std::pair<int, std::vector<A>>> gamma_chains(const Algebra<A>& alg, const std::vector<A>& a) {
  std::vector<std::pair<int, std::vector<A>>> out;
  std::vector<std::vector<std::pair<std::pair<int, int>, A>>> parts;
  for (auto& x : a) parts.push_back(alg.split(x));
  std::vector<size_t> idx(a.size(), 0);
  for (auto& p : parts)
    if (p.empty()) return out;
  while (true) {
    std::vector<std::pair<int, int>> keys;
    std::vector<A> chain;
    for (size_t i = 0; i < a.size(); ++i) {
      keys.push_back(parts[i][idx[i]].first);
      chain.push_back(parts[i][idx[i]].second);
    }
    std::vector<std::pair<int, int>> live;
    for (auto& k : keys)
      if (k.first >= 0) live.push_back(k);
    bool matched = true;
    for (size_t i = 0; i < live.size(); ++i)
      if (live[i].second != live[(i + 1) % live.size()].first) matched = false;
    if (matched) out.emplace_back(live.empty() ? alg.identity : live[0].first, std::move(chain));
    size_t i = a.size();
    while (i > 0) {
      --i;
      if (++idx[i] < parts[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (a.empty()) return out;
  }
}

template <class A>
int gamma_map(const Algebra<A>& alg, const std::vector<A>& elementary_chain) {
  auto cs = gamma_chains(alg, elementary_chain);
  return cs.empty() ? -1 : cs.front().first;
}

// (h phi)(g0..gk)(s) = (-1)^{k+1} phi(g0..gk, gamma(s))(s), so that dh + hd = 1
template <class A>
GCochain<A> homotopy_h(const Algebra<A>& alg, GCochain<A> phi) {
  return [alg, phi](const Tuple& g, const std::vector<A>& a) {
    if (g.empty()) throw std::domain_error("homotopy h: needs a homogeneous cochain of degree >= 0");
    int k = (int)g.size() - 1;
    UScalar r;
    for (auto& [gam, chain] : gamma_chains(alg, a)) {
      Tuple h = g;
      h.push_back(gam);
      r += phi(h, chain);
    }
    return (k & 1) ? r : -r;
  };
}

// D = (-1)^j (b + uB) on homogeneous degree j = |g| - 1
template <class A>
GCochain<A> D_total(const Algebra<A>& alg, GCochain<A> f) {
  return [alg, f](const Tuple& g, const std::vector<A>& a) {
    Cochain<A> fg = [f, g](const std::vector<A>& x) { return f(g, x); };
    UScalar v = bB_apply(alg, fg)(a);
    return ((g.size() - 1) & 1) ? -v : v;
  };
}

template <class A>
GCochain<A> restrict_degree(GCochain<A> f, int k) {
  return [f, k](const Tuple& g, const std::vector<A>& a) {
    if ((int)g.size() != k + 1) return UScalar{};
    return f(g, a);
  };
}

// Psi_1 on the degree-k component, evaluated at g0 = 1
template <class A>
Cochain<A> psi1_component(const Algebra<A>& alg, GCochain<A> c, int k) {
  c = restrict_degree(c, k);
  auto minus_Dh = [alg](GCochain<A> x) {
    GCochain<A> y = D_total(alg, homotopy_h(alg, x));
    return GCochain<A>([y](const Tuple& g, const std::vector<A>& a) { return -y(g, a); });
  };
  GCochain<A> t1 = c;
  for (int i = 0; i < k; ++i) t1 = minus_Dh(t1);
  GCochain<A> t3 = delta_homog(c);
  for (int i = 0; i < k; ++i) t3 = minus_Dh(t3);
  t3 = homotopy_h(alg, t3);
  GCochain<A> t2;
  if (k >= 1) {
    t2 = D_total(alg, c);
    for (int i = 0; i < k - 1; ++i) t2 = minus_Dh(t2);
    t2 = homotopy_h(alg, t2);
  }
  int e = alg.identity;
  return [t1, t2, t3, e](const std::vector<A>& a) {
    Tuple g0{e};
    UScalar r = t1(g0, a) - t3(g0, a);
    if (t2) r -= t2(g0, a);
    return r;
  };
}

template <class A>
Cochain<A> psi1(const Algebra<A>& alg, GCochain<A> c, int kmax) {
  std::vector<Cochain<A>> parts;
  for (int k = 0; k <= kmax; ++k) parts.push_back(psi1_component(alg, c, k));
  return [parts](const std::vector<A>& a) {
    UScalar r;
    for (auto& p : parts) r += p(a);
    return r;
  };
}

// (x)(g)(a_0..a_n) -> (-1)^{n(k+1)} x(g)(a), k the group degree (homogeneous: |g| - 1)
template <class A>
GCochain<A> sign_swap(GCochain<A> f) {
  return [f](const Tuple& g, const std::vector<A>& a) {
    long n = (long)a.size() - 1, k = (long)g.size() - 1;
    UScalar v = f(g, a);
    return ((n * (k + 1)) & 1) ? -v : v;
  };
}

Cochain<ConvSection> psi2(const Model& md, const GerbeDatum& d, Cochain<EndSection> c);
// the End-side image of an elementary conv chain, transposed and read as (a_0, a_n, .., a_1);
// empty when it does not close up
std::vector<EndSection> psi2_chain(const Model& md, const GerbeDatum& d, const std::vector<ConvSection>& a);

// deterministic seeded samplers
struct Sampler {
  std::mt19937_64 rng;
  const Model* md;
  int freq = 2;  // frequencies drawn from [-freq, freq]
  explicit Sampler(const Model& m, std::uint64_t seed) : rng(seed), md(&m) {}

  int pick(int n) { return (int)(rng() % (std::uint64_t)n); }
  CycScalar scalar();
  Form function(int level = 0, int terms = 2);
  Form form(int level, int max_terms = 4);
  EndSection end_elem(int y, int z);
  EndSection end_random(int entries = 2);
  // arguments a_0..a_n, each a multiple of E_{g_i, g_{i+1}} along a closed chain, with optional noise
  std::vector<EndSection> end_chain(int n, bool noise);
  ConvSection conv_random(int comps = 2);
  std::vector<ConvSection> conv_args(int n);
  Tuple tuple(int k);
};

// random multilinear normalized cochain (vanishes when a slot >= 1 is the unit)
Cochain<EndSection> random_end_cochain(const Model& md, std::uint64_t seed);
GCochain<EndSection> random_end_gcochain(const Model& md, std::uint64_t seed);
// homogeneous and equivariant: F(g0..gk)(a) = R(g0^{-1}g1, ..)(g0^{-1} a)
GCochain<EndSection> random_equivariant_gcochain(const Model& md, const GerbeDatum& d, std::uint64_t seed);

}  // namespace gcl
