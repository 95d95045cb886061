#include "gcl/window.hpp"

#include <map>
#include <mutex>

#include "gcl/exec.hpp"

namespace gcl {

Window memoize(Window w) {
  struct Cache {
    std::mutex mu;
    std::map<Tuple, Form> m;
  };
  auto cache = std::make_shared<Cache>();
  auto inner = w.at;
  w.at = [cache, inner](const Tuple& t) {
    {
      std::lock_guard<std::mutex> lk(cache->mu);
      auto it = cache->m.find(t);
      if (it != cache->m.end()) return it->second;
    }
    Form f = inner(t);
    std::lock_guard<std::mutex> lk(cache->mu);
    return cache->m.emplace(t, std::move(f)).first->second;
  };
  return w;
}

Window window_sum(const Window& a, const Window& b) {
  Window r;
  r.max_level = std::min(a.max_level, b.max_level);
  r.at = [a, b](const Tuple& t) { return a(t) + b(t); };
  return r;
}

Window window_scale(const Window& a, const CycScalar& c) {
  Window r = a;
  r.at = [a, c](const Tuple& t) { return a(t) * c; };
  return r;
}

Tuple face_tuple(const GroupData& G, const Tuple& t, int i) {
  int k = (int)t.size();
  Tuple r;
  if (i == 0) return Tuple(t.begin() + 1, t.end());
  if (i == k) return Tuple(t.begin(), t.end() - 1);
  for (int p = 0; p < k; ++p) {
    if (p == i - 1) {
      r.push_back(G.mul(t[p], t[p + 1]));
      ++p;
    } else {
      r.push_back(t[p]);
    }
  }
  return r;
}

Tuple degeneracy_tuple(const GroupData& G, const Tuple& t, int j) {
  Tuple r(t.begin(), t.end());
  r.insert(r.begin() + j, G.identity);
  return r;
}

namespace {

struct Job {
  int k;
  Tuple t;
};

std::vector<Job> jobs_upto(const Model& md, int from, int to) {
  std::vector<Job> js;
  for (int k = from; k <= to; ++k)
    for (auto& t : all_tuples(md.G.order(), k)) js.push_back({k, t});
  return js;
}

}  // namespace

CompatReport check_compatible(const Window& w, const Model& md, int jobs) {
  auto js = jobs_upto(md, 1, w.max_level);
  auto res = parallel_map(
      js.size(),
      [&](std::size_t n) {
        const Job& jb = js[n];
        std::vector<CompatFailure> fails;
        Form top = w(jb.t);
        for (int i = 0; i <= jb.k; ++i) {
          Form lhs = pullback_face(top, i);
          Form rhs = w(face_tuple(md.G, jb.t, i));
          if (i == 0) rhs = md.act(rhs, jb.t[0]);
          Form diff = lhs - rhs;
          if (!diff.is_zero()) fails.push_back({jb.k, i, jb.t, diff.str()});
        }
        return fails;
      },
      jobs);
  CompatReport rep;
  for (size_t n = 0; n < js.size(); ++n) {
    rep.checks += js[n].k + 1;
    for (auto& f : res[n]) rep.failures.push_back(f);
  }
  return rep;
}

CompatReport check_degeneracies(const Window& w, const Model& md, int jobs) {
  auto js = jobs_upto(md, 0, w.max_level - 1);
  auto res = parallel_map(
      js.size(),
      [&](std::size_t n) {
        const Job& jb = js[n];
        std::vector<CompatFailure> fails;
        Form low = w(jb.t);
        for (int j = 0; j <= jb.k; ++j) {
          Form diff = pullback_degeneracy(low, j) - w(degeneracy_tuple(md.G, jb.t, j));
          if (!diff.is_zero()) fails.push_back({jb.k, j, jb.t, diff.str()});
        }
        return fails;
      },
      jobs);
  CompatReport rep;
  for (size_t n = 0; n < js.size(); ++n) {
    rep.checks += js[n].k + 1;
    for (auto& f : res[n]) rep.failures.push_back(f);
  }
  return rep;
}

Window invariant_extend(const Form& beta, const Model& md, int max_level) {
  if (beta.level() != 0 && !beta.is_zero()) throw std::invalid_argument("invariant_extend: form must live on M");
  for (int g = 0; g < md.G.order(); ++g)
    if (!(md.act(beta, g) == beta))
      throw NonInvariant(g, "invariant_extend: form is not invariant under " + md.G.names[g]);
  Window w;
  w.max_level = max_level;
  w.at = [beta](const Tuple& t) { return beta.at_level((int)t.size()); };
  return w;
}

}  // namespace gcl
