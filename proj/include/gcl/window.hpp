#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gcl/group.hpp"

namespace gcl {

// a compatible form truncated to levels 0..max_level; level = tuple length
struct Window {
  int max_level = 4;
  std::function<Form(const Tuple&)> at;

  Form operator()(const Tuple& t) const { return at(t); }
};

Window memoize(Window w);
Window window_sum(const Window& a, const Window& b);
Window window_scale(const Window& a, const CycScalar& c);

// the nerve face on tuples; for i = 0 the caller also pulls back by t[0]
Tuple face_tuple(const GroupData& G, const Tuple& t, int i);
Tuple degeneracy_tuple(const GroupData& G, const Tuple& t, int j);

struct CompatFailure {
  int level = 0;
  int face = 0;
  Tuple tuple;
  std::string diff;
};

struct CompatReport {
  long checks = 0;
  std::vector<CompatFailure> failures;
  bool pass() const { return failures.empty(); }
};

CompatReport check_compatible(const Window& w, const Model& md, int jobs = 1);
// optional: s_j^* w_(k) = w_(k+1)(degenerate tuple), for k < max_level
CompatReport check_degeneracies(const Window& w, const Model& md, int jobs = 1);

struct NonInvariant : std::invalid_argument {
  int witness;
  NonInvariant(int g, const std::string& what) : std::invalid_argument(what), witness(g) {}
};

Window invariant_extend(const Form& beta, const Model& md, int max_level = 4);

}  // namespace gcl
