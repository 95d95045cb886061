#pragma once

#include <string>
#include <vector>

#include "gcl/form.hpp"

namespace gcl {

using Tuple = std::vector<int>;

struct ModelManifold {
  enum class Kind { point, torus };
  Kind kind = Kind::point;
  int dim = 0;
  int N = 1;  // cyclotomic order
};

// finite group by table, acting on the right on T^m: x.g = A_g x + b_g
struct GroupData {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;
  int identity = 0;
  std::vector<AffineAction> action;

  int order() const { return (int)table.size(); }
  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const { return inverse[a]; }
  // g_{from} ... g_{to-1}
  int product(const Tuple& t, size_t from, size_t to) const;
  int product(const Tuple& t) const { return product(t, 0, t.size()); }

  static GroupData cyclic(int n, int m = 0);
  static GroupData product_of(const GroupData& a, const GroupData& b);
};

struct Model {
  ModelManifold M;
  GroupData G;

  int dim() const { return M.dim; }
  int N() const { return M.N; }
  // f^g = pullback along x -> x.g
  Form act(const Form& w, int g) const { return act_group(w, G.action[g], M.N); }
  Form zero(int level) const { return Form(M.dim, level); }
  Form one(int level) const { return Form::scalar(M.dim, level, CycScalar(1)); }
};

// throws std::invalid_argument with a witness on failure
void validate_model(const Model& m);

std::vector<Tuple> all_tuples(int order, int k);

std::string tuple_str(const Tuple& t);

}  // namespace gcl
