#include "gcl/group.hpp"

#include <sstream>
#include <stdexcept>

namespace gcl {

int GroupData::product(const Tuple& t, size_t from, size_t to) const {
  int p = identity;
  for (size_t i = from; i < to; ++i) p = table[p][t[i]];
  return p;
}

GroupData GroupData::cyclic(int n, int m) {
  GroupData g;
  g.table.assign(n, std::vector<int>(n));
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    g.names.push_back(std::to_string(a));
    g.inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  }
  g.action.assign(n, AffineAction::identity(m));
  return g;
}

GroupData GroupData::product_of(const GroupData& a, const GroupData& b) {
  GroupData g;
  int na = a.order(), nb = b.order();
  auto idx = [nb](int x, int y) { return x * nb + y; };
  g.table.assign(na * nb, std::vector<int>(na * nb));
  g.inverse.resize(na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      g.names.push_back("(" + a.names[x] + "," + b.names[y] + ")");
      g.inverse[idx(x, y)] = idx(a.inverse[x], b.inverse[y]);
      for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v) g.table[idx(x, y)][idx(u, v)] = idx(a.table[x][u], b.table[y][v]);
    }
  g.identity = idx(a.identity, b.identity);
  g.action.assign(na * nb, AffineAction::identity(0));
  return g;
}

static long det3(const AffineAction& g, int m) {
  auto& A = g.A;
  if (m == 0) return 1;
  if (m == 1) return A[0][0];
  if (m == 2) return long(A[0][0]) * A[1][1] - long(A[0][1]) * A[1][0];
  return long(A[0][0]) * (long(A[1][1]) * A[2][2] - long(A[1][2]) * A[2][1]) -
         long(A[0][1]) * (long(A[1][0]) * A[2][2] - long(A[1][2]) * A[2][0]) +
         long(A[0][2]) * (long(A[1][0]) * A[2][1] - long(A[1][1]) * A[2][0]);
}

void validate_model(const Model& md) {
  const auto& G = md.G;
  int n = G.order(), m = md.M.dim, N = md.M.N;
  auto fail = [](const std::string& s) { throw std::invalid_argument(s); };
  if (md.M.kind == ModelManifold::Kind::point && m != 0) fail("point manifold must have dim 0");
  if (md.M.kind == ModelManifold::Kind::torus && (m < 1 || m > kMaxDim)) fail("torus dim out of range");
  if (N < 1) fail("cyclotomic_order must be >= 1");
  if (n == 0) fail("empty group");
  if ((int)G.inverse.size() != n || (int)G.action.size() != n) fail("group table sizes inconsistent");
  for (auto& row : G.table) {
    if ((int)row.size() != n) fail("multiplication table not square");
    for (int v : row)
      if (v < 0 || v >= n) fail("multiplication table entry out of range");
  }
  for (int a = 0; a < n; ++a) {
    if (G.table[G.identity][a] != a || G.table[a][G.identity] != a) fail("identity fails at " + G.names[a]);
    if (G.table[a][G.inverse[a]] != G.identity) fail("inverse fails at " + G.names[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.table[G.table[a][b]][c] != G.table[a][G.table[b][c]])
          fail("multiplication not associative at (" + G.names[a] + "," + G.names[b] + "," + G.names[c] + ")");
  for (int a = 0; a < n; ++a) {
    if (det3(G.action[a], m) != 1) fail("action matrix of " + G.names[a] + " must have determinant +1");
  }
  // right action: A_{gh} = A_h A_g, b_{gh} = A_h b_g + b_h (mod N)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& ga = G.action[a];
      const auto& gb = G.action[b];
      const auto& gab = G.action[G.table[a][b]];
      for (int i = 0; i < m; ++i) {
        long bi = gb.bN[i];
        for (int j = 0; j < m; ++j) {
          long s = 0;
          for (int l = 0; l < m; ++l) s += long(gb.A[i][l]) * ga.A[l][j];
          if (s != gab.A[i][j]) fail("action is not a right action at (" + G.names[a] + "," + G.names[b] + ")");
          bi += long(gb.A[i][j]) * ga.bN[j];
        }
        if (((bi - gab.bN[i]) % N + N) % N != 0)
          fail("translation is not a right action at (" + G.names[a] + "," + G.names[b] + ")");
      }
    }
}

std::vector<Tuple> all_tuples(int order, int k) {
  std::vector<Tuple> out;
  Tuple t(k, 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == order) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::string tuple_str(const Tuple& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ")";
  return os.str();
}

}  // namespace gcl
