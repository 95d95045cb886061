#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "gcl/homological.hpp"

namespace gcl {

// (1 - sum t_i) beta + sum_i t_i beta^{g_1..g_i}: compatible for any beta on M
Window linear_extend(const Form& beta, const Model& md, int max_level = 4);

// Whitney forms of a normalized group p-cochain: compatible, int over Delta^p of level p gives c
using GroupCochain = std::function<CycScalar(const Tuple&)>;
Window whitney_extend(GroupCochain c, int p, const Model& md, int max_level = 4);
GroupCochain group_coboundary(GroupCochain c, const GroupData& G);

// sum_{p <= cap} (-sigma)^p vartheta^p / p!, returned as the coefficients of sigma^p
std::vector<EndForm> exp_vartheta(const EndForm& vt, int cap, int order);

// [a, e^{-s vt}] against s int_0^1 e^{-(1-r) s vt}[vt, a] e^{-r s vt} dr, coefficientwise in s
bool duhamel_holds(const EndForm& vt, const EndForm& a, int cap, int order);

class JLO {
 public:
  // exp_cap < 0 picks the degree bound floor((dim M + k) / 2)
  JLO(const Model& md, const GerbeDatum& d, int exp_cap = -1);

  const Model& model() const { return md_; }
  const GerbeDatum& datum() const { return d_; }

  // int_{Delta^n} tr(a0 e^{-s0 vt} nabla a1 ... nabla an e^{-sn vt}), with u-weights
  LForm chern(const Tuple& g, const std::vector<EndSection>& a) const;
  // group degree k = |g|; the k-th component of tau(w)
  UScalar tau_eval(const UForm& w, const Tuple& g, const std::vector<EndSection>& a) const;
  GCochain<EndSection> tau(const UForm& w) const;

 private:
  const EndForm& vt(const Tuple& g) const;

  Model md_;
  GerbeDatum d_;
  int cap_;
  struct Cache {
    std::mutex mu;
    std::map<Tuple, std::unique_ptr<EndForm>> vt;
  };
  std::shared_ptr<Cache> cache_;
};

struct ChainCheck {
  bool pass = false;
  UScalar lhs, rhs;
};

// tau(d_Theta w) = (-(b + uB) + delta') tau(w) at one tuple and argument list
ChainCheck tau_chain_check(const JLO& j, const UForm& w, const TwistTriple& th, const Tuple& g,
                           const std::vector<EndSection>& a);

// Psi2 Psi1 S Psi0 tau(w), summed over group degrees 0..kmax (kmax < 0: w.max_level, where tau stops)
Cochain<ConvSection> composite(const JLO& j, const UForm& w, int kmax = -1);
// composite(d_Theta w) = (b + uB) composite(w) on one argument list
ChainCheck composite_chain_check(const JLO& j, const UForm& w, const TwistTriple& th,
                                 const std::vector<ConvSection>& a, int kmax = -1);

}  // namespace gcl
