#pragma once

#include <map>
#include <utility>

#include "gcl/gerbe.hpp"

namespace gcl {

// sum of E_{y,z}(f_{yz}) plus c * Id (the adjoined unit)
class EndForm {
 public:
  using Key = std::pair<int, int>;

  EndForm() = default;
  EndForm(int dim, int level) : dim_(dim), level_(level) {}

  static EndForm elementary(int y, int z, const Form& f);
  static EndForm unit(int dim, int level, const CycScalar& c);
  static EndForm diagonal(const std::vector<Form>& d);
  static EndForm scalar_id(const Form& s, int order);  // s * Id, materialized

  int dim() const { return dim_; }
  int level() const { return level_; }
  const std::map<Key, Form>& entries() const { return e_; }
  const CycScalar& unit_part() const { return unit_; }
  Form entry(int y, int z) const;
  bool is_zero() const { return e_.empty() && unit_.is_zero(); }

  void add_entry(int y, int z, const Form& f);
  EndForm& operator+=(const EndForm& o);
  EndForm& operator-=(const EndForm& o);
  EndForm& operator*=(const CycScalar& c);
  EndForm& operator*=(const mpq_class& q);
  EndForm operator-() const;
  friend EndForm operator+(EndForm a, const EndForm& b) { return a += b; }
  friend EndForm operator-(EndForm a, const EndForm& b) { return a -= b; }
  friend EndForm operator*(EndForm a, const CycScalar& c) { return a *= c; }
  friend bool operator==(const EndForm& a, const EndForm& b) { return (a - b).is_zero(); }

  // the unit as an explicit diagonal over a finite group
  EndForm materialized(int order) const;
  EndForm map_entries(const std::function<Form(const Form&)>& f) const;  // unit dropped
  EndForm component(int r, int s) const;
  EndForm parity_part(int parity) const;  // entries of total degree = parity mod 2
  EndForm at_level(int k) const;

  std::string str() const;

 private:
  int dim_ = 0;
  int level_ = 0;
  std::map<Key, Form> e_;
  CycScalar unit_;
};

using EndSection = EndForm;  // level 0, degree 0 entries

EndForm endo_mul(const EndForm& a, const EndForm& b);
inline EndForm operator*(const EndForm& a, const EndForm& b) { return endo_mul(a, b); }
// graded commutator ab - (-1)^{|a||b|} ba, by parity parts
EndForm graded_commutator(const EndForm& a, const EndForm& b);
Form endo_trace(const EndForm& f, int order);
// g.E_{y,z}(f) = E_{gy,gz}((lambda(g,y)/lambda(g,z)) f^g)
EndForm endo_act(const Model& md, const GerbeDatum& d, int g, const EndForm& f);

EndForm d_end(const EndForm& f);  // entrywise D + d_simplex'

// A(g) = diag_{g'}( -alpha(g, g^{-1} g') )
EndForm discrepancy_A(const Model& md, const GerbeDatum& d, int g, int level = 0);
EndForm theta_E(const Model& md, const GerbeDatum& d, int level);
// diag(a_{g'}) + sum_i t_i A(g_1..g_i)
EndForm connection_potential(const Model& md, const GerbeDatum& d, const Tuple& t);

enum class NablaPart { full, manifold, simplex };
EndForm nabla_k_apply(const Model& md, const GerbeDatum& d, const Tuple& t, const EndForm& eta,
                      NablaPart part = NablaPart::full);

EndForm vartheta(const Model& md, const GerbeDatum& d, const Tuple& t);
Form theta3(const Model& md, const GerbeDatum& d, const Tuple& t);
// -nabla^k(vartheta), expected to be theta3 * Id
EndForm theta3_from_nabla(const Model& md, const GerbeDatum& d, const Tuple& t);

Window theta3_window(const Model& md, const GerbeDatum& d, int max_level);
TwistTriple twist_of(const Model& md, const GerbeDatum& d, int max_level);

CompatReport check_vartheta_compatible(const Model& md, const GerbeDatum& d, int max_level, int jobs = 1);

// u-weighted End forms
using LEnd = Laurent<EndForm>;
LEnd lend_mul(const LEnd& a, const LEnd& b);
LEnd rescale_end(const EndForm& f, int shift);
// nabla_u = nabla^{1,0} + u^{-1} d_simplex'
LEnd nabla_u_apply(const Model& md, const GerbeDatum& d, const Tuple& t, const LEnd& eta);

}  // namespace gcl
