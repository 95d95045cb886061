#pragma once

#include <functional>
#include <optional>

#include "gcl/window.hpp"

namespace gcl {

using LForm = Laurent<Form>;  // u-Laurent form at a single tuple

LForm lwedge(const LForm& a, const LForm& b);
LForm lscale(const LForm& a, const CycScalar& c);

// psi-rescaling: the (p,s) part gets u^{(p - s + shift)/2}; odd parity throws
LForm rescale(const Form& w, int shift);

// grade of u^j dx_I dt_J: 2j + (dim M - |I|) + |J|
int term_grade(int upow, const Mono& m, int dim);
// the common grade of all terms, nullopt if mixed; zero maps to nullopt too
std::optional<int> lform_grade(const LForm& f, int dim);

struct UForm {
  int max_level = 4;
  std::function<LForm(const Tuple&)> at;

  LForm operator()(const Tuple& t) const { return at(t); }
  static UForm from_window(const Window& w, int upow = 0);
};

UForm uform_sum(const UForm& a, const UForm& b);

// a closed compatible 3-form with vanishing (0,3) part
class TwistTriple {
 public:
  // checks the (0,3) part on all tuples up to the window's level
  TwistTriple(Window theta, const Model& md);
  static TwistTriple zero(const Model& md, int max_level);

  const Window& window() const { return theta_; }
  Form part(const Tuple& t, int r, int s) const { return theta_(t).component(r, s); }
  LForm theta_u(const Tuple& t) const;  // u^2 T^{3,0} + u T^{2,1} + T^{1,2}
  // (D + d_simplex') Theta = 0 on every tuple
  bool closed(const Model& md, Tuple* witness = nullptr) const;

 private:
  Window theta_;
};

// (-1)^{|xi|} (u D xi + d_simplex' xi + Theta_u ^ xi)
UForm d_twisted(const UForm& xi, const TwistTriple& th);

// xi -> exp(-eta_u) ^ xi with eta_u = u eta^{2,0} + eta^{1,1}
UForm gauge_transform(const UForm& xi, const Window& eta);
// Theta' = Theta + (D + d_simplex') eta
TwistTriple gauge_shift(const TwistTriple& th, const Window& eta, const Model& md);

}  // namespace gcl
