#include "gcl/twisted.hpp"

#include <stdexcept>

namespace gcl {

LForm lwedge(const LForm& a, const LForm& b) {
  LForm r;
  for (auto& [p, x] : a.terms)
    for (auto& [q, y] : b.terms) r.add(p + q, wedge(x, y));
  return r;
}

LForm lscale(const LForm& a, const CycScalar& c) {
  LForm r;
  for (auto& [p, x] : a.terms) r.add(p, x * c);
  return r;
}

LForm rescale(const Form& w, int shift) {
  LForm r;
  for (auto& [m, c] : w.terms()) {
    int e = popcount16(m.dx) - popcount16(m.dt) + shift;
    if (e & 1) throw std::invalid_argument("rescale: odd weight");
    Form one(w.dim(), w.level());
    one.add_term(m, c);
    r.add(e / 2, one);
  }
  return r;
}

int term_grade(int upow, const Mono& m, int dim) { return 2 * upow + dim - popcount16(m.dx) + popcount16(m.dt); }

std::optional<int> lform_grade(const LForm& f, int dim) {
  std::optional<int> g;
  for (auto& [p, w] : f.terms)
    for (auto& [m, c] : w.terms()) {
      int e = term_grade(p, m, dim);
      if (g && *g != e) return std::nullopt;
      g = e;
    }
  return g;
}

UForm UForm::from_window(const Window& w, int upow) {
  UForm r;
  r.max_level = w.max_level;
  r.at = [w, upow](const Tuple& t) {
    LForm f;
    f.add(upow, w(t));
    return f;
  };
  return r;
}

UForm uform_sum(const UForm& a, const UForm& b) {
  UForm r;
  r.max_level = std::min(a.max_level, b.max_level);
  r.at = [a, b](const Tuple& t) { return a(t) + b(t); };
  return r;
}

TwistTriple::TwistTriple(Window theta, const Model& md) : theta_(std::move(theta)) {
  for (int k = 0; k <= theta_.max_level; ++k)
    for (auto& t : all_tuples(md.G.order(), k)) {
      Form f = theta_(t);
      int deg = 3;
      if (!f.is_zero() && (!f.is_homogeneous(&deg) || deg != 3))
        throw std::invalid_argument("twist form is not a 3-form at " + tuple_str(t));
      if (!f.component(0, 3).is_zero()) throw std::invalid_argument("twist form has a (0,3) part at " + tuple_str(t));
    }
}

TwistTriple TwistTriple::zero(const Model& md, int max_level) {
  Window w;
  w.max_level = max_level;
  int m = md.dim();
  w.at = [m](const Tuple& t) { return Form(m, (int)t.size()); };
  return TwistTriple(w, md);
}

LForm TwistTriple::theta_u(const Tuple& t) const { return rescale(theta_(t), 1); }

bool TwistTriple::closed(const Model& md, Tuple* witness) const {
  for (int k = 0; k <= theta_.max_level; ++k)
    for (auto& t : all_tuples(md.G.order(), k))
      if (!d_total(theta_(t)).is_zero()) {
        if (witness) *witness = t;
        return false;
      }
  return true;
}

static Form parity_sign(const Form& w) {
  Form r(w.dim(), w.level());
  for (auto& [m, c] : w.terms()) r.add_term(m, ((popcount16(m.dx) + popcount16(m.dt)) & 1) ? -c : c);
  return r;
}

UForm d_twisted(const UForm& xi, const TwistTriple& th) {
  UForm r;
  r.max_level = std::min(xi.max_level, th.window().max_level);
  r.at = [xi, th](const Tuple& t) {
    LForm x = xi(t);
    LForm px;
    for (auto& [p, w] : x.terms) px.add(p, parity_sign(w));
    LForm out;
    for (auto& [p, w] : px.terms) {
      out.add(p + 1, d_manifold(w));
      out.add(p, d_simplex(w, SimplexD::signed_));
    }
    out += lwedge(th.theta_u(t), px);
    return out;
  };
  return r;
}

static LForm eta_u(const Form& eta) {
  if (!eta.component(0, 2).is_zero()) throw std::invalid_argument("gauge form has a (0,2) part");
  int deg = 2;
  if (!eta.is_zero() && (!eta.is_homogeneous(&deg) || deg != 2)) throw std::invalid_argument("gauge form must be a 2-form");
  return rescale(eta, 0);
}

UForm gauge_transform(const UForm& xi, const Window& eta) {
  UForm r;
  r.max_level = std::min(xi.max_level, eta.max_level);
  r.at = [xi, eta](const Tuple& t) {
    LForm e = eta_u(eta(t));
    LForm term = xi(t);
    LForm acc = term;
    // exp(-e) ^ xi; positive form degree makes the series finite
    for (long p = 1; !term.is_zero(); ++p) {
      term = lscale(lwedge(e, term), CycScalar(mpq_class(-1, p)));
      acc += term;
    }
    return acc;
  };
  return r;
}

TwistTriple gauge_shift(const TwistTriple& th, const Window& eta, const Model& md) {
  Window w;
  w.max_level = std::min(th.window().max_level, eta.max_level);
  Window a = th.window();
  w.at = [a, eta](const Tuple& t) { return a(t) + d_total(eta(t)); };
  return TwistTriple(w, md);
}

}  // namespace gcl
