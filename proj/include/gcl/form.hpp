#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcl/cyclotomic.hpp"

namespace gcl {

constexpr int kMaxDim = 3;
constexpr int kMaxLevel = 8;

using Freq = std::array<int, kMaxDim>;
using TExp = std::array<std::uint8_t, kMaxLevel>;

// f = e_k, polynomial t^a, dx_I, dt_J (I, J as bitmasks, dx before dt)
struct Mono {
  Freq k{};
  TExp t{};
  std::uint16_t dx = 0;
  std::uint16_t dt = 0;
  auto operator<=>(const Mono&) const = default;
};

// pullback data for x -> A x + b on T^m, b = bN / N
struct AffineAction {
  std::array<std::array<int, kMaxDim>, kMaxDim> A{};
  Freq bN{};
  static AffineAction identity(int m);
};

// the affine image of one simplex coordinate: c0 + sum_j lin[j] t_j
struct AffineCoord {
  mpq_class c0 = 0;
  std::vector<mpq_class> lin;
};

int popcount16(std::uint16_t m);
// sign of dx_a ^ dx_b rewritten in increasing order; 0 if they overlap
int merge_sign(std::uint16_t a, std::uint16_t b);

enum class SimplexD { unsigned_, signed_ };

class Form {
 public:
  Form() = default;
  Form(int dim, int level) : dim_(dim), level_(level) {}

  static Form scalar(int dim, int level, const CycScalar& c);
  static Form character(int dim, int level, const Freq& k, const CycScalar& c);
  static Form t_var(int dim, int level, int i);   // t_i, 1-based
  static Form dx_var(int dim, int level, int j);  // dx_j, 1-based
  static Form dt_var(int dim, int level, int i);  // dt_i, 1-based

  int dim() const { return dim_; }
  int level() const { return level_; }
  const std::map<Mono, CycScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Mono& m, const CycScalar& c);
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const CycScalar& c);
  Form& operator*=(const mpq_class& q);
  Form operator-() const;

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const CycScalar& c) { return a *= c; }
  friend Form operator*(const CycScalar& c, Form a) { return a *= c; }
  friend Form operator*(Form a, const mpq_class& q) { return a *= q; }
  friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }

  // components of fixed bidegree (r, s); -1 = any
  Form component(int r, int s) const;
  Form degree_part(int total) const;
  bool is_homogeneous(int* total = nullptr) const;
  // same data on a bigger simplex, no dependence on the new t's
  Form at_level(int k) const;

  std::string str() const;

 private:
  int dim_ = 0;
  int level_ = 0;
  std::map<Mono, CycScalar> terms_;
};

using FnElem = Form;  // degree-0, level-0 forms

Form wedge(const Form& a, const Form& b);
inline Form operator*(const Form& a, const Form& b) { return wedge(a, b); }

Form d_manifold(const Form& w);
Form d_simplex(const Form& w, SimplexD variant = SimplexD::unsigned_);
Form d_total(const Form& w);  // D + d_simplex'

// general affine change of simplex coordinates; coords[i] = image of t_{i+1}
Form substitute(const Form& w, int new_level, const std::vector<AffineCoord>& coords);
Form pullback_face(const Form& w, int i);
Form pullback_degeneracy(const Form& w, int j);

Form act_group(const Form& w, const AffineAction& g, int N);

Form integrate_simplex(const Form& w);
CycScalar integrate_manifold(const Form& w);
// integral over M x Delta^k of the dx_1..dx_m dt_1..dt_k coefficient
CycScalar integrate_total(const Form& w);

mpq_class simplex_monomial_integral(const TExp& a, int k);

// dlog of the unit zeta^m e_k: sum k_j dx_j
Form dlog_unit(int dim, int level, const Freq& k);

}  // namespace gcl
