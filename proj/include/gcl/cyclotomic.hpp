#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace gcl {

// Q(zeta_N): power basis zeta^0..zeta^{phi(N)-1}, reduced mod Phi_N.
struct CycField {
  int N = 1;
  int phi = 1;
  std::vector<long> cyclo;                // Phi_N, low degree first, monic
  std::vector<std::vector<long>> reduce;  // zeta^j in the basis, j < N

  static const CycField& get(int N);
};

class CycScalar {
 public:
  CycScalar() : N_(1), c_(1) {}
  CycScalar(long v) : N_(1), c_(1, mpq_class(v)) {}
  CycScalar(const mpq_class& q) : N_(1), c_(1, q) {}

  static CycScalar zeta(int N, long e);  // zeta_N^e
  static CycScalar from_coeffs(int N, std::vector<mpq_class> powers);

  int order() const { return N_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator*=(const mpq_class& q);
  CycScalar operator-() const;

  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator*(CycScalar a, const mpq_class& q) { return a *= q; }
  friend bool operator==(const CycScalar& a, const CycScalar& b);

  // "[c0,c1,...]/N" with rational entries
  std::string str() const;

 private:
  void lift(int N);
  int N_;
  std::vector<mpq_class> c_;
};

// Laurent polynomial in u with coefficients in T (zero terms dropped).
template <class T>
struct Laurent {
  std::map<int, T> terms;

  bool is_zero() const { return terms.empty(); }
  void add(int p, const T& v) {
    auto it = terms.find(p);
    if (it == terms.end()) {
      if (!v.is_zero()) terms.emplace(p, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) terms.erase(it);
  }
  Laurent& operator+=(const Laurent& o) {
    for (auto& [p, v] : o.terms) add(p, v);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (auto& [p, v] : o.terms) add(p, -v);
    return *this;
  }
  Laurent operator-() const {
    Laurent r;
    for (auto& [p, v] : terms) r.terms.emplace(p, -v);
    return r;
  }
  Laurent shifted(int s) const {
    Laurent r;
    for (auto& [p, v] : terms) r.terms.emplace(p + s, v);
    return r;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms == b.terms; }
};

using UScalar = Laurent<CycScalar>;

UScalar operator*(const UScalar& a, const CycScalar& s);
UScalar operator*(const UScalar& a, const UScalar& b);
std::string to_string(const UScalar& v);

}  // namespace gcl
