#include "gcl/cyclotomic.hpp"

#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace gcl {

namespace {

using IPoly = std::vector<long>;

// exact division of integer polynomials, divisor monic
IPoly divide_exact(IPoly num, const IPoly& den) {
  int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
  IPoly q(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    long c = num[i];
    q[i - dd] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return q;
}

IPoly cyclotomic(int N) {
  IPoly p(N + 1, 0);
  p[0] = -1;
  p[N] = 1;
  for (int d = 1; d < N; ++d)
    if (N % d == 0) p = divide_exact(p, cyclotomic(d));
  return p;
}

}  // namespace

const CycField& CycField::get(int N) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycField>> cache;
  if (N < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  std::lock_guard<std::mutex> lk(mu);
  auto& slot = cache[N];
  if (!slot) {
    auto f = std::make_unique<CycField>();
    f->N = N;
    f->cyclo = cyclotomic(N);
    f->phi = (int)f->cyclo.size() - 1;
    // x^j mod Phi_N by repeated shift-and-reduce
    std::vector<long> cur(f->phi, 0);
    cur[0] = 1;
    for (int j = 0; j < N; ++j) {
      f->reduce.push_back(cur);
      long top = cur[f->phi - 1];
      std::vector<long> nxt(f->phi, 0);
      for (int i = f->phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
      for (int i = 0; i < f->phi; ++i) nxt[i] -= top * f->cyclo[i];
      cur = nxt;
    }
    slot = std::move(f);
  }
  return *slot;
}

CycScalar CycScalar::zeta(int N, long e) {
  const auto& F = CycField::get(N);
  long j = ((e % N) + N) % N;
  CycScalar r;
  r.N_ = N;
  r.c_.assign(F.phi, mpq_class(0));
  for (int i = 0; i < F.phi; ++i) r.c_[i] = F.reduce[j][i];
  return r;
}

CycScalar CycScalar::from_coeffs(int N, std::vector<mpq_class> powers) {
  const auto& F = CycField::get(N);
  CycScalar r;
  r.N_ = N;
  r.c_.assign(F.phi, mpq_class(0));
  for (size_t j = 0; j < powers.size(); ++j) {
    if (sgn(powers[j]) == 0) continue;
    const auto& red = F.reduce[j % N];
    for (int i = 0; i < F.phi; ++i)
      if (red[i]) r.c_[i] += powers[j] * red[i];
  }
  return r;
}

bool CycScalar::is_zero() const {
  for (auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool CycScalar::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

void CycScalar::lift(int N) {
  if (N == N_) return;
  if (N_ != 1) {
    // Q(zeta_a) -> Q(zeta_N) for a | N: zeta_a = zeta_N^{N/a}
    if (N % N_ != 0) throw std::invalid_argument("incompatible cyclotomic orders");
    std::vector<mpq_class> pw(N, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) pw[(i * (N / N_)) % N] += c_[i];
    *this = from_coeffs(N, std::move(pw));
    return;
  }
  const auto& F = CycField::get(N);
  mpq_class v = c_[0];
  c_.assign(F.phi, mpq_class(0));
  c_[0] = v;
  N_ = N;
}

static int common_order(int a, int b) {
  if (a == b || b == 1) return a;
  if (a == 1) return b;
  if (a % b == 0) return a;
  if (b % a == 0) return b;
  throw std::invalid_argument("incompatible cyclotomic orders");
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  int N = common_order(N_, o.N_);
  lift(N);
  if (o.N_ == N) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    CycScalar t = o;
    t.lift(N);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += t.c_[i];
  }
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycScalar& CycScalar::operator*=(const mpq_class& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  if (o.N_ == 1) return *this *= o.c_[0];
  if (N_ == 1) {
    mpq_class q = c_[0];
    *this = o;
    return *this *= q;
  }
  int N = common_order(N_, o.N_);
  CycScalar a = *this, b = o;
  a.lift(N);
  b.lift(N);
  std::vector<mpq_class> pw(N, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (sgn(b.c_[j]) != 0) pw[(i + j) % N] += a.c_[i] * b.c_[j];
  }
  *this = from_coeffs(N, std::move(pw));
  return *this;
}

bool operator==(const CycScalar& a, const CycScalar& b) { return (a - b).is_zero(); }

std::string CycScalar::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
  os << "]/" << N_;
  return os.str();
}

UScalar operator*(const UScalar& a, const CycScalar& s) {
  UScalar r;
  for (auto& [p, v] : a.terms) r.add(p, v * s);
  return r;
}

UScalar operator*(const UScalar& a, const UScalar& b) {
  UScalar r;
  for (auto& [p, v] : a.terms)
    for (auto& [q, w] : b.terms) r.add(p + q, v * w);
  return r;
}

std::string to_string(const UScalar& v) {
  if (v.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, s] : v.terms) {
    os << (first ? "" : " + ") << s.str() << "*u^" << p;
    first = false;
  }
  return os.str();
}

}  // namespace gcl
