#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsu2/errors.hpp"
#include "qsu2/numeric.hpp"
#include "qsu2/ring.hpp"

namespace qsu2 {

/// An exact element of Q(zeta), stored by its coordinates in the power basis
/// zeta^0 .. zeta^{4p-5}. Values are immutable in spirit: every operation
/// returns a fresh, fully reduced number with canonical rationals.
class CycloNumber {
 public:
  CycloNumber() = default;

  explicit CycloNumber(Ring ring) : ring_(std::move(ring)), c_(ring_->degree()) {}

  CycloNumber(Ring ring, std::vector<BigRational> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != ring_->degree())
      throw InternalError("CycloNumber: coefficient vector has wrong length");
    for (auto& x : c_) x.canonicalize();
  }

  static CycloNumber zero(const Ring& ring) { return CycloNumber(ring); }
  static CycloNumber rational(const Ring& ring, const BigRational& v) {
    CycloNumber r(ring);
    r.c_[0] = v;
    return r;
  }
  static CycloNumber one(const Ring& ring) { return rational(ring, 1); }

  static CycloNumber zeta_power(const Ring& ring, long k) {
    CycloNumber r(ring);
    const auto& v = ring->zeta_power(k);
    for (std::size_t i = 0; i < v.size(); ++i) r.c_[i] = v[i];
    return r;
  }
  static CycloNumber xi_power(const Ring& ring, long k) { return zeta_power(ring, ring->xi_exp(k)); }
  static CycloNumber s_power(const Ring& ring, long k) { return zeta_power(ring, ring->s_exp(k)); }
  static CycloNumber q_power(const Ring& ring, long k) { return zeta_power(ring, ring->q_exp(k)); }
  static CycloNumber i_power(const Ring& ring, long k) { return zeta_power(ring, ring->i_exp(k)); }
  static CycloNumber a_power(const Ring& ring, long k) { return zeta_power(ring, ring->a_exp(k)); }

  const Ring& ring() const { return ring_; }
  const std::vector<BigRational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    a.check_same(b);
    return a.c_ == b.c_;
  }

  CycloNumber operator-() const {
    CycloNumber r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  CycloNumber& operator+=(const CycloNumber& b) {
    check_same(b);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (b.c_[i] != 0) c_[i] += b.c_[i];
    return *this;
  }
  CycloNumber& operator-=(const CycloNumber& b) {
    check_same(b);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (b.c_[i] != 0) c_[i] -= b.c_[i];
    return *this;
  }
  CycloNumber& operator*=(const BigRational& k) {
    for (auto& x : c_)
      if (x != 0) x *= k;
    return *this;
  }

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const BigRational& k) { return a *= k; }
  friend CycloNumber operator*(const BigRational& k, CycloNumber a) { return a *= k; }

  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    a.check_same(b);
    const long deg = a.ring_->degree();
    std::vector<BigInt> na, nb;
    BigInt da, db;
    a.integer_form(na, da);
    b.integer_form(nb, db);
    std::vector<BigInt> prod(2 * deg, 0);
    for (long i = 0; i < deg; ++i) {
      if (na[i] == 0) continue;
      for (long j = 0; j < deg; ++j)
        if (nb[j] != 0) prod[i + j] += na[i] * nb[j];
    }
    detail::reduce_mod(prod, a.ring_->modulus);
    CycloNumber r(a.ring_);
    BigInt den = da * db;
    for (long i = 0; i < deg; ++i) {
      if (prod[i] == 0) continue;
      r.c_[i] = BigRational(prod[i], den);
      r.c_[i].canonicalize();
    }
    return r;
  }
  CycloNumber& operator*=(const CycloNumber& b) { return *this = *this * b; }

  /// Multiplicative inverse via the extended Euclidean algorithm against Phi.
  CycloNumber inverse() const;

  CycloNumber pow(long e) const {
    CycloNumber base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    CycloNumber r = one(ring_);
    while (n) {
      if (n & 1) r *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return r;
  }

  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }

  std::complex<double> to_complex() const {
    std::complex<double> z = 0;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(ring_->order());
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) z += c_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
    return z;
  }

 private:
  void check_same(const CycloNumber& b) const {
    if (!ring_ || !b.ring_ || ring_->p != b.ring_->p)
      throw InternalError("CycloNumber: operands belong to different rings");
  }

  void integer_form(std::vector<BigInt>& num, BigInt& den) const {
    den = 1;
    for (const auto& x : c_)
      if (x != 0 && x.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    num.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) {
        num[i] = 0;
      } else {
        num[i] = c_[i].get_num() * (den / c_[i].get_den());
      }
    }
  }

  Ring ring_;
  std::vector<BigRational> c_;
};

namespace detail {

using QPoly = std::vector<BigRational>;  // ascending, trimmed

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    BigRational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

}  // namespace detail

inline CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero in Q(zeta)");
  using detail::QPoly;
  QPoly r0(ring_->modulus.begin(), ring_->modulus.end());
  QPoly r1 = c_;
  detail::trim(r1);
  QPoly s0, s1{1};  // invariant: s_i * a == r_i (mod Phi)
  while (r1.size() > 1) {
    auto [qt, rem] = detail::poly_divmod(r0, r1);
    QPoly s2 = detail::poly_sub(s0, detail::poly_mul(qt, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw InternalError("inverse: element shares a factor with the modulus");
  BigRational k = 1 / r1[0];
  for (auto& x : s1) x *= k;
  std::vector<BigRational> out(ring_->degree());
  auto [unused, red] = detail::poly_divmod(s1, QPoly(ring_->modulus.begin(), ring_->modulus.end()));
  for (std::size_t i = 0; i < red.size(); ++i) out[i] = red[i];
  return CycloNumber(ring_, std::move(out));
}

// ---------------------------------------------------------------------------
// Quantum integers, Gaussian sum.

/// [n] = (s^n - s^{-n}) / (s - s^{-1}), s = exp(pi i / 2p). Lies in Z[zeta];
/// [2p] = 0 and [2p - n] = [n].
inline CycloNumber quantum_int(const Ring& ring, long n) {
  CycloNumber r = CycloNumber::zero(ring);
  long m = n < 0 ? -n : n;
  for (long i = 0; i < m; ++i) r += CycloNumber::s_power(ring, m - 1 - 2 * i);
  return n < 0 ? -r : r;
}

/// G(xi) = sum_{k=0}^{p-1} xi^{k^2}.
inline CycloNumber gauss_sum(const Ring& ring) {
  CycloNumber g = CycloNumber::zero(ring);
  for (long k = 0; k < ring->p; ++k) g += CycloNumber::xi_power(ring, mod(k * k, ring->p));
  return g;
}

// ---------------------------------------------------------------------------
// Subfield membership.

using XiCoords = std::vector<BigRational>;

/// Coordinates over {xi^0 .. xi^{p-2}} when a lies in Q(xi).
inline std::optional<XiCoords> to_xi_basis(const CycloNumber& a) {
  return a.ring()->xi_solver().solve(a.coeffs());
}

inline CycloNumber from_xi_coords(const Ring& ring, const XiCoords& x) {
  CycloNumber r = CycloNumber::zero(ring);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] != 0) r += CycloNumber::xi_power(ring, static_cast<long>(j)) * x[j];
  return r;
}

/// a = x + sqrt(-1) y with x, y in Q(xi), when a lies in Q(zeta^2).
inline std::optional<std::pair<XiCoords, XiCoords>> split_gaussian(const CycloNumber& a) {
  auto sol = a.ring()->gaussian_solver().solve(a.coeffs());
  if (!sol) return std::nullopt;
  const std::size_t n = static_cast<std::size_t>(a.ring()->p - 1);
  XiCoords x(sol->begin(), sol->begin() + n);
  XiCoords y(sol->begin() + n, sol->end());
  return std::make_pair(std::move(x), std::move(y));
}

inline bool coords_have_two_power_denominators(const XiCoords& x) {
  for (const auto& c : x)
    if (!is_power_of_two(c.get_den())) return false;
  return true;
}

/// Membership in Z[1/2, xi].
inline bool in_z_half_xi(const CycloNumber& a) {
  auto x = to_xi_basis(a);
  return x && coords_have_two_power_denominators(*x);
}

/// Membership in Z[xi].
inline bool in_z_xi(const CycloNumber& a) {
  auto x = to_xi_basis(a);
  if (!x) return false;
  for (const auto& c : *x)
    if (c.get_den() != 1) return false;
  return true;
}

namespace detail {

// Product in Q(xi) on coordinates over {xi^0 .. xi^{p-2}}.
inline XiCoords xi_mul(const XiCoords& a, const XiCoords& b, long p) {
  std::vector<BigRational> full(p, 0);
  for (long i = 0; i < p - 1; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < p - 1; ++j)
      if (b[j] != 0) full[(i + j) % p] += a[i] * b[j];
  }
  // xi^{p-1} = -(1 + xi + ... + xi^{p-2})
  XiCoords r(p - 1);
  for (long j = 0; j < p - 1; ++j) r[j] = full[j] - full[p - 1];
  return r;
}

}  // namespace detail

/// Largest k with a / (xi - 1)^k in Z[1/2, xi]. Requires a != 0 in Z[1/2, xi].
inline long valuation_xi_minus_1(const CycloNumber& a) {
  if (a.is_zero()) throw InvalidInput("valuation of zero is infinite");
  auto x = to_xi_basis(a);
  if (!x || !coords_have_two_power_denominators(*x))
    throw InvalidInput("valuation requires an element of Z[1/2, xi]");
  const long p = a.ring()->p;
  const long cap = 8 * (p - 1);
  XiCoords cur = std::move(*x);
  for (long k = 0; k <= cap; ++k) {
    XiCoords next = detail::xi_mul(cur, a.ring()->inv_xi_minus_1, p);
    if (!coords_have_two_power_denominators(next)) return k;
    cur = std::move(next);
  }
  throw InternalError("valuation exceeded the safety cap 8(p-1)");
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::string render_terms(const std::vector<std::pair<BigRational, std::string>>& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, basis] : terms) {
    if (c == 0) continue;
    if (!first) os << " + ";
    os << to_string(c) << " * " << basis;
    first = false;
  }
  return first ? "0" : os.str();
}

/// Canonical rendering: "num/den * zeta^k" terms in ascending exponent order.
inline std::string render(const CycloNumber& a) {
  std::vector<std::pair<BigRational, std::string>> terms;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k)
    terms.emplace_back(a.coeffs()[k], "zeta^" + std::to_string(k));
  return render_terms(terms);
}

/// Rendering over {xi^a} and {i*xi^a} when available.
inline std::optional<std::string> render_xi(const CycloNumber& a) {
  std::vector<std::pair<BigRational, std::string>> terms;
  if (auto x = to_xi_basis(a)) {
    for (std::size_t j = 0; j < x->size(); ++j) terms.emplace_back((*x)[j], "xi^" + std::to_string(j));
    return render_terms(terms);
  }
  if (auto xy = split_gaussian(a)) {
    for (std::size_t j = 0; j < xy->first.size(); ++j)
      terms.emplace_back(xy->first[j], "xi^" + std::to_string(j));
    for (std::size_t j = 0; j < xy->second.size(); ++j)
      terms.emplace_back(xy->second[j], "i*xi^" + std::to_string(j));
    return render_terms(terms);
  }
  return std::nullopt;
}

}  // namespace qsu2
