#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qsu2/detail/linalg.hpp"
#include "qsu2/errors.hpp"
#include "qsu2/numeric.hpp"

namespace qsu2 {

/// Parameters of the ambient field Q(zeta), zeta = exp(2 pi i / 8p), for an
/// odd prime p = 4u + epsilon.
///
/// The field is realized as Q[x] / Phi(x) with Phi = (x^{4p} + 1) / (x^4 + 1)
/// the 8p-th cyclotomic polynomial, of degree 4(p - 1). Distinguished
/// elements are expressed as powers of zeta:
///
///   xi = zeta^8,  q = zeta^4,  s = zeta^2,  sqrt(-1) = zeta^{2p},  A = zeta^{-1}.
struct RingParams {
  long p = 0;
  long u = 0;
  int epsilon = 0;
  long eight_bar = 0;  // inverse of 8 modulo p
  std::vector<long> modulus;  // Phi, ascending coefficients, length degree + 1

  long degree() const { return 4 * (p - 1); }
  long order() const { return 8 * p; }

  // zeta^k reduced modulo Phi, for 0 <= k < 8p.
  const std::vector<long>& zeta_power(long k) const { return zeta_powers_[mod(k, order())]; }

  // Exponents of zeta for the named constants.
  long xi_exp(long k = 1) const { return mod(8 * k, order()); }
  long s_exp(long k = 1) const { return mod(2 * k, order()); }
  long q_exp(long k = 1) const { return mod(4 * k, order()); }
  long i_exp(long k = 1) const { return mod(2 * p * k, order()); }
  long a_exp(long k = 1) const { return mod(-k, order()); }

  // Coordinates over {xi^0 .. xi^{p-2}}.
  const detail::ColumnSpanSolver& xi_solver() const { return xi_solver_; }
  // Coordinates over {xi^a} followed by {sqrt(-1) xi^a}.
  const detail::ColumnSpanSolver& gaussian_solver() const { return gaussian_solver_; }

  // Coordinates of 1 / (xi - 1) over {xi^a}; used by the valuation loop.
  std::vector<BigRational> inv_xi_minus_1;

 private:
  friend std::shared_ptr<const RingParams> init_ring(long p);
  std::vector<std::vector<long>> zeta_powers_;
  detail::ColumnSpanSolver xi_solver_;
  detail::ColumnSpanSolver gaussian_solver_;
};

using Ring = std::shared_ptr<const RingParams>;

namespace detail {

// Exact long division of x^{4p} + 1 by x^4 + 1.
inline std::vector<long> cyclotomic_8p(long p) {
  std::vector<long> rem(4 * p + 1, 0);
  rem[0] = 1;
  rem[4 * p] = 1;
  const long qdeg = 4 * p - 4;
  std::vector<long> quot(qdeg + 1, 0);
  for (long k = 4 * p; k >= 4; --k) {
    long c = rem[k];
    if (c == 0) continue;
    quot[k - 4] = c;
    rem[k] -= c;
    rem[k - 4] -= c;
  }
  for (long r : rem)
    if (r != 0) throw InternalError("x^4 + 1 does not divide x^{4p} + 1");
  return quot;
}

// Reduce an integer polynomial (any length) modulo the monic Phi in place.
template <class Coeff>
void reduce_mod(std::vector<Coeff>& poly, const std::vector<long>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k] == 0) continue;
    Coeff t = poly[k];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) poly[k - deg + j] -= t * phi[j];
    poly[k] = 0;
  }
  if (poly.size() > deg) poly.resize(deg);
  if (poly.size() < deg) poly.resize(deg, Coeff(0));
}

inline std::vector<BigRational> to_rational(const std::vector<long>& v) {
  std::vector<BigRational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

}  // namespace detail

/// Builds the ring for an odd prime p >= 3.
inline Ring init_ring(long p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw InvalidInput("p must be an odd prime >= 3 (got " + std::to_string(p) + ")");
  auto r = std::make_shared<RingParams>();
  r->p = p;
  if (p % 4 == 1) {
    r->u = (p - 1) / 4;
    r->epsilon = 1;
  } else {
    r->u = (p + 1) / 4;
    r->epsilon = -1;
  }
  for (long e = 1; e < p; ++e)
    if ((8 * e) % p == 1) r->eight_bar = e;
  r->modulus = detail::cyclotomic_8p(p);

  const long deg = r->degree();
  const long n = r->order();
  r->zeta_powers_.resize(n);
  for (long k = 0; k < n; ++k) {
    std::vector<long> v(std::max(deg, k + 1), 0);
    v[k] = 1;
    detail::reduce_mod(v, r->modulus);
    r->zeta_powers_[k] = std::move(v);
  }

  std::vector<std::vector<BigRational>> xi_cols, gauss_cols;
  for (long a = 0; a <= p - 2; ++a) xi_cols.push_back(detail::to_rational(r->zeta_power(8 * a)));
  gauss_cols = xi_cols;
  for (long a = 0; a <= p - 2; ++a)
    gauss_cols.push_back(detail::to_rational(r->zeta_power(8 * a + 2 * p)));
  r->xi_solver_ = detail::ColumnSpanSolver(std::move(xi_cols));
  r->gaussian_solver_ = detail::ColumnSpanSolver(std::move(gauss_cols));

  // 1/(xi - 1): since 1 + xi + ... + xi^{p-1} = 0, (xi - 1) * sum_{j} c_j xi^j = 1
  // is solved by c_j = (j + 1 - p) / p, j = 0..p-2.
  r->inv_xi_minus_1.resize(p - 1);
  for (long j = 0; j <= p - 2; ++j) r->inv_xi_minus_1[j] = BigRational(j + 1 - p, p);
  for (auto& c : r->inv_xi_minus_1) c.canonicalize();
  return r;
}

}  // namespace qsu2
