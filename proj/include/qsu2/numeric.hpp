#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qsu2 {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Binomial coefficient C(a, b); zero outside 0 <= b <= a.
inline BigInt binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Nonnegative remainder.
inline long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_power_of_two(const BigInt& n) {
  return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

inline std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace qsu2
