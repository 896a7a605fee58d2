#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsu2/errors.hpp"
#include "qsu2/numeric.hpp"

namespace qsu2 {

/// Integer Laurent polynomial in the bracket variable A.
///
/// Canonical form: c_.front() and c_.back() are nonzero; the zero polynomial
/// has no coefficients and low_ = 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long low, std::vector<BigInt> coeffs) : low_(low), c_(std::move(coeffs)) { normalize(); }

  static LaurentPoly monomial(const BigInt& c, long exp) { return LaurentPoly(exp, {c}); }
  static LaurentPoly constant(const BigInt& c) { return monomial(c, 0); }
  // delta = -A^2 - A^{-2}
  static LaurentPoly delta() { return LaurentPoly(-2, {-1, 0, 0, 0, -1}); }

  bool is_zero() const { return c_.empty(); }
  long low() const { return low_; }
  long high() const { return low_ + static_cast<long>(c_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  BigInt coeff(long e) const {
    if (is_zero() || e < low_ || e > high()) return 0;
    return c_[e - low_];
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.low_ == b.low_ && a.c_ == b.c_; }

  LaurentPoly operator-() const {
    LaurentPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  /// this += sign * A^shift * b
  void add_shifted(const LaurentPoly& b, long shift, int sign = 1) {
    if (b.is_zero()) return;
    const long blow = b.low_ + shift;
    if (is_zero()) {
      low_ = blow;
      c_ = b.c_;
      if (sign < 0)
        for (auto& x : c_) x = -x;
      return;
    }
    const long new_low = std::min(low_, blow);
    const long new_high = std::max(high(), b.high() + shift);
    if (new_low < low_) c_.insert(c_.begin(), low_ - new_low, BigInt(0));
    low_ = new_low;
    c_.resize(new_high - new_low + 1, BigInt(0));
    const long off = blow - low_;
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
      if (sign > 0)
        c_[off + i] += b.c_[i];
      else
        c_[off + i] -= b.c_[i];
    }
    normalize();
  }

  LaurentPoly& operator+=(const LaurentPoly& b) {
    add_shifted(b, 0, 1);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& b) {
    add_shifted(b, 0, -1);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) r[i + j] += a.c_[i] * b.c_[j];
    }
    return LaurentPoly(a.low_ + b.low_, std::move(r));
  }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

  LaurentPoly shifted(long k) const {
    LaurentPoly r(*this);
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly r = constant(1);
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// Exact quotient in Z[A, A^{-1}], absent when den does not divide this.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& den) const {
    if (den.is_zero()) throw InternalError("LaurentPoly: division by zero");
    if (is_zero()) return LaurentPoly{};
    if (c_.size() < den.c_.size()) return std::nullopt;
    std::vector<BigInt> rem = c_;
    const std::size_t qlen = c_.size() - den.c_.size() + 1;
    std::vector<BigInt> q(qlen, 0);
    const BigInt& lead = den.c_.back();
    for (std::size_t k = qlen; k-- > 0;) {
      BigInt& top = rem[k + den.c_.size() - 1];
      if (top == 0) continue;
      if (top % lead != 0) return std::nullopt;
      BigInt f = top / lead;
      q[k] = f;
      for (std::size_t j = 0; j < den.c_.size(); ++j) rem[k + j] -= f * den.c_[j];
    }
    for (const auto& x : rem)
      if (x != 0) return std::nullopt;
    return LaurentPoly(low_ - den.low_, std::move(q));
  }

  /// Human-readable form in descending powers, e.g. "-A^4 - A^-4".
  std::string render() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long e = high(); e >= low_; --e) {
      const BigInt& c = c_[e - low_];
      if (c == 0) continue;
      BigInt mag = abs(c);
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      if (e == 0) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str() << "*";
      os << "A";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

  /// Cache record: lowest exponent followed by the coefficient list.
  std::string serialize() const {
    std::ostringstream os;
    os << low_ << ' ' << c_.size();
    for (const auto& x : c_) os << ' ' << x.get_str();
    return os.str();
  }

  static std::optional<LaurentPoly> deserialize(const std::string& s) {
    std::istringstream is(s);
    long low = 0;
    std::size_t n = 0;
    if (!(is >> low >> n)) return std::nullopt;
    std::vector<BigInt> c(n);
    for (auto& x : c) {
      std::string tok;
      if (!(is >> tok) || x.set_str(tok, 10) != 0) return std::nullopt;
    }
    LaurentPoly r(low, std::move(c));
    if (r.serialize() != s) return std::nullopt;
    return r;
  }

 private:
  void normalize() {
    std::size_t lo = 0;
    while (lo < c_.size() && c_[lo] == 0) ++lo;
    if (lo == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t hi = c_.size();
    while (c_[hi - 1] == 0) --hi;
    if (lo > 0 || hi < c_.size()) c_ = std::vector<BigInt>(c_.begin() + lo, c_.begin() + hi);
    low_ += static_cast<long>(lo);
  }

  long low_ = 0;
  std::vector<BigInt> c_;
};

}  // namespace qsu2
