// Exact Laurent polynomials in q over the integers, and the rational
// functions built from them. Coefficients are BigInt throughout; every
// rational is normalized (common content and polynomial gcd removed,
// denominator with positive leading coefficient).
#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "khtail/bigint.hpp"

namespace khtail {

class LaurentPoly {
public:
  LaurentPoly() = default;
  LaurentPoly(int64_t c) {
    if (c != 0) coeffs_.push_back(BigInt(c));
  }
  LaurentPoly(const BigInt& c) {
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  static LaurentPoly monomial(const BigInt& c, int exp) {
    LaurentPoly p;
    if (!c.is_zero()) {
      p.min_ = exp;
      p.coeffs_.push_back(c);
    }
    return p;
  }
  static LaurentPoly q_power(int exp) { return monomial(BigInt(1), exp); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const {
    return coeffs_.size() == 1 && min_ == 0 && coeffs_[0] == BigInt(1);
  }
  int min_exp() const { return min_; }
  int max_exp() const { return min_ + static_cast<int>(coeffs_.size()) - 1; }
  BigInt coeff(int exp) const {
    if (is_zero() || exp < min_ || exp > max_exp()) return BigInt();
    return coeffs_[exp - min_];
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.min_ == b.min_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.min_, b.min_);
    int hi = std::max(a.max_exp(), b.max_exp());
    LaurentPoly r;
    r.min_ = lo;
    r.coeffs_.assign(hi - lo + 1, BigInt());
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      r.coeffs_[a.min_ - lo + i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i)
      r.coeffs_[b.min_ - lo + i] += b.coeffs_[i];
    r.trim();
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly();
    LaurentPoly r;
    r.min_ = a.min_ + b.min_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.trim();
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly shifted(int dq) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.min_ += dq;
    return r;
  }

  // substitution q -> q^-1
  LaurentPoly reversed() const {
    LaurentPoly r;
    if (is_zero()) return r;
    r.min_ = -max_exp();
    r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return r;
  }

  BigInt content() const {
    BigInt g;
    for (const auto& c : coeffs_) g = BigInt::gcd(g, c);
    return g;
  }

  // Exact division by a nonzero Laurent polynomial; throws if not divisible.
  friend LaurentPoly operator/(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("LaurentPoly: division by zero");
    if (a.is_zero()) return LaurentPoly();
    LaurentPoly rem = a, quot;
    quot.min_ = a.min_ - b.min_;
    quot.coeffs_.assign(a.coeffs_.size() >= b.coeffs_.size()
                            ? a.coeffs_.size() - b.coeffs_.size() + 1
                            : 0,
                        BigInt());
    const BigInt& lead = b.coeffs_.back();
    for (size_t k = a.coeffs_.size(); k-- > 0;) {
      if (k + 1 < b.coeffs_.size()) break;
      size_t qi = k + 1 - b.coeffs_.size();
      BigInt c = rem.coeffs_[k];
      if (c.is_zero()) continue;
      BigInt q, r;
      BigInt::divmod(c, lead, q, r);
      if (!r.is_zero()) throw std::domain_error("LaurentPoly: inexact division");
      quot.coeffs_[qi] = q;
      for (size_t i = 0; i < b.coeffs_.size(); ++i)
        rem.coeffs_[qi + i] -= q * b.coeffs_[i];
    }
    for (const auto& c : rem.coeffs_)
      if (!c.is_zero()) throw std::domain_error("LaurentPoly: inexact division");
    quot.trim();
    return quot;
  }

  // gcd of the underlying ordinary polynomials (Laurent units q^k stripped),
  // returned primitive with positive leading coefficient.
  static LaurentPoly gcd(LaurentPoly a, LaurentPoly b) {
    if (a.is_zero()) return normalize_sign(b.based().primitive());
    if (b.is_zero()) return normalize_sign(a.based().primitive());
    a = a.based().primitive();
    b = b.based().primitive();
    // primitive Euclid with pseudo-remainders
    while (!b.is_zero()) {
      if (a.max_exp() < b.max_exp()) std::swap(a, b);
      LaurentPoly r = pseudo_rem(a, b);
      a = b;
      b = r.is_zero() ? r : r.based().primitive();
    }
    return normalize_sign(a);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = max_exp(); e >= min_; --e) {
      BigInt c = coeff(e);
      if (c.is_zero()) continue;
      bool neg = c.is_negative();
      BigInt a = c.abs();
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      bool unit = a == BigInt(1);
      if (!unit || e == 0) os << a.to_string();
      if (e != 0) {
        if (!unit) os << "*";
        os << "q";
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

  std::map<int, std::string> sparse() const {
    std::map<int, std::string> m;
    for (int e = min_exp(); !is_zero() && e <= max_exp(); ++e)
      if (!coeff(e).is_zero()) m[e] = coeff(e).to_string();
    return m;
  }

private:
  int min_ = 0;
  std::vector<BigInt> coeffs_;  // coeffs_[i] is the coefficient of q^(min_+i)

  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
      min_ += static_cast<int>(lead);
    }
    if (coeffs_.empty()) min_ = 0;
  }
  LaurentPoly based() const { return shifted(-min_); }
  LaurentPoly primitive() const {
    BigInt g = content();
    if (g.is_zero() || g == BigInt(1)) return *this;
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c = c / g;
    return r;
  }
  static LaurentPoly normalize_sign(LaurentPoly p) {
    if (!p.is_zero() && p.coeffs_.back().is_negative()) p = -p;
    return p;
  }
  // pseudo-remainder of ordinary polynomials (min_exp >= 0), b nonzero
  static LaurentPoly pseudo_rem(LaurentPoly a, const LaurentPoly& b) {
    const int db = b.max_exp();
    const BigInt lb = b.coeff(db);
    while (!a.is_zero() && a.max_exp() >= db) {
      BigInt la = a.coeff(a.max_exp());
      int sh = a.max_exp() - db;
      a = a * LaurentPoly(lb) - LaurentPoly::monomial(la, sh) * b;
    }
    return a;
  }
};

inline LaurentPoly quantum_integer(int m) {
  // [m] = q^{m-1} + q^{m-3} + ... + q^{1-m}; [-m] = -[m], [0] = 0
  if (m < 0) return -quantum_integer(-m);
  LaurentPoly p;
  for (int e = 1 - m; e <= m - 1; e += 2) p += LaurentPoly::q_power(e);
  return p;
}

class LaurentRational {
public:
  LaurentRational() : num_(), den_(1) {}
  LaurentRational(const LaurentPoly& p) : num_(p), den_(1) {}
  LaurentRational(int64_t c) : num_(c), den_(1) {}
  LaurentRational(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw std::domain_error("LaurentRational: zero denominator");
    normalize();
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  friend bool operator==(const LaurentRational& a, const LaurentRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const LaurentRational& a, const LaurentRational& b) {
    return !(a == b);
  }

  friend LaurentRational operator+(const LaurentRational& a, const LaurentRational& b) {
    return LaurentRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LaurentRational operator-(const LaurentRational& a, const LaurentRational& b) {
    return LaurentRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  LaurentRational operator-() const {
    LaurentRational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend LaurentRational operator*(const LaurentRational& a, const LaurentRational& b) {
    return LaurentRational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend LaurentRational operator/(const LaurentRational& a, const LaurentRational& b) {
    if (b.is_zero()) throw std::domain_error("LaurentRational: division by zero");
    return LaurentRational(a.num_ * b.den_, a.den_ * b.num_);
  }
  LaurentRational& operator+=(const LaurentRational& o) { return *this = *this + o; }
  LaurentRational& operator-=(const LaurentRational& o) { return *this = *this - o; }
  LaurentRational& operator*=(const LaurentRational& o) { return *this = *this * o; }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
  }

private:
  LaurentPoly num_, den_;

  void normalize() {
    if (num_.is_zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    // pull Laurent units into the numerator
    int dshift = den_.min_exp();
    den_ = den_.shifted(-dshift);
    num_ = num_.shifted(-dshift);
    LaurentPoly g = LaurentPoly::gcd(num_, den_);
    if (!g.is_one() && !g.is_zero()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    BigInt cn = num_.content(), cd = den_.content();
    BigInt c = BigInt::gcd(cn, cd);
    if (!(c == BigInt(1))) {
      num_ = num_ / LaurentPoly(c);
      den_ = den_ / LaurentPoly(c);
    }
    if (den_.coeff(den_.max_exp()).is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
  }
};

}  // namespace khtail
