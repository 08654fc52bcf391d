// Arbitrary-precision signed integers, sign-magnitude over base 2^32.
// Small and exact rather than fast: matrix entries and polynomial
// coefficients in this library stay modest, but Smith normal form and
// pseudo-division must never overflow.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace khtail {

class BigInt {
public:
  BigInt() = default;
  BigInt(int64_t v) {
    if (v < 0) {
      neg_ = true;
      // avoid overflow on INT64_MIN
      uint64_t m = static_cast<uint64_t>(-(v + 1)) + 1;
      push_u64(m);
    } else {
      push_u64(static_cast<uint64_t>(v));
    }
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

  static BigInt from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
    if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
      r.mul_small(10);
      r.add_small(static_cast<uint32_t>(s[i] - '0'));
    }
    r.neg_ = neg && !r.limbs_.empty();
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> tmp = limbs_;
    std::string digits;
    while (!tmp.empty()) {
      uint64_t rem = 0;
      for (size_t i = tmp.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | tmp[i];
        tmp[i] = static_cast<uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
      for (int d = 0; d < 9; ++d) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (neg_) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
  }

  // Fits in int64? (for fast paths and JSON emission)
  bool fits_int64() const {
    if (limbs_.size() > 2) return false;
    uint64_t m = mag_u64();
    if (neg_) return m <= (1ull << 63);
    return m < (1ull << 63);
  }
  int64_t to_int64() const {
    uint64_t m = mag_u64();
    return neg_ ? -static_cast<int64_t>(m) : static_cast<int64_t>(m);
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.neg_ ? c > 0 : c < 0;
  }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  BigInt operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_ && !r.limbs_.empty();
      return r;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    BigInt r;
    if (c == 0) return r;
    if (c > 0) {
      r.limbs_ = sub_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_;
    } else {
      r.limbs_ = sub_mag(b.limbs_, a.limbs_);
      r.neg_ = b.neg_;
    }
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                       r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] += static_cast<uint32_t>(carry);
    }
    r.trim();
    r.neg_ = (a.neg_ != b.neg_) && !r.limbs_.empty();
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncated division (C semantics: quotient rounds toward zero,
  // remainder has the sign of the dividend).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c < 0) {
      q = BigInt();
      r = a;
      return;
    }
    divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
    q.trim();
    r.trim();
    q.neg_ = (a.neg_ != b.neg_) && !q.limbs_.empty();
    r.neg_ = a.neg_ && !r.limbs_.empty();
  }
  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = b;
      b = r;
    }
    return a;
  }

private:
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zeros
  bool neg_ = false;

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
  }
  void push_u64(uint64_t m) {
    if (m) limbs_.push_back(static_cast<uint32_t>(m));
    if (m >> 32) limbs_.push_back(static_cast<uint32_t>(m >> 32));
  }
  uint64_t mag_u64() const {
    uint64_t m = 0;
    if (limbs_.size() > 1) m = static_cast<uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) m |= limbs_[0];
    return m;
  }
  void mul_small(uint32_t f) {
    uint64_t carry = 0;
    for (auto& l : limbs_) {
      uint64_t cur = static_cast<uint64_t>(l) * f + carry;
      l = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }
  void add_small(uint32_t v) {
    uint64_t carry = v;
    for (auto& l : limbs_) {
      if (!carry) break;
      uint64_t cur = l + carry;
      l = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r = big;
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t cur = static_cast<uint64_t>(r[i]) + carry +
                     (i < small.size() ? small[i] : 0);
      r[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      if (!carry && i >= small.size()) break;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }
  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t cur = static_cast<int64_t>(r[i]) - borrow -
                    (i < b.size() ? b[i] : 0);
      borrow = cur < 0;
      if (cur < 0) cur += (1ll << 32);
      r[i] = static_cast<uint32_t>(cur);
      if (!borrow && i >= b.size()) break;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth algorithm D on magnitudes; requires |a| >= |b|, b nonzero.
  static void divmod_mag(std::vector<uint32_t> a, std::vector<uint32_t> b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (b.size() == 1) {
      uint32_t d = b[0];
      q.assign(a.size(), 0);
      uint64_t rem = 0;
      for (size_t i = a.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a[i];
        q[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
      }
      r.clear();
      if (rem) r.push_back(static_cast<uint32_t>(rem));
      return;
    }
    // normalize so the top limb of b has its high bit set
    int shift = 0;
    for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    a = shl_bits(a, shift);
    b = shl_bits(b, shift);
    size_t n = b.size(), m = a.size() - n;
    a.push_back(0);
    q.assign(m + 1, 0);
    for (size_t j = m + 1; j-- > 0;) {
      uint64_t num = (static_cast<uint64_t>(a[j + n]) << 32) | a[j + n - 1];
      uint64_t qhat = num / b[n - 1];
      uint64_t rhat = num % b[n - 1];
      while (qhat >= (1ull << 32) ||
             qhat * b[n - 2] > ((rhat << 32) | a[j + n - 2])) {
        --qhat;
        rhat += b[n - 1];
        if (rhat >= (1ull << 32)) break;
      }
      // multiply-subtract
      int64_t borrow = 0;
      uint64_t carry = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t p = qhat * b[i] + carry;
        carry = p >> 32;
        int64_t sub = static_cast<int64_t>(a[i + j]) -
                      static_cast<int64_t>(p & 0xffffffffu) - borrow;
        borrow = sub < 0;
        if (sub < 0) sub += (1ll << 32);
        a[i + j] = static_cast<uint32_t>(sub);
      }
      int64_t sub = static_cast<int64_t>(a[j + n]) -
                    static_cast<int64_t>(carry) - borrow;
      bool fix = sub < 0;
      if (sub < 0) sub += (1ll << 32);
      a[j + n] = static_cast<uint32_t>(sub);
      if (fix) {  // qhat was one too large
        --qhat;
        uint64_t c2 = 0;
        for (size_t i = 0; i < n; ++i) {
          uint64_t cur = static_cast<uint64_t>(a[i + j]) + b[i] + c2;
          a[i + j] = static_cast<uint32_t>(cur);
          c2 = cur >> 32;
        }
        a[j + n] = static_cast<uint32_t>(a[j + n] + c2);
      }
      q[j] = static_cast<uint32_t>(qhat);
    }
    r.assign(a.begin(), a.begin() + n);
    r = shr_bits(r, shift);
  }
  static std::vector<uint32_t> shl_bits(const std::vector<uint32_t>& v, int s) {
    if (!s) return v;
    std::vector<uint32_t> r(v.size() + 1, 0);
    for (size_t i = 0; i < v.size(); ++i) {
      r[i] |= v[i] << s;
      r[i + 1] = static_cast<uint32_t>(static_cast<uint64_t>(v[i]) >> (32 - s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  static std::vector<uint32_t> shr_bits(const std::vector<uint32_t>& v, int s) {
    if (!s) return v;
    std::vector<uint32_t> r(v.size(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
      r[i] = v[i] >> s;
      if (i + 1 < v.size())
        r[i] |= static_cast<uint32_t>(static_cast<uint64_t>(v[i + 1]) << (32 - s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
};

}  // namespace khtail
