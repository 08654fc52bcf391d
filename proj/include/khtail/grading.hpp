// Grading, shift and bound formulas, kept as pure arithmetic over diagram
// statistics. Shifts are never applied destructively; they ride along in
// StableOffsets so objects can be compared up to suspension.
#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace khtail {

// exact rational over long long, for the stabilization bounds
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(std::abs(num), den);
    if (g > 1) { num /= g; den /= g; }
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
  static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

  long long ceil() const {
    long long q = num / den, r = num % den;
    return q + (r > 0 ? 1 : 0);
  }
  long long floor() const {
    long long q = num / den, r = num % den;
    return q - (r < 0 ? 1 : 0);
  }
  std::string to_string() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

// formal suspension / q-shift bookkeeping; composes additively
struct StableOffsets {
  int h = 0;
  int q = 0;
  friend StableOffsets operator+(const StableOffsets& a, const StableOffsets& b) {
    return {a.h + b.h, a.q + b.q};
  }
  friend bool operator==(const StableOffsets& a, const StableOffsets& b) {
    return a.h == b.h && a.q == b.q;
  }
};

// crossing-count statistics of a diagram, split by region when the diagram
// is viewed as <T_n^{+-k}, Z>
struct GradingContext {
  int n_plus = 0;
  int n_minus = 0;
  // per-slot region split (one full twist) and the complement
  int tau = 0;      // n+ - 2n- over one full twist
  int eta = 0;      // n- over one full twist
  int n_z = 0;      // n+ - 2n- over the designated tangle Z
  int n_d = 0;      // n+ - 2n- over the whole diagram
  int n_shift() const { return n_plus - 2 * n_minus; }
};

inline int hom_degree(int one_resolutions, int n_minus) {
  return one_resolutions - n_minus;
}

inline int q_degree(int one_resolutions, int v_plus, int v_minus, int n_shift) {
  return one_resolutions + (v_plus - v_minus) + n_shift;
}

// suspension shifts when a single crossing is resolved:
// L'' = 0-resolution (the inclusion side), L' = 1-resolution (the quotient
// side); a and b are the homological suspensions, and q-degrees track as
// j + N_{L''} on the L'' side and j - 1 + N_{L'} on the L' side.
struct ConeShifts {
  int a = 0;                 // suspension on the L'' side
  int b = 0;                 // suspension on the L' side
  int q_zero_side = 0;       // N_{L''} - N_L   (absolute q: j + N_L -> j + N_{L''})
  int q_one_side = 0;        // N_{L'} - N_L - 1
};

inline ConeShifts cone_shifts_from_counts(int nm_l, int nm_zero, int nm_one,
                                          int nshift_l, int nshift_zero,
                                          int nshift_one) {
  ConeShifts s;
  s.a = nm_l - nm_zero;
  s.b = nm_l - nm_one - 1;
  s.q_zero_side = nshift_zero - nshift_l;
  s.q_one_side = nshift_one - nshift_l - 1;
  return s;
}

// s(n,k) = N_{L(n,k)} + k m n (n-1) + n^2 chi + n zeta
inline long long s_shift(int n_shift_lnk, int k, int m, int n, int chi, int zeta) {
  return static_cast<long long>(n_shift_lnk) +
         static_cast<long long>(k) * m * n * (n - 1) +
         static_cast<long long>(n) * n * chi + static_cast<long long>(n) * zeta;
}

// Rozansky's grading conventions and the translation to ours.
struct RozanskyStats {
  int n_plus = 0;
  int n_minus = 0;
  int crossings = 0;  // total crossings of the cabled diagram
  int n_zeta = 0;     // n * (circles of the all-one resolution)
};

struct RozanskyDegrees {
  long long i_r = 0;
  long long j_r = 0;
};

inline RozanskyDegrees to_rozansky(long long i, long long j, const RozanskyStats& st) {
  RozanskyDegrees r;
  r.i_r = st.n_plus - i;  // i = -i_R + n^+
  // j = (-i_R - j_R) + (n+ - 2n-) + #cros + n*zeta
  r.j_r = -r.i_r - j + (st.n_plus - 2 * st.n_minus) + st.crossings + st.n_zeta;
  return r;
}

inline std::pair<long long, long long> from_rozansky(const RozanskyDegrees& d,
                                                     const RozanskyStats& st) {
  long long i = -d.i_r + st.n_plus;
  long long j = (-d.i_r - d.j_r) + (st.n_plus - 2 * st.n_minus) + st.crossings + st.n_zeta;
  return {i, j};
}

// in the s(n,k)-normalized picture, j_R = -j_rel - i_R
inline long long rozansky_j_from_normalized(long long j_rel, long long i_r) {
  return -j_rel - i_r;
}

// vanishing region of Rozansky's theorem: homology is zero once
// j_R < -(i_R + chi_min)/2
inline bool rozansky_vanishing_requires_zero(long long i_r, long long j_r, int chi_min) {
  return 2 * j_r < -(i_r + chi_min);
}

// stabilization thresholds for the twist sequences on torus links:
// f(a,n) = max((a+n-1)/n, n) and the improved f'(a,n) = max((a+n-1)/n, n-1)
inline Rational f_old(long long a, int n) {
  return Rational::max(Rational(a + n - 1, n), Rational(n));
}
inline Rational f_prime(long long a, int n) {
  return Rational::max(Rational(a + n - 1, n), Rational(n - 1));
}
// sequence form: the maps of the limiting sequence are equivalences for
// m >= max(j-1, n-1)
inline long long seq_stab_bound(long long j, int n) {
  return std::max(j - 1, static_cast<long long>(n - 1));
}

// least color n with n > chi_min - 2j + 1 (B-adequate tail threshold);
// only even j <= 0 carry nontrivial blocks
inline int badequate_threshold(long long j, int chi_min, bool* odd_flag = nullptr) {
  if (odd_flag) *odd_flag = (j % 2) != 0;
  if ((j % 2) != 0)
    throw std::invalid_argument("badequate threshold: odd q-offset is trivial");
  long long n = chi_min - 2 * j + 2;
  return static_cast<int>(n < 1 ? 1 : n);
}

}  // namespace khtail
