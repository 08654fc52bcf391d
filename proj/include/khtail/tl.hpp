// The Temperley-Lieb algebra TL_n over rational functions in q, with closed
// circles worth delta = q + q^{-1}, and the Jones-Wenzl projectors via the
// Wenzl recursion. Elements are exact linear combinations of crossingless
// (n,n)-matchings.
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "khtail/laurent.hpp"

namespace khtail {

// a crossingless matching of n bottom points (0..n-1) and n top points
// (n..2n-1), packed four bits per point (n <= 8)
class TLMatching {
public:
  TLMatching() = default;
  explicit TLMatching(const std::vector<int>& pairing) {
    int m = static_cast<int>(pairing.size());
    if (m > 16) throw std::invalid_argument("TL: at most 8 strands");
    for (int i = 0; i < m; ++i) {
      if (pairing[i] < 0 || pairing[i] >= m || pairing[pairing[i]] != i ||
          pairing[i] == i)
        throw std::invalid_argument("TL: not a perfect matching");
      key_ |= static_cast<uint64_t>(pairing[i]) << (4 * i);
    }
    size_ = m;
  }
  static TLMatching identity(int n) {
    std::vector<int> p(2 * n);
    for (int i = 0; i < n; ++i) {
      p[i] = n + i;
      p[n + i] = i;
    }
    return TLMatching(p);
  }
  // e_i: bottom i-1 and i joined, top i-1 and i joined, rest vertical (i is
  // 1-based)
  static TLMatching turnback(int n, int i) {
    std::vector<int> p(2 * n);
    for (int x = 0; x < n; ++x) {
      p[x] = n + x;
      p[n + x] = x;
    }
    auto join = [&](int a, int b) {
      p[a] = b;
      p[b] = a;
    };
    join(i - 1, i);
    join(n + i - 1, n + i);
    return TLMatching(p);
  }

  int points() const { return size_; }
  int strands() const { return size_ / 2; }
  int partner(int x) const { return static_cast<int>((key_ >> (4 * x)) & 0xF); }
  uint64_t key() const { return key_; }
  bool operator<(const TLMatching& o) const { return key_ < o.key_; }
  bool operator==(const TLMatching& o) const { return key_ == o.key_; }

  bool is_identity() const { return *this == identity(strands()); }

  // planarity: arcs drawn on the boundary of a disk with points in the order
  // bottom 0..n-1 then top 2n-1..n must not cross
  bool planar() const {
    int n = strands();
    auto boundary_index = [&](int x) { return x < n ? x : n + (2 * n - 1 - x); };
    for (int a = 0; a < 2 * n; ++a) {
      int b = partner(a);
      for (int c = 0; c < 2 * n; ++c) {
        int d = partner(c);
        int ia = boundary_index(a), ib = boundary_index(b);
        int ic = boundary_index(c), id = boundary_index(d);
        if (ia > ib) std::swap(ia, ib);
        if (ic > id) std::swap(ic, id);
        bool cross = (ia < ic && ic < ib && ib < id) ||
                     (ic < ia && ia < id && id < ib);
        if (cross) return false;
      }
    }
    return true;
  }

  // stack m on top of this (this->top glued to m->bottom); returns the
  // composite matching and the number of closed circles
  std::pair<TLMatching, int> stack(const TLMatching& m) const {
    int n = strands();
    if (m.strands() != n) throw std::invalid_argument("TL: size mismatch");
    std::vector<int> p(2 * n, -1);
    // walk from a point just inside one factor until a final boundary point
    auto walk = [&](int side, int idx) {
      while (true) {
        idx = side == 0 ? partner(idx) : m.partner(idx);
        if (side == 0 && idx < n) return idx;  // final bottom
        if (side == 1 && idx >= n) return idx; // final top (same name)
        if (side == 0) {
          idx -= n;
          side = 1;
        } else {
          idx += n;
          side = 0;
        }
      }
    };
    for (int b = 0; b < n; ++b) {
      if (p[b] >= 0) continue;
      int e = walk(0, b);
      p[b] = e;
      p[e] = b;
    }
    for (int t = n; t < 2 * n; ++t) {
      if (p[t] >= 0) continue;
      int e = walk(1, t);
      p[t] = e;
      p[e] = t;
    }
    return {TLMatching(p), count_circles(*this, m)};
  }

private:
  uint64_t key_ = 0;
  int size_ = 0;

  static int count_circles(const TLMatching& a, const TLMatching& b) {
    int n = a.strands();
    std::vector<int> parent(4 * n);
    for (int i = 0; i < 4 * n; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    // nodes: a-points 0..2n-1, b-points 2n..4n-1
    for (int x = 0; x < 2 * n; ++x) unite(x, a.partner(x));
    for (int x = 0; x < 2 * n; ++x) unite(2 * n + x, 2 * n + b.partner(x));
    for (int x = 0; x < n; ++x) unite(n + x, 2 * n + x);  // interface
    // circles: components containing no final boundary point
    std::vector<char> touches(4 * n, 0);
    for (int x = 0; x < n; ++x) touches[find(x)] = 1;          // final bottom
    for (int x = 0; x < n; ++x) touches[find(3 * n + x)] = 1;  // final top
    std::vector<char> counted(4 * n, 0);
    int circles = 0;
    for (int x = 0; x < 4 * n; ++x) {
      int r = find(x);
      if (!touches[r] && !counted[r]) {
        counted[r] = 1;
        ++circles;
      }
    }
    return circles;
  }
};

// exact linear combination of crossingless matchings
class TLElement {
public:
  TLElement() = default;
  explicit TLElement(int n) : n_(n) {}
  static TLElement identity(int n) {
    TLElement e(n);
    e.coeff_[TLMatching::identity(n)] = LaurentRational(1);
    return e;
  }
  static TLElement generator(int n, int i) {
    TLElement e(n);
    e.coeff_[TLMatching::turnback(n, i)] = LaurentRational(1);
    return e;
  }

  int strands() const { return n_; }
  const std::map<TLMatching, LaurentRational>& terms() const { return coeff_; }
  bool zero() const { return coeff_.empty(); }

  LaurentRational coefficient(const TLMatching& m) const {
    auto it = coeff_.find(m);
    return it == coeff_.end() ? LaurentRational() : it->second;
  }
  LaurentRational identity_coefficient() const {
    return coefficient(TLMatching::identity(n_));
  }

  void add(const TLMatching& m, const LaurentRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = coeff_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeff_.erase(it);
    }
  }

  friend TLElement operator+(const TLElement& a, const TLElement& b) {
    TLElement r = a;
    for (auto& [m, c] : b.coeff_) r.add(m, c);
    return r;
  }
  friend TLElement operator-(const TLElement& a, const TLElement& b) {
    TLElement r = a;
    for (auto& [m, c] : b.coeff_) r.add(m, -c);
    return r;
  }
  friend TLElement operator*(const LaurentRational& c, const TLElement& a) {
    TLElement r(a.n_);
    for (auto& [m, x] : a.coeff_) r.add(m, c * x);
    return r;
  }
  friend bool operator==(const TLElement& a, const TLElement& b) {
    return a.n_ == b.n_ && a.coeff_ == b.coeff_;
  }

private:
  int n_ = 0;
  std::map<TLMatching, LaurentRational> coeff_;
};

// product a.b: stack b on top of a; closed circles contribute delta factors
inline TLElement tl_multiply(const TLElement& a, const TLElement& b) {
  if (a.strands() != b.strands())
    throw std::invalid_argument("TL multiply: strand counts differ");
  LaurentRational delta{quantum_integer(2)};
  TLElement r(a.strands());
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      auto [m, circles] = ma.stack(mb);
      LaurentRational c = ca * cb;
      for (int x = 0; x < circles; ++x) c *= delta;
      r.add(m, c);
    }
  return r;
}

// Jones-Wenzl projector by the Wenzl recursion
//   P_1 = 1,  P_n = P_{n-1} - ([n-1]/[n]) P_{n-1} e_{n-1} P_{n-1}
// with P_{n-1} included on the first n-1 strands.
inline TLElement jones_wenzl(int n);

namespace tldetail {

inline TLElement include_left(const TLElement& a, int n) {
  // extend an element of TL_{n-1} by a vertical strand on the right
  TLElement r(n);
  for (auto& [m, c] : a.terms()) {
    int k = a.strands();
    std::vector<int> p(2 * n);
    auto lift = [&](int x) { return x < k ? x : x + (n - k); };
    for (int x = 0; x < 2 * k; ++x) p[lift(x)] = lift(m.partner(x));
    for (int x = k; x < n; ++x) {
      p[x] = n + x;
      p[n + x] = x;
    }
    r.add(TLMatching(p), c);
  }
  return r;
}

struct JWCache {
  std::shared_mutex mu;
  std::map<int, TLElement> cache;
};
inline JWCache& jw_cache() {
  static JWCache c;
  return c;
}

}  // namespace tldetail

inline TLElement jones_wenzl(int n) {
  if (n < 1) throw std::invalid_argument("jones_wenzl: n >= 1");
  if (n > 8) throw std::invalid_argument("jones_wenzl: n capped at 8");
  {
    std::shared_lock lk(tldetail::jw_cache().mu);
    auto it = tldetail::jw_cache().cache.find(n);
    if (it != tldetail::jw_cache().cache.end()) return it->second;
  }
  TLElement result = TLElement::identity(1);
  if (n > 1) {
    TLElement prev = tldetail::include_left(jones_wenzl(n - 1), n);
    LaurentRational ratio(quantum_integer(n - 1), quantum_integer(n));
    TLElement mid = tl_multiply(prev, tl_multiply(TLElement::generator(n, n - 1), prev));
    result = prev - ratio * mid;
  }
  std::unique_lock lk(tldetail::jw_cache().mu);
  tldetail::jw_cache().cache.emplace(n, result);
  return result;
}

}  // namespace khtail
