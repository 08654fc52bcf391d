// Braid words, torus braids and trace closures.
#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "khtail/diagram.hpp"

namespace khtail {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // +i = sigma_i, -i = sigma_i^{-1}, 1 <= i < strands

  BraidWord() = default;
  BraidWord(int n, std::vector<int> w) : strands(n), letters(std::move(w)) {
    if (n < 1) throw std::invalid_argument("braid: need at least one strand");
    for (int l : letters)
      if (l == 0 || std::abs(l) >= strands)
        throw std::invalid_argument("braid: generator index out of range");
  }

  // permutation taking bottom position i to top position perm[i] (0-based)
  std::vector<int> permutation() const {
    std::vector<int> p(strands);
    std::iota(p.begin(), p.end(), 0);
    for (int l : letters) std::swap(p[std::abs(l) - 1], p[std::abs(l)]);
    return p;
  }
};

inline SlicedTangle braid_to_tangle(const BraidWord& b) {
  SlicedTangle t(b.strands);
  for (int l : b.letters)
    t.append(l > 0 ? SliceKind::PosX : SliceKind::NegX, std::abs(l));
  return t;
}

// inverse of braid_to_tangle; requires every slice to be a crossing
inline BraidWord tangle_to_braid(const SlicedTangle& t) {
  BraidWord b;
  b.strands = t.width_bottom();
  for (const auto& s : t.slices()) {
    if (!is_crossing(s.kind))
      throw std::invalid_argument("tangle_to_braid: non-crossing slice");
    b.letters.push_back(s.kind == SliceKind::PosX ? s.pos : -s.pos);
  }
  return b;
}

// m fractional (1/n) twists: (sigma_1 ... sigma_{n-1})^m, inverses for m < 0.
// A full twist is n fractional twists.
inline BraidWord torus_braid_fractional(int n, int m) {
  if (n < 1) throw std::invalid_argument("torus braid: n >= 1 required");
  BraidWord b;
  b.strands = n;
  for (int rep = 0; rep < std::abs(m); ++rep) {
    if (m > 0)
      for (int i = 1; i < n; ++i) b.letters.push_back(i);
    else
      for (int i = n - 1; i >= 1; --i) b.letters.push_back(-i);
  }
  return b;
}

// k full twists T_n^k (k may be negative)
inline BraidWord torus_braid(int n, int k) { return torus_braid_fractional(n, n * k); }

// twists given as the rational num/den; den must divide n*num
inline BraidWord torus_braid_rational(int n, long num, long den) {
  if (den == 0) throw std::invalid_argument("torus braid: zero denominator");
  long m2 = n * num;
  if (m2 % den != 0)
    throw std::invalid_argument("torus braid: twists*n is not an integer");
  return torus_braid_fractional(n, static_cast<int>(m2 / den));
}

// Standard trace closure of an (n,n)-tangle: strand i at the top returns to
// strand i at the bottom around the right-hand side with nested arcs.
inline SlicedTangle trace_closure_tangle(const SlicedTangle& mid) {
  int n = mid.width_bottom();
  if (mid.width_top() != n)
    throw std::invalid_argument("trace closure: tangle is not (n,n)");
  SlicedTangle t(0);
  for (int i = 1; i <= n; ++i) t.append(SliceKind::Cup, i);
  // the tangle occupies the left strands; its slices embed verbatim since
  // the return arcs all sit to its right
  for (const auto& s : mid.slices()) t.append(s);
  for (int i = n; i >= 1; --i) t.append(SliceKind::Cap, i);
  return t;
}

inline LinkDiagram trace_closure(const BraidWord& b) {
  return LinkDiagram(trace_closure_tangle(braid_to_tangle(b)));
}

// torus link T(n,m): closure of m fractional right-handed twists
inline LinkDiagram torus_link(int n, int m) {
  return trace_closure(torus_braid_fractional(n, m));
}

}  // namespace khtail
