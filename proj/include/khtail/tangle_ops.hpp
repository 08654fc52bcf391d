// Tangle surgery: pairings <Z1, Z2>, capping and cupping, turnback pulls
// through full twists, and Reidemeister splices used by the invariance tests.
//
// Tangle widths are quoted as (top, bottom) pairs: an (a,b)-tangle
// has a strands at the top and b at the bottom; SlicedTangle stores bottom
// and derives top.
#pragma once

#include <utility>
#include <vector>

#include "khtail/braid.hpp"
#include "khtail/diagram.hpp"

namespace khtail {

// cap the i-th and (i+1)-st strands at the top: Z^{cap i}
inline SlicedTangle cap_top(const SlicedTangle& z, int i) {
  SlicedTangle r = z;
  r.append(SliceKind::Cap, i);
  return r;
}

// cup the i-th and (i+1)-st strands at the bottom: Z_{cup i}
inline SlicedTangle cup_bottom(const SlicedTangle& z, int i) {
  if (z.width_bottom() < 2) throw std::invalid_argument("cup_bottom: width < 2");
  SlicedTangle r(z.width_bottom() - 2);
  r.append(SliceKind::Cup, i);
  for (const auto& s : z.slices()) r.append(s);
  return r;
}

// <Z1, Z2>: connect two (a,b)-tangles top to top and bottom to bottom, the
// second tangle entering rotated by pi as in the Temperley-Lieb inner
// product (so the x-th bottom strand of Z1 meets the (b+1-x)-th of Z2)
inline SlicedTangle pair_tangles(const SlicedTangle& z1, const SlicedTangle& z2) {
  if (z1.width_top() != z2.width_top() || z1.width_bottom() != z2.width_bottom())
    throw std::invalid_argument("pair: boundary widths do not match");
  SlicedTangle mid = z1;
  mid.stack(z2.rotated());
  return trace_closure_tangle(mid);
}

inline LinkDiagram pair_diagram(const SlicedTangle& z1, const SlicedTangle& z2) {
  return LinkDiagram(pair_tangles(z1, z2));
}

// orientation pinned at specific ports (direction of travel +1 = upward);
// unpinned components take the canonical orientation
inline LinkDiagram orient_pinned(const SlicedTangle& t,
                                 const std::vector<std::pair<int, int>>& pins) {
  LinkDiagram canon{t};
  std::vector<int> flips;
  flips.assign(canon.components(), 1);
  std::vector<char> seen(canon.components(), 0);
  for (auto [port, dir] : pins) {
    int c = canon.component_of_port(port);
    int f = (canon.dir_up(port) == dir) ? 1 : -1;
    if (seen[c] && flips[c] != f)
      throw std::invalid_argument("orient_pinned: conflicting pins");
    flips[c] = f;
    seen[c] = 1;
  }
  return LinkDiagram(t, flips);
}

// record of the moves performed by a turnback pull
struct MoveRecord {
  int r1 = 0;
  int r2 = 0;
  int crossing_delta = 0;  // crossings removed
};

// The diagram family <(T_n^{+-k})^{cap i}, Z> with Z an (n-2, n)-tangle, and
// its turnback-pulled form <T_{n-2}^{+-k}, Z_{cup n-i}>. Construction keeps
// the tangle Z shared between the two so orientations can be transported
// through the isotopy.
struct CappedTwistPairing {
  int n = 2;
  int k = 0;
  int sign = +1;  // +1 right-handed, -1 left-handed
  int i = 1;
  SlicedTangle z;  // width_bottom n, width_top n-2

  CappedTwistPairing(int n_, int k_, int sign_, int i_, SlicedTangle z_)
      : n(n_), k(k_), sign(sign_), i(i_), z(std::move(z_)) {
    if (n < 2) throw std::invalid_argument("capped twist: n >= 2");
    if (i < 1 || i > n - 1) throw std::invalid_argument("capped twist: bad cap index");
    if (z.width_bottom() != n || z.width_top() != n - 2)
      throw std::invalid_argument("capped twist: Z must be an (n-2,n)-tangle");
  }

  SlicedTangle capped_twist() const {
    SlicedTangle t = braid_to_tangle(torus_braid(n, sign > 0 ? k : -k));
    return cap_top(t, i);
  }

  LinkDiagram diagram() const { return pair_diagram(capped_twist(), z); }

  // <T_{n-2}^{+-k}, Z_{cup n-i}>; at n = 2 the twist region is empty
  LinkDiagram pulled() const {
    SlicedTangle zc = cup_bottom(z, n - i);
    SlicedTangle t = n == 2 ? SlicedTangle(0)
                            : braid_to_tangle(torus_braid(n - 2, sign > 0 ? k : -k));
    return pair_diagram(t, zc);
  }

  MoveRecord moves() const {
    MoveRecord m;
    m.r1 = 2 * k;
    m.r2 = k * (2 * n - 4);
    m.crossing_delta = k * (4 * n - 6);
    return m;
  }

  // ports of Z's bottom boundary inside diagram(): level just above the
  // flipped-Z block's bottom... Z is stacked flipped, so its bottom boundary
  // is the top of the closed core, at positions 1..n
  std::vector<int> z_boundary_ports_in_diagram(const LinkDiagram& d) const {
    // layout of pair_tangles: [n cups][capped twist][flip(z)][n caps]
    int lvl = n + static_cast<int>(capped_twist().slices().size()) +
              static_cast<int>(z.slices().size());
    std::vector<int> ports;
    for (int p = 1; p <= n; ++p) ports.push_back(d.tangle().port(lvl, p));
    return ports;
  }
  std::vector<int> z_boundary_ports_in_pulled(const LinkDiagram& d) const {
    // layout: [n-2 cups][T_{n-2} braid][flip(z)][cap at n-i][n-2 caps];
    // for n = 2: [flip(z)][cap at n-i] with no closure arcs
    int cups = n - 2;
    int braid = (n - 2) * (n - 3) * k;
    int lvl = cups + braid + static_cast<int>(z.slices().size());
    std::vector<int> ports;
    for (int p = 1; p <= n; ++p) ports.push_back(d.tangle().port(lvl, p));
    return ports;
  }

  // both diagrams oriented consistently: the pulled diagram inherits the
  // directions of Z's boundary strands from the capped diagram
  std::pair<LinkDiagram, LinkDiagram> oriented_pair() const {
    LinkDiagram d = diagram();
    auto ports_d = z_boundary_ports_in_diagram(d);
    LinkDiagram p0 = pulled();
    auto ports_p = z_boundary_ports_in_pulled(p0);
    std::vector<std::pair<int, int>> pins;
    for (int x = 0; x < n; ++x)
      pins.push_back({ports_p[x], d.dir_up(ports_d[x])});
    LinkDiagram p = orient_pinned(p0.tangle(), pins);
    return {std::move(d), std::move(p)};
  }

  // crossing indices (in slice order) of the twist region
  std::vector<int> twist_crossings_in_diagram() const {
    std::vector<int> v;
    int m = k * n * (n - 1);
    for (int c = 0; c < m; ++c) v.push_back(c);
    return v;
  }
  std::vector<int> twist_crossings_in_pulled() const {
    std::vector<int> v;
    int m = k * (n - 2) * (n - 3);
    for (int c = 0; c < m; ++c) v.push_back(c);
    return v;
  }
};

// signed crossing-region statistics: n+ - 2 n- and n- over a crossing set
inline std::pair<int, int> region_shift(const LinkDiagram& d,
                                        const std::vector<int>& crossings) {
  int np = 0, nm = 0;
  for (int c : crossings) (d.crossing_sign(c) > 0 ? np : nm)++;
  return {np - 2 * nm, nm};
}

// ---- Reidemeister splices (test corpus) ----

// kink at (level, pos): [cup pos+1, crossing pos+1?, cap ...]; both chiralities
inline SlicedTangle insert_kink(const SlicedTangle& t, int level, int pos,
                                bool positive_geometry) {
  if (level < 0 || level >= t.levels()) throw std::invalid_argument("bad level");
  if (pos < 1 || pos > t.width_at(level)) throw std::invalid_argument("bad pos");
  SlicedTangle r(t.width_bottom());
  const auto& sl = t.slices();
  for (int l = 0; l <= static_cast<int>(sl.size()); ++l) {
    if (l == level) {
      r.append(SliceKind::Cup, pos + 1);
      r.append(positive_geometry ? SliceKind::PosX : SliceKind::NegX, pos);
      r.append(SliceKind::Cap, pos + 1);
    }
    if (l < static_cast<int>(sl.size())) r.append(sl[l]);
  }
  return r;
}

// sigma sigma^{-1} on strands (pos, pos+1) at the given level
inline SlicedTangle insert_r2(const SlicedTangle& t, int level, int pos) {
  if (level < 0 || level >= t.levels()) throw std::invalid_argument("bad level");
  if (pos < 1 || pos + 1 > t.width_at(level)) throw std::invalid_argument("bad pos");
  SlicedTangle r(t.width_bottom());
  const auto& sl = t.slices();
  for (int l = 0; l <= static_cast<int>(sl.size()); ++l) {
    if (l == level) {
      r.append(SliceKind::PosX, pos);
      r.append(SliceKind::NegX, pos);
    }
    if (l < static_cast<int>(sl.size())) r.append(sl[l]);
  }
  return r;
}

// braid-word R3: rewrite one occurrence of s_i s_{i+1} s_i -> s_{i+1} s_i s_{i+1}
inline bool apply_r3(BraidWord& b) {
  for (size_t x = 0; x + 2 < b.letters.size(); ++x) {
    int a = b.letters[x], c = b.letters[x + 1], e = b.letters[x + 2];
    if (a > 0 && c > 0 && e == a && c == a + 1) {
      b.letters[x] = c;
      b.letters[x + 1] = a;
      b.letters[x + 2] = c;
      return true;
    }
  }
  return false;
}

}  // namespace khtail
