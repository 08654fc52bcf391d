// Planar diagrams as vertical stacks of elementary slices (Morse position).
// A tangle is read bottom to top; cups raise the strand count by two, caps
// lower it by two, crossings preserve it. Closed diagrams carry an
// orientation, per-crossing signs, and support 0/1 resolution of every
// crossing with exact circle bookkeeping.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khtail {

enum class SliceKind : uint8_t { PosX, NegX, Cup, Cap };

struct Slice {
  SliceKind kind;
  int pos;  // leftmost strand the slice touches, 1-based
};

inline bool is_crossing(SliceKind k) { return k == SliceKind::PosX || k == SliceKind::NegX; }

class SlicedTangle {
public:
  SlicedTangle() { finalize(); }
  explicit SlicedTangle(int width_bottom, std::vector<Slice> slices = {})
      : width_bottom_(width_bottom), slices_(std::move(slices)) {
    finalize();
  }

  int width_bottom() const { return width_bottom_; }
  int width_top() const { return widths_.back(); }
  const std::vector<Slice>& slices() const { return slices_; }
  int width_at(int level) const { return widths_[level]; }
  int levels() const { return static_cast<int>(widths_.size()); }

  void append(Slice s) {
    slices_.push_back(s);
    int w = widths_.back();
    check_slice(s, w);
    widths_.push_back(next_width(s, w));
    offsets_.push_back(offsets_.back() + widths_[widths_.size() - 2]);
  }
  void append(SliceKind k, int pos) { append(Slice{k, pos}); }

  // place t on top of this (widths must agree)
  void stack(const SlicedTangle& t) {
    if (t.width_bottom() != width_top())
      throw std::invalid_argument("stack: width mismatch");
    for (const auto& s : t.slices()) append(s);
  }

  // upside-down mirror: slice order reverses, cups become caps and the
  // over-strand diagonal flips
  SlicedTangle flipped() const {
    SlicedTangle r(width_top());
    for (size_t i = slices_.size(); i-- > 0;) {
      Slice s = slices_[i];
      switch (s.kind) {
        case SliceKind::Cup: s.kind = SliceKind::Cap; break;
        case SliceKind::Cap: s.kind = SliceKind::Cup; break;
        case SliceKind::PosX: s.kind = SliceKind::NegX; break;
        case SliceKind::NegX: s.kind = SliceKind::PosX; break;
      }
      r.append(s);
    }
    return r;
  }

  // left-right mirror: positions reflect, the over-strand diagonal flips
  SlicedTangle mirrored() const {
    SlicedTangle r(width_bottom());
    for (size_t i = 0; i < slices_.size(); ++i) {
      Slice s = slices_[i];
      int w = widths_[i];
      switch (s.kind) {
        case SliceKind::Cup: s.pos = w + 2 - s.pos; break;
        case SliceKind::Cap: s.pos = w - s.pos; break;
        case SliceKind::PosX:
          s.kind = SliceKind::NegX;
          s.pos = w - s.pos;
          break;
        case SliceKind::NegX:
          s.kind = SliceKind::PosX;
          s.pos = w - s.pos;
          break;
      }
      r.append(s);
    }
    return r;
  }

  // rotation by pi in the plane (flip + mirror); crossing geometry survives
  SlicedTangle rotated() const { return flipped().mirrored(); }

  int crossing_count() const {
    int n = 0;
    for (const auto& s : slices_)
      if (is_crossing(s.kind)) ++n;
    return n;
  }
  std::vector<int> crossing_slices() const {
    std::vector<int> v;
    for (size_t i = 0; i < slices_.size(); ++i)
      if (is_crossing(slices_[i].kind)) v.push_back(static_cast<int>(i));
    return v;
  }

  // ports: one per (level, position); level l has width_at(l) of them
  int port(int level, int pos) const { return offsets_[level] + pos - 1; }
  int total_ports() const { return offsets_.back() + widths_.back(); }
  int port_level(int k) const {
    int lo = 0, hi = levels() - 1;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (offsets_[mid] <= k) lo = mid; else hi = mid - 1;
    }
    return lo;
  }
  int port_pos(int k) const { return k - offsets_[port_level(k)] + 1; }

private:
  int width_bottom_ = 0;
  std::vector<Slice> slices_;
  std::vector<int> widths_;
  std::vector<int> offsets_;

  static int next_width(const Slice& s, int w) {
    switch (s.kind) {
      case SliceKind::Cup: return w + 2;
      case SliceKind::Cap: return w - 2;
      default: return w;
    }
  }
  static void check_slice(const Slice& s, int w) {
    bool ok = false;
    switch (s.kind) {
      case SliceKind::Cup: ok = s.pos >= 1 && s.pos <= w + 1; break;
      case SliceKind::Cap:
      case SliceKind::PosX:
      case SliceKind::NegX: ok = s.pos >= 1 && s.pos <= w - 1; break;
    }
    if (!ok) throw std::invalid_argument("slice position out of range");
  }
  void finalize() {
    if (width_bottom_ < 0) throw std::invalid_argument("negative width");
    widths_.assign(1, width_bottom_);
    offsets_.assign(1, 0);
    auto pending = std::move(slices_);
    slices_.clear();
    for (const auto& s : pending) append(s);
  }
};

// Connectivity of the underlying curve. Each port has two half-edge slots:
// 0 = lower side, 1 = upper side (open tangle ends leave a slot empty).
// `mode` selects what a crossing contributes: the honest crossing, or a 0/1
// smoothing taken from `state` (bit per crossing in slice order).
enum class CurveMode { Honest, Smoothed };

struct PortGraph {
  std::vector<int32_t> partner[2];
  std::vector<int8_t> partner_slot[2];

  void init(int n) {
    for (int s = 0; s < 2; ++s) {
      partner[s].assign(n, -1);
      partner_slot[s].assign(n, 0);
    }
  }
  void link(int a, int sa, int b, int sb) {
    partner[sa][a] = b;
    partner_slot[sa][a] = static_cast<int8_t>(sb);
    partner[sb][b] = a;
    partner_slot[sb][b] = static_cast<int8_t>(sa);
  }
};

inline PortGraph build_port_graph(const SlicedTangle& t, CurveMode mode,
                                  uint64_t state = 0) {
  PortGraph g;
  g.init(t.total_ports());
  auto vert = [&](int lo, int hi) { g.link(lo, 1, hi, 0); };
  int ci = 0;
  const auto& slices = t.slices();
  for (int l = 0; l < static_cast<int>(slices.size()); ++l) {
    const Slice& s = slices[l];
    int w = t.width_at(l);
    int p = s.pos;
    switch (s.kind) {
      case SliceKind::Cup:
        for (int x = 1; x <= w; ++x)
          vert(t.port(l, x), t.port(l + 1, x < p ? x : x + 2));
        g.link(t.port(l + 1, p), 0, t.port(l + 1, p + 1), 0);
        break;
      case SliceKind::Cap:
        for (int x = 1; x <= w; ++x)
          if (x != p && x != p + 1)
            vert(t.port(l, x), t.port(l + 1, x < p ? x : x - 2));
        g.link(t.port(l, p), 1, t.port(l, p + 1), 1);
        break;
      case SliceKind::PosX:
      case SliceKind::NegX: {
        for (int x = 1; x <= w; ++x)
          if (x != p && x != p + 1) vert(t.port(l, x), t.port(l + 1, x));
        if (mode == CurveMode::Honest) {
          vert(t.port(l, p), t.port(l + 1, p + 1));
          vert(t.port(l, p + 1), t.port(l + 1, p));
        } else {
          bool one = (state >> ci) & 1;
          // 0-smoothing of x+ is the vertical smoothing, of x- the turnback
          bool vertical = (s.kind == SliceKind::PosX) ? !one : one;
          if (vertical) {
            vert(t.port(l, p), t.port(l + 1, p));
            vert(t.port(l, p + 1), t.port(l + 1, p + 1));
          } else {
            g.link(t.port(l, p), 1, t.port(l, p + 1), 1);
            g.link(t.port(l + 1, p), 0, t.port(l + 1, p + 1), 0);
          }
        }
        ++ci;
        break;
      }
    }
  }
  return g;
}

// Traversal of a port graph: components of the curve and a travel direction
// per port (+1 = the strand crosses that level moving upward, in the
// traversal order of its component). Every component is walked once; cycles
// start at their minimal port moving upward, which is the canonical
// orientation rule for closed diagrams. Open paths are walked from their
// lower-numbered end.
struct CurveComponents {
  int count = 0;
  std::vector<int32_t> comp;   // port -> component id (ordered by min port)
  std::vector<int8_t> dir_up;  // port -> +1/-1 travel direction
  std::vector<int32_t> rep;    // component id -> min port
};

inline CurveComponents trace_components(const SlicedTangle& t, const PortGraph& g) {
  CurveComponents c;
  int n = t.total_ports();
  c.comp.assign(n, -1);
  c.dir_up.assign(n, 0);
  auto walk = [&](int start, int leave_slot, int id) {
    int cur = start, slot = leave_slot;
    while (true) {
      c.comp[cur] = id;
      c.dir_up[cur] = static_cast<int8_t>(slot == 1 ? 1 : -1);
      int nxt = g.partner[slot][cur];
      if (nxt < 0) return;  // open end
      int entered = g.partner_slot[slot][cur];
      cur = nxt;
      slot = 1 - entered;
      if (c.comp[cur] >= 0) return;  // cycle closed
    }
  };
  // open paths first (each from its lower-numbered open end)
  for (int k = 0; k < n; ++k) {
    if (c.comp[k] >= 0) continue;
    int open_slot = g.partner[0][k] < 0 ? 0 : (g.partner[1][k] < 0 ? 1 : -1);
    if (open_slot < 0) continue;
    int id = c.count++;
    walk(k, 1 - open_slot, id);
  }
  // remaining cycles
  for (int k = 0; k < n; ++k) {
    if (c.comp[k] >= 0) continue;
    int id = c.count++;
    walk(k, 1, id);
  }
  // canonical ids: order components by their minimal port
  std::vector<int32_t> minp(c.count, n);
  for (int k = 0; k < n; ++k) minp[c.comp[k]] = std::min(minp[c.comp[k]], k);
  std::vector<int> order(c.count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return minp[a] < minp[b]; });
  std::vector<int32_t> relabel(c.count);
  c.rep.assign(c.count, 0);
  for (int i = 0; i < c.count; ++i) {
    relabel[order[i]] = i;
    c.rep[i] = minp[order[i]];
  }
  for (int k = 0; k < n; ++k) c.comp[k] = relabel[c.comp[k]];
  return c;
}

// Oriented closed link diagram. Orientation is either computed by the
// canonical rule (each component travels upward at its lowest-leftmost port)
// or supplied per component.
class LinkDiagram {
public:
  explicit LinkDiagram(SlicedTangle t, std::optional<std::vector<int>> comp_flip = {})
      : tangle_(std::move(t)) {
    if (tangle_.width_bottom() != 0 || tangle_.width_top() != 0)
      throw std::invalid_argument("LinkDiagram: tangle is not closed");
    graph_ = build_port_graph(tangle_, CurveMode::Honest);
    curve_ = trace_components(tangle_, graph_);
    if (comp_flip) {
      if (static_cast<int>(comp_flip->size()) != curve_.count)
        throw std::invalid_argument("orientation list size mismatch");
      for (int k = 0; k < tangle_.total_ports(); ++k)
        if ((*comp_flip)[curve_.comp[k]] < 0)
          curve_.dir_up[k] = static_cast<int8_t>(-curve_.dir_up[k]);
    }
    compute_signs();
  }

  const SlicedTangle& tangle() const { return tangle_; }
  int components() const { return curve_.count; }
  int component_of_port(int k) const { return curve_.comp[k]; }
  int dir_up(int k) const { return curve_.dir_up[k]; }
  int crossings() const { return static_cast<int>(cross_slices_.size()); }
  const std::vector<int>& crossing_slice_indices() const { return cross_slices_; }
  int crossing_sign(int c) const { return sign_[c]; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  int n_shift() const { return n_plus_ - 2 * n_minus_; }

  // reverse the orientation of one component
  LinkDiagram with_component_reversed(int comp) const {
    std::vector<int> flips(curve_.count, 1);
    for (int k = 0; k < tangle_.total_ports(); ++k) {
      int c = curve_.comp[k];
      if (c == comp) flips[c] = -1;
    }
    std::vector<int> cur(curve_.count, 1);
    // recover current orientation relative to canonical, then flip `comp`
    LinkDiagram canon(tangle_);
    for (int c = 0; c < curve_.count; ++c) {
      int r = curve_.rep[c];
      cur[c] = (curve_.dir_up[r] == canon.curve_.dir_up[r]) ? 1 : -1;
    }
    cur[comp] = -cur[comp];
    return LinkDiagram(tangle_, cur);
  }

private:
  SlicedTangle tangle_;
  PortGraph graph_;
  CurveComponents curve_;
  std::vector<int> cross_slices_;
  std::vector<int8_t> sign_;
  int n_plus_ = 0, n_minus_ = 0;

  void compute_signs() {
    cross_slices_ = tangle_.crossing_slices();
    sign_.clear();
    for (int sl : cross_slices_) {
      const Slice& s = tangle_.slices()[sl];
      int a = curve_.dir_up[tangle_.port(sl, s.pos)];
      int b = curve_.dir_up[tangle_.port(sl, s.pos + 1)];
      int sg = (s.kind == SliceKind::PosX) ? a * b : -a * b;
      sign_.push_back(static_cast<int8_t>(sg));
      (sg > 0 ? n_plus_ : n_minus_)++;
    }
  }
};

// Full resolution of a closed diagram at a given state: circle count plus
// port->circle membership with canonical ids (ordered by minimal port).
struct Resolution {
  int circles = 0;
  std::vector<int32_t> circle_of_port;  // -1 on ports not on any circle (none for closed)
  std::vector<int32_t> min_port;        // per circle
};

inline Resolution resolve(const LinkDiagram& d, uint64_t state) {
  PortGraph g = build_port_graph(d.tangle(), CurveMode::Smoothed, state);
  CurveComponents c = trace_components(d.tangle(), g);
  Resolution r;
  r.circles = c.count;
  r.circle_of_port = c.comp;
  r.min_port = c.rep;
  return r;
}

// Independent circle counter: a bottom-to-top frontier sweep with union-find
// over open segment ids. Serves as the oracle against `resolve` in tests and
// as the fast path when enumerating large cubes (no per-port work).
class ResolveCounter {
public:
  explicit ResolveCounter(const LinkDiagram& d) {
    const auto& t = d.tangle();
    if (t.width_bottom() != 0)
      throw std::invalid_argument("ResolveCounter: diagram not closed");
    int segs = 0;
    for (const auto& s : t.slices()) segs += (s.kind != SliceKind::Cap) ? 1 : 0;
    parent_.resize(segs + 1);
    int maxw = 0;
    for (int l = 0; l < t.levels(); ++l) maxw = std::max(maxw, t.width_at(l));
    frontier_.resize(maxw + 2);
    prog_ = t.slices();
  }

  int count(uint64_t state) {
    int nseg = 0, w = 0, circles = 0, ci = 0;
    for (const auto& s : prog_) {
      int p = s.pos - 1;
      switch (s.kind) {
        case SliceKind::Cup: {
          for (int x = w + 1; x > p + 1; --x) frontier_[x] = frontier_[x - 2];
          parent_[nseg] = nseg;
          frontier_[p] = frontier_[p + 1] = nseg++;
          w += 2;
          break;
        }
        case SliceKind::Cap: {
          int a = find(frontier_[p]), b = find(frontier_[p + 1]);
          if (a == b) ++circles; else parent_[std::max(a, b)] = std::min(a, b);
          for (int x = p; x < w - 2; ++x) frontier_[x] = frontier_[x + 2];
          w -= 2;
          break;
        }
        default: {
          bool one = (state >> ci++) & 1;
          bool vertical = (s.kind == SliceKind::PosX) ? !one : one;
          if (!vertical) {
            int a = find(frontier_[p]), b = find(frontier_[p + 1]);
            if (a == b) ++circles; else parent_[std::max(a, b)] = std::min(a, b);
            parent_[nseg] = nseg;
            frontier_[p] = frontier_[p + 1] = nseg++;
          }
          break;
        }
      }
    }
    return circles;
  }

private:
  std::vector<Slice> prog_;
  std::vector<int32_t> parent_;
  std::vector<int32_t> frontier_;
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
};

}  // namespace khtail
