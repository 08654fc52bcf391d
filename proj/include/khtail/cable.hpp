// Cabling of colored links, twist-insertion slots, and the diagram families
// D(k) obtained by filling every slot with k full twists of one handedness.
// Slots default to one per component; the per-edge placement used for the
// B-adequate tail puts one twist region on every strand segment between
// crossings (braid-closure diagrams).
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "khtail/braid.hpp"
#include "khtail/diagram.hpp"
#include "khtail/grading.hpp"

namespace khtail {

struct TwistSlot {
  int level = 0;    // slice index of the slotted tangle where twists splice in
  int pos = 1;      // leftmost strand of the slot
  int strands = 1;  // cable width n
};

struct ColoredLink {
  LinkDiagram diagram;
  std::vector<int> colors;  // per component, >= 1

  ColoredLink(LinkDiagram d, std::vector<int> cols)
      : diagram(std::move(d)), colors(std::move(cols)) {
    if (static_cast<int>(colors.size()) != diagram.components())
      throw std::invalid_argument("colored link: one color per component");
    for (int c : colors)
      if (c < 1) throw std::invalid_argument("colored link: colors >= 1");
  }
};

enum class SlotPlacement { OnePerComponent, PerEdge };

// A diagram family D(k): a base tangle with twist slots, materialized by
// splicing k full twists (all of one handedness) into every slot.
struct TwistFamily {
  SlicedTangle base;  // closed; slots read as identity regions at k = 0
  std::vector<TwistSlot> slots;

  struct Built {
    LinkDiagram d{SlicedTangle(0)};
    // per slot, per layer (bottom to top): crossing index range [begin, end)
    std::vector<std::vector<std::pair<int, int>>> slot_layers;
    // slice and crossing indices of every slot's bottom layer: these are the
    // slices added going from k-1 to k, with the remaining slices embedding
    // monotonically
    std::vector<int> new_slices;
    std::vector<int> new_crossings;
  };

  // twists per slot (usually all equal); handedness +1 right, -1 left
  Built build(const std::vector<int>& ks, int handedness) const {
    if (ks.size() != slots.size())
      throw std::invalid_argument("twist family: one twist count per slot");
    for (int k : ks)
      if (k < 0) throw std::invalid_argument("twist family: k >= 0");
    // group slots by level, ordered by position
    std::map<int, std::vector<int>> at_level;
    for (int s = 0; s < static_cast<int>(slots.size()); ++s)
      at_level[slots[s].level].push_back(s);
    for (auto& [lvl, v] : at_level)
      std::sort(v.begin(), v.end(),
                [&](int a, int b) { return slots[a].pos < slots[b].pos; });

    SlicedTangle t(base.width_bottom());
    Built out;
    out.slot_layers.assign(slots.size(), {});
    int crossings = 0;
    auto emit_layers = [&](int s) {
      const TwistSlot& sl = slots[s];
      BraidWord tw = torus_braid(sl.strands, handedness > 0 ? 1 : -1);
      for (int layer = 0; layer < ks[s]; ++layer) {
        if (layer == 0)
          for (size_t x = 0; x < tw.letters.size(); ++x) {
            out.new_slices.push_back(static_cast<int>(t.slices().size()) +
                                     static_cast<int>(x));
            out.new_crossings.push_back(crossings + static_cast<int>(x));
          }
        int begin = crossings;
        for (int l : tw.letters) {
          t.append(l > 0 ? SliceKind::PosX : SliceKind::NegX,
                   sl.pos + std::abs(l) - 1);
          ++crossings;
        }
        out.slot_layers[s].push_back({begin, crossings});
      }
    };
    const auto& sl = base.slices();
    for (int l = 0; l <= static_cast<int>(sl.size()); ++l) {
      auto it = at_level.find(l);
      if (it != at_level.end())
        for (int s : it->second) emit_layers(s);
      if (l < static_cast<int>(sl.size())) {
        if (is_crossing(sl[l].kind)) ++crossings;
        t.append(sl[l]);
      }
    }
    out.d = LinkDiagram(std::move(t));
    return out;
  }

  Built build(int k, int handedness) const {
    return build(std::vector<int>(slots.size(), k), handedness);
  }

  // region shifts of one full twist at one slot (tau = n+ - 2n-, eta = n-),
  // measured on the diagram with a single twist in that slot; independent of
  // the other slots' twisting
  std::pair<int, int> slot_shift(int s, int handedness) const {
    std::vector<int> ks(slots.size(), 0);
    ks[s] = 1;
    Built b = build(ks, handedness);
    auto [begin, end] = b.slot_layers[s][0];
    int np = 0, nm = 0;
    for (int c = begin; c < end; ++c)
      (b.d.crossing_sign(c) > 0 ? np : nm)++;
    return {np - 2 * nm, nm};
  }

  GradingContext context(int handedness) const {
    GradingContext g;
    Built b0 = build(0, handedness);
    g.n_plus = b0.d.n_plus();
    g.n_minus = b0.d.n_minus();
    g.n_d = b0.d.n_shift();
    g.n_z = g.n_d;
    int tau = 0, eta = 0;
    for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
      auto [ts, es] = slot_shift(s, handedness);
      tau += ts;
      eta += es;
    }
    g.tau = tau;
    g.eta = eta;
    return g;
  }

  int total_twist_crossings_per_k() const {
    int m = 0;
    for (const auto& s : slots) m += s.strands * (s.strands - 1);
    return m;
  }
};

// ---- cabling ----

struct CabledColored {
  TwistFamily family;
  std::vector<int> slot_colors;  // n per slot
  int chi = 0;                   // crossings of the base diagram
  int zeta = 0;                  // circles of the base all-one resolution
  int m_slots = 0;
};

namespace cabdetail {

// positions of the cabled strands: prefix widths per level
struct CableLayout {
  const LinkDiagram* base;
  std::vector<int> color_of_port;           // width of each base strand
  std::vector<std::vector<int>> offsets;    // per level: prefix sums

  CableLayout(const LinkDiagram& d, const std::vector<int>& colors) : base(&d) {
    const auto& t = d.tangle();
    color_of_port.resize(t.total_ports());
    for (int k = 0; k < t.total_ports(); ++k)
      color_of_port[k] = colors[d.component_of_port(k)];
    offsets.resize(t.levels());
    for (int l = 0; l < t.levels(); ++l) {
      offsets[l].assign(t.width_at(l) + 1, 0);
      for (int p = 1; p <= t.width_at(l); ++p)
        offsets[l][p] = offsets[l][p - 1] + color_of_port[t.port(l, p)];
    }
  }
  // leftmost cabled position of base strand (l, p): offsets[l][p-1] + 1
  int start(int l, int p) const { return offsets[l][p - 1] + 1; }
  int width(int l, int p) const { return offsets[l][p] - offsets[l][p - 1]; }
};

}  // namespace cabdetail

// Cable every component with its color. The returned family's slots are
// recorded but not yet twisted; D(0) is the plain cabled diagram.
// `component_sites`, when given, picks the slot location per component as a
// (level, pos) port of the base diagram lying on that component.
inline CabledColored cable(const ColoredLink& L, SlotPlacement placement,
                           std::optional<std::vector<std::pair<int, int>>>
                               component_sites = {}) {
  const LinkDiagram& d = L.diagram;
  const auto& t = d.tangle();
  cabdetail::CableLayout lay(d, L.colors);

  CabledColored out;
  out.chi = d.crossings();
  out.zeta = resolve(d, (uint64_t(1) << d.crossings()) - 1).circles;

  SlicedTangle ct(0);
  // map base slice index -> cabled slice index where its block starts
  std::vector<int> block_start(t.slices().size() + 1, 0);
  for (int l = 0; l < static_cast<int>(t.slices().size()); ++l) {
    block_start[l] = static_cast<int>(ct.slices().size());
    const Slice& s = t.slices()[l];
    int q = lay.start(l, s.pos);
    switch (s.kind) {
      case SliceKind::Cup: {
        // n nested cups; the cabled strand count reads off the level above
        int n = lay.width(l + 1, s.pos);
        for (int i = 0; i < n; ++i) ct.append(SliceKind::Cup, q + i);
        break;
      }
      case SliceKind::Cap: {
        int n = lay.width(l, s.pos);
        for (int i = n - 1; i >= 0; --i) ct.append(SliceKind::Cap, q + i);
        break;
      }
      case SliceKind::PosX:
      case SliceKind::NegX: {
        int na = lay.width(l, s.pos);
        int nb = lay.width(l, s.pos + 1);
        // move the left cable through the right one strand at a time
        for (int i = 1; i <= na; ++i)
          for (int j = 0; j < nb; ++j)
            ct.append(s.kind, q + na - i + j);
        break;
      }
    }
  }
  block_start[t.slices().size()] = static_cast<int>(ct.slices().size());

  out.family.base = std::move(ct);
  if (placement == SlotPlacement::OnePerComponent) {
    // default site: the component's lowest-leftmost port
    std::vector<std::pair<int, int>> sites(d.components(), {-1, -1});
    if (component_sites) {
      sites = *component_sites;
      if (static_cast<int>(sites.size()) != d.components())
        throw std::invalid_argument("cable: one site per component");
    } else {
      for (int k = 0; k < t.total_ports(); ++k) {
        int c = d.component_of_port(k);
        if (sites[c].first < 0) {
          // ports are numbered level-major, position-minor
          sites[c] = {t.port_level(k), t.port_pos(k)};
        }
      }
    }
    for (int c = 0; c < d.components(); ++c) {
      auto [lvl, pos] = sites[c];
      if (lvl < 0) throw std::invalid_argument("cable: empty component site");
      if (d.component_of_port(t.port(lvl, pos)) != c)
        throw std::invalid_argument("cable: site not on its component");
      TwistSlot slot;
      slot.level = block_start[lvl];
      slot.pos = lay.start(lvl, pos);
      slot.strands = L.colors[c];
      out.family.slots.push_back(slot);
      out.slot_colors.push_back(L.colors[c]);
    }
  } else {
    // one slot per edge of the 4-valent graph: directly below each crossing's
    // two incoming strands (braid-closure diagrams: exactly one per edge)
    for (int c = 0; c < d.crossings(); ++c) {
      int l = d.crossing_slice_indices()[c];
      int p = t.slices()[l].pos;
      for (int leg : {p, p + 1}) {
        int comp = d.component_of_port(t.port(l, leg));
        TwistSlot slot;
        slot.level = block_start[l];
        slot.pos = lay.start(l, leg);
        slot.strands = L.colors[comp];
        out.family.slots.push_back(slot);
        out.slot_colors.push_back(L.colors[comp]);
      }
    }
    // every component must meet a crossing, otherwise it has no slot
    std::vector<char> touched(d.components(), 0);
    for (int c = 0; c < d.crossings(); ++c) {
      int l = d.crossing_slice_indices()[c];
      touched[d.component_of_port(t.port(l, t.slices()[l].pos))] = 1;
      touched[d.component_of_port(t.port(l, t.slices()[l].pos + 1))] = 1;
    }
    for (char x : touched)
      if (!x) throw std::invalid_argument("per-edge slots: crossingless component");
  }
  out.m_slots = static_cast<int>(out.family.slots.size());
  return out;
}

// honest diagram with k twists in every slot
inline LinkDiagram insert_twists(const CabledColored& c, int k, int handedness) {
  return c.family.build(k, handedness).d;
}

// s(n,k) for a uniformly n-colored cabling: measured normalization shift of
// D(k) plus the crossing and circle counts
inline long long s_shift_measured(const CabledColored& c, int n, int k,
                                  int handedness) {
  TwistFamily::Built b = c.family.build(k, handedness);
  return s_shift(b.d.n_shift(), k, c.m_slots, n, c.chi, c.zeta);
}

// ---- quantum spin networks ----

struct SpinEdge {
  int from = 0, to = 0;  // vertex ids; -1 for a free loop (circle)
  int label = 1;
};

struct SpinNetwork {
  int vertex_count = 0;
  std::vector<SpinEdge> edges;

  // vertex admissibility: triangle inequalities and even total
  bool admissible(std::string* why = nullptr) const {
    std::vector<std::vector<int>> at(vertex_count);
    for (auto& e : edges) {
      if (e.from >= 0) at[e.from].push_back(e.label);
      if (e.to >= 0) at[e.to].push_back(e.label);
      if (e.label < 0) {
        if (why) *why = "negative label";
        return false;
      }
    }
    for (int v = 0; v < vertex_count; ++v) {
      if (at[v].size() != 3) {
        if (why) *why = "vertex " + std::to_string(v) + " is not trivalent";
        return false;
      }
      int a = at[v][0], b = at[v][1], c = at[v][2];
      if ((a + b + c) % 2) {
        if (why) *why = "odd label sum at vertex " + std::to_string(v);
        return false;
      }
      if (a > b + c || b > a + c || c > a + b) {
        if (why) *why = "triangle inequality fails at vertex " + std::to_string(v);
        return false;
      }
    }
    return true;
  }
};

// realize a noncrossing perfect matching as a stack of cups
inline SlicedTangle matching_to_cups(std::vector<int> pair) {
  int w = static_cast<int>(pair.size());
  std::vector<Slice> rev;
  std::vector<int> pts(w);
  for (int i = 0; i < w; ++i) pts[i] = i;
  std::vector<int> cur = pair;
  while (!cur.empty()) {
    int found = -1;
    for (int i = 0; i + 1 < static_cast<int>(cur.size()); ++i)
      if (cur[i] == i + 1) {
        found = i;
        break;
      }
    if (found < 0) throw std::invalid_argument("matching is not planar");
    rev.push_back({SliceKind::Cup, found + 1});
    std::vector<int> next(cur.size() - 2);
    auto np = [&](int x) { return x < found ? x : x - 2; };
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      if (i == found || i == found + 1) continue;
      next[np(i)] = np(cur[i]);
    }
    cur = std::move(next);
  }
  SlicedTangle t(0);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) t.append(*it);
  return t;
}

// Diagram of a spin network with projector slots (one per edge). Supported
// shapes: a single free loop (circle colored n) and theta graphs (two
// vertices joined by three edges).
inline CabledColored spin_network_diagram(const SpinNetwork& g) {
  std::string why;
  if (!g.admissible(&why))
    throw std::invalid_argument("spin network not admissible: " + why);
  CabledColored out;
  if (g.vertex_count == 0 && g.edges.size() == 1 && g.edges[0].from < 0) {
    // circle labelled n: an n-cabled unknot with one slot
    int n = g.edges[0].label;
    SlicedTangle t(0);
    for (int i = 1; i <= n; ++i) t.append(SliceKind::Cup, i);
    for (int i = n; i >= 1; --i) t.append(SliceKind::Cap, i);
    out.family.base = std::move(t);
    out.family.slots.push_back({n, 1, n});  // level after the cups
    out.slot_colors.push_back(n);
    out.chi = 0;
    out.zeta = n;  // cabled circle count; unused by spin evaluation
    out.m_slots = 1;
    return out;
  }
  if (g.vertex_count == 2 && g.edges.size() == 3) {
    int n1 = g.edges[0].label, n2 = g.edges[1].label, n3 = g.edges[2].label;
    int a = (n1 + n2 - n3) / 2;  // arcs between edges 1 and 2
    int b = (n2 + n3 - n1) / 2;  // between 2 and 3
    int c = (n1 + n3 - n2) / 2;  // between 1 and 3, nested around edge 2
    int W = n1 + n2 + n3;
    std::vector<int> match(W, -1);
    auto link = [&](int x, int y) {
      match[x] = y;
      match[y] = x;
    };
    int e1 = 0, e2 = n1, e3 = n1 + n2;  // block offsets
    for (int t2 = 0; t2 < c; ++t2) link(e1 + t2, e3 + n3 - 1 - t2);
    for (int t2 = 0; t2 < a; ++t2) link(e1 + c + t2, e2 + a - 1 - t2);
    for (int t2 = 0; t2 < b; ++t2) link(e2 + a + t2, e3 + b - 1 - t2);
    SlicedTangle bottom = matching_to_cups(match);
    SlicedTangle full(0);
    full.stack(bottom);
    int slot_level = static_cast<int>(full.slices().size());
    full.stack(bottom.flipped());
    out.family.base = std::move(full);
    out.family.slots.push_back({slot_level, e1 + 1, n1});
    out.family.slots.push_back({slot_level, e2 + 1, n2});
    out.family.slots.push_back({slot_level, e3 + 1, n3});
    out.slot_colors = {n1, n2, n3};
    out.chi = 0;
    out.zeta = a + b + c;
    out.m_slots = 3;
    return out;
  }
  throw std::invalid_argument(
      "spin network diagrams supported for circles and theta graphs");
}

}  // namespace khtail
