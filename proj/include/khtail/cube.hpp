// The cube of resolutions, materialized one q-degree at a time when asked.
// Generators are (state, decoration) pairs; edge maps are the Khovanov
// merge/split maps with the lexicographic sign rule: the edge flipping
// crossing c carries (-1)^{number of 1-bits below c}.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "khtail/complex.hpp"
#include "khtail/diagram.hpp"

namespace khtail {

struct CubeOptions {
  std::optional<std::set<long long>> q_filter;  // normalized q-degrees to materialize
  size_t max_block_generators = size_t(1) << 22;
  bool check_d2 = true;
};

namespace detail {

inline int popcount64(uint64_t x) { return __builtin_popcountll(x); }

// next bitmask with the same popcount (Gosper); masks enumerated ascending
inline uint64_t next_combination(uint64_t v) {
  uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctzll(v) + 1));
}

struct BlockKey {
  int i;
  long long j;
  bool operator<(const BlockKey& o) const {
    return j != o.j ? j < o.j : i < o.i;
  }
};

}  // namespace detail

// A cube complex remembers its diagram and per-generator provenance so chain
// maps between related cubes can be materialized.
struct CubeComplex {
  ChainComplex cx;
  const LinkDiagram* diagram = nullptr;

  const QBlock* block(long long j) const {
    auto it = cx.blocks.find(j);
    return it == cx.blocks.end() ? nullptr : &it->second;
  }
  // generator index within (i, j), or -1
  int find_gen(int i, long long j, uint64_t state, uint64_t dec) const {
    const QBlock* b = block(j);
    if (!b) return -1;
    int t = i - b->i_min;
    if (t < 0 || t >= b->degrees()) return -1;
    const auto& tags = b->tags[t];
    GeneratorTag probe{state, dec};
    auto cmp = [](const GeneratorTag& a, const GeneratorTag& b2) {
      return a.state != b2.state ? a.state < b2.state : a.dec < b2.dec;
    };
    auto it = std::lower_bound(tags.begin(), tags.end(), probe, cmp);
    if (it == tags.end() || it->state != state || it->dec != dec) return -1;
    return static_cast<int>(it - tags.begin());
  }
};

namespace detail {

struct LocalCircles {
  // circles of the resolution at the four ports of a crossing
  int32_t ids[4];
  int distinct;
};

inline LocalCircles local_circles(const LinkDiagram& d, const Resolution& r, int c) {
  int l = d.crossing_slice_indices()[c];
  int p = d.tangle().slices()[l].pos;
  LocalCircles lc;
  lc.ids[0] = r.circle_of_port[d.tangle().port(l, p)];
  lc.ids[1] = r.circle_of_port[d.tangle().port(l, p + 1)];
  lc.ids[2] = r.circle_of_port[d.tangle().port(l + 1, p)];
  lc.ids[3] = r.circle_of_port[d.tangle().port(l + 1, p + 1)];
  std::set<int32_t> s(lc.ids, lc.ids + 4);
  lc.distinct = static_cast<int>(s.size());
  return lc;
}

}  // namespace detail

// Build the cube. With a q-filter only those normalized q-degrees are
// materialized (mandatory for cabled diagrams); per-block generator counts
// above the configured limit abort with resource_limit_error.
inline CubeComplex build_cube(const LinkDiagram& d, const CubeOptions& opts = {}) {
  const int chi = d.crossings();
  if (chi > 26)
    throw resource_limit_error("cube: state enumeration needs <= 26 crossings");
  if (!opts.q_filter && chi > 24)
    throw resource_limit_error("cube: unfiltered cube needs <= 24 crossings");
  const int nminus = d.n_minus();
  const long long nshift = d.n_shift();

  std::map<detail::BlockKey, std::vector<GeneratorTag>> gens;
  ResolveCounter counter(d);
  const uint64_t nstates = uint64_t(1) << chi;
  for (uint64_t s = 0; s < nstates; ++s) {
    int r = detail::popcount64(s);
    int c = counter.count(s);
    int i = r - nminus;
    if (c >= 62) throw resource_limit_error("cube: too many circles in a state");
    auto push_all = [&](long long j, int vplus) {
      if (vplus < 0 || vplus > c) return;
      auto& v = gens[{i, j}];
      const uint64_t last =
          (vplus == 0) ? 0 : ((uint64_t(1) << vplus) - 1) << (c - vplus);
      uint64_t m = (vplus == 0) ? 0 : ((uint64_t(1) << vplus) - 1);
      while (true) {
        v.push_back({s, m});
        if (v.size() > opts.max_block_generators)
          throw resource_limit_error("cube: q-block generator limit exceeded");
        if (m == last) break;
        m = detail::next_combination(m);
      }
    };
    if (opts.q_filter) {
      for (long long j : *opts.q_filter) {
        long long diff = j - nshift - r + c;  // = 2 * vplus
        if (diff < 0 || diff % 2) continue;
        push_all(j, static_cast<int>(diff / 2));
      }
    } else {
      for (int vplus = 0; vplus <= c; ++vplus)
        push_all(r + 2 * vplus - c + nshift, vplus);
    }
  }

  // resolutions for every state that owns a generator
  std::unordered_map<uint64_t, Resolution> res;
  for (auto& [k, v] : gens)
    for (auto& g : v)
      if (!res.count(g.state)) {
        res.emplace(g.state, resolve(d, g.state));
        if (res.size() > (size_t(1) << 21))
          throw resource_limit_error("cube: resolution cache limit exceeded");
      }

  CubeComplex out;
  out.diagram = &d;
  out.cx.n_plus = d.n_plus();
  out.cx.n_minus = d.n_minus();

  // assemble blocks per q-degree
  std::map<long long, std::pair<int, int>> irange;
  for (auto& [k, v] : gens) {
    auto it = irange.find(k.j);
    if (it == irange.end())
      irange[k.j] = {k.i, k.i};
    else {
      it->second.first = std::min(it->second.first, k.i);
      it->second.second = std::max(it->second.second, k.i);
    }
  }
  for (auto& [j, rng] : irange) {
    QBlock b;
    b.i_min = rng.first;
    int n = rng.second - rng.first + 1;
    b.dims.assign(n, 0);
    b.tags.assign(n, {});
    for (int t = 0; t < n; ++t) {
      auto it = gens.find({rng.first + t, j});
      if (it != gens.end()) {
        b.tags[t] = std::move(it->second);
        b.dims[t] = static_cast<int>(b.tags[t].size());
      }
    }
    b.d.assign(std::max(0, n - 1), {});
    out.cx.blocks.emplace(j, std::move(b));
  }

  // differentials
  for (auto& [j, b] : out.cx.blocks) {
    for (int t = 0; t + 1 < b.degrees(); ++t) {
      SparseIntMatrix& m = b.d[t];
      m.init(b.dims[t + 1], b.dims[t]);
      const auto& src = b.tags[t];
      for (int gidx = 0; gidx < static_cast<int>(src.size()); ++gidx) {
        const GeneratorTag& g = src[gidx];
        const Resolution& rs = res.at(g.state);
        for (int c = 0; c < chi; ++c) {
          if ((g.state >> c) & 1) continue;
          uint64_t ts = g.state | (uint64_t(1) << c);
          auto rt_it = res.find(ts);
          if (rt_it == res.end()) continue;  // target owns no generators anywhere
          const Resolution& rt = rt_it->second;
          int64_t sign = (detail::popcount64(g.state & ((uint64_t(1) << c) - 1)) & 1)
                             ? -1
                             : 1;
          auto lc_s = detail::local_circles(d, rs, c);
          auto lc_t = detail::local_circles(d, rt, c);
          // transport decorations of circles untouched by this crossing
          auto emit = [&](uint64_t tdec) {
            int row = -1;
            // binary search in target tags
            const auto& tt = b.tags[t + 1];
            GeneratorTag probe{ts, tdec};
            auto cmp = [](const GeneratorTag& a, const GeneratorTag& b2) {
              return a.state != b2.state ? a.state < b2.state : a.dec < b2.dec;
            };
            auto it2 = std::lower_bound(tt.begin(), tt.end(), probe, cmp);
            if (it2 != tt.end() && it2->state == ts && it2->dec == tdec)
              row = static_cast<int>(it2 - tt.begin());
            if (row >= 0) m.add(row, gidx, sign);
          };
          uint64_t base = 0;
          for (int x = 0; x < rs.circles; ++x) {
            if (x == lc_s.ids[0] || x == lc_s.ids[1] || x == lc_s.ids[2] ||
                x == lc_s.ids[3])
              continue;
            if ((g.dec >> x) & 1) {
              int y = rt.circle_of_port[rs.min_port[x]];
              base |= uint64_t(1) << y;
            }
          }
          if (lc_s.distinct == 2 && lc_t.distinct == 1) {
            // merge
            int A = lc_s.ids[0], B = -1;
            for (int q2 = 1; q2 < 4; ++q2)
              if (lc_s.ids[q2] != A) B = lc_s.ids[q2];
            int D = lc_t.ids[0];
            bool va = (g.dec >> A) & 1, vb = (g.dec >> B) & 1;
            if (va && vb)
              emit(base | (uint64_t(1) << D));
            else if (va != vb)
              emit(base);
            // v- v- -> 0
          } else if (lc_s.distinct == 1 && lc_t.distinct == 2) {
            // split
            int D1 = lc_t.ids[0], D2 = -1;
            for (int q2 = 1; q2 < 4; ++q2)
              if (lc_t.ids[q2] != D1) D2 = lc_t.ids[q2];
            bool va = (g.dec >> lc_s.ids[0]) & 1;
            if (va) {
              emit(base | (uint64_t(1) << D1));
              emit(base | (uint64_t(1) << D2));
            } else {
              emit(base);
            }
          } else {
            throw std::logic_error("cube: adjacent states must merge or split");
          }
        }
      }
      m.sort_entries();
    }
  }
  if (opts.check_d2) out.cx.verify_d2();
  return out;
}

// Resolve one crossing of a diagram into an honest smaller diagram.
// smoothing 0/1 follows the state-bit convention of build_port_graph.
inline LinkDiagram resolve_crossing(const LinkDiagram& d, int crossing, int smoothing) {
  const auto& t = d.tangle();
  int l = d.crossing_slice_indices().at(crossing);
  const Slice& s = t.slices()[l];
  bool vertical = (s.kind == SliceKind::PosX) ? (smoothing == 0) : (smoothing == 1);
  SlicedTangle r(t.width_bottom());
  for (int k = 0; k < static_cast<int>(t.slices().size()); ++k) {
    if (k != l) {
      r.append(t.slices()[k]);
    } else if (!vertical) {
      r.append(SliceKind::Cap, s.pos);
      r.append(SliceKind::Cup, s.pos);
    }
    // vertical smoothing: drop the slice
  }
  return LinkDiagram(std::move(r));
}

// The mapping-cone split of the cube along one crossing. The 1-resolution
// part is a subcomplex (the differential only turns 0-bits into 1-bits), the
// 0-resolution part is the quotient; both are returned re-graded as honest
// complexes of L' and L'' together with the suspension bookkeeping of the
// cofibration. Chain maps are generator-level: a generator of `sub` is the
// identical (state, dec) generator of `total`, likewise for `quotient`.
struct ConeSplit {
  CubeComplex total;
  CubeComplex sub;        // L' side (1-resolution), graded as part of total
  CubeComplex quotient;   // L'' side (0-resolution), graded as part of total
  ConeShifts shifts;
  int crossing = 0;
  // honest diagrams of the two resolutions (for independent cross-checks)
  std::shared_ptr<LinkDiagram> one_side, zero_side;
};

inline ConeSplit cone_split(const LinkDiagram& d, int crossing,
                            const CubeOptions& opts = {}) {
  ConeSplit cs;
  cs.crossing = crossing;
  cs.total = build_cube(d, opts);
  cs.one_side.reset(new LinkDiagram(resolve_crossing(d, crossing, 1)));
  cs.zero_side.reset(new LinkDiagram(resolve_crossing(d, crossing, 0)));
  cs.shifts = cone_shifts_from_counts(d.n_minus(), cs.zero_side->n_minus(),
                                      cs.one_side->n_minus(), d.n_shift(),
                                      cs.zero_side->n_shift(), cs.one_side->n_shift());
  // carve the sub/quotient parts out of the total complex
  auto carve = [&](int bit) {
    CubeComplex part;
    part.diagram = cs.total.diagram;
    part.cx.n_plus = cs.total.cx.n_plus;
    part.cx.n_minus = cs.total.cx.n_minus;
    for (const auto& [j, b] : cs.total.cx.blocks) {
      QBlock nb;
      nb.i_min = b.i_min;
      nb.dims.assign(b.degrees(), 0);
      nb.tags.assign(b.degrees(), {});
      std::vector<std::vector<int>> keep(b.degrees());
      for (int t = 0; t < b.degrees(); ++t) {
        for (int g = 0; g < b.dims[t]; ++g)
          if (((b.tags[t][g].state >> crossing) & 1) == static_cast<uint64_t>(bit)) {
            keep[t].push_back(g);
            nb.tags[t].push_back(b.tags[t][g]);
          }
        nb.dims[t] = static_cast<int>(nb.tags[t].size());
      }
      nb.d.assign(std::max(0, b.degrees() - 1), {});
      for (int t = 0; t + 1 < b.degrees(); ++t) {
        std::vector<int> rowmap(b.dims[t + 1], -1);
        for (int x = 0; x < static_cast<int>(keep[t + 1].size()); ++x)
          rowmap[keep[t + 1][x]] = x;
        nb.d[t].init(nb.dims[t + 1], nb.dims[t]);
        for (int x = 0; x < static_cast<int>(keep[t].size()); ++x)
          for (auto [r, v] : b.d[t].col[keep[t][x]])
            if (rowmap[r] >= 0) nb.d[t].add(rowmap[r], x, v);
        nb.d[t].sort_entries();
      }
      // trim empty leading/trailing degrees
      part.cx.blocks.emplace(j, std::move(nb));
    }
    return part;
  };
  cs.sub = carve(1);
  cs.quotient = carve(0);
  return cs;
}

// ---- chain maps between cubes and induced maps on homology ----

// A chain map between single q-blocks given per-degree matrices
// f[t]: src.dims[t] -> dst degree (t + i_offset). Verifies the chain
// property exactly, then answers whether it induces an iso on F2 homology.
struct BlockChainMap {
  const QBlock* src = nullptr;
  const QBlock* dst = nullptr;
  int i_offset = 0;  // dst degree of src degree i is i + i_offset... in i_min terms
  std::map<int, SparseIntMatrix> f;  // keyed by src degree index t

  const SparseIntMatrix* at(int t) const {
    auto it = f.find(t);
    return it == f.end() ? nullptr : &it->second;
  }
};

inline void mat_apply_f2(const SparseIntMatrix& m, const F2Vec& v, F2Vec& out) {
  std::vector<int32_t> acc;
  for (int32_t c : v)
    for (auto [r, val] : m.col[c])
      if (val & 1) acc.push_back(r);
  std::sort(acc.begin(), acc.end());
  out.clear();
  for (size_t k = 0; k < acc.size();) {
    size_t e = k;
    while (e < acc.size() && acc[e] == acc[k]) ++e;
    if ((e - k) & 1) out.push_back(acc[k]);
    k = e;
  }
}

inline void verify_chain_map(const BlockChainMap& cm) {
  // f d_src = d_dst f, entry-exact over Z
  for (int t = 0; t + 1 < cm.src->degrees(); ++t) {
    const SparseIntMatrix* ft = cm.at(t);
    const SparseIntMatrix* ft1 = cm.at(t + 1);
    int dt = t + (cm.src->i_min - cm.dst->i_min) + cm.i_offset;
    const SparseIntMatrix* dd =
        (dt >= 0 && dt + 1 < cm.dst->degrees()) ? &cm.dst->d[dt] : nullptr;
    int rows = dd ? dd->rows : (ft1 ? ft1->rows : 0);
    for (int c = 0; c < cm.src->dims[t]; ++c) {
      std::vector<int64_t> a(rows, 0), b(rows, 0);
      if (ft1)
        for (auto [r, v] : cm.src->d[t].col[c])
          for (auto [r2, v2] : ft1->col[r]) a.at(r2) += v * v2;
      if (ft && dd)
        for (auto [r, v] : ft->col[c])
          for (auto [r2, v2] : dd->col[r]) b.at(r2) += v * v2;
      for (int r = 0; r < rows; ++r)
        if (a[r] != b[r]) throw std::logic_error("chain map does not commute");
    }
  }
}

// F2 homology dimensions per degree of one q-block
inline std::map<int, int> f2_block_homology(const QBlock& b) {
  std::map<int, int> h;
  int n = b.degrees();
  std::vector<int> rk(n + 1, 0);
  for (int t = 0; t + 1 < n; ++t) rk[t + 1] = f2_rank(b.d[t]);
  for (int t = 0; t < n; ++t) {
    int v = b.dims[t] - rk[t] - rk[t + 1];
    if (v) h[b.i_min + t] = v;
  }
  return h;
}

// Does the chain map induce an isomorphism on F2 homology in every degree?
// src degree (i_min + t) maps to dst degree (i_min_src + t + i_offset).
inline bool induces_f2_iso(const BlockChainMap& cm, std::string* why = nullptr) {
  verify_chain_map(cm);
  const QBlock& A = *cm.src;
  const QBlock& B = *cm.dst;
  auto ha = f2_block_homology(A);
  auto hb = f2_block_homology(B);
  // compare supports first
  for (auto& [i, v] : ha) {
    auto it = hb.find(i + cm.i_offset);
    if ((it == hb.end() ? 0 : it->second) != v) {
      if (why) *why = "rank mismatch at i=" + std::to_string(i);
      return false;
    }
  }
  for (auto& [i, v] : hb) {
    auto it = ha.find(i - cm.i_offset);
    if ((it == ha.end() ? 0 : it->second) != v) {
      if (why) *why = "rank mismatch at dst i=" + std::to_string(i);
      return false;
    }
  }
  // surjectivity on homology: boundaries of B plus f(cycles of A) span cycles of B
  for (int t = 0; t < A.degrees(); ++t) {
    int hdim = 0;
    {
      auto it = ha.find(A.i_min + t);
      if (it != ha.end()) hdim = it->second;
    }
    if (hdim == 0) continue;
    int dt = t + (A.i_min - B.i_min) + cm.i_offset;
    if (dt < 0 || dt >= B.degrees()) {
      if (why) *why = "degree out of range in dst";
      return false;
    }
    F2Eliminator span;
    int brank = 0;
    if (dt >= 1)
      for (int c = 0; c < B.d[dt - 1].cols; ++c) {
        F2Vec col;
        for (auto [r, v] : B.d[dt - 1].col[c])
          if (v & 1) col.push_back(r);
        std::sort(col.begin(), col.end());
        if (span.insert(std::move(col))) ++brank;
      }
    auto cycles = (t + 1 <= A.degrees() - 1) ? f2_kernel(A.d[t])
                                             : [&] {
                                                 std::vector<F2Vec> all;
                                                 for (int c = 0; c < A.dims[t]; ++c)
                                                   all.push_back({c});
                                                 return all;
                                               }();
    const SparseIntMatrix* ft = cm.at(t);
    int img = 0;
    if (ft) {
      F2Vec out;
      for (auto& z : cycles) {
        mat_apply_f2(*ft, z, out);
        if (span.insert(out)) ++img;
      }
    }
    if (img != hdim) {
      if (why)
        *why = "image rank " + std::to_string(img) + " < " + std::to_string(hdim) +
               " at i=" + std::to_string(A.i_min + t);
      return false;
    }
  }
  return true;
}

}  // namespace khtail
