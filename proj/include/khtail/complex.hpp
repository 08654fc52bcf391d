// Bigraded chain complexes with exact integer differentials, split by
// q-degree, and their homology over F2 or Z. Matrix reduction is sparse
// elimination over F2 and Smith normal form (arbitrary precision) over Z.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "khtail/bigint.hpp"
#include "khtail/grading.hpp"
#include "khtail/laurent.hpp"

namespace khtail {

struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SparseIntMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int32_t, int64_t>>> col;  // (row, coeff), sorted by row

  void init(int r, int c) {
    rows = r;
    cols = c;
    col.assign(c, {});
  }
  void add(int r, int c, int64_t v) {
    if (v) col[c].push_back({r, v});
  }
  void sort_entries() {
    for (auto& c : col) std::sort(c.begin(), c.end());
  }
  size_t nnz() const {
    size_t n = 0;
    for (const auto& c : col) n += c.size();
    return n;
  }
};

// provenance of an unsimplified generator: resolution state + decoration bits
struct GeneratorTag {
  uint64_t state = 0;
  uint64_t dec = 0;
};

// one q-degree of a complex: C_{i_min} -> C_{i_min+1} -> ...
struct QBlock {
  int i_min = 0;
  std::vector<int> dims;                                // per homological degree
  std::vector<SparseIntMatrix> d;                       // d[t]: dims[t] -> dims[t+1]
  std::vector<std::vector<GeneratorTag>> tags;          // optional provenance

  int degrees() const { return static_cast<int>(dims.size()); }
  int dim_at(int i) const {
    int t = i - i_min;
    return (t < 0 || t >= degrees()) ? 0 : dims[t];
  }
};

struct ChainComplex {
  std::map<long long, QBlock> blocks;  // q-degree -> block (normalized gradings)
  int n_plus = 0, n_minus = 0;

  long long total_generators() const {
    long long n = 0;
    for (const auto& [j, b] : blocks)
      for (int d : b.dims) n += d;
    return n;
  }

  // d o d = 0, checked exactly; builders call this on completion
  void verify_d2() const {
    for (const auto& [j, b] : blocks) {
      for (size_t t = 0; t + 1 < b.d.size(); ++t) {
        const auto& d0 = b.d[t];
        const auto& d1 = b.d[t + 1];
        if (d0.rows != d1.cols) throw std::logic_error("d2: shape mismatch");
        std::vector<int64_t> acc(d1.rows);
        for (int c = 0; c < d0.cols; ++c) {
          std::fill(acc.begin(), acc.end(), 0);
          for (auto [r, v] : d0.col[c])
            for (auto [r2, v2] : d1.col[r]) acc[r2] += v * v2;
          for (int64_t a : acc)
            if (a != 0) throw std::logic_error("d^2 != 0");
        }
      }
    }
  }
};

enum class Ring { F2, Z };
inline std::string ring_name(Ring r) { return r == Ring::F2 ? "F2" : "Z"; }

// ---- F2 linear algebra (rows as sorted index vectors) ----

using F2Vec = std::vector<int32_t>;  // sorted support

inline F2Vec f2_add(const F2Vec& a, const F2Vec& b) {
  F2Vec r;
  r.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(r));
  return r;
}

// incremental F2 row space with pivot bookkeeping
class F2Eliminator {
public:
  // reduce v against current pivots; returns the residue
  F2Vec reduce(F2Vec v) const {
    while (!v.empty()) {
      auto it = pivots_.find(v.front());
      if (it == pivots_.end()) break;
      v = f2_add(v, rows_[it->second]);
    }
    return v;
  }
  // insert v into the space; returns true if it enlarged the rank
  bool insert(F2Vec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    pivots_[v.front()] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }
  int rank() const { return static_cast<int>(rows_.size()); }

private:
  std::vector<F2Vec> rows_;
  std::map<int32_t, int> pivots_;
};

inline std::vector<F2Vec> matrix_columns_f2(const SparseIntMatrix& m) {
  std::vector<F2Vec> cols(m.cols);
  for (int c = 0; c < m.cols; ++c) {
    for (auto [r, v] : m.col[c])
      if (v & 1) cols[c].push_back(r);
    std::sort(cols[c].begin(), cols[c].end());
    // cancel duplicate rows mod 2
    F2Vec out;
    for (size_t k = 0; k < cols[c].size();) {
      size_t e = k;
      while (e < cols[c].size() && cols[c][e] == cols[c][k]) ++e;
      if ((e - k) & 1) out.push_back(cols[c][k]);
      k = e;
    }
    cols[c] = std::move(out);
  }
  return cols;
}

inline int f2_rank(const SparseIntMatrix& m) {
  F2Eliminator e;
  for (auto& c : matrix_columns_f2(m)) e.insert(std::move(c));
  return e.rank();
}

// kernel basis of m over F2 (vectors in the column space indexing)
inline std::vector<F2Vec> f2_kernel(const SparseIntMatrix& m) {
  // column-reduce while tracking the combination producing each column
  std::vector<F2Vec> cols = matrix_columns_f2(m);
  std::vector<F2Vec> combo(m.cols);
  for (int c = 0; c < m.cols; ++c) combo[c] = {c};
  std::map<int32_t, int> pivots;  // pivot row -> column index
  std::vector<F2Vec> kernel;
  for (int c = 0; c < m.cols; ++c) {
    while (!cols[c].empty()) {
      auto it = pivots.find(cols[c].front());
      if (it == pivots.end()) break;
      cols[c] = f2_add(cols[c], cols[it->second]);
      combo[c] = f2_add(combo[c], combo[it->second]);
    }
    if (cols[c].empty())
      kernel.push_back(combo[c]);
    else
      pivots[cols[c].front()] = c;
  }
  return kernel;
}

// ---- Smith normal form over Z ----

namespace lindetail {

// dense Smith normal form, used only on the small core left after the
// sparse unit-pivot phase
inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a) {
  int R = static_cast<int>(a.size());
  int C = R ? static_cast<int>(a[0].size()) : 0;
  std::vector<BigInt> factors;
  int top = 0;
  while (true) {
    // find nonzero pivot with minimal magnitude
    int pr = -1, pc = -1;
    BigInt best;
    for (int r = top; r < R; ++r)
      for (int c = top; c < C; ++c) {
        if (a[r][c].is_zero()) continue;
        BigInt mag = a[r][c].abs();
        if (pr < 0 || mag < best) {
          best = mag;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;
    std::swap(a[pr], a[top]);
    for (int r = 0; r < R; ++r) std::swap(a[r][pc], a[r][top]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int r = top + 1; r < R; ++r) {
        if (a[r][top].is_zero()) continue;
        BigInt q = a[r][top] / a[top][top];
        if (!q.is_zero())
          for (int c = top; c < C; ++c) a[r][c] -= q * a[top][c];
        if (!a[r][top].is_zero()) {  // remainder smaller than pivot: swap up
          std::swap(a[r], a[top]);
          clean = false;
        }
      }
      for (int c = top + 1; c < C; ++c) {
        if (a[top][c].is_zero()) continue;
        BigInt q = a[top][c] / a[top][top];
        if (!q.is_zero())
          for (int r = top; r < R; ++r) a[r][c] -= q * a[r][top];
        if (!a[top][c].is_zero()) {
          for (int r = top; r < R; ++r) std::swap(a[r][c], a[r][top]);
          clean = false;
        }
      }
    }
    // enforce divisibility of the remaining block by the pivot
    BigInt p = a[top][top].abs();
    bool divides_all = true;
    for (int r = top + 1; r < R && divides_all; ++r)
      for (int c = top + 1; c < C && divides_all; ++c)
        if (!(a[r][c] % p).is_zero()) {
          for (int cc = top; cc < C; ++cc) a[top][cc] += a[r][cc];
          divides_all = false;
        }
    if (!divides_all) continue;  // redo this pivot
    factors.push_back(p);
    ++top;
    if (top >= R || top >= C) break;
  }
  return factors;
}

}  // namespace lindetail

// Invariant factors of a sparse integer matrix. A sparse phase eliminates
// +-1 pivots chosen by minimal fill (each contributes the factor 1 through a
// unimodular move); whatever core survives goes to dense arbitrary-precision
// Smith normal form.
inline std::vector<BigInt> smith_invariant_factors(const SparseIntMatrix& m) {
  std::vector<std::map<int32_t, int64_t>> rows(m.rows);
  std::vector<std::set<int32_t>> cols(m.cols);
  for (int c = 0; c < m.cols; ++c)
    for (auto [r, v] : m.col[c]) {
      auto& cell = rows[r][c];
      cell += v;
      if (cell == 0)
        rows[r].erase(c);
      else
        cols[c].insert(r);
    }
  for (int c = 0; c < m.cols; ++c)
    for (auto it = cols[c].begin(); it != cols[c].end();)
      it = rows[*it].count(c) ? std::next(it) : cols[c].erase(it);

  std::vector<char> row_dead(m.rows, 0), col_dead(m.cols, 0);
  int unit_pivots = 0;
  const int64_t kLimit = int64_t(1) << 59;
  while (true) {
    int pr = -1, pc = -1;
    long long best_fill = -1;
    for (int r = 0; r < m.rows; ++r) {
      if (row_dead[r]) continue;
      for (auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        long long fill = static_cast<long long>(rows[r].size() - 1) *
                         static_cast<long long>(cols[c].size() - 1);
        if (pr < 0 || fill < best_fill) {
          best_fill = fill;
          pr = r;
          pc = c;
        }
        if (best_fill == 0) break;
      }
      if (best_fill == 0) break;
    }
    if (pr < 0) break;
    int64_t pv = rows[pr][pc];
    std::vector<int32_t> touched(cols[pc].begin(), cols[pc].end());
    for (int32_t r : touched) {
      if (r == pr || row_dead[r]) continue;
      auto itv = rows[r].find(pc);
      if (itv == rows[r].end()) continue;
      int64_t f = itv->second * pv;  // pv^2 = 1
      for (auto& [c, v] : rows[pr]) {
        if (col_dead[c]) continue;
        auto& cell = rows[r][c];
        cell -= f * v;
        if (std::abs(cell) > kLimit)
          throw resource_limit_error("smith: sparse phase overflow");
        if (cell == 0) {
          rows[r].erase(c);
          cols[c].erase(r);
        } else {
          cols[c].insert(r);
        }
      }
    }
    // retire pivot row and column
    for (auto& [c, v] : rows[pr]) cols[c].erase(pr);
    rows[pr].clear();
    row_dead[pr] = 1;
    for (int32_t r : cols[pc]) rows[r].erase(pc);
    cols[pc].clear();
    col_dead[pc] = 1;
    ++unit_pivots;
  }

  // compact the surviving core
  std::vector<int> rmap(m.rows, -1), cmap(m.cols, -1);
  int nr = 0, nc = 0;
  for (int r = 0; r < m.rows; ++r)
    if (!row_dead[r] && !rows[r].empty()) rmap[r] = nr++;
  for (int c = 0; c < m.cols; ++c)
    if (!col_dead[c] && !cols[c].empty()) cmap[c] = nc++;
  std::vector<std::vector<BigInt>> core(nr, std::vector<BigInt>(nc));
  for (int r = 0; r < m.rows; ++r) {
    if (rmap[r] < 0) continue;
    for (auto& [c, v] : rows[r])
      if (cmap[c] >= 0) core[rmap[r]][cmap[c]] = BigInt(v);
  }
  std::vector<BigInt> factors(unit_pivots, BigInt(1));
  for (auto& f : lindetail::dense_smith(std::move(core))) factors.push_back(f);
  return factors;
}

inline int z_rank(const SparseIntMatrix& m) {
  return static_cast<int>(smith_invariant_factors(m).size());
}

// ---- homology tables ----

struct GroupSummary {
  long long rank = 0;                 // free rank (F2: dimension)
  std::vector<std::string> torsion;   // invariant factors > 1 (Z only)
  friend bool operator==(const GroupSummary& a, const GroupSummary& b) {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
};

struct HomologyTable {
  Ring ring = Ring::F2;
  StableOffsets offsets;
  std::map<std::pair<long long, long long>, GroupSummary> groups;  // (i, j)

  bool nonzero_at(long long i, long long j) const {
    auto it = groups.find({i, j});
    return it != groups.end();
  }
  GroupSummary at(long long i, long long j) const {
    auto it = groups.find({i, j});
    return it == groups.end() ? GroupSummary{} : it->second;
  }
  long long total_rank() const {
    long long n = 0;
    for (auto& [k, g] : groups) n += g.rank;
    return n;
  }
  // same groups; gradings of `o` shifted by (di, dj) before comparison
  static bool isomorphic_shifted(const HomologyTable& a, const HomologyTable& o,
                                 long long di, long long dj) {
    if (a.groups.size() != o.groups.size()) return false;
    for (auto& [k, g] : o.groups) {
      auto it = a.groups.find({k.first + di, k.second + dj});
      if (it == a.groups.end() || !(it->second == g)) return false;
    }
    return true;
  }
  std::string to_json() const;
};

inline HomologyTable homology(const ChainComplex& cx, Ring ring,
                              std::optional<std::set<long long>> q_only = {}) {
  HomologyTable table;
  table.ring = ring;
  for (const auto& [j, b] : cx.blocks) {
    if (q_only && !q_only->count(j)) continue;
    int n = b.degrees();
    std::vector<int> ranks(n + 1, 0);  // ranks[t] = rank d_{t-1} into degree t
    std::vector<std::vector<BigInt>> tors(n + 1);
    for (int t = 0; t + 1 < n; ++t) {
      if (ring == Ring::F2) {
        ranks[t + 1] = f2_rank(b.d[t]);
      } else {
        auto f = smith_invariant_factors(b.d[t]);
        ranks[t + 1] = static_cast<int>(f.size());
        for (auto& x : f)
          if (!(x == BigInt(1))) tors[t + 1].push_back(x);
      }
    }
    for (int t = 0; t < n; ++t) {
      long long h = b.dims[t] - ranks[t] - ranks[t + 1];
      GroupSummary g;
      g.rank = h;
      if (ring == Ring::Z)
        for (auto& x : tors[t]) g.torsion.push_back(x.to_string());
      if (g.rank != 0 || !g.torsion.empty())
        table.groups[{b.i_min + t, j}] = g;
    }
  }
  return table;
}

inline LaurentPoly euler_characteristic(const HomologyTable& t) {
  LaurentPoly p;
  for (auto& [k, g] : t.groups) {
    auto [i, j] = k;
    LaurentPoly term = LaurentPoly::monomial(BigInt(g.rank), static_cast<int>(j));
    p += (i % 2) == 0 ? term : -term;
  }
  return p;
}

inline LaurentPoly euler_characteristic(const ChainComplex& cx) {
  LaurentPoly p;
  for (const auto& [j, b] : cx.blocks)
    for (int t = 0; t < b.degrees(); ++t) {
      long long i = b.i_min + t;
      LaurentPoly term = LaurentPoly::monomial(BigInt(b.dims[t]), static_cast<int>(j));
      p += (i % 2) == 0 ? term : -term;
    }
  return p;
}

inline std::string HomologyTable::to_json() const {
  std::ostringstream os;
  os << "{\"ring\":\"" << ring_name(ring) << "\",\"offsets\":{\"h\":" << offsets.h
     << ",\"q\":" << offsets.q << "},\"groups\":[";
  bool first = true;
  for (const auto& [k, g] : groups) {
    if (!first) os << ",";
    first = false;
    os << "{\"i\":" << k.first << ",\"j\":" << k.second << ",\"rank\":" << g.rank
       << ",\"torsion\":[";
    for (size_t t = 0; t < g.torsion.size(); ++t)
      os << (t ? "," : "") << "\"" << g.torsion[t] << "\"";
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace khtail
