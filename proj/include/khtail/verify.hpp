// Shared verification suites: the known-values corpus, decategorification,
// randomized grading lemmas, engine self-consistency and projector axioms.
// Used by both the CLI `verify` subcommand and the acceptance runner.
#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "khtail/bracket.hpp"
#include "khtail/cube.hpp"
#include "khtail/scan.hpp"
#include "khtail/tangle_ops.hpp"
#include "khtail/tl.hpp"

namespace khtail {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  long long millis = 0;
};

namespace verifydetail {

template <class F>
CheckResult timed(const std::string& name, F&& f) {
  CheckResult r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string detail;
    r.pass = f(detail);
    r.detail = detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
  return r;
}

}  // namespace verifydetail

// torus links, Hopf, trefoils, figure-eight and seeded random braid closures
inline std::vector<std::pair<std::string, LinkDiagram>> standard_corpus() {
  std::vector<std::pair<std::string, LinkDiagram>> v;
  v.push_back({"unknot", trace_closure(BraidWord(1, {}))});
  for (int m = 1; m <= 8; ++m)
    v.push_back({"T(2," + std::to_string(m) + ")", torus_link(2, m)});
  for (int m = 1; m <= 6; ++m)
    v.push_back({"T(3," + std::to_string(m) + ")", torus_link(3, m)});
  v.push_back({"hopf-", trace_closure(BraidWord(2, {-1, -1}))});
  v.push_back({"trefoil-", trace_closure(BraidWord(2, {-1, -1, -1}))});
  v.push_back({"fig8", trace_closure(BraidWord(3, {1, -2, 1, -2}))});
  std::mt19937 rng(20240805);
  for (int x = 0; x < 14; ++x) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<int> letters;
    for (int i = 0; i < 8; ++i) {
      int g = 1 + static_cast<int>(rng() % (n - 1));
      letters.push_back(rng() % 2 ? g : -g);
    }
    std::ostringstream nm;
    nm << "rand8-" << x;
    v.push_back({nm.str(), trace_closure(BraidWord(n, letters))});
  }
  return v;
}

// criterion: unknot and positive Hopf values over both rings
inline CheckResult verify_known_values() {
  return verifydetail::timed("known-values", [&](std::string& detail) {
    LinkDiagram unknot = trace_closure(BraidWord(1, {}));
    LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
    for (Ring ring : {Ring::F2, Ring::Z}) {
      HomologyTable hu = homology(build_cube(unknot).cx, ring);
      if (!(hu.groups.size() == 2 && hu.at(0, -1).rank == 1 &&
            hu.at(0, 1).rank == 1))
        return false;
      HomologyTable hh = homology(build_cube(hopf).cx, ring);
      std::set<long long> qs;
      for (auto& [k, g] : hh.groups) qs.insert(k.second);
      if (qs != std::set<long long>{0, 2, 4, 6}) return false;
    }
    HomologyTable hz = homology(build_cube(hopf).cx, Ring::Z);
    GroupSummary one{1, {}};
    if (!(hz.at(0, 0) == one && hz.at(0, 2) == one && hz.at(2, 4) == one &&
          hz.at(2, 6) == one && hz.groups.size() == 4))
      return false;
    detail = "unknot (0,+-1); Hopf q in {0,2,4,6}, free rank 1 each";
    return true;
  });
}

// criterion: bracket equals the graded Euler characteristic on the corpus
inline CheckResult verify_decategorification() {
  return verifydetail::timed("decategorification", [&](std::string& detail) {
    auto corpus = standard_corpus();
    for (auto& [name, d] : corpus) {
      LaurentPoly chi = euler_characteristic(homology(simplify_scan(d), Ring::F2));
      if (!(bracket(d) == LaurentRational(chi))) {
        detail = "mismatch on " + name;
        return false;
      }
    }
    detail = std::to_string(corpus.size()) + " diagrams";
    return true;
  });
}

// criterion: twist-region normalization linearity and the turnback-pull
// shifts on randomized instances
inline CheckResult verify_grading_lemmas(int instances = 100) {
  return verifydetail::timed("grading-lemmas", [&](std::string& detail) {
    std::mt19937 rng(424243);
    int done = 0;
    while (done < instances) {
      int n = 2 + static_cast<int>(rng() % 4);  // 2..5
      int k = static_cast<int>(rng() % 4);      // 0..3
      // N(D(k)) = k tau + N_Z on a random (n,n)-tangle closure
      {
        int len = static_cast<int>(rng() % 6);
        std::vector<int> letters;
        for (int x = 0; x < len; ++x) {
          int g = 1 + static_cast<int>(rng() % (n - 1));
          letters.push_back(rng() % 2 ? g : -g);
        }
        TwistFamily fam;
        fam.base = trace_closure_tangle(braid_to_tangle(BraidWord(n, letters)));
        fam.slots.push_back({n, 1, n});
        for (int sign : {+1, -1}) {
          auto [tau, eta] = fam.slot_shift(0, sign);
          int nz = fam.build(0, sign).d.n_shift();
          TwistFamily::Built b = fam.build(k, sign);
          if (b.d.n_shift() != k * tau + nz) {
            detail = "normalization not linear in k";
            return false;
          }
          int nm = 0;
          for (auto [b0, e0] : b.slot_layers[0])
            for (int c = b0; c < e0; ++c)
              if (b.d.crossing_sign(c) < 0) ++nm;
          if (nm != k * eta) {
            detail = "eta failure";
            return false;
          }
        }
      }
      // turnback-pull shifts on a random capped tangle
      {
        int kk = 1 + static_cast<int>(rng() % 3);
        int i = 1 + static_cast<int>(rng() % (n - 1));
        SlicedTangle z(n);
        int pre = static_cast<int>(rng() % 4);
        for (int x = 0; x < pre && n >= 2; ++x) {
          int g = 1 + static_cast<int>(rng() % (n - 1));
          z.append(rng() % 2 ? SliceKind::PosX : SliceKind::NegX, g);
        }
        z.append(SliceKind::Cap, 1 + static_cast<int>(rng() % (n - 1)));
        for (int sign : {+1, -1}) {
          CappedTwistPairing c(n, kk, sign, i, z);
          auto [d, p] = c.oriented_pair();
          auto [tau, eta0] = region_shift(d, c.twist_crossings_in_diagram());
          auto [taup, etap] = region_shift(p, c.twist_crossings_in_pulled());
          (void)eta0;
          (void)etap;
          int expect = sign > 0 ? tau / kk + 2 * n : tau / kk + 2 * n - 6;
          if (taup / kk != expect) {
            detail = "turnback-pull shift failed (n=" + std::to_string(n) + ")";
            return false;
          }
        }
      }
      ++done;
    }
    detail = std::to_string(instances) + " randomized instances, zero tolerance";
    return true;
  });
}

// criterion: scan equals cube on the corpus; Reidemeister invariance with no
// grading shift on small diagrams; parity and universal-coefficient checks
inline CheckResult verify_engine_consistency() {
  return verifydetail::timed("engine-consistency", [&](std::string& detail) {
    auto corpus = standard_corpus();
    for (auto& [name, d] : corpus) {
      ChainComplex scan = simplify_scan(d);
      CubeComplex cube = build_cube(d);
      for (Ring ring : {Ring::F2, Ring::Z}) {
        if (!(homology(scan, ring).groups == homology(cube.cx, ring).groups)) {
          detail = "scan/cube mismatch on " + name;
          return false;
        }
      }
      // q-degree parity is constant across each complex
      std::set<long long> parities;
      for (auto& [j, b] : scan.blocks) parities.insert(((j % 2) + 2) % 2);
      if (parities.size() > 1) {
        detail = "q parity broken on " + name;
        return false;
      }
      // universal coefficients: F2 dim = free rank + adjacent torsion count
      HomologyTable hz = homology(scan, Ring::Z);
      HomologyTable hf = homology(scan, Ring::F2);
      for (auto& [k, g] : hf.groups) {
        auto [i, j] = k;
        long long expect = hz.at(i, j).rank +
                           static_cast<long long>(hz.at(i, j).torsion.size()) +
                           static_cast<long long>(hz.at(i + 1, j).torsion.size());
        if (g.rank != expect) {
          detail = "universal coefficients broken on " + name;
          return false;
        }
      }
    }
    // Reidemeister moves on small diagrams
    std::mt19937 rng(777);
    for (int iter = 0; iter < 12; ++iter) {
      int n = 2 + static_cast<int>(rng() % 2);
      int len = 1 + static_cast<int>(rng() % 6);
      std::vector<int> letters;
      for (int x = 0; x < len; ++x) {
        int g = 1 + static_cast<int>(rng() % (n - 1));
        letters.push_back(rng() % 2 ? g : -g);
      }
      LinkDiagram d = trace_closure(BraidWord(n, letters));
      if (d.crossings() > 10) continue;
      auto h0 = homology(simplify_scan(d), Ring::Z).groups;
      const auto& t = d.tangle();
      int level = 1 + static_cast<int>(rng() % (t.levels() - 2));
      int w = t.width_at(level);
      if (w < 1) continue;
      int pos = 1 + static_cast<int>(rng() % w);
      LinkDiagram r1{insert_kink(t, level, pos, rng() % 2)};
      if (!(homology(simplify_scan(r1), Ring::Z).groups == h0)) {
        detail = "R1 shift detected";
        return false;
      }
      if (pos + 1 <= w) {
        LinkDiagram r2{insert_r2(t, level, pos)};
        if (!(homology(simplify_scan(r2), Ring::Z).groups == h0)) {
          detail = "R2 shift detected";
          return false;
        }
      }
    }
    BraidWord b3(3, {1, 2, 1, 1, 2});
    BraidWord b3r = b3;
    if (apply_r3(b3r)) {
      if (!(homology(simplify_scan(trace_closure(b3)), Ring::Z).groups ==
            homology(simplify_scan(trace_closure(b3r)), Ring::Z).groups)) {
        detail = "R3 shift detected";
        return false;
      }
    }
    detail = "scan=cube both rings; R1/R2/R3 invariant; parity; UCT";
    return true;
  });
}

// criterion: projector axioms and idempotency for n <= 5
inline CheckResult verify_projector_axioms() {
  return verifydetail::timed("projector-axioms", [&](std::string& detail) {
    for (int n = 1; n <= 5; ++n) {
      TLElement p = jones_wenzl(n);
      if (!(p.identity_coefficient() == LaurentRational(1))) return false;
      for (int i = 1; i < n; ++i) {
        TLElement ei = TLElement::generator(n, i);
        if (!tl_multiply(p, ei).zero() || !tl_multiply(ei, p).zero()) return false;
      }
      if (!(tl_multiply(p, p) == p)) return false;
    }
    detail = "axioms I-II and idempotency, n <= 5, exact";
    return true;
  });
}

// colored Jones invariance: slot placement and Reidemeister II/III
inline CheckResult verify_colored_jones_invariance() {
  return verifydetail::timed("colored-jones-invariance", [&](std::string& detail) {
    // slot site moved along the component
    LinkDiagram tref = trace_closure(BraidWord(2, {1, 1, 1}));
    ColoredLink L(tref, {2});
    LaurentRational base = colored_jones(L);
    const auto& t = tref.tangle();
    int moved = 0;
    for (int lvl = 1; lvl < t.levels() - 1 && moved < 3; ++lvl) {
      for (int pos = 1; pos <= t.width_at(lvl) && moved < 3; ++pos) {
        CabledColored c = cable(L, SlotPlacement::OnePerComponent,
                                std::vector<std::pair<int, int>>{{lvl, pos}});
        if (!(bracket_with_projectors(c) == base)) {
          detail = "slot move changed the value";
          return false;
        }
        ++moved;
      }
    }
    // Reidemeister II and III on the diagram before cabling
    LinkDiagram tref_r2 = trace_closure(BraidWord(2, {1, 1, 1, 1, -1}));
    if (!(colored_jones(ColoredLink(tref_r2, {2})) == base)) {
      detail = "RII changed the value";
      return false;
    }
    BraidWord w(3, {1, 2, 1});
    BraidWord wr = w;
    apply_r3(wr);
    LinkDiagram dw = trace_closure(w);
    LinkDiagram dwr = trace_closure(wr);
    std::vector<int> cols(dw.components(), 2);
    if (!(colored_jones(ColoredLink(dw, cols)) ==
          colored_jones(ColoredLink(dwr, cols)))) {
      detail = "RIII changed the value";
      return false;
    }
    detail = "slot moves and RII/RIII preserve colored Jones";
    return true;
  });
}

inline std::vector<CheckResult> run_verify_suite(const std::string& which) {
  std::vector<CheckResult> out;
  auto want = [&](const std::string& s) { return which == "all" || which == s; };
  if (want("known-values")) out.push_back(verify_known_values());
  if (want("corpus")) out.push_back(verify_decategorification());
  if (want("gradings")) out.push_back(verify_grading_lemmas());
  if (want("engine")) out.push_back(verify_engine_consistency());
  if (want("projector")) out.push_back(verify_projector_axioms());
  if (want("colored-jones")) out.push_back(verify_colored_jones_invariance());
  if (out.empty()) throw std::invalid_argument("unknown verify suite: " + which);
  return out;
}

}  // namespace khtail
