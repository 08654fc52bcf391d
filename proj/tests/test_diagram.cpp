#include <random>

#include "doctest.h"
#include "khtail/braid.hpp"
#include "khtail/diagram.hpp"

using namespace khtail;

TEST_CASE("widths and validation") {
  SlicedTangle t(2);
  t.append(SliceKind::PosX, 1);
  t.append(SliceKind::Cap, 1);
  CHECK(t.width_top() == 0);
  CHECK_THROWS(t.append(SliceKind::Cap, 1));
  SlicedTangle u(0);
  u.append(SliceKind::Cup, 1);
  u.append(SliceKind::Cup, 2);
  CHECK(u.width_top() == 4);
}

TEST_CASE("closure component counts follow the braid permutation") {
  // sigma_1 in B2: one component
  CHECK(trace_closure(BraidWord(2, {1})).components() == 1);
  // sigma_1^2: Hopf link, two components
  CHECK(trace_closure(BraidWord(2, {1, 1})).components() == 2);
  // empty word in B1: crossingless unknot
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  CHECK(unknot.components() == 1);
  CHECK(unknot.crossings() == 0);
  // identity braid closure: n circles
  CHECK(trace_closure(BraidWord(4, {})).components() == 4);
  // T(3,2) = (s1 s2)^2 closure: gcd-driven component count
  CHECK(torus_link(3, 2).components() == 1);
  CHECK(torus_link(3, 3).components() == 3);
  CHECK(torus_link(3, 4).components() == 1);
}

TEST_CASE("torus braid word shapes") {
  BraidWord b = torus_braid(2, 1);
  CHECK(b.letters == std::vector<int>{1, 1});
  CHECK(torus_braid(1, 5).letters.empty());
  BraidWord f = torus_braid_fractional(3, 2);
  CHECK(f.letters == std::vector<int>{1, 2, 1, 2});
  CHECK(torus_braid_rational(2, 1, 1).letters.size() == 2);
  CHECK_THROWS(torus_braid_rational(3, 1, 2));  // 3/2 fractional twists
  // round trip braid -> tangle -> braid
  BraidWord w(4, {1, -2, 3, 3, -1});
  CHECK(tangle_to_braid(braid_to_tangle(w)).letters == w.letters);
  CHECK(tangle_to_braid(braid_to_tangle(w)).strands == 4);
}

TEST_CASE("crossing signs") {
  // positive Hopf: both crossings positive with braid orientation
  LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
  CHECK(hopf.n_plus() == 2);
  CHECK(hopf.n_minus() == 0);
  CHECK(hopf.n_shift() == 2);
  // reversing one component flips both signs
  LinkDiagram rev = hopf.with_component_reversed(0);
  CHECK(rev.n_plus() == 0);
  CHECK(rev.n_minus() == 2);
  // sigma_1 sigma_1^{-1} closure: one positive, one negative
  LinkDiagram rtwo = trace_closure(BraidWord(2, {1, -1}));
  CHECK(rtwo.n_plus() == 1);
  CHECK(rtwo.n_minus() == 1);
  // negative trefoil
  LinkDiagram ltref = trace_closure(BraidWord(2, {-1, -1, -1}));
  CHECK(ltref.n_minus() == 3);
}

TEST_CASE("resolve circles and the union-find oracle agree") {
  LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
  CHECK(resolve(hopf, 0b00).circles == 2);
  CHECK(resolve(hopf, 0b11).circles == 2);
  CHECK(resolve(hopf, 0b01).circles == 1);
  CHECK(resolve(hopf, 0b10).circles == 1);

  std::mt19937 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    int len = 1 + static_cast<int>(rng() % 8);
    std::vector<int> letters;
    for (int i = 0; i < len; ++i) {
      int g = 1 + static_cast<int>(rng() % (n - 1));
      letters.push_back(rng() % 2 ? g : -g);
    }
    LinkDiagram d = trace_closure(BraidWord(n, letters));
    ResolveCounter fast(d);
    for (int s = 0; s < (1 << len); ++s) {
      CHECK(resolve(d, s).circles == fast.count(s));
    }
  }
}

TEST_CASE("canonical orientation leaves the first strand upward") {
  LinkDiagram d = trace_closure(BraidWord(3, {1, 2}));
  // the lowest-leftmost port of each component travels up
  for (int c = 0; c < d.components(); ++c) {
    int rep = -1;
    for (int k = 0; k < d.tangle().total_ports() && rep < 0; ++k)
      if (d.component_of_port(k) == c) rep = k;
    CHECK(d.dir_up(rep) == 1);
  }
}
