#include "doctest.h"
#include "khtail/cube.hpp"
#include "khtail/grading.hpp"
#include "khtail/lab.hpp"

using namespace khtail;

TEST_CASE("degree formulas") {
  // Hopf all-one, both circles decorated plus: 2 + 2 + 2 = 6
  CHECK(q_degree(2, 2, 0, 2) == 6);
  // crossingless unknot with v-: -1
  CHECK(q_degree(0, 0, 1, 0) == -1);
  // Hopf all-zero, both v-: 0 - 2 + 2 = 0
  CHECK(q_degree(0, 0, 2, 2) == 0);
  CHECK(hom_degree(0, 0) == 0);
  CHECK(hom_degree(2, 0) == 2);
  CHECK(hom_degree(0, 2) == -2);
}

TEST_CASE("cone shift bookkeeping") {
  // sigma_1 closure: resolving the positive crossing, the 1-side loses the
  // crossing and a 1-resolution: b = 0 - 0 - 1
  LinkDiagram d = trace_closure(BraidWord(2, {1}));
  ConeSplit cs = cone_split(d, 0);
  CHECK(cs.shifts.b == -1);
  CHECK(cs.shifts.a == 0);
  // positive Hopf, either crossing: the 0-side keeps an orientation, a = 0
  LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
  for (int c : {0, 1}) {
    ConeSplit ch = cone_split(hopf, c);
    CHECK(ch.shifts.a == 0);
  }
}

TEST_CASE("rozansky grading translation round trips") {
  RozanskyStats st;
  st.n_plus = 8;
  st.n_minus = 16;
  st.crossings = 24;
  st.n_zeta = 4;
  for (long long i : {-3, 0, 5})
    for (long long j : {-7, 0, 11}) {
      RozanskyDegrees r = to_rozansky(i, j, st);
      auto [i2, j2] = from_rozansky(r, st);
      CHECK(i2 == i);
      CHECK(j2 == j);
    }
  // all-one state has no 0-resolutions
  RozanskyDegrees top = to_rozansky(st.n_plus, 0, st);
  CHECK(top.i_r == 0);
  // normalized reduction: j_R = -j - i_R
  CHECK(rozansky_j_from_normalized(0, 5) == -5);
  CHECK(rozansky_vanishing_requires_zero(0, -2, 2));
  CHECK(!rozansky_vanishing_requires_zero(0, -1, 2));
}

TEST_CASE("stabilization bounds grow like j/(2n)") {
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  for (int n : {2, 3}) {
    CabledColored c = cable(ColoredLink(unknot, {n}), SlotPlacement::OnePerComponent);
    for (long long j : {0, 2, 6}) {
      Rational lo = bound_b_plus(c.family, j);
      Rational hi = bound_b_plus(c.family, j + 2 * n);
      CHECK(hi == Rational(lo.num + lo.den, lo.den));  // + 1
      // and very negative j forces the bound at or below zero
      CHECK(bound_b_plus(c.family, -100) <= Rational(0));
      CHECK(bound_b_minus(c.family, 100) <= Rational(0));
    }
  }
}
