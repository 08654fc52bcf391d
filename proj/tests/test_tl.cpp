#include <chrono>
#include <random>

#include "doctest.h"
#include "khtail/bracket.hpp"
#include "khtail/cube.hpp"
#include "khtail/scan.hpp"
#include "khtail/tl.hpp"

using namespace khtail;

TEST_CASE("temperley-lieb relations") {
  TLElement e1 = TLElement::generator(2, 1);
  TLElement sq = tl_multiply(e1, e1);
  // e1 e1 = delta e1
  CHECK(sq == LaurentRational(quantum_integer(2)) * e1);

  // e1 e2 e1 = e1 in TL3
  TLElement f1 = TLElement::generator(3, 1);
  TLElement f2 = TLElement::generator(3, 2);
  CHECK(tl_multiply(tl_multiply(f1, f2), f1) == f1);

  // identity acts trivially
  TLElement id3 = TLElement::identity(3);
  CHECK(tl_multiply(id3, f2) == f2);
  CHECK(tl_multiply(f2, id3) == f2);
}

TEST_CASE("jones-wenzl projectors against the axiom oracle") {
  // P1 = identity
  CHECK(jones_wenzl(1) == TLElement::identity(1));

  // oracle for P2: solve axioms I-II directly in TL2: P = 1 + c e1 with
  // P e1 = 0 forces c = -1/[2]
  TLElement p2_expected = TLElement::identity(2) -
                          LaurentRational(LaurentPoly(1), quantum_integer(2)) *
                              TLElement::generator(2, 1);
  CHECK(jones_wenzl(2) == p2_expected);

  // axiom II: identity coefficient 1
  for (int n = 1; n <= 5; ++n)
    CHECK(jones_wenzl(n).identity_coefficient() == LaurentRational(1));

  // axiom I: killed by turnbacks on both sides, n <= 5
  for (int n = 2; n <= 5; ++n) {
    TLElement p = jones_wenzl(n);
    for (int i = 1; i < n; ++i) {
      TLElement ei = TLElement::generator(n, i);
      CHECK(tl_multiply(p, ei).zero());
      CHECK(tl_multiply(ei, p).zero());
    }
  }
}

TEST_CASE("jones-wenzl idempotency for n <= 5 inside the time budget") {
  auto t0 = std::chrono::steady_clock::now();
  for (int n = 1; n <= 5; ++n) {
    TLElement p = jones_wenzl(n);
    CHECK(tl_multiply(p, p) == p);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  CHECK(ms < 10000);
}

TEST_CASE("bracket basics") {
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  CHECK(bracket(unknot) == LaurentRational(quantum_integer(2)));

  LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
  LaurentPoly expect = LaurentPoly(1) + LaurentPoly::q_power(2) +
                       LaurentPoly::q_power(4) + LaurentPoly::q_power(6);
  CHECK(bracket(hopf) == LaurentRational(expect));
}

TEST_CASE("decategorification: bracket equals the Euler characteristic") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    int len = 1 + static_cast<int>(rng() % 7);
    std::vector<int> letters;
    for (int x = 0; x < len; ++x) {
      int g = 1 + static_cast<int>(rng() % (n - 1));
      letters.push_back(rng() % 2 ? g : -g);
    }
    LinkDiagram d = trace_closure(BraidWord(n, letters));
    LaurentPoly chi = euler_characteristic(homology(simplify_scan(d), Ring::F2));
    CHECK(bracket(d) == LaurentRational(chi));
  }
}

TEST_CASE("projector traces") {
  // unknot with a P2 slot evaluates to [3]
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  CabledColored c2 = cable(ColoredLink(unknot, {2}), SlotPlacement::OnePerComponent);
  CHECK(bracket_with_projectors(c2) == LaurentRational(quantum_integer(3)));

  // colored unknot gives quantum dimensions [n+1]
  for (int n = 1; n <= 5; ++n) {
    ColoredLink L(trace_closure(BraidWord(1, {})), {n});
    CHECK(colored_jones(L) == LaurentRational(quantum_integer(n + 1)));
  }

  // all-1 coloring is the plain bracket
  LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
  CHECK(colored_jones(ColoredLink(hopf, {1, 1})) == bracket(hopf));
}

TEST_CASE("spin network evaluation") {
  SpinNetwork circle;
  circle.vertex_count = 0;
  circle.edges = {{-1, -1, 2}};
  CHECK(spin_network_eval(circle) == LaurentRational(quantum_integer(3)));

  // theta(1,1,2) closes the two strands of P2 separately: the Markov trace
  SpinNetwork theta;
  theta.vertex_count = 2;
  theta.edges = {{0, 1, 1}, {0, 1, 1}, {0, 1, 2}};
  CHECK(spin_network_eval(theta) == LaurentRational(quantum_integer(3)));
}

TEST_CASE("series tail: twisted brackets stabilize in the anchored window") {
  // 2-colored unknot, both handednesses
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  CabledColored c = cable(ColoredLink(unknot, {2}), SlotPlacement::OnePerComponent);
  for (int sign : {+1, -1}) {
    SeriesTailReport rep = series_tail_check(c.family, sign, 6, 6);
    CHECK(rep.observed_stable_from() <= 3);
    SeriesTailReport vac = series_tail_check(c.family, sign, 3, 0);
    CHECK(vac.observed_stable_from() == 0);
  }
  // the agreement window widens with k: a 10-exponent window needs larger k
  SeriesTailReport wide = series_tail_check(c.family, +1, 8, 10);
  SeriesTailReport narrow = series_tail_check(c.family, +1, 8, 4);
  CHECK(narrow.observed_stable_from() <= wide.observed_stable_from());
  CHECK(wide.all_stable_past(wide.observed_stable_from()));
}
