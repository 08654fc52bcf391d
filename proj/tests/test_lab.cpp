#include "doctest.h"
#include "khtail/lab.hpp"
#include "khtail/tails.hpp"

using namespace khtail;

namespace {

CabledColored colored_unknot(int n) {
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  return cable(ColoredLink(unknot, {n}), SlotPlacement::OnePerComponent);
}

}  // namespace

TEST_CASE("twist sequence: 2-colored unknot stabilizes with map certificates") {
  CabledColored c = colored_unknot(2);
  for (int sign : {+1, -1}) {
    // lowest (right-handed) resp. highest (left-handed) normalized degree;
    // the single turnback closure of the cable has one circle
    long long j = sign > 0 ? -2 : 2;
    StabilizationReport rep = twist_sequence(c.family, j, sign, 4, true);
    CHECK(rep.predicted == (sign > 0 ? Rational(-1, 4) : Rational(-1, 4)));
    CHECK(rep.observed <= rep.predicted.ceil() + 1);
    CHECK(rep.maps_certified);
    const BlockTable& stable = rep.cells[rep.observed].table;
    CHECK(stable.by_degree.size() == 1);
    CHECK(stable.by_degree.begin()->second.rank == 1);
  }
}

TEST_CASE("twist sequence: 3-colored unknot, both handednesses") {
  CabledColored c = colored_unknot(3);
  for (int sign : {+1, -1}) {
    long long j = sign > 0 ? -3 : 3;
    StabilizationReport rep = twist_sequence(c.family, j, sign, 3, true);
    CHECK(rep.observed <= std::max<long long>(0, rep.predicted.ceil() + 1));
    CHECK(rep.maps_certified);
    // a vacuously empty degree below the minimum is trivially stable
    StabilizationReport low = twist_sequence(c.family, j - 6 * sign, sign, 2, false);
    for (auto& cell : low.cells) CHECK(cell.table.zero());
  }
}

TEST_CASE("turnback acyclicity for n = 2 and n = 3") {
  // Z = (0,2)-tangle: a single cap
  SlicedTangle z2(2);
  z2.append(SliceKind::Cap, 1);
  for (int sign : {+1, -1}) {
    CappedTwistPairing shape(2, 1, sign, 1, z2);
    Verdict v = turnback_acyclicity(shape, 1, 4);
    CHECK(v.pass);
  }
  // n = 3: Z = (1,3)-tangle: cap on strands 1,2
  SlicedTangle z3(3);
  z3.append(SliceKind::Cap, 1);
  for (int i : {1, 2}) {
    CappedTwistPairing shape(3, 1, +1, i, z3);
    Verdict v = turnback_acyclicity(shape, 2, 3);
    CHECK(v.pass);
  }
}

TEST_CASE("straightening braids over a projector") {
  // base: 2-cabled unknot with a slot; braid beta sits above the slot
  auto family_with = [&](std::vector<int> letters) {
    CabledColored c = colored_unknot(2);
    TwistFamily fam = c.family;
    // splice beta right above the slot level
    SlicedTangle t(fam.base.width_bottom());
    const auto& sl = fam.base.slices();
    int lvl = fam.slots[0].level;
    for (int l = 0; l <= static_cast<int>(sl.size()); ++l) {
      if (l == lvl)
        for (int x : letters)
          t.append(x > 0 ? SliceKind::PosX : SliceKind::NegX,
                   fam.slots[0].pos + std::abs(x) - 1);
      if (l < static_cast<int>(sl.size())) t.append(sl[l]);
    }
    TwistFamily out;
    out.base = std::move(t);
    TwistSlot slot = fam.slots[0];
    slot.level = lvl + static_cast<int>(letters.size());
    out.slots.push_back(slot);
    return out;
  };
  TwistFamily plain = colored_unknot(2).family;
  // single positive crossing: beta^- = 0
  Verdict v1 = straighten_check(family_with({1}), plain, 0, -2, 0, +1);
  CHECK(v1.pass);
  // single negative crossing: beta^- = 1
  Verdict v2 = straighten_check(family_with({-1}), plain, 1, -2, 0, +1);
  CHECK(v2.pass);
  // sigma sigma^{-1}: net shift from the two cases composes to -1
  Verdict v3 = straighten_check(family_with({1, -1}), plain, 1, -2, 0, +1);
  CHECK(v3.pass);
}

TEST_CASE("idempotency: P2.P2 on the unknot cable equals a single P2") {
  CabledColored one = colored_unknot(2);
  TwistFamily two = one.family;
  // second slot two levels above the first (the cable is vertical there)
  TwistSlot s2 = two.slots[0];
  s2.level = two.slots[0].level;
  two.slots.push_back(s2);
  Verdict v = idempotency_check(two, one.family, -2, 0, +1);
  CHECK(v.pass);
}

TEST_CASE("hopf-like linking cofibration at n_h = 1") {
  LinkDiagram unknot = trace_closure(BraidWord(1, {}));
  // the meridian makes a positive Hopf link
  SlicedTangle linked = with_meridian(unknot.tangle(), 1, 1, true);
  LinkDiagram dlink{linked};
  CHECK(dlink.components() == 2);
  CHECK(dlink.crossings() == 2);
  CHECK(dlink.n_plus() == 2);
  HomologyTable h = homology(simplify_scan(dlink), Ring::Z);
  CHECK(h.at(0, 0).rank == 1);
  CHECK(h.at(2, 6).rank == 1);

  for (long long j : {0, 2, 4, 6}) {
    LinkingLesReport rep = hopf_linking_les(unknot, 1, 1, j);
    CHECK(rep.shifts_match);
    CHECK(rep.exact_middle);
    CHECK(rep.sides_match);
  }
  // substituting n_h = 1 into the cofibration shifts: (j-1, j, j-5), offset -2
  CHECK_THROWS(hopf_linking_les(unknot, 1, 1, 0, false));
}

TEST_CASE("appendix count c_i = 2n-3") {
  for (int n = 2; n <= 6; ++n) {
    AppendixReport rep = appendix_ci(n);
    CHECK(rep.pass);
    for (int c : rep.counts) CHECK(c == 2 * n - 3);
    CHECK(static_cast<int>(rep.counts.size()) == n - 1);
  }
}

TEST_CASE("unknot tail for j = 0 and j = 2") {
  UnknotTailReport r0 = unknot_tail(0, 3);
  CHECK(r0.column_equal);
  CHECK(r0.tail_identity);
  CHECK(r0.parity_ok);
  CHECK(r0.low_vanishing_ok);
  for (auto& e : r0.entries) {
    CHECK(e.seq_stable);
    if (e.maps_checked) CHECK(e.maps_iso);
  }

  UnknotTailReport r2 = unknot_tail(2, 3);
  CHECK(r2.column_equal);
  CHECK(r2.tail_identity);
  // the tail group of j = 2 is rank 1 in degree 0 (T(2,1) at q = 1)
  CHECK(r2.tail.by_degree.size() == 1);
  CHECK(r2.tail.by_degree.count(0));
  CHECK(r2.tail.by_degree.at(0).rank == 1);
}

TEST_CASE("b-adequate tail at desk scale: Hopf, j = 0") {
  LinkDiagram hopf = trace_closure(BraidWord(2, {1, 1}));
  CHECK(is_b_adequate(hopf));
  BadequateReport rep = badequate_tail(hopf, 0, {1, 2}, 2);
  CHECK(rep.threshold_n == 4);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].s_n0 == 6);
  CHECK(rep.entries[1].s_n0 == 20);
  for (auto& e : rep.entries) {
    CHECK(!e.overflow);
    CHECK(e.top_rank_ok);
    CHECK(e.vanishing_ok);
    // the top block carries exactly one group of rank 1
    long long total = 0;
    for (auto& [i, g] : e.table.by_degree) total += g.rank;
    CHECK(total == 1);
  }
  // odd j rejected; a non-B-adequate diagram rejected
  CHECK_THROWS(badequate_tail(hopf, -1, {1}, 2));
  LinkDiagram kinked = trace_closure(BraidWord(2, {1, 1, -1}));
  CHECK(!is_b_adequate(kinked));
  CHECK_THROWS(badequate_tail(kinked, 0, {1}, 3));
}
