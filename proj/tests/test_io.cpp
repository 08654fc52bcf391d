#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "khtail/cache.hpp"
#include "khtail/cube.hpp"
#include "khtail/io.hpp"
#include "khtail/scan.hpp"

using namespace khtail;

TEST_CASE("slice list and braid shorthand parse") {
  LinkDiagram u = diagram_from_text("# comment\ncup 1\ncap 1\n");
  CHECK(u.components() == 1);
  CHECK(u.crossings() == 0);

  LinkDiagram hopf = diagram_from_text("B2:1,1");
  CHECK(hopf.crossings() == 2);
  CHECK(hopf.components() == 2);

  LinkDiagram empty_braid = diagram_from_text("B3:");
  CHECK(empty_braid.components() == 3);

  // orientation header flips component signs
  LinkDiagram rev = diagram_from_text("orient -1,1\ncup 1\ncup 1\nx+ 2\nx+ 2\ncap 1\ncap 1\n");
  CHECK(rev.crossings() == 2);

  CHECK_THROWS(diagram_from_text(""));
  CHECK_THROWS(diagram_from_text("xx 1"));
  CHECK_THROWS(diagram_from_text("cap 1"));
}

TEST_CASE("canonical text round trip") {
  LinkDiagram d = diagram_from_text("B3:1,-2,1,-2");
  std::string text = diagram_to_text(d.tangle());
  LinkDiagram d2 = diagram_from_text(text);
  CHECK(d2.crossings() == d.crossings());
  CHECK(homology(simplify_scan(d2), Ring::Z).groups ==
        homology(simplify_scan(d), Ring::Z).groups);
}

TEST_CASE("PD import reproduces knots") {
  // figure eight traced from the closure of s1 s2^-1 s1 s2^-1
  LinkDiagram f = diagram_from_text("PD X[4,2,5,1] X[2,7,3,8] X[8,6,1,5] X[6,3,7,4]");
  CHECK(f.crossings() == 4);
  CHECK(f.components() == 1);
  LinkDiagram braid_f = diagram_from_text("B3:1,-2,1,-2");
  CHECK(homology(simplify_scan(f), Ring::Z).groups ==
        homology(simplify_scan(braid_f), Ring::Z).groups);

  // right trefoil traced from the closure of s1^3: pins the ccw convention
  LinkDiagram t = diagram_from_text("PD X[4,2,5,1] X[2,6,3,5] X[6,4,1,3]");
  CHECK(t.crossings() == 3);
  CHECK(t.components() == 1);
  auto ht = homology(simplify_scan(t), Ring::F2).groups;
  auto right = homology(simplify_scan(diagram_from_text("B2:1,1,1")), Ring::F2).groups;
  CHECK(ht == right);

  // the knot-atlas 3_1 code gives the other chirality
  LinkDiagram t2 = diagram_from_text("PD X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  auto left = homology(simplify_scan(diagram_from_text("B2:-1,-1,-1")), Ring::F2).groups;
  CHECK(homology(simplify_scan(t2), Ring::F2).groups == left);

  // Hopf link PD
  LinkDiagram h = diagram_from_text("PD X[1,3,2,4] X[3,1,4,2]");
  CHECK(h.components() == 2);
  CHECK(h.crossings() == 2);

  CHECK_THROWS(diagram_from_text("PD X[1,2,3,4]"));
}

TEST_CASE("cache stores, reloads, and detects corruption") {
  std::string dir = "cache_test_dir";
  std::filesystem::remove_all(dir);
  ResultCache cache(dir);
  std::string key = ResultCache::make_key("cup 1\ncap 1\n", "ring=z");
  CHECK(!cache.load(key).has_value());
  cache.store(key, "{\"x\":1}");
  auto hit = cache.load(key);
  REQUIRE(hit.has_value());
  CHECK(*hit == "{\"x\":1}");
  // corrupt the payload: checksum must reject it
  {
    std::ofstream out(dir + "/" + key + ".json", std::ios::trunc);
    out << "#checksum 0000000000000000\n{\"x\":2}";
  }
  CHECK(!cache.load(key).has_value());
  // same inputs, same key; different params, different key
  CHECK(ResultCache::make_key("cup 1\ncap 1\n", "ring=z") == key);
  CHECK(ResultCache::make_key("cup 1\ncap 1\n", "ring=f2") != key);
  std::filesystem::remove_all(dir);
}
