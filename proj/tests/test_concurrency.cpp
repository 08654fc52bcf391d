#include <future>
#include <vector>

#include "doctest.h"
#include "khtail/bracket.hpp"
#include "khtail/cube.hpp"
#include "khtail/scan.hpp"
#include "khtail/tl.hpp"

using namespace khtail;

TEST_CASE("diagrams and complexes are safe for concurrent use") {
  LinkDiagram d = torus_link(3, 5);
  // shared immutable diagram, concurrent scans, cubes and brackets
  auto worker = [&](int seed) {
    ChainComplex scan = simplify_scan(d);
    HomologyTable h = homology(scan, seed % 2 ? Ring::F2 : Ring::Z);
    LaurentRational b = bracket(d);
    TLElement p = jones_wenzl(3 + seed % 2);  // exercises the shared memo table
    return std::make_tuple(h.total_rank(), b.to_string(),
                           p.identity_coefficient() == LaurentRational(1));
  };
  std::vector<std::future<std::tuple<long long, std::string, bool>>> futs;
  for (int t = 0; t < 4; ++t)
    futs.push_back(std::async(std::launch::async, worker, t));
  std::vector<std::tuple<long long, std::string, bool>> results;
  for (auto& f : futs) results.push_back(f.get());
  for (auto& [rank, poly, idok] : results) {
    CHECK(rank > 0);
    CHECK(poly == std::get<1>(results[0]));
    CHECK(idok);
  }
}
