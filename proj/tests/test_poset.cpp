#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "linext/corpus.hpp"
#include "linext/json_io.hpp"
#include "linext/poset.hpp"
#include "linext/random_poset.hpp"

using namespace linext;

TEST_CASE("constructors and basic queries") {
  Poset c = Poset::chain(4);
  REQUIRE(c.size() == 4);
  REQUIRE(c.less(0, 3));
  REQUIRE_FALSE(c.less(3, 0));
  REQUIRE(c.comparable(1, 2));
  REQUIRE(c.validate());

  Poset a = Poset::antichain(3);
  REQUIRE_FALSE(a.comparable(0, 1));
  REQUIRE(a.minimals() == full_mask(3));
  REQUIRE(a.maximals() == full_mask(3));

  REQUIRE(Poset(0).size() == 0);
  REQUIRE_THROWS_AS(Poset(65), cap_exceeded);
  REQUIRE_THROWS_AS(Poset(-1), cap_exceeded);
}

TEST_CASE("transitive closure is restored incrementally") {
  Poset p = Poset::from_cover_relations(4, {{0, 1}, {2, 3}, {1, 2}});
  REQUIRE(p.less(0, 3));
  REQUIRE(p.less(0, 2));
  REQUIRE(p.less(1, 3));
  REQUIRE(p.validate());
}

TEST_CASE("cycles and bad labels are rejected") {
  REQUIRE_THROWS_AS(Poset::from_cover_relations(2, {{0, 1}, {1, 0}}), cycle_detected);
  REQUIRE_THROWS_AS(Poset::from_cover_relations(3, {{0, 1}, {1, 2}, {2, 0}}), cycle_detected);
  REQUIRE_THROWS_AS(Poset::from_cover_relations(2, {{0, 0}}), cycle_detected);
  REQUIRE_THROWS_AS(Poset::from_cover_relations(2, {{0, 2}}), label_out_of_range);
}

TEST_CASE("dual swaps directions") {
  Poset p = Poset::from_cover_relations(3, {{0, 1}, {0, 2}});
  Poset d = p.dual();
  REQUIRE(d.less(1, 0));
  REQUIRE(d.less(2, 0));
  REQUIRE_FALSE(d.less(0, 1));
  REQUIRE(d.dual() == p);
}

TEST_CASE("subposet relabels compactly") {
  Poset p = Poset::chain(4);
  std::vector<int> map;
  Poset s = p.subposet(bit(0) | bit(2) | bit(3), &map);
  REQUIRE(s.size() == 3);
  REQUIRE(map == std::vector<int>{0, -1, 1, 2});
  REQUIRE(s.less(0, 1));
  REQUIRE(s.less(1, 2));
  REQUIRE(s.validate());

  Poset w = p.without(1);
  REQUIRE(w.size() == 3);
  REQUIRE(w.less(0, 2));
}

TEST_CASE("disjoint and linear sums") {
  Poset p = Poset::chain(2), q = Poset::antichain(2);
  Poset d = disjoint_sum(p, q);
  REQUIRE(d.size() == 4);
  REQUIRE(d.less(0, 1));
  REQUIRE_FALSE(d.comparable(0, 2));
  REQUIRE_FALSE(d.comparable(2, 3));

  Poset l = linear_sum(p, q);
  REQUIRE(l.less(0, 2));
  REQUIRE(l.less(1, 3));
  REQUIRE_FALSE(l.comparable(2, 3));
  REQUIRE(l.validate());
}

TEST_CASE("cover relations come back minimal") {
  Poset p = Poset::chain(4);
  auto covers = p.cover_relations();
  REQUIRE(covers.size() == 3);
  for (auto [u, v] : covers) REQUIRE(v == u + 1);

  // closure input reproduces only the covers
  Poset q = Poset::from_cover_relations(3, {{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(q.cover_relations().size() == 2);
}

TEST_CASE("height and width") {
  REQUIRE(Poset::chain(5).height() == 5);
  REQUIRE(Poset::chain(5).width() == 1);
  REQUIRE(Poset::antichain(5).height() == 1);
  REQUIRE(Poset::antichain(5).width() == 5);

  // width agrees with the exhaustive antichain search on a corpus
  for (int n = 1; n <= 5; ++n)
    for (int s = 0; s < 40; ++s) {
      Poset p = random_poset(n, 0.4, 1000 * n + s);
      REQUIRE(p.width() == p.width_bruteforce());
    }
}

TEST_CASE("topological order respects the relation") {
  Poset p = random_poset(8, 0.5, 7);
  auto order = p.topological_order();
  REQUIRE(order.size() == 8);
  std::vector<int> rank(8);
  for (int i = 0; i < 8; ++i) rank[order[i]] = i;
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v)
      if (p.less(u, v)) REQUIRE(rank[u] < rank[v]);
}

TEST_CASE("builder composes with extra elements") {
  PosetBuilder b(Poset::chain(2), 1);
  b.add(2, 0);
  Poset p = b.build();
  REQUIRE(p.less(2, 1));
  REQUIRE(p.validate());
}

TEST_CASE("json round trip via covers") {
  Poset p = random_poset(6, 0.5, 99);
  Poset q = poset_from_json(poset_to_json(p));
  REQUIRE(p == q);

  // closure applied on load
  auto j = nlohmann::json{{"n", 3}, {"relations", {{0, 1}, {1, 2}}}};
  REQUIRE(poset_from_json(j).less(0, 2));
  REQUIRE_THROWS_AS(poset_from_json(nlohmann::json{{"relations", {{0, 1}}}}),
                    precondition_violated);
}

TEST_CASE("labeled corpus counts") {
  const std::size_t expect[] = {1, 1, 3, 19, 219, 4231};
  for (int n = 0; n <= 5; ++n) REQUIRE(all_posets(n).size() == expect[n]);
  for (const Poset& p : all_posets(4)) REQUIRE(p.validate());
}

TEST_CASE("unlabeled corpus counts") {
  const std::size_t expect[] = {1, 1, 2, 5, 16, 63};
  for (int n = 0; n <= 5; ++n) REQUIRE(unlabeled_posets(n).size() == expect[n]);
  // canonical key is a true isomorphism invariant on a spot check
  Poset p = Poset::from_cover_relations(3, {{0, 1}});
  Poset q = Poset::from_cover_relations(3, {{2, 0}});
  REQUIRE(canonical_key(p) == canonical_key(q));
  REQUIRE(canonical_key(p) != canonical_key(Poset::antichain(3)));
}

TEST_CASE("random poset determinism and extremes") {
  REQUIRE(random_poset(5, 0.0, 1) == Poset::antichain(5));
  REQUIRE(random_poset(5, 1.0, 1) == Poset::chain(5));
  REQUIRE(random_poset(7, 0.35, 42) == random_poset(7, 0.35, 42));
  REQUIRE_FALSE(random_poset(7, 0.35, 42) == random_poset(7, 0.35, 43));
}
