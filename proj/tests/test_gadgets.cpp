#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "linext/cf.hpp"
#include "linext/corpus.hpp"
#include "linext/counting.hpp"
#include "linext/gadgets.hpp"
#include "linext/random_poset.hpp"
#include "oracle.hpp"

using namespace linext;

namespace {

CountInstance random_instance(int n, std::uint64_t seed, int k) {
  std::mt19937_64 rng(seed);
  Poset p = random_poset(n, 0.3 + 0.1 * (seed % 4), rng());
  std::vector<int> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = i;
  std::shuffle(elems.begin(), elems.end(), rng);
  std::vector<int> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = i + 1;
  std::shuffle(vals.begin(), vals.end(), rng);
  vals.resize(k + 1);
  std::sort(vals.begin(), vals.end());
  // x's value drawn from the k+1 shuffled values, the rest pin the z's
  const int xslot = static_cast<int>(rng() % (k + 1));
  CountInstance inst;
  inst.P = p;
  inst.x = elems[0];
  inst.a = vals[xslot];
  int e = 1;
  for (int i = 0; i <= k; ++i)
    if (i != xslot) inst.zfixed.emplace_back(elems[e++], vals[i]);
  inst.validate();
  return inst;
}

std::vector<std::pair<int, int>> all_fixes(const CountInstance& inst, int a) {
  auto fixes = inst.zfixed;
  fixes.emplace_back(inst.x, a);
  return fixes;
}

}  // namespace

TEST_CASE("pad_fixed preserves every N value") {
  for (int s = 0; s < 60; ++s) {
    CountInstance inst = random_instance(3 + s % 4, 500 + s, s % 2);
    CountInstance padded = pad_fixed(inst, inst.k() + 1 + s % 2);
    for (int a = 1; a <= inst.P.size() + 1; ++a) {
      inst.a = a;
      padded.a = a;
      REQUIRE(count_fixed(padded) == count_fixed(inst));
      REQUIRE(count_fixed(padded) == oracle::count_fixed(padded.P, all_fixes(padded, a)));
    }
  }
  // spec examples
  CountInstance base;
  base.P = Poset::chain(2);
  base.x = 0;
  base.a = 1;
  CountInstance two = pad_fixed(base, 2);
  REQUIRE(two.P.size() == 4);
  REQUIRE(two.zfixed == std::vector<std::pair<int, int>>{{2, 3}, {3, 4}});
  REQUIRE(count_fixed(two) == count_fixed(base));
  REQUIRE(pad_fixed(base, 0).P.size() == 2);  // identity pad
  CountInstance a2;
  a2.P = Poset::antichain(2);
  a2.x = 0;
  a2.a = 1;
  REQUIRE(count_fixed(pad_fixed(a2, 1)) == 1);
  REQUIRE_THROWS_AS(pad_fixed(two, 1), precondition_violated);
}

TEST_CASE("ensure_bounded preserves counts and bounds the poset") {
  for (int s = 0; s < 60; ++s) {
    CountInstance inst = random_instance(3 + s % 4, 900 + s, s % 3 == 0 ? 1 : 0);
    CountInstance b = ensure_bounded(inst);
    REQUIRE(popcount(b.P.minimals()) == 1);
    REQUIRE(popcount(b.P.maximals()) == 1);
    for (int a = 1; a <= inst.P.size() + 1; ++a) {
      inst.a = a;
      b.a = a + 1;
      REQUIRE(count_fixed(b) == count_fixed(inst));
    }
  }
  CountInstance tiny;
  tiny.P = Poset::chain(1);
  tiny.x = 0;
  tiny.a = 1;
  CountInstance b = ensure_bounded(tiny);
  REQUIRE(b.P.size() == 3);
  REQUIRE(b.a == 2);
  REQUIRE(count_fixed(b) == 1);
}

namespace {

// companion census: count extensions with f(x) = value
// classified by whether the lower/upper companions are comparable to x.
struct Census {
  BigCount f[3][2][2] = {};  // [value - (b-1)][lc comparable][uc comparable]
};

Census census(const CountInstance& inst) {
  Census out;
  const int b = inst.a;
  std::vector<int> pos_of(inst.P.size(), 0);
  oracle::for_each_extension(inst.P, [&](const std::vector<int>& pos) {
    for (auto [z, c] : inst.zfixed)
      if (pos[z] != c) return;
    const int fx = pos[inst.x];
    if (fx < b - 1 || fx > b + 1) return;
    LinearExtension f;
    f.pos = pos;
    auto [lc, uc] = companions(f, inst.x, b);
    out.f[fx - (b - 1)][inst.P.comparable(lc, inst.x)][inst.P.comparable(uc, inst.x)] += 1;
  });
  return out;
}

}  // namespace

TEST_CASE("flat_to_stanley: M identities, census, and the biconditional") {
  int built = 0;
  for (int s = 0; built < 40 && s < 400; ++s) {
    CountInstance raw = random_instance(3 + s % 3, 1300 + s, s % 2);
    CountInstance inst = ensure_bounded(raw);
    if (inst.a < 2 || inst.a + 1 > inst.P.size()) continue;
    bool adjacent = false;
    for (auto [z, c] : inst.zfixed) adjacent = adjacent || (c >= inst.a - 1 && c <= inst.a + 1);
    if (adjacent) continue;
    ++built;

    MTriple m = m_counts(inst);
    CountInstance out = flat_to_stanley(inst);
    const BigCount nb = count_fixed(out);
    const BigCount nb_hi = count_fixed(out.with_a(out.a + 1));
    const BigCount nb_lo = count_fixed(out.with_a(out.a - 1));
    REQUIRE(nb == m.m1 + m.m2 + 2 * m.m3);
    REQUIRE(nb_hi == 2 * m.m2 + 2 * m.m3);
    REQUIRE(nb_lo == 2 * m.m1 + 2 * m.m3);
    const BigCount defect = nb * nb - nb_hi * nb_lo;
    REQUIRE(defect == (m.m1 - m.m2) * (m.m1 - m.m2));
    REQUIRE((defect == 0) == flat_check(inst));

    // companion census against the M counts, on the output instance at b
    Census cs = census(out);
    REQUIRE(cs.f[1][1][0] == m.m2);  // (b, com, inc)
    REQUIRE(cs.f[1][0][1] == m.m1);  // (b, inc, com)
    REQUIRE(cs.f[1][1][1] == 0);     // (b, com, com)
    REQUIRE(cs.f[1][0][0] == 2 * m.m3);
  }
  REQUIRE(built == 40);
}

TEST_CASE("flat_to_stanley rejects unbounded or colliding inputs") {
  CountInstance inst;
  inst.P = Poset::antichain(3);
  inst.x = 0;
  inst.a = 2;
  REQUIRE_THROWS_AS(flat_to_stanley(inst), precondition_violated);  // unbounded
  CountInstance b = ensure_bounded(inst);
  b.zfixed.emplace_back(1, b.a + 1);
  std::sort(b.zfixed.begin(), b.zfixed.end(),
            [](auto& l, auto& r) { return l.second < r.second; });
  REQUIRE_THROWS_AS(flat_to_stanley(b), precondition_violated);  // adjacent pin
}

TEST_CASE("crle_to_flat product identities") {
  std::mt19937_64 rng(2024);
  for (int s = 0; s < 50; ++s) {
    Poset p = random_poset(2 + s % 5, 0.4, rng());
    Poset q = random_poset(2 + (s / 2) % 5, 0.4, rng());
    const int x = lowest_bit(p.minimals());
    const int y = lowest_bit(q.minimals());
    GadgetOutput g = crle_to_flat(p, x, q, y);
    const int n = p.size();
    REQUIRE(g.P.size() == p.size() + q.size());
    REQUIRE(g.params.at("c") == n);
    const int z = g.mark("z");
    REQUIRE(count_with_fixed(g.P, {{z, n + 1}}) == count(p) * count(q.without(y)));
    REQUIRE(count_with_fixed(g.P, {{z, n}}) == count(p.without(x)) * count(q));
    // flat at c = n iff the two relative counts coincide
    CountInstance fi;
    fi.P = g.P;
    fi.x = z;
    fi.a = n;
    REQUIRE(flat_check(fi) == (rho(p, x) == rho(q, y)));
  }
  // spec examples
  Poset a2 = Poset::antichain(2), c2 = Poset::chain(2);
  GadgetOutput g = crle_to_flat(a2, 0, a2, 0);
  REQUIRE(count_with_fixed(g.P, {{g.mark("z"), 3}}) == 2);
  REQUIRE(count_with_fixed(g.P, {{g.mark("z"), 2}}) == 2);
  GadgetOutput h = crle_to_flat(a2, 0, c2, 0);
  CountInstance fi;
  fi.P = h.P;
  fi.x = h.mark("z");
  fi.a = 2;
  REQUIRE_FALSE(flat_check(fi));
  REQUIRE_THROWS_AS(crle_to_flat(c2, 1, a2, 0), precondition_violated);
}

TEST_CASE("mediant gadget: rho formula and the two sum identities") {
  std::mt19937_64 rng(777);
  for (int s = 0; s < 50; ++s) {
    Poset p = random_poset(2 + s % 5, 0.4, rng());
    Poset q = random_poset(2 + (s / 3) % 5, 0.4, rng());
    const int x = lowest_bit(p.minimals());
    const int y = lowest_bit(q.minimals());
    const int m = p.size();
    GadgetOutput g = mediant_gadget(p, x, q, y);
    REQUIRE(g.P.size() == p.size() + q.size() + 1);
    const int z = g.mark("z");
    REQUIRE(g.P.is_minimal(z));
    Ratio expect = Ratio(m) + 1 / (1 + rho(q, y) / rho(p, x));
    expect.canonicalize();
    REQUIRE(rho(g.P, z) == expect);
    REQUIRE(count(g.P) ==
            m * count(p.without(x)) * count(q) + (m + 1) * count(p) * count(q.without(y)));
    REQUIRE(count(g.P.without(z)) ==
            count(p.without(x)) * count(q) + count(p) * count(q.without(y)));
  }
  Poset a2 = Poset::antichain(2);
  GadgetOutput g = mediant_gadget(a2, 0, a2, 0);
  REQUIRE(rho(g.P, g.mark("z")) == Ratio(5, 2));
  GadgetOutput h = mediant_gadget(a2, 0, Poset::chain(2), 0);
  REQUIRE(rho(h.P, h.mark("z")) == Ratio(8, 3));
}

TEST_CASE("reciprocal_plus_one and plus_one") {
  std::mt19937_64 rng(555);
  for (int s = 0; s < 40; ++s) {
    Poset p = random_poset(2 + s % 6, 0.45, rng());
    const int x = lowest_bit(p.minimals());
    GadgetOutput r = reciprocal_plus_one(p, x);
    REQUIRE(r.P.size() == p.size() + 1);
    Ratio e1 = 1 + 1 / rho(p, x);
    e1.canonicalize();
    REQUIRE(rho(r.P, r.mark("y")) == e1);
    REQUIRE(rho(r.P, r.mark("y")) > 1);
    REQUIRE(rho(r.P, r.mark("y")) <= 2);

    GadgetOutput q = plus_one(p, x);
    Ratio e2 = 1 + rho(p, x);
    e2.canonicalize();
    REQUIRE(rho(q.P, q.mark("y")) == e2);
  }
  // spec examples
  Poset a2 = Poset::antichain(2);
  GadgetOutput r = reciprocal_plus_one(a2, 0);
  REQUIRE(count(r.P) == 3);
  REQUIRE(rho(r.P, r.mark("y")) == Ratio(3, 2));
  GadgetOutput r2 = reciprocal_plus_one(Poset::chain(2), 0);
  REQUIRE(rho(r2.P, r2.mark("y")) == 2);
  GadgetOutput q = plus_one(a2, 0);
  REQUIRE(rho(q.P, q.mark("y")) == 3);
  GadgetOutput q2 = plus_one(Poset::chain(3), 0);
  REQUIRE(rho(q2.P, q2.mark("y")) == 2);
  // iterating t times adds t
  Poset cur = a2;
  int y = 0;
  for (int t = 1; t <= 4; ++t) {
    GadgetOutput g = plus_one(cur, y);
    cur = g.P;
    y = g.mark("y");
    REQUIRE(rho(cur, y) == Ratio(2 + t));
  }
  REQUIRE_THROWS_AS(plus_one(Poset::chain(2), 1), precondition_violated);
}

TEST_CASE("quad_to_crle biconditional and size bounds") {
  std::mt19937_64 rng(31337);
  for (int s = 0; s < 60; ++s) {
    Poset P[4];
    int x[4];
    for (int i = 0; i < 4; ++i) {
      P[i] = random_poset(2 + static_cast<int>(rng() % 4), 0.4, rng());
      x[i] = lowest_bit(P[i].minimals());
    }
    auto [left, right] = quad_to_crle(P[0], x[0], P[1], x[1], P[2], x[2], P[3], x[3]);
    const int mx = std::max(P[1].size(), P[2].size());
    REQUIRE(left.P.size() <= P[0].size() + mx + 1);
    REQUIRE(right.P.size() <= P[3].size() + mx + 1);
    const Ratio lrho = rho(left.P, left.mark("x"));
    const Ratio rrho = rho(right.P, right.mark("y"));
    const bool prod_eq =
        rho(P[0], x[0]) * rho(P[1], x[1]) == rho(P[2], x[2]) * rho(P[3], x[3]);
    REQUIRE((lrho == rrho) == prod_eq);
  }
  // spec examples
  Poset a2 = Poset::antichain(2), a3 = Poset::antichain(3);
  auto [l1, r1] = quad_to_crle(a2, 0, a2, 0, a2, 0, a2, 0);
  REQUIRE(rho(l1.P, l1.mark("x")) == rho(r1.P, r1.mark("y")));
  auto [l2, r2] = quad_to_crle(a3, 0, a2, 0, a2, 0, a2, 0);
  REQUIRE(rho(l2.P, l2.mark("x")) != rho(r2.P, r2.mark("y")));
}

TEST_CASE("cf_poset sweep: width, size, and exact rho") {
  // all positive quotient tuples with sum <= 8 (sum <= 9 runs in acceptance)
  std::vector<std::vector<long>> tuples;
  auto gen = [&](auto&& self, std::vector<long>& cur, long left) -> void {
    if (!cur.empty()) tuples.push_back(cur);
    for (long a = 1; a <= left; ++a) {
      cur.push_back(a);
      self(self, cur, left - a);
      cur.pop_back();
    }
  };
  std::vector<long> cur;
  gen(gen, cur, 8);
  for (const auto& t : tuples) {
    GadgetOutput g = cf_poset(t);
    long total = 0;
    for (long a : t) total += a;
    REQUIRE(g.P.size() == total);
    REQUIRE(g.P.width() <= 2);
    REQUIRE(g.P.is_minimal(g.marks.at("x")));
    std::vector<BigCount> qs(t.begin(), t.end());
    REQUIRE(rho(g.P, g.marks.at("x")) == cf_value(qs));
  }
  // spec examples
  GadgetOutput g3 = cf_poset({3});
  REQUIRE(g3.P.size() == 3);
  REQUIRE(rho(g3.P, g3.marks.at("x")) == 3);
  GadgetOutput g23 = cf_poset({2, 3});
  REQUIRE(g23.P.size() == 5);
  REQUIRE(rho(g23.P, g23.marks.at("x")) == Ratio(7, 3));
  REQUIRE_THROWS_AS(cf_poset({}), precondition_violated);
  REQUIRE_THROWS_AS(cf_poset({2, 0}), precondition_violated);
}

TEST_CASE("cf_poset_reciprocal targets 1/rho") {
  GadgetOutput g = cf_poset_reciprocal({2});
  REQUIRE(rho(g.P, g.marks.at("x")) == 2);
  GadgetOutput h = cf_poset_reciprocal({2, 3});
  REQUIRE(1 / rho(h.P, h.marks.at("x")) == Ratio(3, 7));
  GadgetOutput one = cf_poset_reciprocal({1});
  REQUIRE(one.P.size() == 1);
  REQUIRE(rho(one.P, one.marks.at("x")) == 1);
}

TEST_CASE("composition: quad -> crle -> flat -> stanley") {
  std::mt19937_64 rng(90210);
  for (int s = 0; s < 12; ++s) {
    Poset P[4];
    int x[4];
    for (int i = 0; i < 4; ++i) {
      P[i] = random_poset(2 + static_cast<int>(rng() % 3), 0.4, rng());
      x[i] = lowest_bit(P[i].minimals());
    }
    const bool prod_eq =
        rho(P[0], x[0]) * rho(P[1], x[1]) == rho(P[2], x[2]) * rho(P[3], x[3]);
    auto [left, right] = quad_to_crle(P[0], x[0], P[1], x[1], P[2], x[2], P[3], x[3]);
    GadgetOutput flat = crle_to_flat(left.P, left.mark("x"), right.P, right.mark("y"));
    CountInstance fi;
    fi.P = flat.P;
    fi.x = flat.mark("z");
    fi.a = static_cast<int>(flat.params.at("c"));
    CountInstance st = flat_to_stanley(ensure_bounded(fi));
    REQUIRE(st.k() == 2);
    REQUIRE((stanley_defect(st) == 0) == prod_eq);
  }
}
