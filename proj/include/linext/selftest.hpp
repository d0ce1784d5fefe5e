#pragma once

// Built-in identity suites behind `lextool selftest {quick,full}`.  Every
// check pits one implementation path against an independent one (enumeration
// vs DP, gadget output vs direct ratio arithmetic, volume vs counting).

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "linext/cf.hpp"
#include "linext/corpus.hpp"
#include "linext/counting.hpp"
#include "linext/decide.hpp"
#include "linext/gadgets.hpp"
#include "linext/polytope.hpp"
#include "linext/random_poset.hpp"
#include "linext/volume.hpp"

namespace linext {

namespace selftest_detail {

struct CheckResult {
  std::string name;
  long checked = 0;
  long failed = 0;
  double seconds = 0;
};

class Reporter {
 public:
  explicit Reporter(std::ostream& os) : os_(os) {}

  template <class Body>
  void run(const std::string& name, Body&& body) {
    CheckResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      ++r.failed;
      os_ << "  exception in " << name << ": " << e.what() << "\n";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    os_ << (r.failed == 0 ? "ok   " : "FAIL ") << std::left << std::setw(34) << name
        << std::right << std::setw(8) << r.checked << " checks";
    if (r.failed > 0) os_ << ", " << r.failed << " failures";
    os_ << std::fixed << std::setprecision(2) << "  (" << r.seconds << "s)\n";
    results_.push_back(r);
  }

  bool all_passed() const {
    for (const auto& r : results_) {
      if (r.failed > 0) return false;
    }
    return true;
  }

  long total_checks() const {
    long t = 0;
    for (const auto& r : results_) t += r.checked;
    return t;
  }

 private:
  std::ostream& os_;
  std::vector<CheckResult> results_;
};

inline void tally(CheckResult& r, bool ok) {
  ++r.checked;
  if (!ok) ++r.failed;
}

// A random pinned-count instance with k fixed elements on a fresh poset.
inline CountInstance random_instance(std::mt19937_64& rng, int n, int k, double density) {
  CountInstance inst;
  inst.P = random_poset(n, density, rng());
  std::vector<int> elems(n), vals(n);
  for (int i = 0; i < n; ++i) elems[i] = i, vals[i] = i + 1;
  std::shuffle(elems.begin(), elems.end(), rng);
  std::shuffle(vals.begin(), vals.end(), rng);
  std::vector<int> chosen(vals.begin(), vals.begin() + k + 1);
  std::sort(chosen.begin(), chosen.end());
  const int xslot = static_cast<int>(rng() % (k + 1));
  inst.x = elems[0];
  inst.a = chosen[xslot];
  int e = 1;
  for (int i = 0; i <= k; ++i)
    if (i != xslot) inst.zfixed.emplace_back(elems[e++], chosen[i]);
  return inst;
}

}  // namespace selftest_detail

/// Runs the named identity suites; returns true iff everything passed.
inline bool run_selftest(bool full, std::ostream& os) {
  using selftest_detail::CheckResult;
  using selftest_detail::Reporter;
  using selftest_detail::random_instance;
  using selftest_detail::tally;
  Reporter rep(os);
  os << "selftest (" << (full ? "full" : "quick") << ")\n";

  rep.run("ideal-dp-vs-enumeration", [&](CheckResult& r) {
    const int nmax = full ? 5 : 4;
    for (int n = 0; n <= nmax; ++n)
      for_all_posets(n, [&](const Poset& p) {
        tally(r, count(p) == BigCount(static_cast<long>(enumerate_all(p).size())));
      });
  });

  rep.run("pinned-count-vs-enumeration", [&](CheckResult& r) {
    std::mt19937_64 rng(101);
    const int rounds = full ? 400 : 120;
    for (int t = 0; t < rounds; ++t) {
      const int n = 3 + static_cast<int>(rng() % 5);
      CountInstance inst = random_instance(rng, n, static_cast<int>(rng() % 3), 0.35);
      auto fixes = inst.zfixed;
      fixes.emplace_back(inst.x, inst.a);
      long slow = 0;
      enumerate(inst.P, [&](const LinearExtension& f) {
        for (auto [u, c] : fixes)
          if (f.pos[u] != c) return;
        ++slow;
      });
      tally(r, count_fixed(inst) == slow);
    }
  });

  rep.run("stanley-defect-nonnegative", [&](CheckResult& r) {
    std::mt19937_64 rng(202);
    const int rounds = full ? 600 : 200;
    for (int t = 0; t < rounds; ++t) {
      const int n = 3 + static_cast<int>(rng() % 6);
      CountInstance inst = random_instance(rng, n, static_cast<int>(rng() % 3), 0.3);
      tally(r, stanley_defect(inst) >= 0);
    }
  });

  rep.run("padding-preserves-counts", [&](CheckResult& r) {
    std::mt19937_64 rng(303);
    const int rounds = full ? 300 : 100;
    for (int t = 0; t < rounds; ++t) {
      CountInstance inst = random_instance(rng, 4 + static_cast<int>(rng() % 3),
                                           static_cast<int>(rng() % 2), 0.4);
      CountInstance padded = pad_fixed(inst, inst.k() + 1 + static_cast<int>(rng() % 2));
      tally(r, count_fixed(inst) == count_fixed(padded));
    }
  });

  rep.run("bounding-preserves-counts", [&](CheckResult& r) {
    std::mt19937_64 rng(404);
    const int rounds = full ? 300 : 100;
    for (int t = 0; t < rounds; ++t) {
      CountInstance inst = random_instance(rng, 4 + static_cast<int>(rng() % 3),
                                           static_cast<int>(rng() % 2), 0.4);
      CountInstance bounded = ensure_bounded(inst);
      tally(r, count_fixed(inst) == count_fixed(bounded));
    }
  });

  rep.run("flat-to-stanley-m-identities", [&](CheckResult& r) {
    std::mt19937_64 rng(505);
    const int rounds = full ? 120 : 40;
    for (int t = 0; t < rounds;) {
      CountInstance base = random_instance(rng, 4 + static_cast<int>(rng() % 3), 0, 0.4);
      CountInstance inst = ensure_bounded(base);
      if (inst.a < 2 || inst.a + 1 > inst.P.size()) continue;
      if (inst.x == inst.P.size() - 2 || inst.x == inst.P.size() - 1) continue;
      ++t;
      CountInstance out = flat_to_stanley(inst);
      MTriple m = m_counts(inst);
      const BigCount nb = count_fixed(out);
      const BigCount nhi = count_fixed(out.with_a(out.a + 1));
      const BigCount nlo = count_fixed(out.with_a(out.a - 1));
      tally(r, nb == m.m1 + m.m2 + 2 * m.m3);
      tally(r, nhi == 2 * m.m2 + 2 * m.m3);
      tally(r, nlo == 2 * m.m1 + 2 * m.m3);
      tally(r, nb * nb - nhi * nlo == (m.m1 - m.m2) * (m.m1 - m.m2));
      tally(r, (stanley_defect(out) == 0) == flat_check(inst));
    }
  });

  rep.run("series-gadget-products", [&](CheckResult& r) {
    std::mt19937_64 rng(606);
    const int rounds = full ? 150 : 50;
    for (int t = 0; t < rounds; ++t) {
      Poset P = random_poset(3 + static_cast<int>(rng() % 3), 0.4, rng());
      Poset Q = random_poset(3 + static_cast<int>(rng() % 3), 0.4, rng());
      const int x = lowest_bit(P.minimals()), y = lowest_bit(Q.minimals());
      GadgetOutput g = crle_to_flat(P, x, Q, y);
      const int c = static_cast<int>(g.params.at("c"));
      CountInstance inst;
      inst.P = g.P;
      inst.x = g.mark("z");
      inst.a = c;
      tally(r, count_fixed(inst) == count(P.without(x)) * count(Q));
      tally(r, count_fixed(inst.with_a(c + 1)) == count(P) * count(Q.without(y)));
      tally(r, flat_check(inst) == (rho(P, x) == rho(Q, y)));
    }
  });

  rep.run("mediant-ratio-formula", [&](CheckResult& r) {
    std::mt19937_64 rng(707);
    const int rounds = full ? 150 : 50;
    for (int t = 0; t < rounds; ++t) {
      Poset P = random_poset(2 + static_cast<int>(rng() % 4), 0.4, rng());
      Poset Q = random_poset(2 + static_cast<int>(rng() % 4), 0.4, rng());
      const int x = lowest_bit(P.minimals()), y = lowest_bit(Q.minimals());
      GadgetOutput g = mediant_gadget(P, x, Q, y);
      Ratio want = Ratio(P.size()) + Ratio(1) / (Ratio(1) + rho(Q, y) / rho(P, x));
      want.canonicalize();
      tally(r, rho(g.P, g.mark("z")) == want);
    }
  });

  rep.run("increment-and-reciprocal", [&](CheckResult& r) {
    std::mt19937_64 rng(808);
    const int rounds = full ? 200 : 70;
    for (int t = 0; t < rounds; ++t) {
      Poset P = random_poset(2 + static_cast<int>(rng() % 5), 0.4, rng());
      const int x = lowest_bit(P.minimals());
      GadgetOutput inc = plus_one(P, x);
      Ratio winc = Ratio(1) + rho(P, x);
      winc.canonicalize();
      tally(r, rho(inc.P, inc.mark("y")) == winc);
      GadgetOutput rec = reciprocal_plus_one(P, x);
      Ratio wrec = Ratio(1) + Ratio(1) / rho(P, x);
      wrec.canonicalize();
      tally(r, rho(rec.P, rec.mark("y")) == wrec);
    }
  });

  rep.run("quad-pairing-biconditional", [&](CheckResult& r) {
    std::mt19937_64 rng(909);
    const int rounds = full ? 80 : 25;
    for (int t = 0; t < rounds; ++t) {
      Poset ps[4];
      int xs[4];
      for (int i = 0; i < 4; ++i) {
        ps[i] = random_poset(2 + static_cast<int>(rng() % 3), 0.4, rng());
        xs[i] = lowest_bit(ps[i].minimals());
      }
      auto [l, rgt] = quad_to_crle(ps[0], xs[0], ps[1], xs[1], ps[2], xs[2], ps[3], xs[3]);
      const bool lhs = rho(ps[0], xs[0]) * rho(ps[1], xs[1]) ==
                       rho(ps[2], xs[2]) * rho(ps[3], xs[3]);
      tally(r, (rho(l.P, l.mark("x")) == rho(rgt.P, rgt.mark("y"))) == lhs);
    }
  });

  rep.run("cf-poset-ratio", [&](CheckResult& r) {
    const int smax = full ? 8 : 6;
    std::vector<long> qs;
    auto sweep = [&](auto&& self, long remaining, bool first) -> void {
      if (!qs.empty()) {
        if (!(qs.size() > 1 && qs.back() == 1)) {  // canonical tails only
          GadgetOutput g = cf_poset(qs);
          std::vector<BigCount> big(qs.begin(), qs.end());
          tally(r, rho(g.P, g.mark("x")) == cf_value(big));
          tally(r, g.P.width() <= 2);
        }
      }
      for (long a = 1; a <= remaining; ++a) {
        if (first && a < 1) continue;
        qs.push_back(a);
        self(self, remaining - a, false);
        qs.pop_back();
      }
    };
    sweep(sweep, smax, true);
  });

  rep.run("cf-round-trip", [&](CheckResult& r) {
    const int lim = full ? 200 : 80;
    for (int p = 1; p <= lim; ++p)
      for (int q = 1; q <= lim; ++q) {
        Ratio want(p, q);
        want.canonicalize();
        tally(r, cf_expand(p, q).value() == want);
      }
  });

  rep.run("quotient-sum-statistics", [&](CheckResult& r) {
    tally(r, yao_knuth_mean(10) == Ratio(53, 10));
    const long n = full ? 20000 : 1000;
    const double mean = yao_knuth_mean(n).get_d();
    const double target = (6.0 / (M_PI * M_PI)) * std::pow(std::log(static_cast<double>(n)), 2);
    tally(r, mean > 0.4 * target && mean < 2.5 * target);
    tally(r, quotient_sum_tail_fraction(n) <= 0.45);
  });

  rep.run("good-m-bounds", [&](CheckResult& r) {
    std::mt19937_64 rng(1111);
    const int rounds = full ? 60 : 20;
    for (int t = 0; t < rounds;) {
      const long B = 2 + static_cast<long>(rng() % 5000);
      const long A = B + 1 + static_cast<long>(rng() % (B - 1));
      BigCount g;
      BigCount Ab(A), Bb(B);
      mpz_gcd(g.get_mpz_t(), Ab.get_mpz_t(), Bb.get_mpz_t());
      if (g != 1) continue;
      ++t;
      GoodM gm = find_good_m_with_slack(Ab, Bb, rng());
      const double bA = gm.slack * 2 * std::pow(std::log(static_cast<double>(A)), 2);
      const double bB = gm.slack * 2 * std::pow(std::log(static_cast<double>(B)), 2);
      tally(r, quotient_sum(gm.m, Ab).get_d() <= bA);
      tally(r, quotient_sum(gm.m, Bb).get_d() <= bB);
      tally(r, gm.m >= 1 && gm.m <= Bb);
    }
  });

  rep.run("polytope-volume-vs-count", [&](CheckResult& r) {
    const int nmax = full ? 4 : 3;
    for (int n = 1; n <= nmax; ++n)
      for (const Poset& p : unlabeled_posets(n)) {
        BigCount fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        Ratio want(count(p), fact);
        want.canonicalize();
        tally(r, volume(vertices(order_polytope(p)), n).value == want);
        tally(r, volume(vertices(chain_polytope(p)), n).value == want);
      }
  });

  rep.run("slice-tu", [&](CheckResult& r) {
    std::mt19937_64 rng(1313);
    const int rounds = full ? 60 : 20;
    for (int t = 0; t < rounds; ++t) {
      const int n = 3 + static_cast<int>(rng() % 3);
      Poset p = random_poset(n, 0.4, rng());
      const int z = static_cast<int>(rng() % n);
      for (const auto& s : slices(p, {z}))
        tally(r, is_totally_unimodular(s.active_matrix(), 5));
    }
  });

  rep.run("mixed-volume-vs-count", [&](CheckResult& r) {
    for (int n = 2; n <= 3; ++n)
      for (const Poset& p : unlabeled_posets(n))
        for (int z = 0; z < n; ++z)
          for (int c = 1; c <= n; ++c) {
            StaPolResult sp = verify_sta_pol(p, {z}, {c});
            tally(r, sp.equal);
          }
  });

  rep.run("af-defect-vs-stanley", [&](CheckResult& r) {
    std::mt19937_64 rng(1515);
    const int rounds = full ? 25 : 8;
    for (int t = 0; t < rounds; ++t) {
      const int n = 3 + static_cast<int>(rng() % 2);
      Poset p = random_poset(n, 0.4, rng());
      const int x = static_cast<int>(rng() % n);
      const int a = 2 + static_cast<int>(rng() % (n - 2 > 0 ? n - 2 : 1));
      const auto sl = slices(p, {x});
      VertexPolytope s0 = vertices(sl[0]), s1 = vertices(sl[1]);
      if (s0.verts.empty() || s1.verts.empty()) continue;
      std::vector<std::pair<VertexPolytope, int>> qs;
      if (a - 2 > 0) qs.emplace_back(s0, a - 2);
      if (n - a - 1 > 0) qs.emplace_back(s1, n - a - 1);
      Ratio delta = af_defect(s0, s1, qs, n);
      CountInstance inst;
      inst.P = p;
      inst.x = x;
      inst.a = a;
      tally(r, delta >= 0);
      tally(r, (delta == 0) == (stanley_defect(inst) == 0));
    }
  });

  rep.run("k1-decider-vs-brute", [&](CheckResult& r) {
    std::mt19937_64 rng(1717);
    const int rounds = full ? 400 : 120;
    for (int t = 0; t < rounds; ++t) {
      const int n = 3 + static_cast<int>(rng() % 5);
      Poset p = random_poset(n, 0.3, rng());
      const int z = static_cast<int>(rng() % n);
      int x = static_cast<int>(rng() % n);
      if (x == z) x = (x + 1) % n;
      const int c = 1 + static_cast<int>(rng() % n);
      int a = 1 + static_cast<int>(rng() % n);
      if (a == c) a = a % n + 1;
      if (a == c) continue;
      CountInstance inst;
      inst.P = p;
      inst.zfixed = {{z, c}};
      inst.x = x;
      inst.a = a;
      tally(r, esta1_decide(p, z, c, x, a).equal == esta_bruteforce(inst).equal);
    }
  });

  rep.run("witness-biconditional", [&](CheckResult& r) {
    std::mt19937_64 rng(1919);
    const int rounds = full ? 12 : 4;
    for (int t = 0; t < rounds; ++t) {
      const int n = 2 + static_cast<int>(rng() % 3);
      Poset p = random_poset(n, 0.4, rng());
      const int x = lowest_bit(p.minimals());
      Ratio exact = rho(p, x);
      VerInstance yes{p, x, exact.get_num(), exact.get_den()};
      if (exact > 1) {
        WitnessResult w = hardness_witness(yes, rng());
        tally(r, esta_bruteforce(w.instance).equal);
      }
      // perturbed target, keeping the ratio in (1, n]
      Ratio off = exact + Ratio(1, 7);
      off.canonicalize();
      if (off > 1 && off <= n && off != exact) {
        VerInstance no{p, x, off.get_num(), off.get_den()};
        WitnessResult w = hardness_witness(no, rng());
        tally(r, !esta_bruteforce(w.instance).equal);
      }
    }
  });

  os << (rep.all_passed() ? "selftest passed" : "selftest FAILED") << " ("
     << rep.total_checks() << " checks)\n";
  return rep.all_passed();
}

}  // namespace linext
