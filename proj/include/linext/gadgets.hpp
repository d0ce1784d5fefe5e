#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linext/counting.hpp"
#include "linext/errors.hpp"
#include "linext/poset.hpp"

namespace linext {

/// A constructed poset together with its designated elements and parameters,
/// so compositions never rely on positional label conventions.
struct GadgetOutput {
  Poset P;
  std::map<std::string, int> marks;   // role name -> element label
  std::map<std::string, long> params; // role name -> value
  std::string provenance;

  int mark(const std::string& role) const {
    auto it = marks.find(role);
    if (it == marks.end()) throw precondition_violated("missing gadget mark: " + role);
    P.check_label(it->second);
    return it->second;
  }
};

namespace detail {

inline void require_minimal(const Poset& p, int x, const char* what) {
  p.check_label(x);
  if (!p.is_minimal(x)) throw precondition_violated(std::string(what) + ": element not minimal");
}

}  // namespace detail

/// Adds (k - k') isolated elements pinned past position n, preserving every
/// N value.
inline CountInstance pad_fixed(const CountInstance& inst, int k) {
  inst.validate();
  const int kp = inst.k();
  if (k < kp) throw precondition_violated("pad_fixed: target k below current k");
  const int n = inst.P.size();
  CountInstance out;
  out.P = disjoint_sum(inst.P, Poset::antichain(k - kp));
  out.zfixed = inst.zfixed;
  for (int i = 0; i < k - kp; ++i) out.zfixed.emplace_back(n + i, n + 1 + i);
  out.x = inst.x;
  out.a = inst.a;
  return out;
}

/// Adjoins a global bottom (forced to position 1) and a global top (forced to
/// position n+2); all values shift by +1.  Counts are preserved.
inline CountInstance ensure_bounded(const CountInstance& inst) {
  inst.validate();
  const int n = inst.P.size();
  PosetBuilder b(inst.P, 2);
  const int bot = n, top = n + 1;
  for (int u = 0; u < n; ++u) {
    b.add(bot, u);
    b.add(u, top);
  }
  b.add(bot, top);
  CountInstance out;
  out.P = b.build();
  for (auto [z, c] : inst.zfixed) out.zfixed.emplace_back(z, c + 1);
  out.x = inst.x;
  out.a = inst.a + 1;
  return out;
}

/// The three companion counts at (x, a): extensions of the instance with the
/// element at position a+1 above x (m1), at position a below x after shifting
/// x to a+1 (m2), or incomparable to x (m3).
struct MTriple {
  BigCount m1, m2, m3;
};

inline MTriple m_counts(const CountInstance& inst) {
  inst.validate();
  const int n = inst.P.size();
  MTriple m{0, 0, 0};
  for (int y = 0; y < n; ++y) {
    if (y == inst.x) continue;
    bool pinned = false;
    for (auto [z, c] : inst.zfixed) pinned = pinned || z == y;
    if (pinned) continue;
    auto fixes = inst.zfixed;
    if (inst.P.less(inst.x, y)) {
      fixes.emplace_back(inst.x, inst.a);
      fixes.emplace_back(y, inst.a + 1);
      m.m1 += count_with_fixed(inst.P, fixes);
    } else if (inst.P.less(y, inst.x)) {
      fixes.emplace_back(inst.x, inst.a + 1);
      fixes.emplace_back(y, inst.a);
      m.m2 += count_with_fixed(inst.P, fixes);
    } else {
      fixes.emplace_back(inst.x, inst.a);
      fixes.emplace_back(y, inst.a + 1);
      m.m3 += count_with_fixed(inst.P, fixes);
    }
  }
  return m;
}

/// The P + C3 construction: turns a flatness question at (x, a) into a
/// Stanley equality question at (x, a+2) with two extra fixed elements.
/// Requires a bounded instance (unique global min and max, neither
/// distinguished) and no fixed value in {a-1, a, a+1}.
inline CountInstance flat_to_stanley(const CountInstance& inst) {
  inst.validate();
  const int n = inst.P.size();
  const Mask mins = inst.P.minimals(), maxs = inst.P.maximals();
  if (popcount(mins) != 1 || popcount(maxs) != 1)
    throw precondition_violated("flat_to_stanley: instance not bounded");
  const int bot = lowest_bit(mins), top = lowest_bit(maxs);
  if (bot == inst.x || top == inst.x)
    throw precondition_violated("flat_to_stanley: x must not be the global extreme");
  for (auto [z, c] : inst.zfixed)
    if (c >= inst.a - 1 && c <= inst.a + 1)
      throw precondition_violated("flat_to_stanley: fixed value adjacent to a");
  if (inst.a < 2 || inst.a + 1 > n)
    throw precondition_violated("flat_to_stanley: a out of interior range");

  const int u = n, v = n + 1, w = n + 2;
  PosetBuilder b(inst.P, 3);
  b.add(u, v);
  b.add(v, w);
  CountInstance out;
  out.P = b.build();
  out.x = inst.x;
  out.a = inst.a + 2;  // b := a + 2
  for (auto [z, c] : inst.zfixed)
    if (c < inst.a) out.zfixed.emplace_back(z, c);
  out.zfixed.emplace_back(u, inst.a);
  out.zfixed.emplace_back(w, inst.a + 4);
  for (auto [z, c] : inst.zfixed)
    if (c > inst.a) out.zfixed.emplace_back(z, c + 3);
  out.validate();
  return out;
}

/// The series gadget (P* - x) (+) {z} (+) (Q - y) with the emulation element
/// w: pinning z at c = |P| makes N(R,z,c+1)/N(R,z,c) = rho(P,x)/rho(Q,y).
inline GadgetOutput crle_to_flat(const Poset& P, int x, const Poset& Q, int y) {
  detail::require_minimal(P, x, "crle_to_flat");
  detail::require_minimal(Q, y, "crle_to_flat");
  const int n = P.size(), m = Q.size();
  std::vector<int> pmap, qmap;
  const Poset pd = P.dual().subposet(P.all() & ~bit(x), &pmap);
  const Poset qr = Q.subposet(Q.all() & ~bit(y), &qmap);
  // layout: [P* - x][Q - y][z][w]
  const int off = n - 1;
  const int z = n + m - 2, w = n + m - 1;
  PosetBuilder b(disjoint_sum(pd, qr), 2);
  for (int p = 0; p < n; ++p) {
    if (p == x) continue;
    b.add(pmap[p], z);
    if (P.less(x, p)) b.add(pmap[p], w);
  }
  for (int q = 0; q < m; ++q) {
    if (q == y) continue;
    b.add(z, off + qmap[q]);
    if (Q.less(y, q)) b.add(w, off + qmap[q]);
  }
  GadgetOutput out;
  out.P = b.build();
  out.marks = {{"z", z}, {"w", w}};
  out.params = {{"c", n}};
  out.provenance = "crle_to_flat";
  return out;
}

/// The mediant gadget: adds a tracker element z to the series gadget so that
/// rho(R,z) = |P| + (1 + rho(Q,y)/rho(P,x))^{-1}.
inline GadgetOutput mediant_gadget(const Poset& P, int x, const Poset& Q, int y) {
  detail::require_minimal(P, x, "mediant_gadget");
  detail::require_minimal(Q, y, "mediant_gadget");
  const int m = P.size(), q = Q.size();
  std::vector<int> pmap, qmap;
  const Poset pd = P.dual().subposet(P.all() & ~bit(x), &pmap);
  const Poset qr = Q.subposet(Q.all() & ~bit(y), &qmap);
  // layout: [P* - x][Q - y][v][w][z]
  const int off = m - 1;
  const int v = m + q - 2, w = m + q - 1, z = m + q;
  PosetBuilder b(disjoint_sum(pd, qr), 3);
  for (int p = 0; p < m; ++p) {
    if (p == x) continue;
    b.add(pmap[p], v);
    if (P.less(x, p)) b.add(pmap[p], w);
  }
  for (int t = 0; t < q; ++t) {
    if (t == y) continue;
    b.add(v, off + qmap[t]);
    b.add(z, off + qmap[t]);
    if (Q.less(y, t)) b.add(w, off + qmap[t]);
  }
  b.add(z, v);
  GadgetOutput out;
  out.P = b.build();
  out.marks = {{"z", z}, {"v", v}, {"w", w}};
  out.params = {{"m", m}};
  out.provenance = "mediant_gadget";
  return out;
}

/// Adds z below X - x (incomparable to x); with y = z,
/// rho(Q,y) = 1 + 1/rho(P,x).
inline GadgetOutput reciprocal_plus_one(const Poset& P, int x) {
  detail::require_minimal(P, x, "reciprocal_plus_one");
  const int n = P.size();
  PosetBuilder b(P, 1);
  for (int u = 0; u < n; ++u)
    if (u != x) b.add(n, u);
  GadgetOutput out;
  out.P = b.build();
  out.marks = {{"y", n}, {"x_old", x}};
  out.provenance = "reciprocal_plus_one";
  return out;
}

/// Same underlying poset, designating y = x instead:
/// rho(Q,y) = 1 + rho(P,x).
inline GadgetOutput plus_one(const Poset& P, int x) {
  GadgetOutput out = reciprocal_plus_one(P, x);
  out.marks["y"] = x;
  out.provenance = "plus_one";
  return out;
}

/// Combines the mediant gadget with repeated plus_one so that
/// rho(P,x) = rho(Q,y) iff rho1*rho2 = rho3*rho4.
inline std::pair<GadgetOutput, GadgetOutput> quad_to_crle(const Poset& P1, int x1, const Poset& P2,
                                                          int x2, const Poset& P3, int x3,
                                                          const Poset& P4, int x4) {
  const int n2 = P2.size(), n3 = P3.size();
  GadgetOutput left = mediant_gadget(P3, x3, P1, x1);
  GadgetOutput right = mediant_gadget(P2, x2, P4, x4);
  // equalize the integer parts: the smaller side gets +1 per step
  for (int i = 0; i < n2 - n3; ++i) left = plus_one(left.P, left.mark("z")), left.marks["z"] = left.marks["y"];
  for (int i = 0; i < n3 - n2; ++i) right = plus_one(right.P, right.mark("z")), right.marks["z"] = right.marks["y"];
  left.marks["x"] = left.marks["z"];
  right.marks["y"] = right.marks["z"];
  left.provenance = right.provenance = "quad_to_crle";
  return {std::move(left), std::move(right)};
}

/// Width-two poset with rho(P,x) = [a0; a1, ..., as], built by the
/// reciprocal-then-increment recursion; |X| = sum of the quotients.
inline GadgetOutput cf_poset(const std::vector<long>& quotients) {
  if (quotients.empty()) throw precondition_violated("cf_poset: empty quotient list");
  for (std::size_t i = 0; i < quotients.size(); ++i)
    if (quotients[i] < 1)
      throw precondition_violated("cf_poset: quotients must be positive");
  const long last = quotients.back();
  // base case: C_{a-1} + {x}
  Poset P = disjoint_sum(Poset::chain(static_cast<int>(last) - 1), Poset::antichain(1));
  int x = static_cast<int>(last) - 1;
  for (auto it = quotients.rbegin() + 1; it != quotients.rend(); ++it) {
    GadgetOutput g = reciprocal_plus_one(P, x);
    P = std::move(g.P);
    x = g.marks["y"];
    for (long i = 1; i < *it; ++i) {
      GadgetOutput h = plus_one(P, x);
      P = std::move(h.P);
      x = h.marks["y"];
    }
  }
  GadgetOutput out;
  out.P = std::move(P);
  out.marks = {{"x", x}};
  out.provenance = "cf_poset";
  return out;
}

/// Same construction read through the reciprocal: 1/rho(P,x) = [0; a1,...,as].
inline GadgetOutput cf_poset_reciprocal(const std::vector<long>& quotients) {
  GadgetOutput out = cf_poset(quotients);
  out.provenance = "cf_poset_reciprocal";
  return out;
}

}  // namespace linext
