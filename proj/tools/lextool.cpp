// lextool: command-line front end over the linext library.
// Exit codes: 0 = decided/true, 1 = decided/false, 2 = error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linext/cf.hpp"
#include "linext/corpus.hpp"
#include "linext/counting.hpp"
#include "linext/decide.hpp"
#include "linext/gadgets.hpp"
#include "linext/json_io.hpp"
#include "linext/polytope.hpp"
#include "linext/random_poset.hpp"
#include "linext/selftest.hpp"
#include "linext/volume.hpp"

using namespace linext;
using nlohmann::json;

namespace {

struct RunConfig {
  std::uint64_t seed = 20240001;
  int cap_n = kDefaultVertexCap;
  int cap_dim = kDefaultDimCap;
  int cap_minor = kDefaultMinorCap;
  std::string input = "-";
  std::string format = "plain";
};

json read_json(const RunConfig& cfg) {
  json j;
  if (cfg.input == "-") {
    std::cin >> j;
  } else {
    std::ifstream in(cfg.input);
    if (!in) throw precondition_violated("cannot open input file: " + cfg.input);
    in >> j;
  }
  return j;
}

Poset read_poset(const RunConfig& cfg) { return poset_from_json(read_json(cfg)); }

// [{"poset": {...}, "x": int}, ...]
std::vector<std::pair<Poset, int>> read_marked(const json& j, std::size_t expect) {
  if (!j.is_array() || j.size() != expect)
    throw precondition_violated("expected a JSON array of " + std::to_string(expect) +
                                " {poset, x} objects");
  std::vector<std::pair<Poset, int>> out;
  for (const auto& e : j)
    out.emplace_back(poset_from_json(e.at("poset")), e.at("x").get<int>());
  return out;
}

std::string frac(const Ratio& r) {
  Ratio c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Ratio parse_frac(const std::string& s) {
  const auto slash = s.find('/');
  Ratio r;
  if (slash == std::string::npos)
    r = Ratio(BigCount(s));
  else
    r = Ratio(BigCount(s.substr(0, slash)), BigCount(s.substr(slash + 1)));
  r.canonicalize();
  return r;
}

json marks_json(const GadgetOutput& g) {
  json j;
  j["poset"] = poset_to_json(g.P);
  j["marks"] = g.marks;
  j["params"] = g.params;
  j["provenance"] = g.provenance;
  return j;
}

VertexPolytope polytope_from_json(const json& j) {
  VertexPolytope vp;
  const auto& verts = j.at("vertices");
  for (const auto& row : verts) {
    std::vector<Ratio> pt;
    for (const auto& v : row) {
      if (v.is_string())
        pt.push_back(parse_frac(v.get<std::string>()));
      else
        pt.push_back(Ratio(v.get<long>()));
    }
    vp.verts.push_back(std::move(pt));
  }
  vp.ambient = vp.verts.empty() ? 0 : static_cast<int>(vp.verts[0].size());
  return vp;
}

json polytope_to_json(const VertexPolytope& vp) {
  json rows = json::array();
  for (const auto& pt : vp.verts) {
    json row = json::array();
    for (const auto& v : pt) row.push_back(frac(v));
    rows.push_back(row);
  }
  return json{{"vertices", rows}};
}

CountInstance read_instance(const RunConfig& cfg, const std::vector<int>& z,
                            const std::vector<int>& c, int x, int a) {
  if (z.size() != c.size()) throw precondition_violated("need matching --z and --c lists");
  CountInstance inst;
  inst.P = read_poset(cfg);
  for (std::size_t i = 0; i < z.size(); ++i) inst.zfixed.emplace_back(z[i], c[i]);
  std::sort(inst.zfixed.begin(), inst.zfixed.end(),
            [](auto& l, auto& r) { return l.second < r.second; });
  inst.x = x;
  inst.a = a;
  inst.validate();
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact linear-extension counting, poset gadgets, and polytope volumes"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "random seed")->envname("LEXTOOL_SEED");
  app.add_option("--cap-n", cfg.cap_n, "vertex enumeration cap")->envname("LEXTOOL_CAP_N");
  app.add_option("--cap-dim", cfg.cap_dim, "volume dimension cap")->envname("LEXTOOL_CAP_DIM");
  app.add_option("--cap-minor", cfg.cap_minor, "TU minor cap")->envname("LEXTOOL_CAP_MINOR");
  app.add_option("--input", cfg.input, "input file, '-' for stdin")->capture_default_str();
  app.add_option("--format", cfg.format, "plain|json")->capture_default_str();

  int exit_code = 0;
  std::vector<int> zlist, clist;
  int x = 0, a = 1, k = 0, n = 0;
  double density = 0.5;
  std::string kmode = "brute", target = "1", level = "quick";
  std::vector<long> quotients;
  std::string num = "0", den = "1";

  // ---- counting ----
  auto* c_count = app.add_subcommand("count", "e(P)");
  c_count->callback([&] { std::cout << count(read_poset(cfg)).get_str() << "\n"; });

  auto* c_cf = app.add_subcommand("count-fixed", "N_{z,c}(P,x,a)");
  c_cf->add_option("--z", zlist, "fixed elements");
  c_cf->add_option("--c", clist, "fixed values");
  c_cf->add_option("--x", x)->required();
  c_cf->add_option("--a", a)->required();
  c_cf->callback([&] {
    std::cout << count_fixed(read_instance(cfg, zlist, clist, x, a)).get_str() << "\n";
  });

  auto* c_rho = app.add_subcommand("rho", "e(P)/e(P-x)");
  c_rho->add_option("--x", x)->required();
  c_rho->callback([&] { std::cout << frac(rho(read_poset(cfg), x)) << "\n"; });

  auto* c_def = app.add_subcommand("defect", "Stanley defect at (z,c,x,a)");
  c_def->add_option("--z", zlist);
  c_def->add_option("--c", clist);
  c_def->add_option("--x", x)->required();
  c_def->add_option("--a", a)->required();
  c_def->callback([&] {
    BigCount d = stanley_defect(read_instance(cfg, zlist, clist, x, a));
    std::cout << d.get_str() << "\n";
    exit_code = d == 0 ? 0 : 1;
  });

  auto* c_flat = app.add_subcommand("flat", "N(a) = N(a+1)?");
  c_flat->add_option("--z", zlist);
  c_flat->add_option("--c", clist);
  c_flat->add_option("--x", x)->required();
  c_flat->add_option("--a", a)->required();
  c_flat->callback([&] {
    bool f = flat_check(read_instance(cfg, zlist, clist, x, a));
    std::cout << (f ? "flat" : "not-flat") << "\n";
    exit_code = f ? 0 : 1;
  });

  // ---- gadgets ----
  auto* g = app.add_subcommand("gadget", "poset transformers");
  g->require_subcommand(1);
  g->fallthrough();

  auto* g_pad = g->add_subcommand("pad", "pad to k fixed elements");
  g_pad->add_option("--z", zlist);
  g_pad->add_option("--c", clist);
  g_pad->add_option("--x", x)->required();
  g_pad->add_option("--a", a)->required();
  g_pad->add_option("--k", k)->required();
  g_pad->callback([&] {
    CountInstance out = pad_fixed(read_instance(cfg, zlist, clist, x, a), k);
    json j{{"poset", poset_to_json(out.P)}, {"zfixed", out.zfixed}, {"x", out.x}, {"a", out.a}};
    std::cout << j.dump(2) << "\n";
  });

  auto* g_bound = g->add_subcommand("bound", "adjoin pinned global bottom/top");
  g_bound->add_option("--z", zlist);
  g_bound->add_option("--c", clist);
  g_bound->add_option("--x", x)->required();
  g_bound->add_option("--a", a)->required();
  g_bound->callback([&] {
    CountInstance out = ensure_bounded(read_instance(cfg, zlist, clist, x, a));
    json j{{"poset", poset_to_json(out.P)}, {"zfixed", out.zfixed}, {"x", out.x}, {"a", out.a}};
    std::cout << j.dump(2) << "\n";
  });

  auto* g_f2s = g->add_subcommand("flat2sta", "flatness to Stanley equality (k+2)");
  g_f2s->add_option("--z", zlist);
  g_f2s->add_option("--c", clist);
  g_f2s->add_option("--x", x)->required();
  g_f2s->add_option("--a", a)->required();
  g_f2s->callback([&] {
    CountInstance out = flat_to_stanley(read_instance(cfg, zlist, clist, x, a));
    json j{{"poset", poset_to_json(out.P)}, {"zfixed", out.zfixed}, {"x", out.x}, {"a", out.a}};
    std::cout << j.dump(2) << "\n";
  });

  auto* g_c2f = g->add_subcommand("crle2flat", "two marked posets -> flatness gadget");
  g_c2f->callback([&] {
    auto ps = read_marked(read_json(cfg), 2);
    GadgetOutput out = crle_to_flat(ps[0].first, ps[0].second, ps[1].first, ps[1].second);
    std::cout << marks_json(out).dump(2) << "\n";
  });

  auto* g_med = g->add_subcommand("mediant", "mediant gadget");
  g_med->callback([&] {
    auto ps = read_marked(read_json(cfg), 2);
    GadgetOutput out = mediant_gadget(ps[0].first, ps[0].second, ps[1].first, ps[1].second);
    std::cout << marks_json(out).dump(2) << "\n";
  });

  auto* g_rec = g->add_subcommand("recip", "rho -> 1 + 1/rho");
  g_rec->add_option("--x", x)->required();
  g_rec->callback([&] {
    std::cout << marks_json(reciprocal_plus_one(read_poset(cfg), x)).dump(2) << "\n";
  });

  auto* g_p1 = g->add_subcommand("plus1", "rho -> 1 + rho");
  g_p1->add_option("--x", x)->required();
  g_p1->callback([&] { std::cout << marks_json(plus_one(read_poset(cfg), x)).dump(2) << "\n"; });

  auto* g_q2c = g->add_subcommand("quad2crle", "four marked posets -> CRLE pair");
  g_q2c->callback([&] {
    auto ps = read_marked(read_json(cfg), 4);
    auto [l, r] = quad_to_crle(ps[0].first, ps[0].second, ps[1].first, ps[1].second,
                               ps[2].first, ps[2].second, ps[3].first, ps[3].second);
    json j{{"P", marks_json(l)}, {"Q", marks_json(r)}};
    std::cout << j.dump(2) << "\n";
  });

  auto* g_cfp = g->add_subcommand("cfposet", "width-2 poset with rho = [a0;a1,...]");
  g_cfp->add_option("--quotients", quotients, "CF quotients")->required();
  g_cfp->callback([&] { std::cout << marks_json(cf_poset(quotients)).dump(2) << "\n"; });

  // ---- continued fractions ----
  auto* cf = app.add_subcommand("cf", "continued-fraction arithmetic");
  cf->require_subcommand(1);
  cf->fallthrough();

  auto* cf_exp = cf->add_subcommand("expand", "Euclidean quotients of num/den");
  cf_exp->add_option("--num", num)->required();
  cf_exp->add_option("--den", den)->required();
  cf_exp->callback([&] {
    auto e = cf_expand(BigCount(num), BigCount(den));
    for (std::size_t i = 0; i < e.quotients.size(); ++i)
      std::cout << (i ? " " : "") << e.quotients[i].get_str();
    std::cout << "\n";
  });

  auto* cf_val = cf->add_subcommand("value", "value of [a0;a1,...]");
  cf_val->add_option("--quotients", quotients)->required();
  cf_val->callback([&] {
    std::vector<BigCount> qs(quotients.begin(), quotients.end());
    std::cout << frac(cf_value(qs)) << "\n";
  });

  auto* cf_qs = cf->add_subcommand("qsum", "S_A(m)");
  cf_qs->add_option("--m", num)->required();
  cf_qs->add_option("--A", den)->required();
  cf_qs->callback(
      [&] { std::cout << quotient_sum(BigCount(num), BigCount(den)).get_str() << "\n"; });

  auto* cf_yk = cf->add_subcommand("yaoknuth", "mean quotient sum at n");
  cf_yk->add_option("--n", n)->required();
  cf_yk->callback([&] { std::cout << frac(yao_knuth_mean(n)) << "\n"; });

  auto* cf_fm = cf->add_subcommand("findm", "good m for the Verification Lemma");
  cf_fm->add_option("--A", num)->required();
  cf_fm->add_option("--B", den)->required();
  cf_fm->callback([&] {
    GoodM gm = find_good_m_with_slack(BigCount(num), BigCount(den), cfg.seed);
    json j{{"m", gm.m.get_str()}, {"slack", gm.slack}, {"samples", gm.samples},
           {"scanned", gm.scanned}};
    std::cout << j.dump(2) << "\n";
  });

  // ---- geometry ----
  auto* poly = app.add_subcommand("poly", "polytopes and volumes");
  poly->require_subcommand(1);
  poly->fallthrough();

  auto* p_ord = poly->add_subcommand("order", "order polytope constraints");
  p_ord->callback(
      [&] { std::cout << constraints_to_json(order_polytope(read_poset(cfg))).dump(2) << "\n"; });

  auto* p_ch = poly->add_subcommand("chain", "chain polytope constraints");
  p_ch->callback(
      [&] { std::cout << constraints_to_json(chain_polytope(read_poset(cfg))).dump(2) << "\n"; });

  auto* p_sl = poly->add_subcommand("slices", "slices along a chain of fixed elements");
  p_sl->add_option("--z", zlist, "chain elements in order")->required();
  p_sl->callback([&] {
    json arr = json::array();
    for (const auto& s : slices(read_poset(cfg), zlist)) arr.push_back(constraints_to_json(s));
    std::cout << arr.dump(2) << "\n";
  });

  auto* p_tu = poly->add_subcommand("tu", "total unimodularity of a constraint system");
  p_tu->callback([&] {
    ConstraintSystem c = constraints_from_json(read_json(cfg));
    bool ok = is_totally_unimodular(c.active_matrix(), cfg.cap_minor);
    std::cout << (ok ? "TU" : "not-TU") << "\n";
    exit_code = ok ? 0 : 1;
  });

  auto* p_vol = poly->add_subcommand("volume", "exact volume of a constraint system");
  p_vol->callback([&] {
    VolumeResult r = volume(vertices(constraints_from_json(read_json(cfg)), cfg.cap_n),
                            cfg.cap_dim);
    if (cfg.format == "json") {
      json j{{"volume", frac(r.value)}, {"dim", r.dim}, {"degenerate", r.degenerate}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << frac(r.value) << "\n";
    }
  });

  auto* p_mix = poly->add_subcommand("mixed", "mixed volume of weighted bodies");
  p_mix->callback([&] {
    json j = read_json(cfg);
    std::vector<std::pair<VertexPolytope, int>> entries;
    for (const auto& e : j.at("entries"))
      entries.emplace_back(polytope_from_json(e), e.at("mult").get<int>());
    std::cout << frac(mixed_volume(entries, cfg.cap_dim)) << "\n";
  });

  auto* p_sp = poly->add_subcommand("stapol", "mixed-volume identity for N_{z,c}(P)");
  p_sp->add_option("--z", zlist)->required();
  p_sp->add_option("--c", clist)->required();
  p_sp->callback([&] {
    auto r = verify_sta_pol(read_poset(cfg), zlist, clist, cfg.cap_dim);
    json j{{"lhs", frac(r.lhs)}, {"rhs", frac(r.rhs)}, {"equal", r.equal}};
    std::cout << j.dump(2) << "\n";
    exit_code = r.equal ? 0 : 1;
  });

  auto* p_af = poly->add_subcommand("afdefect", "Alexandrov-Fenchel defect");
  p_af->callback([&] {
    json j = read_json(cfg);
    VertexPolytope K = polytope_from_json(j.at("K"));
    VertexPolytope L = polytope_from_json(j.at("L"));
    std::vector<std::pair<VertexPolytope, int>> qs;
    if (j.contains("Q"))
      for (const auto& e : j["Q"]) qs.emplace_back(polytope_from_json(e), e.at("mult").get<int>());
    Ratio d = af_defect(K, L, qs, cfg.cap_dim);
    std::cout << frac(d) << "\n";
    exit_code = d == 0 ? 0 : 1;
  });

  // ---- deciders ----
  auto* dec = app.add_subcommand("decide", "Stanley equality and reductions");
  dec->require_subcommand(1);
  dec->fallthrough();

  auto* d_sta = dec->add_subcommand("sta", "Stanley equality verdict");
  d_sta->add_option("--k", kmode, "0|1|brute")->capture_default_str();
  d_sta->add_option("--z", zlist);
  d_sta->add_option("--c", clist);
  d_sta->add_option("--x", x)->required();
  d_sta->add_option("--a", a)->required();
  d_sta->callback([&] {
    EqualityVerdict v;
    if (kmode == "brute") {
      v = esta_bruteforce(read_instance(cfg, zlist, clist, x, a));
    } else if (kmode == "0") {
      if (!zlist.empty()) throw precondition_violated("--k 0 takes no fixed elements");
      v = esta0_decide(read_poset(cfg), x, a);
    } else if (kmode == "1") {
      if (zlist.size() != 1 || clist.size() != 1)
        throw precondition_violated("--k 1 needs exactly one fixed element");
      v = esta1_decide(read_poset(cfg), zlist[0], clist[0], x, a);
    } else {
      throw precondition_violated("--k must be 0, 1, or brute");
    }
    json j{{"equal", v.equal},
           {"counts", {v.n_lo.get_str(), v.n_mid.get_str(), v.n_hi.get_str()}},
           {"defect", v.defect.get_str()},
           {"method", v.method},
           {"degenerate_route", v.degenerate_route}};
    std::cout << j.dump(2) << "\n";
    exit_code = v.equal ? 0 : 1;
  });

  auto* d_quad = dec->add_subcommand("quad", "rho1*rho2 = rho3*rho4?");
  d_quad->callback([&] {
    auto ps = read_marked(read_json(cfg), 4);
    QuadInstance q{ps[0].first, ps[1].first, ps[2].first, ps[3].first,
                   ps[0].second, ps[1].second, ps[2].second, ps[3].second};
    bool eq = evaluate_quad(q);
    std::cout << (eq ? "equal" : "not-equal") << "\n";
    exit_code = eq ? 0 : 1;
  });

  auto* d_ver = dec->add_subcommand("verrle", "rho(P,x) = A/B?");
  d_ver->add_option("--x", x)->required();
  d_ver->add_option("--target", target, "A/B in lowest terms")->required();
  d_ver->callback([&] {
    Ratio t = parse_frac(target);
    VerInstance vi{read_poset(cfg), x, t.get_num(), t.get_den()};
    bool ok = decide_verrle(vi, cfg.seed);
    std::cout << (ok ? "equal" : "not-equal") << "\n";
    exit_code = ok ? 0 : 1;
  });

  auto* d_wit = dec->add_subcommand("witness", "k=2 Stanley instance for rho(P,x) = A/B");
  d_wit->add_option("--x", x)->required();
  d_wit->add_option("--target", target)->required();
  d_wit->callback([&] {
    Ratio t = parse_frac(target);
    VerInstance vi{read_poset(cfg), x, t.get_num(), t.get_den()};
    WitnessResult w = hardness_witness(vi, cfg.seed);
    json j{{"poset", poset_to_json(w.instance.P)},
           {"zfixed", w.instance.zfixed},
           {"x", w.instance.x},
           {"a", w.instance.a},
           {"transcript", w.transcript.steps}};
    std::cout << j.dump(2) << "\n";
  });

  // ---- misc ----
  auto* rp = app.add_subcommand("random-poset", "seeded random poset");
  rp->add_option("--n", n)->required();
  rp->add_option("--density", density)->capture_default_str();
  rp->callback(
      [&] { std::cout << poset_to_json(random_poset(n, density, cfg.seed)).dump(2) << "\n"; });

  auto* st = app.add_subcommand("selftest", "run the identity suites");
  st->add_option("level", level, "quick|full")->capture_default_str();
  st->callback([&] {
    if (level != "quick" && level != "full")
      throw precondition_violated("selftest level must be quick or full");
    exit_code = run_selftest(level == "full", std::cout) ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
