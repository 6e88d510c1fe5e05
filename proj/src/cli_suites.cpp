#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "logalg/cli.hpp"
#include "logalg/oracle.hpp"
#include "logalg/simplicial.hpp"

#ifndef LOGALG_SOURCE_CORPUS
#define LOGALG_SOURCE_CORPUS "corpus"
#endif

namespace logalg::cli {

using namespace dsl;

bool SuiteSummary::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

std::size_t SuiteSummary::count(const std::string& invariant) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [&](const SuiteCheck& c) { return c.invariant == invariant; }));
}

json SuiteSummary::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    json j{{"invariant", c.invariant}, {"item", c.item}, {"pass", c.pass}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    cs.push_back(j);
  }
  return {{"suite", suite}, {"passed", passed()}, {"checks", cs}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "group-completion", "repletion",     "logification",          "cotangent",
      "etale",            "strict-etale",  "square-zero-roundtrip", "oracle"};
  return names;
}

namespace {

struct Ctx {
  const Script& s;
  const Config& cfg;
  Environment env;
  SuiteSummary out;

  Ctx(const Script& script, const Config& c, const std::string& suite) : s(script), cfg(c), env(script) {
    out.suite = suite;
  }

  void check(const std::string& inv, const std::string& item, bool pass, std::string witness = {}) {
    out.checks.push_back({inv, item, pass, std::move(witness)});
  }
  // Runs body; a logalg error becomes a failed check carrying its message.
  void guarded(const std::string& inv, const std::string& item,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      check(inv, item, false, std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  void at_least(const std::string& what, std::size_t have, std::size_t need) {
    check("corpus has at least " + std::to_string(need) + " " + what, what, have >= need,
          have >= need ? "" : "found " + std::to_string(have));
  }
};

bool is_monoid_map(const Script& s, const std::string& name) {
  const auto& e = std::get<MapExpr>(s.find(name)->body);
  if (e.kind == MapExpr::Kind::Compose) return is_monoid_map(s, e.inner);
  return s.find(e.source)->kind == DeclKind::Monoid;
}

// Declared source and target of a map, through compositions.
std::pair<std::string, std::string> ends(const Script& s, const std::string& name) {
  const auto& e = std::get<MapExpr>(s.find(name)->body);
  if (e.kind == MapExpr::Kind::Compose) return {ends(s, e.inner).first, ends(s, e.outer).second};
  return {e.source, e.target};
}

std::vector<std::string> names_of(const Script& s, DeclKind k) {
  std::vector<std::string> out;
  for (const auto* d : s.decls(k)) out.push_back(d->name);
  return out;
}

std::vector<std::string> maps(const Script& s, bool monoid) {
  std::vector<std::string> out;
  for (const auto& n : names_of(s, DeclKind::Map))
    if (is_monoid_map(s, n) == monoid) out.push_back(n);
  return out;
}

MonoidPresentation as_monoid(const FgAbelianGroup& g) {
  const std::size_t n = g.torsion.size();
  std::vector<Relation> rels;
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = g.torsion[i].get_si();
    rels.push_back({e, Exponent(n, 0)});
  }
  return MonoidPresentation(n, rels);
}

bool finite_monoid(const MonoidPresentation& m) {
  try {
    enumerate_elements(m, 64);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TooLarge) return false;
    throw;
  }
}

std::string groups_text(const std::vector<FgAbelianGroup>& gs) {
  std::string s;
  for (std::size_t i = 0; i < gs.size(); ++i) s += (i ? ", " : "") + gs[i].to_string();
  return "[" + s + "]";
}

// ---- suites -------------------------------------------------------------

void group_completion_suite(Ctx& c) {
  auto ms = names_of(c.s, DeclKind::Monoid);
  c.at_least("monoids", ms.size(), 12);
  std::size_t finite = 0;
  for (const auto& n : ms) {
    c.guarded("gp ~ pi1(BM)", n, [&] {
      auto m = c.env.monoid(n);
      auto gp = group_completion(m).group;
      auto pi1 = pi1_of_bar(m);
      c.check("gp ~ pi1(BM)", n, gp == pi1, gp == pi1 ? "" : gp.to_string() + " vs " + pi1.to_string());
      if (!finite_monoid(m)) return;
      ++finite;
      auto a = bar_homology(m, 3);
      auto b = bar_homology(as_monoid(gp), 3);
      c.check("H_*(BM) ~ H_*(B M^gp) through degree 3", n, a == b,
              a == b ? "" : groups_text(a) + " vs " + groups_text(b));
    });
  }
  c.at_least("finite monoids", finite, 1);
}

void repletion_suite(Ctx& c) {
  std::size_t used = 0;
  for (const auto& n : maps(c.s, true)) {
    c.guarded("repletion", n, [&] {
      auto f = c.env.monoid_map(n);
      if (!is_integral(f.source) || !is_integral(f.target) || !is_virtually_surjective(f)) return;
      ++used;
      auto r = repletion(f);
      auto w = exactness_witness(r.counit);
      std::string wt;
      if (w)
        for (const auto& x : *w) wt += (wt.empty() ? "(" : ",") + x.get_str();
      c.check("M^rep -> N exact", n, !w, w ? "element " + wt + ") of (M^rep)^gp" : "");
      auto g1 = group_completion(f.source).group, g2 = group_completion(r.replete).group;
      c.check("M^gp ~ (M^rep)^gp", n, g1 == g2, g1 == g2 ? "" : g1.to_string() + " vs " + g2.to_string());
      c.check("unit and counit compose to f", n, homs_equal(compose(r.counit, r.unit), f));
    });
  }
  c.at_least("virtually surjective integral maps", used, 5);
}

void logification_suite(Ctx& c) {
  auto xs = names_of(c.s, DeclKind::Prelog);
  c.at_least("charts", xs.size(), 8);
  for (const auto& n : xs) {
    c.guarded("logify idempotent", n, [&] {
      auto x = c.env.prelog(n, 0);
      auto l1 = logify(x);
      auto l2 = logify(l1.log_chart);
      auto rho = relogification_map(l1);
      bool iso = is_isomorphism(rho);
      c.check("logify idempotent on characteristics", n, iso,
              iso ? "" : l1.characteristic.to_string() + " vs " + l2.characteristic.to_string());
      c.check("logify of a log chart is already log", n, l2.already_log);
      auto t = logify(trivial_locus(x));
      c.check("trivial locus logifies to the trivial characteristic", n, t.characteristic.is_trivial(),
              t.characteristic.is_trivial() ? "" : t.characteristic.to_string());
    });
  }
}

void cotangent_suite(Ctx& c) {
  auto fs = maps(c.s, false);
  c.at_least("pre-log morphisms", fs.size(), 8);
  for (const auto& n : fs)
    c.guarded("pi0 ~ omega_log", n, [&] {
      c.check("pi0 ~ omega_log", n, pi0_matches_omega(c.env.prelog_map(n, 0)));
    });
  std::size_t chains = 0, squares = 0;
  for (const auto& f : fs)
    for (const auto& g : fs) {
      auto [fs_, ft] = ends(c.s, f);
      auto [gs_, gt] = ends(c.s, g);
      if (ft == gs_ && fs_ != ft && gs_ != gt) {
        const std::string item = g + " o " + f;
        try {
          auto t = transitivity_check(c.env.prelog_map(f, 0), c.env.prelog_map(g, 0));
          ++chains;
          c.check("Jacobi-Zariski pi0-exact", item, t.ok(),
                  t.ok() ? "" : std::string("maps ") + (t.maps_well_defined ? "ok" : "bad") +
                                    ", exact " + (t.exact ? "yes" : "no") + ", euler " +
                                    (t.euler_ok ? "ok" : "bad"));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::UnsupportedPresentation)
            c.check("Jacobi-Zariski pi0-exact", item, false, e.what());
        }
      }
      if (f < g && fs_ == gs_ && fs_ != ft && gs_ != gt) {
        const std::string item = f + " | " + g;
        try {
          auto b = base_change_check(c.env.prelog_map(f, 0), c.env.prelog_map(g, 0));
          ++squares;
          c.check("base change pi0-iso", item, b.isomorphic);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::UnsupportedPresentation)
            c.check("base change pi0-iso", item, false, e.what());
        }
      }
    }
  c.at_least("composable chains", chains, 3);
  c.at_least("pushout squares", squares, 3);
}

// n when f is t -> n t on a free one-generator chart.
std::optional<std::int64_t> multiplication(const PreLogMorphism& f) {
  if (!Environment::identity_chart(f.source) || !Environment::identity_chart(f.target)) return {};
  if (f.source.P.ngens() != 1 || !f.source.P.relations().empty()) return {};
  if (f.target.P.ngens() != 1 || !f.target.P.relations().empty()) return {};
  if (!f.source.ring.ideal().empty() || !f.target.ring.ideal().empty()) return {};
  std::int64_t n = f.monoid_part.images[0][0];
  if (n < 2) return {};
  return n;
}

// Maps B -> S sending generators to 0 or to a generator.
std::vector<PreLogMorphism> test_maps(const ChartPreLogRing& b, const ChartPreLogRing& s) {
  std::vector<Exponent> rc{exp_zero(s.ring.nvars())}, mc{exp_zero(s.P.ngens())};
  for (std::size_t i = 0; i < s.ring.nvars(); ++i) rc.push_back(exp_unit(s.ring.nvars(), i));
  for (std::size_t i = 0; i < s.P.ngens(); ++i) mc.push_back(exp_unit(s.P.ngens(), i));
  const std::size_t nr = b.ring.nvars(), nm = b.P.ngens();
  std::vector<PreLogMorphism> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < nr; ++i) total *= rc.size();
  for (std::size_t i = 0; i < nm; ++i) total *= mc.size();
  if (total > 256) return out;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t x = code;
    std::vector<Exponent> ri, mi;
    for (std::size_t i = 0; i < nr; ++i, x /= rc.size()) ri.push_back(rc[x % rc.size()]);
    for (std::size_t i = 0; i < nm; ++i, x /= mc.size()) mi.push_back(mc[x % mc.size()]);
    PreLogMorphism g{b, s, MonoidHom{b.ring.monoid(), s.ring.monoid(), ri},
                     MonoidHom{b.P, s.P, mi}};
    try {
      g.validate();
      out.push_back(g);
    } catch (const Error&) {
    }
  }
  return out;
}

std::string describe(const PreLogMorphism& g) {
  auto list = [](const MonoidHom& h) {
    std::string s;
    for (std::size_t i = 0; i < h.images.size(); ++i)
      s += (i ? ", " : "") + h.source.names()[i] + " -> " + h.target.word(h.images[i]);
    return "[" + s + "]";
  };
  return "ring " + list(g.ring_part) + " chart " + list(g.monoid_part);
}

void etale_suite(Ctx& c) {
  auto fs = maps(c.s, false);
  std::size_t times = 0;
  for (const auto& n : fs)
    c.guarded("multiplication maps", n, [&] {
      auto f = c.env.prelog_map(n, 0);
      auto k = multiplication(f);
      if (!k) return;
      ++times;
      auto q = is_derived_log_etale(f);
      c.check("x n etale over QQ", n, q.kind == VerdictKind::Yes, q.witness);
      for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        if (*k % static_cast<std::int64_t>(p)) continue;
        auto fp = c.env.prelog_map(n, p);
        auto v = is_derived_log_etale(fp);
        auto inv = invariants(rognes_pushout(fp), {std::vector<Scalar>(fp.target.ring.nvars(), Scalar(1))});
        bool dim1 = inv.samples.size() == 1 && inv.samples[0].h0 == 1;
        c.check("x n not etale over GF(p), p | n", n + " over GF(" + std::to_string(p) + ")",
                v.kind == VerdictKind::No && dim1,
                v.kind == VerdictKind::No ? v.witness : std::string("verdict ") + to_string(v.kind));
      }
    });
  c.at_least("multiplication maps", times, 1);

  auto es = names_of(c.s, DeclKind::Sqz);
  c.at_least("square-zero extensions", es.size(), 4);
  std::size_t lifts = 0;
  for (const auto& n : fs)
    for (const auto& en : es)
      c.guarded("lifting", n + " against " + en, [&] {
        const auto p = c.env.sqz_characteristic(en, 0);
        auto f = c.env.prelog_map(n, p);
        auto e = c.env.sqz(en, p);
        const bool etale = is_derived_log_etale(f).kind == VerdictKind::Yes;
        const bool smooth = is_derived_log_smooth(f).kind == VerdictKind::Yes;
        if (!etale && !smooth) return;
        for (const auto& g : test_maps(f.target, e.base)) {
          LiftResult r;
          try {
            r = lifting_test(f, g, e);
          } catch (const Error& err) {
            if (err.kind() == ErrorKind::UnsupportedPresentation) return;
            throw;
          }
          ++lifts;
          const std::string item = n + " against " + en + " via " + describe(g);
          if (etale)
            c.check("etale Yes implies unique lift", item, r.passes(LiftMode::Etale), to_string(r.verdict));
          if (smooth)
            c.check("smooth Yes implies a lift", item, r.passes(LiftMode::Smooth), to_string(r.verdict));
        }
      });
  c.at_least("lifting problems", lifts, 4);
}

bool classically_etale(const PreLogMorphism& f) {
  auto naive = naive_cotangent(f.ring_part, f.source.ring, f.target.ring);
  return naive.h0().is_zero_module() && !naive.h1_witness();
}

void strict_etale_suite(Ctx& c) {
  std::size_t used = 0;
  for (const auto& n : maps(c.s, false))
    c.guarded("strict etale", n, [&] {
      auto [src, tgt] = ends(c.s, n);
      if (src == tgt) return;
      auto f = c.env.prelog_map(n, 0);
      if (!is_strict(f) || !classically_etale(f)) return;
      ++used;
      auto cx = rognes_pushout(f);
      bool pi0 = cx.h0().is_zero_module();
      auto h1 = cx.h1_witness();
      c.check("truncated L vanishes", n, pi0 && !h1,
              !pi0 ? "pi0 = " + cx.h0().to_string() : h1 ? "pi1 class survives" : "");
      auto v = is_derived_log_etale(f);
      c.check("strict etale verdict Yes", n, v.kind == VerdictKind::Yes, v.witness);
    });
  c.at_least("strict classically etale morphisms", used, 2);
}

void square_zero_suite(Ctx& c) {
  auto es = names_of(c.s, DeclKind::Sqz);
  std::size_t fields3 = 0, twisted = 0, rational = 0;
  for (const auto& n : es)
    c.guarded("square-zero", n, [&] {
      const auto p = c.env.sqz_characteristic(n, 0);
      auto e = c.env.sqz(n, p);
      fields3 += p == 3;
      rational += p == 0;
      twisted += !e.ring.is_split();
      auto rep = verify_strict_exact(e);
      c.check("strict exact", n, rep.ok, rep.witness);
      auto sq = exp_square(e);
      c.check("exp squares cartesian and cocartesian", n, sq.all());
      auto cl = classify(e);
      c.check("class is a cocycle", n, is_cocycle(cl));
      auto cert = certify_equivalent(e, reconstruct(cl));
      c.check("reconstruct(classify(E)) ~ E", n, cert.ok(),
              std::string("ring ") + (cert.ring ? "ok" : "bad") + ", monoid " + (cert.monoid ? "ok" : "bad") +
                  ", carrier " + (cert.carrier ? "ok" : "bad"));
      if (p == 0) {
        auto alt = classify(e, ClassifyRoute::RingArithmetic);
        bool agree = alt.cochain.size() == cl.cochain.size();
        for (std::size_t i = 0; agree && i < cl.cochain.size(); ++i)
          agree = cl.J.equal(cl.cochain[i], alt.cochain[i]);
        if (!agree) {
          agree = true;
          for (const auto& pt : e.ring.base().points()) agree = agree && same_class_at(cl, alt, pt);
        }
        c.check("classification routes agree", n, agree);
      }
    });
  c.at_least("square-zero extensions", es.size(), 3);
  c.at_least("extensions over GF(3)", fields3, 1);
  c.at_least("extensions over QQ", rational, 1);
  c.at_least("non-split extensions", twisted, 1);
}

void oracle_suite(Ctx& c) {
  auto ms = names_of(c.s, DeclKind::Monoid);
  std::size_t idx = 0;
  for (const auto& n : ms) {
    ++idx;
    c.guarded("word problem vs congruence closure", n, [&] {
      auto m = c.env.monoid(n);
      std::mt19937 rng(static_cast<std::uint32_t>(c.cfg.seed * 1000003u + idx));
      std::size_t bad = 0, pairs = 0;
      std::string first;
      for (int t = 0; t < 1000; ++t, ++pairs) {
        auto u = oracle::random_word(rng, m.ngens(), 4);
        auto v = (t % 2) ? oracle::random_walk(rng, m, u, 6, 8) : oracle::random_word(rng, m.ngens(), 4);
        const bool fast = m.equivalent(u, v);
        const bool slow = oracle::bfs_equivalent(m, u, v, 8);
        if (fast != slow && !bad++) first = m.word(u) + " vs " + m.word(v);
      }
      c.check("word problem vs congruence closure (1000 pairs)", n, bad == 0 && pairs == 1000,
              bad ? std::to_string(bad) + " disagreements, first " + first : "");
    });
    const auto& e = std::get<MonoidExpr>(c.s.find(n)->body);
    if (e.kind != MonoidExpr::Kind::Solutions) continue;
    c.guarded("hilbert basis vs enumeration", n, [&] {
      const std::size_t cols = e.columns[0].size();
      IntMatrix a(e.columns.size(), cols);
      for (std::size_t r = 0; r < e.columns.size(); ++r)
        for (std::size_t k = 0; k < cols; ++k) a(r, k) = e.columns[r][k];
      auto h = hilbert_basis(a).elements;
      std::set<std::vector<std::int64_t>> fast, outside;
      for (const auto& x : h) {
        bool in = std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v <= 6; });
        (in ? fast : outside).insert(x);
      }
      auto slow = oracle::bounded_hilbert(a, 6);
      c.check("hilbert basis vs enumeration (coordinates <= 6)", n, fast == slow,
              fast == slow ? "" : std::to_string(fast.size()) + " vs " + std::to_string(slow.size()) + " elements");
      c.check("hilbert basis fits the enumeration box", n, outside.empty());
    });
  }
}

}  // namespace

SuiteSummary verify_corpus(const Script& corpus, const std::string& suite, const Config& cfg) {
  if (suite.empty()) fail(ErrorKind::InvalidArgument, "usage: verify <suite>; suite name is empty");
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  Ctx c(corpus, cfg, suite);
  ScopedLimits scope(cfg.limits());
  if (suite == "group-completion") group_completion_suite(c);
  if (suite == "repletion") repletion_suite(c);
  if (suite == "logification") logification_suite(c);
  if (suite == "cotangent") cotangent_suite(c);
  if (suite == "etale") etale_suite(c);
  if (suite == "strict-etale") strict_etale_suite(c);
  if (suite == "square-zero-roundtrip") square_zero_suite(c);
  if (suite == "oracle") oracle_suite(c);
  return c.out;
}

std::string shipped_corpus_path() {
  if (const char* e = std::getenv("LOGALG_CORPUS")) return std::string(e) + "/corpus.logalg";
  return std::string(LOGALG_SOURCE_CORPUS) + "/corpus.logalg";
}

SuiteSummary verify_corpus(const std::string& suite, const Config& cfg) {
  std::ifstream in(shipped_corpus_path());
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + shipped_corpus_path());
  std::stringstream ss;
  ss << in.rdbuf();
  auto script = parse(ss.str());
  return verify_corpus(script, suite, cfg);
}

}  // namespace logalg::cli
