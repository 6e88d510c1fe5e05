#include <chrono>
#include <future>
#include <sstream>

#include "logalg/cli.hpp"
#include "logalg/simplicial.hpp"

namespace logalg::cli {

using namespace dsl;

Limits Config::limits() const {
  Limits l;
  l.max_gb = max_gb;
  l.max_hilbert = max_hilbert;
  return l;
}

json Verdict::to_json() const {
  json j{{"command", command}, {"ok", ok},          {"summary", summary},
         {"result", result},   {"char", characteristic}, {"mode", mode}};
  if (!ok) j["error"] = {{"kind", error_kind}, {"message", error}};
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

Verdict Verdict::from_json(const json& j) {
  Verdict v;
  v.command = j.at("command").get<std::string>();
  v.ok = j.at("ok").get<bool>();
  v.summary = j.at("summary").get<std::string>();
  v.result = j.at("result");
  v.characteristic = j.at("char").get<std::uint64_t>();
  v.mode = j.at("mode").get<std::string>();
  if (j.contains("error")) {
    v.error_kind = j["error"].at("kind").get<std::string>();
    v.error = j["error"].at("message").get<std::string>();
  }
  if (j.contains("timing_ms")) v.timing_ms = j["timing_ms"].get<double>();
  return v;
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json scalars(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::string group_text(const FgAbelianGroup& g) { return g.to_string(); }

std::string word_text(const MonoidPresentation& m, const Exponent& e) { return m.word(e); }

json matrix_columns(const IntMatrix& m) {
  json cols = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(m(r, c).get_si());
    cols.push_back(col);
  }
  return cols;
}

std::string columns_text(const IntMatrix& m) {
  std::string s;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    s += c ? " (" : "(";
    for (std::size_t r = 0; r < m.rows(); ++r) s += (r ? "," : "") + m(r, c).get_str();
    s += ")";
  }
  return s;
}

std::vector<std::vector<Scalar>> sample_points(Environment& env, const Command& c,
                                               const Algebra& a) {
  const Option* o = c.option("points");
  if (!o) return a.points();
  std::vector<std::vector<Scalar>> pts;
  for (const auto& v : o->values) {
    std::vector<Scalar> pt;
    if (v == "unit") {
      pt.assign(a.nvars(), Scalar(1));
    } else if (v == "zeros") {
      pt.assign(a.nvars(), Scalar(0));
    } else {
      pt = env.point(v);
      for (auto& x : pt) x = a.field().normalize(x);
    }
    if (!a.is_point(pt)) fail(ErrorKind::NotAPoint, "'" + v + "' is not a point of the target");
    pts.push_back(pt);
  }
  return pts;
}

json verdict_json(const logalg::Verdict& v) {
  return {{"verdict", to_string(v.kind)}, {"witness", v.witness}, {"certificate", v.certificate}};
}

std::string verdict_text(const logalg::Verdict& v) {
  std::string s = to_string(v.kind);
  if (!v.witness.empty()) s += ": " + v.witness;
  return s;
}

bool is_monoid_map(const Script& s, const std::string& name) {
  const auto& e = std::get<MapExpr>(s.find(name)->body);
  if (e.kind == MapExpr::Kind::Compose) return is_monoid_map(s, e.inner);
  return s.find(e.source)->kind == DeclKind::Monoid;
}

std::string cochain_text(const ExtensionClass& c) {
  std::string s;
  const auto& R = c.J.ring().ring();
  for (std::size_t i = 0; i < c.cochain.size(); ++i)
    s += (i ? ", " : "") + R.to_string(c.J.reduce(c.cochain[i]), c.J.labels());
  return "[" + s + "]";
}

void dispatch(Environment& env, const Command& c, const Config& cfg, Verdict& v) {
  const std::uint64_t p = v.characteristic;
  const std::string& h = c.head;
  auto name = [&](std::size_t i) { return c.args[i].name; };
  json& r = v.result;

  if (h == "gp") {
    auto g = group_completion(env.monoid(name(0))).group;
    r = {{"group", to_json(g)}};
    v.summary = group_text(g);
  } else if (h == "integral") {
    bool b = is_integral(env.monoid(name(0)));
    r = {{"integral", b}};
    v.summary = yes_no(b);
  } else if (h == "saturated") {
    bool b = is_saturated(env.monoid(name(0)));
    r = {{"saturated", b}};
    v.summary = yes_no(b);
  } else if (h == "sharp") {
    bool b = is_sharp(env.monoid(name(0)));
    r = {{"sharp", b}};
    v.summary = yes_no(b);
  } else if (h == "units") {
    auto u = units(env.monoid(name(0)));
    r = {{"group", to_json(u.group)}, {"unit_generators", u.unit_generators}};
    v.summary = group_text(u.group);
  } else if (h == "pi1-bar") {
    auto g = pi1_of_bar(env.monoid(name(0)));
    r = {{"group", to_json(g)}};
    v.summary = group_text(g);
  } else if (h == "bar-homology") {
    std::size_t d = 3;
    if (auto o = c.option("max-degree"); o && !o->values.empty()) d = std::stoul(o->values[0]);
    auto hs = bar_homology(env.monoid(name(0)), d);
    json a = json::array();
    std::string s;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      a.push_back(to_json(hs[i]));
      s += (i ? ", " : "") + std::string("H") + std::to_string(i) + " = " + group_text(hs[i]);
    }
    r = {{"homology", a}};
    v.summary = s;
  } else if (h == "equal" || h == "nf") {
    auto m = env.monoid(name(0));
    auto a = to_exponent(c.args[1].word, m);
    if (h == "nf") {
      auto n = m.normal_form(a);
      r = {{"normal_form", n}};
      v.summary = word_text(m, n);
    } else {
      bool b = m.equivalent(a, to_exponent(c.args[2].word, m));
      r = {{"equal", b}};
      v.summary = yes_no(b);
    }
  } else if (h == "exact") {
    auto f = env.monoid_map(name(0));
    auto w = exactness_witness(f);
    r = {{"exact", !w}};
    v.summary = yes_no(!w);
    if (w) {
      json a = json::array();
      std::string t;
      for (const auto& x : *w) {
        a.push_back(x.get_si());
        t += (t.empty() ? "" : ",") + x.get_str();
      }
      r["witness"] = a;
      v.summary += ", witness in M^gp: (" + t + ")";
    }
  } else if (h == "vsurj") {
    bool b = is_virtually_surjective(env.monoid_map(name(0)));
    r = {{"virtually_surjective", b}};
    v.summary = yes_no(b);
  } else if (h == "replete") {
    auto f = env.monoid_map(name(0));
    auto rep = repletion(f);
    bool ex = is_exact(rep.counit);
    r = {{"replete", to_json(rep.replete)},
         {"generators", matrix_columns(rep.generators)},
         {"exact", ex}};
    v.summary = std::to_string(rep.replete.ngens()) + " generators " + columns_text(rep.generators) +
                (ex ? ", exact" : ", not exact");
  } else if (h == "pushout") {
    auto po = pushout(env.monoid_map(name(0)), env.monoid_map(name(1)));
    r = {{"pushout", to_json(po.object)}};
    v.summary = po.object.to_string();
  } else if (h == "logify") {
    auto l = logify(env.prelog(name(0), p));
    r = {{"characteristic", to_json(l.characteristic)}, {"already_log", l.already_log},
         {"chart", l.log_chart.to_string()}};
    v.summary = "characteristic " + l.characteristic.to_string() + (l.already_log ? " (already log)" : "");
  } else if (h == "trivial-locus") {
    auto t = trivial_locus(env.prelog(name(0), p));
    r = {{"chart", t.to_string()}};
    v.summary = t.to_string();
  } else if (h == "strict") {
    auto f = env.prelog_map(name(0), p);
    bool b = is_strict(f);
    r = {{"strict", b}};
    v.summary = yes_no(b);
  } else if (h == "omega") {
    auto f = env.prelog_map(name(0), p);
    auto o = omega_log(f);
    auto pts = sample_points(env, c, f.target.ring);
    json dims = json::array();
    for (const auto& pt : pts) dims.push_back({{"point", scalars(pt)}, {"dim", evaluate_at_point(o, pt)}});
    r = {{"omega", to_json(o)}, {"dims", dims}};
    v.summary = o.to_string();
  } else if (h == "cotangent" || h == "smooth") {
    auto f = env.prelog_map(name(0), p);
    auto cx = rognes_pushout(f);
    auto inv = invariants(cx, sample_points(env, c, f.target.ring));
    json samples = json::array();
    for (const auto& s : inv.samples)
      samples.push_back({{"point", scalars(s.point)}, {"pi0_dim", s.h0}, {"pi1_dim", s.h1}});
    auto verdict = h == "cotangent" ? is_derived_log_etale(f) : is_derived_log_smooth(f);
    r = verdict_json(verdict);
    r["pi0"] = to_json(inv.pi0);
    r["pi1_samples"] = samples;
    r["lci"] = lci_certificate(f);
    if (v.mode == "exact") {
      auto w = cx.h1_witness();
      r["pi1_witness"] = w ? json(cx.ring.ring().to_string(*w, cx.c1)) : json(nullptr);
    }
    v.summary = verdict_text(verdict);
  } else if (h == "transitivity") {
    auto t = transitivity_check(env.prelog_map(name(0), p), env.prelog_map(name(1), p));
    r = {{"maps_well_defined", t.maps_well_defined}, {"exact", t.exact},
         {"euler_applicable", t.euler_applicable}, {"euler_ok", t.euler_ok}, {"ok", t.ok()}};
    v.summary = t.ok() ? "exact" : "not exact";
  } else if (h == "base-change") {
    auto b = base_change_check(env.prelog_map(name(0), p), env.prelog_map(name(1), p));
    r = {{"isomorphic", b.isomorphic}};
    v.summary = b.isomorphic ? "isomorphic" : "not isomorphic";
  } else if (h == "sqz") {
    const std::string& sub = name(0);
    v.characteristic = env.sqz_characteristic(name(1), p);
    auto e = env.sqz(name(1), p);
    if (sub == "verify") {
      auto rep = verify_strict_exact(e);
      auto sq = exp_square(e);
      r = {{"strict_exact", rep.ok},
           {"certificate", rep.certificate},
           {"witness", rep.witness},
           {"exp_square",
            {{"left_cartesian", sq.left_cartesian},
             {"left_cocartesian", sq.left_cocartesian},
             {"right_cartesian", sq.right_cartesian},
             {"right_cocartesian", sq.right_cocartesian}}},
           {"j_dim", sq.j_dim}};
      v.summary = std::string("strict exact ") + yes_no(rep.ok) + ", exp squares " +
                  (sq.all() ? "cartesian and cocartesian" : "fail");
    } else if (sub == "classify") {
      auto cl = classify(e);
      r = {{"cochain", cochain_text(cl)}, {"cocycle", is_cocycle(cl)}, {"split", e.ring.is_split()}};
      v.summary = "class " + cochain_text(cl) + (e.ring.is_split() ? ", split ring" : ", non-split ring");
    } else {
      auto cl = classify(e);
      auto alt = classify(e, ClassifyRoute::RingArithmetic);
      bool agree = cl.cochain.size() == alt.cochain.size();
      for (std::size_t i = 0; agree && i < cl.cochain.size(); ++i)
        agree = cl.J.equal(cl.cochain[i], alt.cochain[i]);
      auto cert = certify_equivalent(e, reconstruct(cl));
      r = {{"ring", cert.ring}, {"monoid", cert.monoid}, {"carrier", cert.carrier},
           {"ok", cert.ok()}, {"routes_agree", agree}};
      v.summary = std::string(cert.ok() ? "round trip certified" : "round trip failed") +
                  (agree ? ", routes agree" : ", routes differ");
    }
  } else if (h == "lift") {
    const std::uint64_t q = env.sqz_characteristic(name(1), p);
    v.characteristic = q;
    auto f = env.prelog_map(name(0), q);
    auto e = env.sqz(name(1), q);
    auto g = identity_morphism(e.base);
    if (auto o = c.option("via"); o && !o->values.empty()) g = env.prelog_map(o->values[0], q);
    LiftMode mode = LiftMode::Etale;
    if (auto o = c.option("mode"); o && !o->values.empty()) {
      if (o->values[0] == "smooth")
        mode = LiftMode::Smooth;
      else if (o->values[0] != "etale")
        fail(ErrorKind::InvalidArgument, "lift mode must be etale or smooth");
    }
    auto res = lifting_test(f, g, e);
    r = {{"verdict", to_string(res.verdict)}, {"solution_dim", res.solution_dim},
         {"passes", res.passes(mode)}, {"lift_mode", mode == LiftMode::Etale ? "etale" : "smooth"},
         {"obstruction", scalars(res.obstruction)}};
    v.summary = std::string(to_string(res.verdict)) + (res.passes(mode) ? "" : " (fails)");
  } else if (h == "verify") {
    auto s = verify_corpus(env.script(), name(0), cfg);
    r = s.to_json();
    std::size_t good = 0;
    for (const auto& ch : s.checks) good += ch.pass;
    v.summary = std::to_string(good) + "/" + std::to_string(s.checks.size()) + " checks pass";
  } else if (h == "show") {
    const Decl* d = env.script().find(name(0));
    std::string text;
    switch (d->kind) {
      case DeclKind::Monoid: {
        auto m = env.monoid(d->name);
        text = m.to_string();
        r = {{"monoid", to_json(m)}};
        break;
      }
      case DeclKind::Map:
        if (is_monoid_map(env.script(), d->name)) {
          auto f = env.monoid_map(d->name);
          text = f.source.to_string() + " -> " + f.target.to_string();
        } else {
          auto f = env.prelog_map(d->name, p);
          text = f.source.to_string() + " -> " + f.target.to_string();
        }
        r = {{"text", text}};
        break;
      case DeclKind::Prelog:
        text = env.prelog(d->name, p).to_string();
        r = {{"text", text}};
        break;
      case DeclKind::Module: {
        auto m = env.module(d->name, p);
        text = m.to_string();
        r = {{"module", to_json(m)}};
        break;
      }
      case DeclKind::Sqz: {
        auto e = env.sqz(d->name, p);
        text = e.ring.base().to_string() + " + " + e.ring.J().to_string();
        r = {{"text", text}};
        break;
      }
      case DeclKind::Point:
        r = {{"point", scalars(env.point(d->name))}};
        text = r["point"].dump();
        break;
    }
    v.summary = text;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown command '" + h + "'");
  }
}

}  // namespace

Verdict run_command(Environment& env, const Command& c, const Config& cfg) {
  Verdict v;
  v.command = print(c);
  v.characteristic = cfg.characteristic;
  v.mode = cfg.mode;
  if (auto o = c.option("char"); o && !o->values.empty()) v.characteristic = std::stoull(o->values[0]);
  if (auto o = c.option("mode"); o && !o->values.empty() && c.head != "lift") v.mode = o->values[0];
  auto t0 = std::chrono::steady_clock::now();
  Limits l = cfg.limits();
  if (cfg.deadline_ms) l.deadline = t0 + std::chrono::milliseconds(*cfg.deadline_ms);
  try {
    ScopedLimits scope(l);
    if (v.mode != "point" && v.mode != "exact") fail(ErrorKind::InvalidArgument, "mode must be point or exact");
    dispatch(env, c, cfg, v);
  } catch (const Error& e) {
    v.ok = false;
    v.error_kind = logalg::to_string(e.kind());
    v.error = e.what();
    v.result = nullptr;
    v.summary = "error";
  } catch (const std::exception& e) {
    v.ok = false;
    v.error_kind = "InvalidArgument";
    v.error = e.what();
    v.result = nullptr;
    v.summary = "error";
  }
  if (cfg.timing)
    v.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

std::vector<Verdict> run(const Script& s, const Config& cfg) {
  auto cmds = s.commands();
  std::vector<Verdict> out(cmds.size());
  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, cmds.size()));
  if (jobs == 1) {
    Environment env(s);
    for (std::size_t i = 0; i < cmds.size(); ++i) out[i] = run_command(env, *cmds[i], cfg);
    return out;
  }
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < jobs; ++w)
    workers.push_back(std::async(std::launch::async, [&, w] {
      Environment env(s);
      for (std::size_t i = w; i < cmds.size(); i += jobs) out[i] = run_command(env, *cmds[i], cfg);
    }));
  for (auto& w : workers) w.get();
  return out;
}

int exit_code(const std::vector<Verdict>& vs) {
  int code = 0;
  for (const auto& v : vs) {
    if (v.ok) continue;
    if (v.error_kind == "ResourceExceeded" || v.error_kind == "TooLarge") return 3;
    code = 1;
  }
  return code;
}

std::string render(const std::vector<Verdict>& vs, const Config& cfg) {
  if (cfg.format == "text") {
    std::ostringstream os;
    for (const auto& v : vs) {
      os << v.command << "  =>  " << v.summary;
      if (!v.ok) os << ": " << v.error;
      os << "\n";
    }
    return os.str();
  }
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.to_json());
  json doc{{"schema", 1}, {"verdicts", a}};
  return doc.dump(2) + "\n";
}

}  // namespace logalg::cli
