#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "logalg/cli.hpp"

using namespace logalg;
using namespace logalg::dsl;

namespace {

std::string corpus_dir() {
  const char* e = std::getenv("LOGALG_CORPUS");
  return e ? e : "corpus";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error(const std::string& src) {
  try {
    parse(src);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << src);
  return ParseError({}, {}, "");
}

cli::Verdict run_one(const std::string& src, const cli::Config& cfg = {}) {
  auto s = parse(src);
  auto vs = cli::run(s, cfg);
  REQUIRE(vs.size() == 1);
  return vs[0];
}

}  // namespace

TEST_CASE("monoid literals") {
  auto s = parse("monoid N = <a|>;");
  REQUIRE(s.statements.size() == 1);
  cli::Environment env(s);
  auto n = env.monoid("N");
  CHECK(n.ngens() == 1);
  CHECK(n.relations().empty());

  auto t = parse("monoid M = <a, b | a + b = 2 a, 3b = 0>;\nmonoid E = <|>;");
  cli::Environment e2(t);
  auto m = e2.monoid("M");
  CHECK(m.relations().size() == 2);
  CHECK(m.equivalent({1, 1}, {2, 0}));
  CHECK(e2.monoid("E").ngens() == 0);
}

TEST_CASE("parse errors carry a location and the expected tokens") {
  auto e = parse_error("monoid M = <a| a+ >;");
  CHECK(e.kind() == ErrorKind::ParseError);
  CHECK(e.at.line == 1);
  CHECK(e.at.col == 17);  // the dangling '+'
  CHECK(e.expected.count("identifier"));

  auto f = parse_error("monoid N = <a|>;\nmonoid M = <a | a = >;");
  CHECK(f.at.line == 2);
  CHECK(f.at.col == 21);

  auto g = parse_error("gp N");
  CHECK(g.kind() == ErrorKind::ResolveError);
  auto h = parse_error("monoid N = <a|>;\ngp N");
  CHECK(h.kind() == ErrorKind::ParseError);
  CHECK(h.expected.count("';'"));

  CHECK(parse_error("frobnicate;").expected.count("gp"));
  CHECK(parse_error("monoid N = <a|>; monoid N = <b|>;").kind() == ErrorKind::ResolveError);
  CHECK(parse_error("monoid N = <a|>; prelog X = free M;").kind() == ErrorKind::ResolveError);
  CHECK(parse_error("monoid N = <a|>; prelog X = free N; gp X;").kind() == ErrorKind::ResolveError);
  CHECK(parse_error("monoid N = <a, a|>;").kind() == ErrorKind::ParseError);
  CHECK(parse_error("point p = (1/0);").kind() == ErrorKind::ParseError);
  CHECK(parse_error("monoid N = <a|> ; monoid E = gens (1, 0) (1);").kind() == ErrorKind::ParseError);
  CHECK(parse_error("monoid M = <a|>; $").at.col == 18);
}

TEST_CASE("parser totality") {
  const std::string base = slurp(corpus_dir() + "/corpus.logalg");
  std::mt19937 rng(2024);
  const std::string alphabet = "<>|,;=()[]+-*^/:#ab xyz019\n-->monoid map prelog";
  std::size_t ok = 0, rejected = 0;
  for (int t = 0; t < 400; ++t) {
    std::string src;
    switch (t % 3) {
      case 0:
        src = base.substr(0, rng() % base.size());
        break;
      case 1: {
        src = base;
        for (int k = 0; k < 3; ++k) src[rng() % src.size()] = alphabet[rng() % alphabet.size()];
        break;
      }
      default:
        for (int k = 0; k < 60; ++k) src += static_cast<char>(rng() % 256);
    }
    try {
      parse(src);
      ++ok;
    } catch (const ParseError& e) {
      ++rejected;
      CHECK(e.at.line >= 1);
      CHECK(e.at.col >= 1);
    }
  }
  CHECK(ok + rejected == 400);
  CHECK(rejected > 0);
}

TEST_CASE("corpus re-prints to the golden file") {
  const std::string src = slurp(corpus_dir() + "/corpus.logalg");
  auto s = parse(src);
  std::size_t decls = 0;
  for (const auto& st : s.statements) decls += std::holds_alternative<Decl>(st.item);
  CHECK(decls >= 40);
  const std::string printed = print(s);
  CHECK(printed == slurp(corpus_dir() + "/corpus.golden"));
  CHECK(print(parse(printed)) == printed);

  // every declaration builds
  cli::Environment env(s);
  for (const auto& st : s.statements) {
    const auto* d = std::get_if<Decl>(&st.item);
    if (!d) continue;
    CAPTURE(d->name);
    switch (d->kind) {
      case DeclKind::Monoid: CHECK_NOTHROW(env.monoid(d->name)); break;
      case DeclKind::Prelog: CHECK_NOTHROW(env.prelog(d->name, 0)); break;
      case DeclKind::Module: CHECK_NOTHROW(env.module(d->name, 0)); break;
      case DeclKind::Sqz: CHECK_NOTHROW(env.sqz(d->name, 0)); break;
      case DeclKind::Point: CHECK_NOTHROW(env.point(d->name)); break;
      case DeclKind::Map: break;
    }
  }
}

TEST_CASE("printer round trip on individual forms") {
  const char* forms[] = {
      "monoid M = <a, b | a + b = 2 a>;",
      "monoid E = gens (2, 0) (1, 1) mod (0, 4);",
      "prelog Y = chart <p |> -> <x, y |> [p -> x + 2 y] mod -x^2 y + 3/2 x, y - 1;",
      "map h = compose g f;",
      "sqz E = quotient X by x^2 char 3;",
      "point p = (0, -1/2);",
      "bar-homology M --max-degree 3;",
      "cotangent f --points unit,zeros --char 5;",
      "equal M (2 a + b) (0);",
  };
  std::string decls =
      "monoid M = <a, b |>; monoid X1 = <x|>; map f : M -> M = [a -> a, b -> b]; "
      "map g : M -> M = [a -> b, b -> a]; prelog X = free X1; "
      "prelog P = free M; map f2 : P -> P = [a -> a, b -> b];\n";
  for (const char* f : forms) {
    CAPTURE(f);
    std::string src = f;
    if (src.rfind("cotangent", 0) == 0) src = "cotangent f2 --points unit,zeros --char 5;";
    std::string full = src.rfind("monoid M =", 0) == 0 ? src : decls + src;
    auto s = parse(full);
    auto once = print(s);
    CHECK(print(parse(once)) == once);
    CHECK(once.substr(once.size() - src.size() - 1) == src + "\n");
  }
}

TEST_CASE("commands") {
  const std::string decls =
      "monoid N = <a|>; monoid N2 = <x, y|>; map sum : N2 -> N = [x -> a, y -> a];"
      "prelog L = free N; map x5 : L -> L = [a -> 5 a];";
  auto gp = run_one("monoid N = <a|>; gp N;");
  CHECK(gp.ok);
  CHECK(gp.result["group"]["rank"] == 1);
  CHECK(gp.result["group"]["torsion"].empty());

  auto rep = run_one(decls + "replete sum;");
  REQUIRE(rep.ok);
  std::set<std::vector<long>> cols;
  for (const auto& c : rep.result["generators"]) cols.insert(c.get<std::vector<long>>());
  CHECK(cols == std::set<std::vector<long>>{{1, 0}, {0, 1}, {1, -1}, {-1, 1}});
  CHECK(rep.result["exact"] == true);
  CHECK(rep.result["replete"]["gens"].size() == 4);

  auto c5 = run_one(decls + "cotangent x5 --char 5;");
  REQUIRE(c5.ok);
  CHECK(c5.characteristic == 5);
  CHECK(c5.result["verdict"] == "No");
  CHECK(c5.result["witness"].get<std::string>().find("pi0") != std::string::npos);
  auto c0 = run_one(decls + "cotangent x5;");
  CHECK(c0.result["verdict"] == "Yes");
  CHECK(c0.result.contains("pi1_samples"));

  // command errors are data; resource caps map to exit code 3
  auto bad = run_one(decls + "bar-homology N;");
  CHECK_FALSE(bad.ok);
  CHECK(bad.error_kind == "TooLarge");
  CHECK(cli::exit_code({bad}) == 3);
  auto np = run_one(decls + "point q = (2, 3); omega x5 --points q;");
  CHECK(np.error_kind == "NotAPoint");
  CHECK(cli::exit_code({gp, np}) == 1);
  CHECK(cli::exit_code({gp}) == 0);

  cli::Config tiny;
  tiny.max_hilbert = 3;
  auto capped = run_one("monoid H = solutions (1, 2, -3); gp H;", tiny);
  CHECK(capped.error_kind == "ResourceExceeded");
}

TEST_CASE("verdicts round trip through JSON") {
  auto s = parse(slurp(corpus_dir() + "/examples.logalg"));
  cli::Config cfg;
  cfg.timing = true;
  auto vs = cli::run(s, cfg);
  REQUIRE(vs.size() > 10);
  for (const auto& v : vs) {
    CAPTURE(v.command);
    CHECK(cli::Verdict::from_json(v.to_json()) == v);
    CHECK(cli::Verdict::from_json(cli::json::parse(v.to_json().dump())) == v);
  }
}

TEST_CASE("deterministic output and the examples snapshot") {
  auto s = parse(slurp(corpus_dir() + "/examples.logalg"));
  cli::Config cfg;
  auto a = cli::render(cli::run(s, cfg), cfg);
  auto b = cli::render(cli::run(s, cfg), cfg);
  CHECK(a == b);
  cfg.jobs = 3;
  CHECK(cli::render(cli::run(s, cfg), cfg) == a);
  CHECK(a == slurp(corpus_dir() + "/examples.golden.json"));
  auto doc = cli::json::parse(a);
  CHECK(doc["schema"] == 1);
}

TEST_CASE("corpus suites") {
  cli::Config cfg;
  for (const char* suite : {"group-completion", "square-zero-roundtrip"}) {
    CAPTURE(suite);
    auto sum = cli::verify_corpus(suite, cfg);
    CHECK(sum.passed());
    CHECK(sum.checks.size() > 5);
  }
  CHECK_THROWS_AS(cli::verify_corpus("", cfg), Error);
  CHECK_THROWS_AS(cli::verify_corpus("no-such-suite", cfg), Error);

  // failures are reported as data
  auto small = parse("monoid N = <a|>; verify group-completion;");
  auto v = cli::run(small, cfg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].ok);
  CHECK(v[0].result["passed"] == false);
}

TEST_CASE("command line exit codes") {
  const char* bin = std::getenv("LOGALG_CLI");
  if (!bin) return;
  auto code = [&](const std::string& args) {
    int st = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  const std::string ex = corpus_dir() + "/examples.logalg";
  CHECK(code(ex) == 0);
  CHECK(code("-e 'monoid M = <a| a+ >;'") == 2);
  CHECK(code("-e 'monoid N = <a|>;' -e 'bar-homology N;'") == 3);
  CHECK(code("-e 'monoid N = <a|>;' -e 'point q = (2, 3);' -e 'prelog L = free N;' "
             "-e 'map f : L -> L = [a -> a];' -e 'omega f --points q;'") == 1);
  CHECK(code("verify ''") == 1);
  CHECK(code("verify oracle") == 0);
  CHECK(code("print " + ex) == 0);
  CHECK(code("--format text - < " + ex) == 0);
}
