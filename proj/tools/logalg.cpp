// logalg: run .logalg scripts, re-print them, or verify corpus suites.
//
//   logalg [options] FILE|-
//   logalg [options] verify SUITE [FILE]
//   logalg print FILE|-

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "logalg/cli.hpp"

using namespace logalg;

namespace {

bool read_source(const std::string& path, std::string& out) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return false;
    ss << in.rdbuf();
  }
  out = ss.str();
  return true;
}

// Parses or reports on stderr; nullopt means exit code 2.
std::optional<dsl::Script> load(const std::string& path, const std::vector<std::string>& extra) {
  std::string src;
  if (!path.empty() && !read_source(path, src)) {
    std::cerr << path << ": cannot read\n";
    return std::nullopt;
  }
  for (const auto& e : extra) src += (src.empty() ? "" : "\n") + e;
  try {
    return dsl::parse(src);
  } catch (const dsl::ParseError& e) {
    std::cerr << (path.empty() ? "<eval>" : path) << ":" << e.what() << "\n";
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logalg: log rings, monoids and cotangent complexes"};
  cli::Config cfg;
  std::string input;
  std::vector<std::string> evals;
  std::int64_t deadline = 0;

  app.add_option("--char", cfg.characteristic, "Characteristic of the base field (0 or a prime)");
  app.add_option("--mode", cfg.mode, "point | exact")->check(CLI::IsMember({"point", "exact"}));
  app.add_option("--max-gb", cfg.max_gb, "Cap on Groebner basis / rewriting rules");
  app.add_option("--max-hilbert", cfg.max_hilbert, "Cap on Hilbert basis candidates");
  app.add_option("--deadline-ms", deadline, "Per-command deadline in milliseconds");
  app.add_option("--format", cfg.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized suites");
  app.add_option("--jobs", cfg.jobs, "Worker threads for independent commands");
  app.add_flag("--timing", cfg.timing, "Record per-command wall time");
  app.add_option("-e,--eval", evals, "Extra statements appended to the script");
  app.add_option("input", input, "Script file, or - for stdin");

  auto* verify = app.add_subcommand("verify", "Run a property suite over a corpus");
  std::string suite, corpus;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("corpus", corpus, "Corpus file (default: the shipped corpus)");

  auto* print = app.add_subcommand("print", "Re-print a script in canonical form");
  std::string print_input;
  print->add_option("input", print_input, "Script file, or - for stdin")->required();
  app.require_subcommand(0, 1);
  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (deadline > 0) cfg.deadline_ms = deadline;

  if (*print) {
    auto s = load(print_input, {});
    if (!s) return 2;
    std::cout << dsl::print(*s);
    return 0;
  }

  if (*verify) {
    if (suite.empty()) {
      std::cerr << "usage: logalg verify SUITE [FILE]\n";
      return 1;
    }
    auto s = load(corpus.empty() ? cli::shipped_corpus_path() : corpus, {});
    if (!s) return 2;
    try {
      auto sum = cli::verify_corpus(*s, suite, cfg);
      if (cfg.format == "text") {
        for (const auto& c : sum.checks)
          std::cout << (c.pass ? "PASS " : "FAIL ") << c.invariant << " [" << c.item << "]"
                    << (c.witness.empty() ? "" : ": " + c.witness) << "\n";
      } else {
        cli::json doc{{"schema", 1}, {"summary", sum.to_json()}};
        std::cout << doc.dump(2) << "\n";
      }
      return sum.passed() ? 0 : 1;
    } catch (const Error& e) {
      std::cerr << "usage: " << e.what() << "\n";
      return 1;
    }
  }

  if (input.empty() && evals.empty()) {
    std::cerr << app.help();
    return 1;
  }
  auto s = load(input, evals);
  if (!s) return 2;
  auto vs = cli::run(*s, cfg);
  std::cout << cli::render(vs, cfg);
  for (const auto& v : vs)
    if (!v.ok) std::cerr << v.command << " " << v.error << "\n";
  return cli::exit_code(vs);
}
