#pragma once

// Evaluation of .logalg scripts: declarations are built lazily per base
// field, commands produce Verdicts, suites check invariants over a corpus.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logalg/dsl.hpp"
#include "logalg/sqzero.hpp"

namespace logalg::cli {

using json = nlohmann::json;

struct Config {
  std::uint64_t characteristic = 0;
  std::string mode = "point";  // point | exact
  std::size_t max_gb = Limits{}.max_gb;
  std::size_t max_hilbert = Limits{}.max_hilbert;
  std::optional<std::int64_t> deadline_ms;  // per command
  std::string format = "json";  // json | text
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  bool timing = false;

  Limits limits() const;
};

struct Verdict {
  std::string command;
  bool ok = true;
  std::string error_kind, error;
  std::string summary;
  json result;
  std::uint64_t characteristic = 0;
  std::string mode;
  std::optional<double> timing_ms;

  json to_json() const;
  static Verdict from_json(const json& j);
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Builds declared objects on demand. Monoids do not depend on the field;
// everything else is cached per characteristic.
class Environment {
 public:
  explicit Environment(const dsl::Script& s) : script_(&s) {}

  const dsl::Script& script() const { return *script_; }
  MonoidPresentation monoid(const std::string& name);
  MonoidHom monoid_map(const std::string& name);
  ChartPreLogRing prelog(const std::string& name, std::uint64_t p);
  PreLogMorphism prelog_map(const std::string& name, std::uint64_t p);
  ModulePresentation module(const std::string& name, std::uint64_t p);
  LogSquareZero sqz(const std::string& name, std::uint64_t p);
  // The declared characteristic of an extension, or p.
  std::uint64_t sqz_characteristic(const std::string& name, std::uint64_t p) const;
  std::vector<Scalar> point(const std::string& name) const;
  // Free or `chart M`: P = Q with phi the identity.
  static bool identity_chart(const ChartPreLogRing& x);

 private:
  const dsl::Decl& decl(const std::string& name, dsl::DeclKind k) const;
  MonoidPresentation build(const dsl::MonoidExpr& e);
  MonoidPresentation build(const dsl::MonoidRef& r);

  const dsl::Script* script_;
  std::map<std::string, MonoidPresentation> monoids_;
  std::map<std::string, MonoidHom> monoid_maps_;
  std::map<std::pair<std::string, std::uint64_t>, ChartPreLogRing> prelogs_;
  std::map<std::pair<std::string, std::uint64_t>, PreLogMorphism> prelog_maps_;
  std::map<std::pair<std::string, std::uint64_t>, ModulePresentation> modules_;
  std::map<std::pair<std::string, std::uint64_t>, LogSquareZero> sqzs_;
};

Exponent to_exponent(const dsl::Word& w, const MonoidPresentation& m);
Vec to_poly(const dsl::Poly& p, const PolyRing& ring);
// Exactly one generator label of degree one per term.
Vec to_module_element(const dsl::Poly& p, const PolyRing& ring,
                      const std::vector<std::string>& labels);

json to_json(const FgAbelianGroup& g);
json to_json(const MonoidPresentation& m);
json to_json(const ModulePresentation& m);

Verdict run_command(Environment& env, const dsl::Command& c, const Config& cfg);
// Commands in order; with cfg.jobs > 1 independent commands run
// concurrently, each worker with its own Environment.
std::vector<Verdict> run(const dsl::Script& s, const Config& cfg);

// 0 all ok, 3 some resource cap hit, 1 any other command error.
int exit_code(const std::vector<Verdict>& vs);
std::string render(const std::vector<Verdict>& vs, const Config& cfg);

struct SuiteCheck {
  std::string invariant;
  std::string item;
  bool pass = false;
  std::string witness;
};

struct SuiteSummary {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool passed() const;
  std::size_t count(const std::string& invariant) const;
  json to_json() const;
};

const std::vector<std::string>& suite_names();
// InvalidArgument for an empty or unknown suite name.
SuiteSummary verify_corpus(const dsl::Script& corpus, const std::string& suite, const Config& cfg);
// The shipped corpus ($LOGALG_CORPUS or the source tree).
std::string shipped_corpus_path();
SuiteSummary verify_corpus(const std::string& suite, const Config& cfg = {});

}  // namespace logalg::cli
