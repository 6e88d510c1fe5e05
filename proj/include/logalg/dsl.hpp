#pragma once

// The .logalg language. A script is a sequence of `;`-terminated
// statements, each a declaration
//
//   monoid M = <a, b | a + b = 2 a>;       monoid E = gens (1,0) (1,1);
//   monoid H = solutions (1,1,-2);         monoid R = replete f;
//   prelog X = free M;                     prelog Y = chart P -> Q [p -> x] mod x^2 - x;
//   prelog Z = ring Q mod x^2;             prelog L = logify X;
//   map f : M -> N = [a -> 2 b];           map g : X -> Y = ring [..] chart [..];
//   map h = compose g f;
//   module J = over X gens e rels t e;     module O = omega f;
//   sqz E = quotient X by x^2 char 3;      sqz T = trivial X by J;
//   point p = (0, 1/2);
//
// or a command `head args... --opt value;` where args are names or
// parenthesized words `(2 a + b)`. Comments run from `#` to end of line.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "logalg/error.hpp"
#include "logalg/exactla.hpp"
#include "logalg/field.hpp"

namespace logalg::dsl {

struct Span {
  std::size_t line = 1, col = 1;
  friend bool operator==(const Span&, const Span&) = default;
};

class ParseError : public Error {
 public:
  ParseError(Span at, std::set<std::string> expected, const std::string& msg,
             ErrorKind kind = ErrorKind::ParseError);
  Span at;
  std::set<std::string> expected;
};

// k * name, summed; empty means the identity.
struct WordTerm {
  std::int64_t coef = 1;
  std::string gen;
  friend bool operator==(const WordTerm&, const WordTerm&) = default;
};
using Word = std::vector<WordTerm>;

struct RelationExpr {
  Word lhs, rhs;
  friend bool operator==(const RelationExpr&, const RelationExpr&) = default;
};

struct Image {
  std::string gen;
  Word image;
  friend bool operator==(const Image&, const Image&) = default;
};

// coef * prod name^power; the same shape serves ring elements and module
// elements (exactly one generator label per term).
struct PolyTerm {
  Scalar coef = 1;
  std::vector<std::pair<std::string, std::int64_t>> factors;
  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};
using Poly = std::vector<PolyTerm>;

struct MonoidExpr;
// A monoid operand: a declared name or an inline expression.
struct MonoidRef {
  std::string name;
  std::shared_ptr<MonoidExpr> inline_expr;
};

struct MonoidExpr {
  enum class Kind { Literal, Gens, Solutions, Replete, Saturate };
  Kind kind = Kind::Literal;
  std::vector<std::string> names;         // Literal
  std::vector<RelationExpr> relations;    // Literal
  std::vector<std::vector<Int>> columns;  // Gens: generators; Solutions: rows
  std::vector<std::vector<Int>> modulo;   // Gens: lattice relations
  std::string ref;                        // Replete: map; Saturate: monoid
};

struct PrelogExpr {
  enum class Kind { Free, Chart, Ring, Logify, TrivialLocus };
  Kind kind = Kind::Free;
  MonoidRef P, Q;              // Free uses P; Ring uses Q; Chart both
  bool has_images = false;
  std::vector<Image> images;   // P -> Q on generators
  std::vector<Poly> ideal;
  std::string ref;             // Logify, TrivialLocus
};

struct MapExpr {
  enum class Kind { Lists, Compose };
  Kind kind = Kind::Lists;
  std::string source, target;
  bool has_ring = false, has_chart = false;
  std::vector<Image> ring, chart;  // a bare list is stored in chart
  bool bare = false;
  std::string outer, inner;        // Compose: outer after inner
};

struct ModuleExpr {
  enum class Kind { Over, Omega };
  Kind kind = Kind::Over;
  std::string ring;  // a prelog, or the map for Omega
  std::vector<std::string> labels;
  std::vector<Poly> relations;
};

struct SqzExpr {
  enum class Kind { Trivial, Quotient };
  Kind kind = Kind::Trivial;
  std::string base;         // prelog
  std::string module;       // Trivial
  std::vector<Poly> ideal;  // Quotient
  std::optional<std::uint64_t> characteristic;
};

struct PointExpr {
  std::vector<Scalar> coords;
};

enum class DeclKind { Monoid, Prelog, Map, Module, Sqz, Point };
const char* to_string(DeclKind k);

struct Decl {
  DeclKind kind;
  std::string name;
  Span span;
  std::variant<MonoidExpr, PrelogExpr, MapExpr, ModuleExpr, SqzExpr, PointExpr> body;
};

struct Arg {
  bool is_word = false;
  std::string name;
  Word word;
};

struct Option {
  std::string key;                  // without the dashes
  std::vector<std::string> values;  // comma separated; may be empty (a flag)
};

struct Command {
  std::string head;  // e.g. "bar-homology", "sqz"
  std::vector<Arg> args;
  std::vector<Option> options;
  Span span;
  const Option* option(const std::string& key) const;
};

struct Statement {
  std::variant<Decl, Command> item;
};

struct Script {
  std::vector<Statement> statements;
  const Decl* find(const std::string& name) const;
  std::vector<const Decl*> decls(DeclKind k) const;
  std::vector<const Command*> commands() const;
};

// Syntax, then name resolution: names unique, references declared earlier
// with the right kind. Throws ParseError (kind ParseError or ResolveError).
Script parse(const std::string& source);

// Canonical text; parse(print(s)) prints identically.
std::string print(const Script& s);
std::string print(const Decl& d);
std::string print(const Command& c);
std::string print_word(const Word& w);
std::string print_poly(const Poly& p);

}  // namespace logalg::dsl
