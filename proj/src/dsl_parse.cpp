#include <cctype>
#include <map>
#include <sstream>

#include "logalg/dsl.hpp"

namespace logalg::dsl {

namespace {

std::string describe(const std::set<std::string>& expected) {
  std::string s;
  for (const auto& e : expected) s += (s.empty() ? "" : ", ") + e;
  return s;
}

}  // namespace

ParseError::ParseError(Span at_, std::set<std::string> expected_, const std::string& msg,
                       ErrorKind kind)
    : Error(kind,
            std::to_string(at_.line) + ":" + std::to_string(at_.col) + ": " + msg +
                (expected_.empty() ? "" : " (expected " + describe(expected_) + ")")),
      at(at_),
      expected(std::move(expected_)) {}

const char* to_string(DeclKind k) {
  switch (k) {
    case DeclKind::Monoid: return "monoid";
    case DeclKind::Prelog: return "prelog";
    case DeclKind::Map: return "map";
    case DeclKind::Module: return "module";
    case DeclKind::Sqz: return "sqz";
    case DeclKind::Point: return "point";
  }
  return "?";
}

const Option* Command::option(const std::string& key) const {
  for (const auto& o : options)
    if (o.key == key) return &o;
  return nullptr;
}

const Decl* Script::find(const std::string& name) const {
  for (const auto& s : statements)
    if (auto d = std::get_if<Decl>(&s.item); d && d->name == name) return d;
  return nullptr;
}

std::vector<const Decl*> Script::decls(DeclKind k) const {
  std::vector<const Decl*> out;
  for (const auto& s : statements)
    if (auto d = std::get_if<Decl>(&s.item); d && d->kind == k) out.push_back(d);
  return out;
}

std::vector<const Command*> Script::commands() const {
  std::vector<const Command*> out;
  for (const auto& s : statements)
    if (auto c = std::get_if<Command>(&s.item)) out.push_back(c);
  return out;
}

namespace {

enum class Tok { Ident, Int, Opt, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
  std::size_t begin = 0, end = 0;  // byte offsets
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto adv = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    Token t{Tok::Punct, "", {line, col}, i, i};
    std::size_t n = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + n < src.size() && ident_char(src[i + n])) ++n;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      t.kind = Tok::Int;
    } else if (c == '-' && i + 2 < src.size() && src[i + 1] == '-' &&
               std::isalpha(static_cast<unsigned char>(src[i + 2]))) {
      n = 2;
      while (i + n < src.size() && (ident_char(src[i + n]) || src[i + n] == '-')) ++n;
      t.kind = Tok::Opt;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      n = 2;
    } else if (std::string(";=<>|,()[]+-*^/:").find(c) == std::string::npos) {
      throw ParseError(t.span, {}, "unexpected character '" + std::string(1, c) + "'");
    }
    t.text = src.substr(i, n);
    t.end = i + n;
    adv(n);
    out.push_back(t);
  }
  out.push_back({Tok::End, "", {line, col}, src.size(), src.size()});
  return out;
}

struct Signature {
  std::vector<std::string> args;  // kinds: monoid mmap prelog pmap sqz word suite sub:a|b
};

const std::map<std::string, Signature>& signatures() {
  static const std::map<std::string, Signature> s{
      {"gp", {{"monoid"}}},
      {"integral", {{"monoid"}}},
      {"saturated", {{"monoid"}}},
      {"units", {{"monoid"}}},
      {"sharp", {{"monoid"}}},
      {"pi1-bar", {{"monoid"}}},
      {"bar-homology", {{"monoid"}}},
      {"equal", {{"monoid", "word", "word"}}},
      {"nf", {{"monoid", "word"}}},
      {"exact", {{"mmap"}}},
      {"vsurj", {{"mmap"}}},
      {"replete", {{"mmap"}}},
      {"pushout", {{"mmap", "mmap"}}},
      {"logify", {{"prelog"}}},
      {"trivial-locus", {{"prelog"}}},
      {"strict", {{"pmap"}}},
      {"omega", {{"pmap"}}},
      {"cotangent", {{"pmap"}}},
      {"smooth", {{"pmap"}}},
      {"transitivity", {{"pmap", "pmap"}}},
      {"base-change", {{"pmap", "pmap"}}},
      {"sqz", {{"sub:verify|classify|roundtrip", "sqz"}}},
      {"lift", {{"pmap", "sqz"}}},
      {"verify", {{"suite"}}},
      {"show", {{"any"}}},
  };
  return s;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Script script() {
    Script s;
    while (peek().kind != Tok::End) s.statements.push_back(statement());
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> kinds_;  // name -> monoid mmap prelog pmap module sqz point

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is(const std::string& p, std::size_t k = 0) const {
    const auto& t = peek(k);
    return (t.kind == Tok::Punct || t.kind == Tok::Ident) && t.text == p;
  }
  bool accept(const std::string& p) {
    if (!is(p)) return false;
    next();
    return true;
  }
  [[noreturn]] void unexpected(std::set<std::string> expected) const {
    const auto& t = peek();
    std::string what = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, std::move(expected), "unexpected " + what);
  }
  void expect(const std::string& p) {
    if (!accept(p)) unexpected({"'" + p + "'"});
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) unexpected({"identifier"});
    return next().text;
  }
  // ident(-ident)* with no whitespace in between
  std::string joined_ident() {
    std::string s = ident();
    while (is("-") && peek().begin == toks_[pos_ - 1].end &&
           (peek(1).kind == Tok::Ident || peek(1).kind == Tok::Int) &&
           peek(1).begin == peek().end) {
      next();
      s += "-" + next().text;
    }
    return s;
  }
  Int integer() {
    if (peek().kind != Tok::Int) unexpected({"integer"});
    return Int(next().text);
  }
  Int signed_integer() {
    bool neg = accept("-");
    Int v = integer();
    return neg ? Int(-v) : v;
  }
  std::int64_t small(const Int& v, Span at) const {
    if (!v.fits_slong_p()) throw ParseError(at, {}, "integer out of range");
    return v.get_si();
  }
  Scalar rational() {
    bool neg = accept("-");
    Scalar q(integer());
    if (accept("/")) {
      Span at = peek().span;
      Int d = integer();
      if (d == 0) throw ParseError(at, {}, "zero denominator");
      q /= Scalar(d);
    }
    q.canonicalize();
    return neg ? Scalar(-q) : q;
  }

  // ---- name resolution -------------------------------------------------

  static ParseError resolve_error(Span at, const std::string& msg) {
    return ParseError(at, {}, msg, ErrorKind::ResolveError);
  }
  std::string lookup(const std::string& name, Span at) const {
    auto it = kinds_.find(name);
    if (it == kinds_.end()) throw resolve_error(at, "unknown name '" + name + "'");
    return it->second;
  }
  void require(const std::string& name, const std::string& kind, Span at) const {
    auto k = lookup(name, at);
    if (k != kind) throw resolve_error(at, "'" + name + "' is a " + k + ", expected a " + kind);
  }
  std::string ref(const std::string& kind) {
    Span at = peek().span;
    auto n = ident();
    require(n, kind, at);
    return n;
  }

  // ---- statements ------------------------------------------------------

  Statement statement() {
    static const std::set<std::string> decls{"monoid", "prelog", "map", "module", "sqz", "point"};
    const auto& t = peek();
    if (t.kind == Tok::Ident && decls.count(t.text) && peek(1).kind == Tok::Ident &&
        (is("=", 2) || (t.text == "map" && is(":", 2))))
      return {declaration()};
    if (t.kind != Tok::Ident) {
      std::set<std::string> ex(decls.begin(), decls.end());
      ex.insert("command");
      unexpected(ex);
    }
    return {command()};
  }

  Decl declaration() {
    Decl d;
    d.span = peek().span;
    auto kw = next().text;
    Span name_at = peek().span;
    d.name = ident();
    std::string kind = kw;
    if (kw == "monoid") {
      d.kind = DeclKind::Monoid;
      expect("=");
      d.body = monoid_expr();
    } else if (kw == "prelog") {
      d.kind = DeclKind::Prelog;
      expect("=");
      d.body = prelog_expr();
    } else if (kw == "map") {
      d.kind = DeclKind::Map;
      auto m = map_expr(kind);
      d.body = m;
    } else if (kw == "module") {
      d.kind = DeclKind::Module;
      expect("=");
      d.body = module_expr();
    } else if (kw == "sqz") {
      d.kind = DeclKind::Sqz;
      expect("=");
      d.body = sqz_expr();
    } else {
      d.kind = DeclKind::Point;
      expect("=");
      d.body = point_expr();
    }
    expect(";");
    if (kinds_.count(d.name)) throw resolve_error(name_at, "duplicate declaration of '" + d.name + "'");
    kinds_[d.name] = kind;
    return d;
  }

  Word word() {
    Word w;
    if (peek().kind == Tok::Int && peek().text == "0" && peek(1).kind != Tok::Ident) {
      next();
      return w;
    }
    for (;;) {
      WordTerm t;
      if (peek().kind == Tok::Int) {
        Span at = peek().span;
        t.coef = small(integer(), at);
      }
      if (peek().kind != Tok::Ident) unexpected({"identifier", "integer"});
      t.gen = next().text;
      w.push_back(t);
      if (!is("+")) break;
      const Token plus = next();
      if (peek().kind != Tok::Ident && peek().kind != Tok::Int)
        throw ParseError(plus.span, {"identifier", "integer"}, "dangling '+'");
    }
    return w;
  }

  static bool reserved(const std::string& s) {
    return s == "char" || s == "rels" || s == "by" || s == "mod";
  }

  Poly poly() {
    Poly p;
    bool neg = accept("-");
    for (;;) {
      PolyTerm t;
      bool any = false;
      if (peek().kind == Tok::Int) {
        t.coef = rational();
        any = true;
      }
      for (;;) {
        if (any && accept("*") && (peek().kind != Tok::Ident || reserved(peek().text)))
          unexpected({"identifier"});
        if (peek().kind != Tok::Ident || reserved(peek().text)) break;
        std::string v = next().text;
        std::int64_t e = 1;
        if (accept("^")) {
          Span at = peek().span;
          e = small(integer(), at);
        }
        t.factors.push_back({v, e});
        any = true;
      }
      if (!any) unexpected({"identifier", "integer"});
      if (neg) t.coef = -t.coef;
      p.push_back(t);
      if (!is("+") && !is("-")) break;
      const Token op = next();
      neg = op.text == "-";
      if (peek().kind != Tok::Ident && peek().kind != Tok::Int)
        throw ParseError(op.span, {"identifier", "integer"}, "dangling '" + op.text + "'");
    }
    return p;
  }

  std::vector<Poly> poly_list() {
    std::vector<Poly> out{poly()};
    while (accept(",")) out.push_back(poly());
    return out;
  }

  std::vector<Int> tuple() {
    expect("(");
    std::vector<Int> v;
    if (!is(")")) {
      v.push_back(signed_integer());
      while (accept(",")) v.push_back(signed_integer());
    }
    expect(")");
    return v;
  }

  std::vector<std::vector<Int>> tuples() {
    Span at = peek().span;
    std::vector<std::vector<Int>> out;
    while (is("(")) out.push_back(tuple());
    if (out.empty()) unexpected({"'('"});
    for (const auto& t : out)
      if (t.size() != out[0].size()) throw ParseError(at, {}, "tuples of different lengths");
    return out;
  }

  MonoidExpr monoid_expr() {
    MonoidExpr m;
    if (accept("<")) {
      m.kind = MonoidExpr::Kind::Literal;
      if (peek().kind == Tok::Ident) {
        m.names.push_back(ident());
        while (accept(",")) m.names.push_back(ident());
      }
      std::set<std::string> seen;
      for (const auto& n : m.names)
        if (!seen.insert(n).second) unexpected({"distinct generator names"});
      if (accept("|") && !is(">")) {
        for (;;) {
          RelationExpr r;
          r.lhs = word();
          expect("=");
          r.rhs = word();
          m.relations.push_back(r);
          if (!accept(",")) break;
        }
      }
      expect(">");
      return m;
    }
    if (accept("gens")) {
      m.kind = MonoidExpr::Kind::Gens;
      m.columns = tuples();
      if (accept("mod")) {
        Span at = peek().span;
        m.modulo = tuples();
        if (m.modulo[0].size() != m.columns[0].size())
          throw ParseError(at, {}, "relation tuples of the wrong length");
      }
      return m;
    }
    if (accept("solutions")) {
      m.kind = MonoidExpr::Kind::Solutions;
      m.columns = tuples();
      return m;
    }
    if (accept("replete")) {
      m.kind = MonoidExpr::Kind::Replete;
      m.ref = ref("mmap");
      return m;
    }
    if (accept("saturate")) {
      m.kind = MonoidExpr::Kind::Saturate;
      m.ref = ref("monoid");
      return m;
    }
    unexpected({"'<'", "'gens'", "'solutions'", "'replete'", "'saturate'"});
  }

  MonoidRef monoid_ref() {
    MonoidRef r;
    if (peek().kind == Tok::Ident && !is("gens") && !is("solutions") && !is("replete") &&
        !is("saturate")) {
      r.name = ref("monoid");
    } else {
      r.inline_expr = std::make_shared<MonoidExpr>(monoid_expr());
    }
    return r;
  }

  std::vector<Image> images() {
    expect("[");
    std::vector<Image> out;
    if (!is("]")) {
      for (;;) {
        Image im;
        im.gen = ident();
        expect("->");
        im.image = word();
        out.push_back(im);
        if (!accept(",")) break;
      }
    }
    expect("]");
    return out;
  }

  PrelogExpr prelog_expr() {
    PrelogExpr p;
    if (accept("free")) {
      p.kind = PrelogExpr::Kind::Free;
      p.P = monoid_ref();
      return p;
    }
    if (accept("chart")) {
      p.kind = PrelogExpr::Kind::Chart;
      p.P = monoid_ref();
      if (accept("->")) {
        p.Q = monoid_ref();
        p.has_images = true;
        p.images = images();
      }
      if (accept("mod")) p.ideal = poly_list();
      return p;
    }
    if (accept("ring")) {
      p.kind = PrelogExpr::Kind::Ring;
      p.Q = monoid_ref();
      if (accept("mod")) p.ideal = poly_list();
      return p;
    }
    if (accept("logify")) {
      p.kind = PrelogExpr::Kind::Logify;
      p.ref = ref("prelog");
      return p;
    }
    if (peek().kind == Tok::Ident && peek().text == "trivial") {
      Span at = peek().span;
      if (joined_ident() != "trivial-locus") throw ParseError(at, {"'trivial-locus'"}, "unknown form");
      p.kind = PrelogExpr::Kind::TrivialLocus;
      p.ref = ref("prelog");
      return p;
    }
    unexpected({"'free'", "'chart'", "'ring'", "'logify'", "'trivial-locus'"});
  }

  MapExpr map_expr(std::string& kind) {
    MapExpr m;
    if (accept("=")) {
      if (!accept("compose")) unexpected({"'compose'", "':'"});
      m.kind = MapExpr::Kind::Compose;
      Span at = peek().span;
      m.outer = ident();
      auto k1 = lookup(m.outer, at);
      at = peek().span;
      m.inner = ident();
      auto k2 = lookup(m.inner, at);
      if ((k1 != "mmap" && k1 != "pmap") || k1 != k2)
        throw resolve_error(at, "compose needs two maps of the same kind");
      kind = k1;
      return m;
    }
    expect(":");
    Span at = peek().span;
    m.source = ident();
    auto ks = lookup(m.source, at);
    expect("->");
    at = peek().span;
    m.target = ident();
    auto kt = lookup(m.target, at);
    if ((ks != "monoid" && ks != "prelog") || ks != kt)
      throw resolve_error(at, "map ends must both be monoids or both prelogs");
    kind = ks == "monoid" ? "mmap" : "pmap";
    expect("=");
    if (is("[")) {
      m.bare = true;
      m.chart = images();
      return m;
    }
    if (kind == "mmap") unexpected({"'['"});
    if (accept("ring")) {
      m.has_ring = true;
      m.ring = images();
    }
    if (accept("chart")) {
      m.has_chart = true;
      m.chart = images();
    }
    if (!m.has_ring && !m.has_chart) unexpected({"'['", "'ring'", "'chart'"});
    return m;
  }

  ModuleExpr module_expr() {
    ModuleExpr m;
    if (accept("omega")) {
      m.kind = ModuleExpr::Kind::Omega;
      m.ring = ref("pmap");
      return m;
    }
    if (!accept("over")) unexpected({"'over'", "'omega'"});
    m.kind = ModuleExpr::Kind::Over;
    m.ring = ref("prelog");
    expect("gens");
    if (peek().kind == Tok::Ident && !is("rels")) {
      m.labels.push_back(ident());
      while (accept(",")) m.labels.push_back(ident());
    }
    if (accept("rels")) m.relations = poly_list();
    return m;
  }

  SqzExpr sqz_expr() {
    SqzExpr s;
    if (accept("trivial")) {
      s.kind = SqzExpr::Kind::Trivial;
      s.base = ref("prelog");
      expect("by");
      s.module = ref("module");
    } else if (accept("quotient")) {
      s.kind = SqzExpr::Kind::Quotient;
      s.base = ref("prelog");
      expect("by");
      s.ideal = poly_list();
    } else {
      unexpected({"'trivial'", "'quotient'"});
    }
    if (accept("char")) {
      Span at = peek().span;
      s.characteristic = static_cast<std::uint64_t>(small(integer(), at));
    }
    return s;
  }

  PointExpr point_expr() {
    PointExpr p;
    expect("(");
    if (!is(")")) {
      p.coords.push_back(rational());
      while (accept(",")) p.coords.push_back(rational());
    }
    expect(")");
    return p;
  }

  Command command() {
    Command c;
    c.span = peek().span;
    c.head = joined_ident();
    auto it = signatures().find(c.head);
    if (it == signatures().end()) {
      std::set<std::string> ex;
      for (const auto& [k, v] : signatures()) ex.insert(k);
      throw ParseError(c.span, ex, "unknown command '" + c.head + "'");
    }
    for (const auto& kind : it->second.args) {
      Arg a;
      Span at = peek().span;
      if (kind == "word") {
        expect("(");
        a.is_word = true;
        a.word = word();
        expect(")");
      } else if (kind.rfind("sub:", 0) == 0) {
        a.name = ident();
        if (("|" + kind.substr(4) + "|").find("|" + a.name + "|") == std::string::npos)
          throw ParseError(at, {kind.substr(4)}, "unknown subcommand '" + a.name + "'");
      } else if (kind == "suite") {
        a.name = joined_ident();
      } else {
        a.name = ident();
        auto k = lookup(a.name, at);
        if (kind != "any" && k != kind)
          throw resolve_error(at, "'" + a.name + "' is a " + k + ", expected a " + kind);
      }
      c.args.push_back(a);
    }
    while (peek().kind == Tok::Opt) {
      Option o;
      o.key = next().text.substr(2);
      auto value = [&] {
        if (peek().kind == Tok::Int) return next().text;
        return joined_ident();
      };
      if (peek().kind == Tok::Int || peek().kind == Tok::Ident) {
        o.values.push_back(value());
        while (accept(",")) {
          if (peek().kind != Tok::Int && peek().kind != Tok::Ident) unexpected({"option value"});
          o.values.push_back(value());
        }
      }
      c.options.push_back(o);
    }
    if (!is(";")) {
      std::set<std::string> ex{"';'", "option"};
      unexpected(ex);
    }
    next();
    return c;
  }
};

}  // namespace

Script parse(const std::string& source) {
  Parser p(source);
  return p.script();
}

}  // namespace logalg::dsl
