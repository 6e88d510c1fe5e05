#include "logalg/dsl.hpp"

namespace logalg::dsl {

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::string tuple(const std::vector<Int>& t) {
  std::vector<std::string> xs;
  for (const auto& x : t) xs.push_back(x.get_str());
  return "(" + join(xs, ", ") + ")";
}

std::string tuples(const std::vector<std::vector<Int>>& ts) {
  std::vector<std::string> xs;
  for (const auto& t : ts) xs.push_back(tuple(t));
  return join(xs, " ");
}

std::string images(const std::vector<Image>& ims) {
  std::vector<std::string> xs;
  for (const auto& im : ims) xs.push_back(im.gen + " -> " + print_word(im.image));
  return "[" + join(xs, ", ") + "]";
}

std::string polys(const std::vector<Poly>& ps) {
  std::vector<std::string> xs;
  for (const auto& p : ps) xs.push_back(print_poly(p));
  return join(xs, ", ");
}

std::string monoid(const MonoidExpr& m);

std::string monoid_ref(const MonoidRef& r) {
  return r.inline_expr ? monoid(*r.inline_expr) : r.name;
}

std::string monoid(const MonoidExpr& m) {
  switch (m.kind) {
    case MonoidExpr::Kind::Literal: {
      std::vector<std::string> rels;
      for (const auto& r : m.relations) rels.push_back(print_word(r.lhs) + " = " + print_word(r.rhs));
      std::string s = "<" + join(m.names, ", ") + " |";
      if (!rels.empty()) s += " " + join(rels, ", ");
      return s + ">";
    }
    case MonoidExpr::Kind::Gens:
      return "gens " + tuples(m.columns) + (m.modulo.empty() ? "" : " mod " + tuples(m.modulo));
    case MonoidExpr::Kind::Solutions:
      return "solutions " + tuples(m.columns);
    case MonoidExpr::Kind::Replete:
      return "replete " + m.ref;
    case MonoidExpr::Kind::Saturate:
      return "saturate " + m.ref;
  }
  return "";
}

std::string prelog(const PrelogExpr& p) {
  std::string s;
  switch (p.kind) {
    case PrelogExpr::Kind::Free:
      return "free " + monoid_ref(p.P);
    case PrelogExpr::Kind::Chart:
      s = "chart " + monoid_ref(p.P);
      if (p.has_images) s += " -> " + monoid_ref(p.Q) + " " + images(p.images);
      break;
    case PrelogExpr::Kind::Ring:
      s = "ring " + monoid_ref(p.Q);
      break;
    case PrelogExpr::Kind::Logify:
      return "logify " + p.ref;
    case PrelogExpr::Kind::TrivialLocus:
      return "trivial-locus " + p.ref;
  }
  if (!p.ideal.empty()) s += " mod " + polys(p.ideal);
  return s;
}

std::string map(const MapExpr& m) {
  if (m.kind == MapExpr::Kind::Compose) return "= compose " + m.outer + " " + m.inner;
  std::string s = ": " + m.source + " -> " + m.target + " =";
  if (m.bare) return s + " " + images(m.chart);
  if (m.has_ring) s += " ring " + images(m.ring);
  if (m.has_chart) s += " chart " + images(m.chart);
  return s;
}

std::string module(const ModuleExpr& m) {
  if (m.kind == ModuleExpr::Kind::Omega) return "omega " + m.ring;
  std::string s = "over " + m.ring + " gens";
  if (!m.labels.empty()) s += " " + join(m.labels, ", ");
  if (!m.relations.empty()) s += " rels " + polys(m.relations);
  return s;
}

std::string sqz(const SqzExpr& e) {
  std::string s = e.kind == SqzExpr::Kind::Trivial ? "trivial " + e.base + " by " + e.module
                                                   : "quotient " + e.base + " by " + polys(e.ideal);
  if (e.characteristic) s += " char " + std::to_string(*e.characteristic);
  return s;
}

std::string point(const PointExpr& p) {
  std::vector<std::string> xs;
  for (const auto& c : p.coords) xs.push_back(c.get_str());
  return "(" + join(xs, ", ") + ")";
}

}  // namespace

std::string print_word(const Word& w) {
  if (w.empty()) return "0";
  std::vector<std::string> xs;
  for (const auto& t : w) xs.push_back((t.coef == 1 ? "" : std::to_string(t.coef) + " ") + t.gen);
  return join(xs, " + ");
}

std::string print_poly(const Poly& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& t = p[i];
    const bool neg = t.coef < 0;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    Scalar a = neg ? Scalar(-t.coef) : t.coef;
    std::vector<std::string> fs;
    if (a != 1 || t.factors.empty()) fs.push_back(a.get_str());
    for (const auto& [v, e] : t.factors) fs.push_back(e == 1 ? v : v + "^" + std::to_string(e));
    s += join(fs, " ");
  }
  return s;
}

std::string print(const Decl& d) {
  std::string head = std::string(to_string(d.kind)) + " " + d.name;
  std::string body;
  switch (d.kind) {
    case DeclKind::Monoid: body = " = " + monoid(std::get<MonoidExpr>(d.body)); break;
    case DeclKind::Prelog: body = " = " + prelog(std::get<PrelogExpr>(d.body)); break;
    case DeclKind::Map: body = " " + map(std::get<MapExpr>(d.body)); break;
    case DeclKind::Module: body = " = " + module(std::get<ModuleExpr>(d.body)); break;
    case DeclKind::Sqz: body = " = " + sqz(std::get<SqzExpr>(d.body)); break;
    case DeclKind::Point: body = " = " + point(std::get<PointExpr>(d.body)); break;
  }
  return head + body + ";";
}

std::string print(const Command& c) {
  std::string s = c.head;
  for (const auto& a : c.args) s += " " + (a.is_word ? "(" + print_word(a.word) + ")" : a.name);
  for (const auto& o : c.options) {
    s += " --" + o.key;
    if (!o.values.empty()) s += " " + join(o.values, ",");
  }
  return s + ";";
}

std::string print(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) {
    if (auto d = std::get_if<Decl>(&st.item))
      out += print(*d);
    else
      out += print(std::get<Command>(st.item));
    out += "\n";
  }
  return out;
}

}  // namespace logalg::dsl
