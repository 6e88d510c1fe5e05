#include <algorithm>

#include "logalg/cli.hpp"

namespace logalg::cli {

using namespace dsl;

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) fail(ErrorKind::ResolveError, std::string("unknown ") + what + " '" + n + "'");
  return static_cast<std::size_t>(it - names.begin());
}

IntMatrix from_columns(const std::vector<std::vector<Int>>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

// Images of every source generator, in order.
std::vector<Exponent> image_list(const std::vector<Image>& ims, const MonoidPresentation& src,
                                 const MonoidPresentation& tgt) {
  std::vector<std::optional<Exponent>> out(src.ngens());
  for (const auto& im : ims) {
    auto i = index_of(src.names(), im.gen, "generator");
    if (out[i]) fail(ErrorKind::InvalidArgument, "two images for generator '" + im.gen + "'");
    out[i] = to_exponent(im.image, tgt);
  }
  std::vector<Exponent> r;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i]) fail(ErrorKind::ResolveError, "no image for generator '" + src.names()[i] + "'");
    r.push_back(*out[i]);
  }
  return r;
}

Algebra algebra(const Field& k, const MonoidPresentation& q, const std::vector<Poly>& ideal) {
  Algebra bare(k, q);
  std::vector<Vec> gens;
  for (const auto& p : ideal) gens.push_back(to_poly(p, bare.ring()));
  return Algebra(k, q, gens);
}

}  // namespace

Exponent to_exponent(const Word& w, const MonoidPresentation& m) {
  Exponent e(m.ngens(), 0);
  for (const auto& t : w) e[index_of(m.names(), t.gen, "generator")] += t.coef;
  return e;
}

Vec to_poly(const Poly& p, const PolyRing& ring) {
  Vec out;
  for (const auto& t : p) {
    Exponent e(ring.nvars(), 0);
    for (const auto& [v, k] : t.factors) e[index_of(ring.names(), v, "variable")] += k;
    out = ring.add(out, ring.monomial(e, ring.field().normalize(t.coef)));
  }
  return out;
}

Vec to_module_element(const Poly& p, const PolyRing& ring, const std::vector<std::string>& labels) {
  Vec out;
  for (const auto& t : p) {
    Exponent e(ring.nvars(), 0);
    std::optional<std::size_t> comp;
    for (const auto& [v, k] : t.factors) {
      auto it = std::find(labels.begin(), labels.end(), v);
      if (it != labels.end()) {
        if (comp || k != 1) fail(ErrorKind::InvalidArgument, "module term must be linear in the generators");
        comp = static_cast<std::size_t>(it - labels.begin());
      } else {
        e[index_of(ring.names(), v, "variable")] += k;
      }
    }
    if (!comp) fail(ErrorKind::InvalidArgument, "module term without a generator");
    out = ring.add(out, ring.monomial(e, ring.field().normalize(t.coef), static_cast<std::uint32_t>(*comp)));
  }
  return out;
}

const Decl& Environment::decl(const std::string& name, DeclKind k) const {
  const Decl* d = script_->find(name);
  if (!d || d->kind != k)
    fail(ErrorKind::ResolveError, "no " + std::string(dsl::to_string(k)) + " named '" + name + "'");
  return *d;
}

MonoidPresentation Environment::build(const MonoidRef& r) {
  return r.inline_expr ? build(*r.inline_expr) : monoid(r.name);
}

MonoidPresentation Environment::build(const MonoidExpr& e) {
  switch (e.kind) {
    case MonoidExpr::Kind::Literal: {
      auto free = MonoidPresentation::free(e.names.size(), e.names);
      std::vector<Relation> rels;
      for (const auto& r : e.relations) rels.push_back({to_exponent(r.lhs, free), to_exponent(r.rhs, free)});
      return MonoidPresentation(e.names.size(), rels, e.names);
    }
    case MonoidExpr::Kind::Gens: {
      const std::size_t d = e.columns[0].size();
      return from_embedding(from_columns(e.columns, d), from_columns(e.modulo, d));
    }
    case MonoidExpr::Kind::Solutions: {
      const std::size_t m = e.columns[0].size();
      IntMatrix a(e.columns.size(), m);
      for (std::size_t r = 0; r < e.columns.size(); ++r)
        for (std::size_t c = 0; c < m; ++c) a(r, c) = e.columns[r][c];
      auto h = hilbert_basis(a).elements;
      std::sort(h.begin(), h.end());
      IntMatrix g(m, h.size());
      for (std::size_t c = 0; c < h.size(); ++c)
        for (std::size_t r = 0; r < m; ++r) g(r, c) = static_cast<long>(h[c][r]);
      return from_embedding(g, IntMatrix(m, 0));
    }
    case MonoidExpr::Kind::Replete:
      return repletion(monoid_map(e.ref)).replete;
    case MonoidExpr::Kind::Saturate:
      return saturate(monoid(e.ref));
  }
  fail(ErrorKind::InvalidArgument, "monoid expression");
}

MonoidPresentation Environment::monoid(const std::string& name) {
  if (auto it = monoids_.find(name); it != monoids_.end()) return it->second;
  auto m = build(std::get<MonoidExpr>(decl(name, DeclKind::Monoid).body));
  monoids_.emplace(name, m);
  return m;
}

MonoidHom Environment::monoid_map(const std::string& name) {
  if (auto it = monoid_maps_.find(name); it != monoid_maps_.end()) return it->second;
  const auto& e = std::get<MapExpr>(decl(name, DeclKind::Map).body);
  MonoidHom h;
  if (e.kind == MapExpr::Kind::Compose) {
    h = compose(monoid_map(e.outer), monoid_map(e.inner));
  } else {
    auto s = monoid(e.source), t = monoid(e.target);
    h = MonoidHom{s, t, image_list(e.chart, s, t)};
  }
  if (!h.is_well_defined()) fail(ErrorKind::InvalidArgument, "map '" + name + "' does not respect relations");
  monoid_maps_.emplace(name, h);
  return h;
}

bool Environment::identity_chart(const ChartPreLogRing& x) {
  const auto& phi = x.phi;
  if (phi.source.ngens() != phi.target.ngens()) return false;
  for (std::size_t i = 0; i < phi.images.size(); ++i)
    if (phi.images[i] != exp_unit(phi.target.ngens(), i)) return false;
  return phi.source.to_string() == phi.target.to_string();
}

ChartPreLogRing Environment::prelog(const std::string& name, std::uint64_t p) {
  if (auto it = prelogs_.find({name, p}); it != prelogs_.end()) return it->second;
  const auto& e = std::get<PrelogExpr>(decl(name, DeclKind::Prelog).body);
  const Field k(p);
  ChartPreLogRing x;
  switch (e.kind) {
    case PrelogExpr::Kind::Free:
      x = free_chart(k, build(e.P));
      break;
    case PrelogExpr::Kind::Chart: {
      auto P = build(e.P);
      if (!e.has_images) {
        x = ChartPreLogRing{algebra(k, P, e.ideal), P, identity_hom(P), false};
      } else {
        auto Q = build(e.Q);
        x = ChartPreLogRing{algebra(k, Q, e.ideal), P, MonoidHom{P, Q, image_list(e.images, P, Q)}, false};
      }
      break;
    }
    case PrelogExpr::Kind::Ring:
      x = trivial_chart(algebra(k, build(e.Q), e.ideal));
      break;
    case PrelogExpr::Kind::Logify:
      x = logify(prelog(e.ref, p)).log_chart;
      break;
    case PrelogExpr::Kind::TrivialLocus:
      x = trivial_locus(prelog(e.ref, p));
      break;
  }
  x.validate();
  prelogs_.emplace(std::make_pair(name, p), x);
  return x;
}

PreLogMorphism Environment::prelog_map(const std::string& name, std::uint64_t p) {
  if (auto it = prelog_maps_.find({name, p}); it != prelog_maps_.end()) return it->second;
  const auto& e = std::get<MapExpr>(decl(name, DeclKind::Map).body);
  PreLogMorphism f;
  if (e.kind == MapExpr::Kind::Compose) {
    f = compose(prelog_map(e.outer, p), prelog_map(e.inner, p));
  } else {
    auto X = prelog(e.source, p), Y = prelog(e.target, p);
    const bool ids = identity_chart(X) && identity_chart(Y);
    f.source = X;
    f.target = Y;
    const auto& QX = X.ring.monoid();
    const auto& QY = Y.ring.monoid();
    if (e.bare) {
      if (!ids) fail(ErrorKind::InvalidArgument, "a bare image list needs identity charts at both ends");
      f.monoid_part = MonoidHom{X.P, Y.P, image_list(e.chart, X.P, Y.P)};
      f.ring_part = MonoidHom{QX, QY, f.monoid_part.images};
    } else {
      if (e.has_chart)
        f.monoid_part = MonoidHom{X.P, Y.P, image_list(e.chart, X.P, Y.P)};
      else if (X.P.ngens() == 0)
        f.monoid_part = MonoidHom{X.P, Y.P, {}};
      else
        fail(ErrorKind::InvalidArgument, "map '" + name + "' needs chart images");
      if (e.has_ring)
        f.ring_part = MonoidHom{QX, QY, image_list(e.ring, QX, QY)};
      else if (ids)
        f.ring_part = MonoidHom{QX, QY, f.monoid_part.images};
      else
        fail(ErrorKind::InvalidArgument, "map '" + name + "' needs ring images");
    }
  }
  f.validate();
  prelog_maps_.emplace(std::make_pair(name, p), f);
  return f;
}

ModulePresentation Environment::module(const std::string& name, std::uint64_t p) {
  if (auto it = modules_.find({name, p}); it != modules_.end()) return it->second;
  const auto& e = std::get<ModuleExpr>(decl(name, DeclKind::Module).body);
  ModulePresentation m;
  if (e.kind == ModuleExpr::Kind::Omega) {
    m = omega_log(prelog_map(e.ring, p));
  } else {
    auto X = prelog(e.ring, p);
    std::vector<Vec> rels;
    for (const auto& r : e.relations) rels.push_back(to_module_element(r, X.ring.ring(), e.labels));
    m = ModulePresentation(X.ring, e.labels, rels);
  }
  modules_.emplace(std::make_pair(name, p), m);
  return m;
}

std::uint64_t Environment::sqz_characteristic(const std::string& name, std::uint64_t p) const {
  const auto& e = std::get<SqzExpr>(decl(name, DeclKind::Sqz).body);
  return e.characteristic.value_or(p);
}

LogSquareZero Environment::sqz(const std::string& name, std::uint64_t p) {
  p = sqz_characteristic(name, p);
  if (auto it = sqzs_.find({name, p}); it != sqzs_.end()) return it->second;
  const auto& e = std::get<SqzExpr>(decl(name, DeclKind::Sqz).body);
  auto X = prelog(e.base, p);
  LogSquareZero out;
  if (e.kind == SqzExpr::Kind::Trivial) {
    out = trivial_extension(X, module(e.module, p));
  } else {
    std::vector<Vec> J;
    for (const auto& q : e.ideal) J.push_back(to_poly(q, X.ring.ring()));
    auto ring = SquareZeroRing::from_quotient(X.ring, J);
    ChartPreLogRing base{ring.base(), X.P, X.phi, X.unit_tag};
    out = lift_chart(ring, base);
  }
  out.validate();
  sqzs_.emplace(std::make_pair(name, p), out);
  return out;
}

std::vector<Scalar> Environment::point(const std::string& name) const {
  return std::get<PointExpr>(decl(name, DeclKind::Point).body).coords;
}

json to_json(const FgAbelianGroup& g) {
  json t = json::array();
  for (const auto& x : g.torsion) {
    if (x.fits_slong_p())
      t.push_back(x.get_si());
    else
      t.push_back(x.get_str());
  }
  return {{"rank", g.free_rank}, {"torsion", t}};
}

json to_json(const MonoidPresentation& m) {
  json rels = json::array();
  for (const auto& r : m.relations()) rels.push_back({r.lhs, r.rhs});
  return {{"gens", m.names()}, {"rels", rels}};
}

json to_json(const ModulePresentation& m) {
  json rels = json::array();
  const auto& R = m.ring().ring();
  for (const auto& r : m.relations()) rels.push_back(R.to_string(r, m.labels()));
  return {{"gens", m.labels()}, {"rels", rels}};
}

}  // namespace logalg::cli
