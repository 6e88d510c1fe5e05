#include "logalg/kahler.hpp"

#include <mutex>

#include "logalg/error.hpp"

namespace logalg {

struct ModulePresentation::Cache {
  std::once_flag once;
  std::unique_ptr<GroebnerBasis> gb;
};

ModulePresentation::ModulePresentation() : cache_(std::make_shared<Cache>()) {}

ModulePresentation::ModulePresentation(Algebra ring, std::vector<std::string> labels,
                                       std::vector<Vec> relations)
    : ring_(std::move(ring)), labels_(std::move(labels)), cache_(std::make_shared<Cache>()) {
  for (auto& r : relations) {
    auto v = ring_.ring().normalize(std::move(r));
    if (v.empty()) continue;
    if (ring_.ring().max_comp(v) >= labels_.size())
      fail(ErrorKind::InvalidArgument, "relation uses an unknown generator");
    relations_.push_back(std::move(v));
  }
}

std::vector<Vec> ModulePresentation::submodule_generators() const {
  auto gens = relations_;
  for (const auto& g : ring_.defining_ideal())
    for (std::uint32_t c = 0; c < labels_.size(); ++c) gens.push_back(ring_.ring().with_comp(g, c));
  return gens;
}

const GroebnerBasis& ModulePresentation::gb() const {
  std::call_once(cache_->once, [&] {
    cache_->gb = std::make_unique<GroebnerBasis>(ring_.ring(), submodule_generators());
  });
  return *cache_->gb;
}

Vec ModulePresentation::reduce(const Vec& v) const { return gb().reduce(v); }
bool ModulePresentation::is_zero(const Vec& v) const { return reduce(v).empty(); }
bool ModulePresentation::equal(const Vec& a, const Vec& b) const {
  return is_zero(ring_.ring().sub(a, b));
}

bool ModulePresentation::is_zero_module() const {
  for (std::uint32_t c = 0; c < labels_.size(); ++c)
    if (!is_zero(ring_.ring().basis_vector(c))) return false;
  return true;
}

FMatrix ModulePresentation::evaluate(const std::vector<Scalar>& pt) const {
  const auto& R = ring_.ring();
  FMatrix m = fmatrix(relations_.size(), labels_.size());
  for (std::size_t i = 0; i < relations_.size(); ++i)
    for (std::uint32_t c = 0; c < labels_.size(); ++c)
      m[i][c] = R.evaluate(R.with_comp(R.component(relations_[i], c), 0), pt);
  return m;
}

std::string ModulePresentation::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < labels_.size(); ++i) s += (i ? ", " : "") + labels_[i];
  if (relations_.empty()) return s + ">";
  s += " |";
  for (std::size_t j = 0; j < relations_.size(); ++j)
    s += (j ? ", " : " ") + ring_.ring().to_string(relations_[j], labels_);
  return s + ">";
}

std::size_t evaluate_at_point(const ModulePresentation& m, const std::vector<Scalar>& pt) {
  if (!m.ring().is_point(pt)) fail(ErrorKind::NotAPoint, "point violates the ring relations");
  if (m.relations().empty()) return m.ngens();
  return m.ngens() - rank(m.ring().field(), m.evaluate(pt));
}

// --- maps --------------------------------------------------------------------------

Vec ModuleMap::apply(const Vec& v) const {
  const auto& R = target.ring().ring();
  Vec out;
  for (const auto& t : v) {
    if (t.comp >= images.size()) fail(ErrorKind::InvalidArgument, "module map arity");
    out = R.add(out, R.mul(R.monomial(t.exp, t.coef), images[t.comp]));
  }
  return out;
}

bool ModuleMap::is_well_defined() const {
  if (images.size() != source.ngens()) return false;
  for (const auto& r : source.relations())
    if (!target.is_zero(apply(r))) return false;
  // I e_c maps to I * image, zero because the target lives over the same ring
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  std::vector<Vec> im;
  for (const auto& v : f.images) im.push_back(g.apply(v));
  return ModuleMap{f.source, g.target, im};
}

bool certify_isomorphism(const ModuleMap& f, const ModuleMap& g) {
  if (!f.is_well_defined() || !g.is_well_defined()) return false;
  const auto& R = f.source.ring().ring();
  auto gf = compose(g, f), fg = compose(f, g);
  for (std::uint32_t c = 0; c < f.source.ngens(); ++c)
    if (!f.source.equal(gf.images[c], R.basis_vector(c))) return false;
  for (std::uint32_t c = 0; c < g.source.ngens(); ++c)
    if (!g.source.equal(fg.images[c], R.basis_vector(c))) return false;
  return true;
}

ModulePresentation cokernel(const ModuleMap& f) {
  auto rels = f.target.relations();
  rels.insert(rels.end(), f.images.begin(), f.images.end());
  return ModulePresentation(f.target.ring(), f.target.labels(), rels);
}

bool same_presentation(const ModulePresentation& a, const ModulePresentation& b) {
  if (a.ngens() != b.ngens()) return false;
  for (const auto& r : a.relations())
    if (!b.is_zero(r)) return false;
  for (const auto& r : b.relations())
    if (!a.is_zero(r)) return false;
  return true;
}

ModulePresentation base_change(const ModulePresentation& m, const MonoidHom& ring_part,
                               const Algebra& target) {
  if (!is_ring_map(ring_part, m.ring(), target))
    fail(ErrorKind::Incompatible, "base change along a map that is not a ring map");
  std::vector<Vec> images;
  for (const auto& e : ring_part.images) images.push_back(target.monomial(e));
  std::vector<Vec> rels;
  for (const auto& r : m.relations())
    rels.push_back(m.ring().ring().substitute(r, images, target.ring()));
  return ModulePresentation(target, m.labels(), rels);
}

// --- differentials -----------------------------------------------------------------

Vec differential(const Algebra& b, const Vec& p, std::uint32_t offset) {
  const auto& R = b.ring();
  Vec out;
  for (const auto& t : p) {
    if (t.comp != 0) fail(ErrorKind::InvalidArgument, "differential of a vector");
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (!t.exp[i]) continue;
      Term d{offset + static_cast<std::uint32_t>(i), t.exp, t.coef * t.exp[i]};
      --d.exp[i];
      out.push_back(std::move(d));
    }
  }
  return R.normalize(std::move(out));
}

namespace {

struct LabeledRelation {
  std::string origin;
  Vec rel;
};

std::vector<std::string> dx_labels(const Algebra& b) {
  std::vector<std::string> out;
  for (const auto& n : b.monoid().names()) out.push_back("d" + n);
  return out;
}

std::vector<LabeledRelation> ring_relations(const MonoidHom& ring_part, const Algebra& a,
                                            const Algebra& b) {
  std::vector<LabeledRelation> out;
  const auto& R = b.ring();
  for (const auto& g : b.defining_ideal())
    out.push_back({"d(" + R.to_string(g) + ")", differential(b, g)});
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    auto m = b.monomial(ring_part.images[i]);
    out.push_back({"d(" + a.monoid().names()[i] + ")", differential(b, m)});
  }
  return out;
}

std::vector<LabeledRelation> log_relations(const PreLogMorphism& f) {
  const auto& B = f.target.ring;
  const auto& R = B.ring();
  const auto& P = f.target.P;
  const std::uint32_t nb = static_cast<std::uint32_t>(B.nvars());
  const std::size_t m = P.ngens();
  auto out = ring_relations(f.ring_part, f.source.ring, B);
  for (std::size_t j = 0; j < m; ++j) {
    auto a = f.target.alpha(exp_unit(m, j));
    auto v = R.sub(R.with_comp(a, nb + static_cast<std::uint32_t>(j)), differential(B, a));
    out.push_back({"exchange " + P.names()[j], v});
  }
  auto dlog = [&](const Exponent& e) {
    Vec v;
    for (std::size_t j = 0; j < m; ++j)
      if (e[j]) v = R.add(v, R.constant(Scalar(static_cast<long>(e[j])), nb + j));
    return v;
  };
  for (std::size_t i = 0; i < f.source.P.ngens(); ++i)
    out.push_back({"dlog " + f.source.P.names()[i], dlog(f.monoid_part.images[i])});
  for (const auto& r : P.relations()) {
    Exponent diff(m);
    for (std::size_t j = 0; j < m; ++j) diff[j] = r.lhs[j] - r.rhs[j];
    Vec v;
    for (std::size_t j = 0; j < m; ++j)
      if (diff[j]) v = R.add(v, R.constant(Scalar(static_cast<long>(diff[j])), nb + j));
    out.push_back({"dlog(" + P.word(r.lhs) + " = " + P.word(r.rhs) + ")", v});
  }
  return out;
}

std::vector<std::string> log_labels(const PreLogMorphism& f) {
  auto labels = dx_labels(f.target.ring);
  for (const auto& n : f.target.P.names()) labels.push_back("dlog " + n);
  return labels;
}

std::vector<Vec> strip(const std::vector<LabeledRelation>& rels) {
  std::vector<Vec> out;
  for (const auto& r : rels) out.push_back(r.rel);
  return out;
}

}  // namespace

ModulePresentation omega_ring(const MonoidHom& ring_part, const Algebra& a, const Algebra& b) {
  if (!is_ring_map(ring_part, a, b))
    fail(ErrorKind::UnsupportedPresentation, "not a monomial ring map");
  return ModulePresentation(b, dx_labels(b), strip(ring_relations(ring_part, a, b)));
}

ModulePresentation omega_log(const PreLogMorphism& f) {
  f.validate();
  return ModulePresentation(f.target.ring, log_labels(f), strip(log_relations(f)));
}

ClosedForm monomial_closed_form(const PreLogMorphism& f) {
  f.validate();
  const auto& B = f.target.ring;
  const auto& R = B.ring();
  const std::size_t m = f.target.P.ngens();
  IntMatrix lat = f.monoid_part.matrix().hconcat(f.target.P.gp_presentation().relations);
  std::vector<std::string> dlog;
  for (const auto& n : f.target.P.names()) dlog.push_back("dlog " + n);
  std::vector<Vec> lat_rels;
  for (std::size_t c = 0; c < lat.cols(); ++c) {
    Vec v;
    for (std::size_t j = 0; j < m; ++j)
      if (lat(j, c) != 0) v = R.add(v, R.constant(Scalar(lat(j, c)), j));
    lat_rels.push_back(v);
  }
  ModulePresentation lattice_form(B, dlog, lat_rels);

  auto s = snf(lat);
  std::vector<std::size_t> kept;
  std::vector<Vec> rels;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank && abs(s.D(i, i)) == 1) continue;
    auto c = static_cast<std::uint32_t>(kept.size());
    if (i < s.rank) rels.push_back(R.constant(Scalar(s.D(i, i)), c));
    kept.push_back(i);
    labels.push_back("c" + std::to_string(i));
  }
  ModulePresentation module(B, labels, rels);
  std::vector<Vec> from, to;
  for (std::size_t j = 0; j < m; ++j) {
    Vec v;
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (s.U(kept[k], j) != 0) v = R.add(v, R.constant(Scalar(s.U(kept[k], j)), k));
    from.push_back(v);
  }
  for (auto i : kept) {
    Vec v;
    for (std::size_t j = 0; j < m; ++j)
      if (s.Uinv(j, i) != 0) v = R.add(v, R.constant(Scalar(s.Uinv(j, i)), j));
    to.push_back(v);
  }
  return ClosedForm{module, lattice_form, ModuleMap{lattice_form, module, from},
                    ModuleMap{module, lattice_form, to}};
}

bool closed_form_matches(const PreLogMorphism& f) {
  const auto& B = f.target.ring;
  const auto& R = B.ring();
  auto free_chart_ok = [](const ChartPreLogRing& x) {
    return x.ring.ideal().empty() && x.P.ngens() == x.ring.nvars() &&
           homs_equal(x.phi, identity_hom(x.ring.monoid()));
  };
  if (!free_chart_ok(f.source) || !free_chart_ok(f.target) ||
      f.ring_part.images != f.monoid_part.images)
    fail(ErrorKind::NotMonomial, "closed form needs (k[P], P, id) charts on both sides");
  auto omega = omega_log(f);
  auto cf = monomial_closed_form(f);
  const std::size_t n = B.nvars();
  std::vector<Vec> to_lat, from_lat;
  for (std::size_t i = 0; i < n; ++i)
    to_lat.push_back(R.with_comp(B.monomial(exp_unit(n, i)), static_cast<std::uint32_t>(i)));
  for (std::size_t j = 0; j < n; ++j) to_lat.push_back(R.basis_vector(j));
  for (std::size_t j = 0; j < n; ++j) from_lat.push_back(R.basis_vector(n + j));
  ModuleMap a{omega, cf.lattice_form, to_lat}, b{cf.lattice_form, omega, from_lat};
  return certify_isomorphism(a, b) && certify_isomorphism(cf.from_dlog, cf.to_dlog);
}

DerivationCheck check_derivation(const LogDerivation& der) {
  const auto& f = der.f;
  if (der.d.size() != f.target.ring.nvars() || der.d_flat.size() != f.target.P.ngens())
    return {false, "wrong number of values"};
  std::vector<Vec> images = der.d;
  images.insert(images.end(), der.d_flat.begin(), der.d_flat.end());
  ModuleMap m{ModulePresentation(f.target.ring, log_labels(f), {}), der.target, images};
  for (const auto& r : log_relations(f))
    if (!der.target.is_zero(m.apply(r.rel))) return {false, r.origin};
  return {};
}

ModuleMap derivation_map(const LogDerivation& der) {
  std::vector<Vec> images = der.d;
  images.insert(images.end(), der.d_flat.begin(), der.d_flat.end());
  return ModuleMap{omega_log(der.f), der.target, images};
}

}  // namespace logalg
