#include "logalg/prelog.hpp"

#include <algorithm>
#include <mutex>

#include "logalg/error.hpp"

namespace logalg {

struct Algebra::Cache {
  std::once_flag once;
  std::unique_ptr<GroebnerBasis> gb;
};

Algebra::Algebra() : Algebra(Field{}, MonoidPresentation{}) {}

Algebra::Algebra(Field k, MonoidPresentation q, std::vector<Vec> ideal)
    : k_(k), q_(std::move(q)), ring_(k, q_.names()), cache_(std::make_shared<Cache>()) {
  for (auto& p : ideal) {
    for (const auto& t : p)
      if (t.exp.size() != q_.ngens() || t.comp != 0)
        fail(ErrorKind::InvalidArgument, "ideal generator outside k[Q]");
    auto n = ring_.normalize(std::move(p));
    if (!n.empty()) ideal_.push_back(std::move(n));
  }
}

Algebra Algebra::ground(Field k) { return Algebra(k, MonoidPresentation{}); }

std::vector<Vec> Algebra::defining_ideal() const {
  std::vector<Vec> out;
  for (const auto& r : q_.relations())
    out.push_back(ring_.sub(ring_.monomial(r.lhs), ring_.monomial(r.rhs)));
  out.insert(out.end(), ideal_.begin(), ideal_.end());
  return out;
}

const GroebnerBasis& Algebra::gb() const {
  std::call_once(cache_->once, [&] {
    cache_->gb = std::make_unique<GroebnerBasis>(ring_, defining_ideal());
  });
  return *cache_->gb;
}

Vec Algebra::reduce(const Vec& p) const { return gb().reduce(p); }

bool Algebra::equal(const Vec& a, const Vec& b) const {
  return reduce(ring_.sub(a, b)).empty();
}

bool Algebra::is_zero_ring() const { return gb().contains_one(); }

bool Algebra::is_unit(const Vec& u) const {
  auto gens = defining_ideal();
  gens.push_back(u);
  return GroebnerBasis(ring_, gens).contains_one();
}

std::vector<std::size_t> Algebra::unit_generators() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (is_unit(ring_.variable(i))) out.push_back(i);
  return out;
}

Algebra Algebra::over(const Field& k) const {
  std::vector<Vec> id;
  PolyRing r(k, q_.names());
  for (const auto& p : ideal_) id.push_back(r.normalize(p));
  return Algebra(k, q_, id);
}

bool Algebra::is_point(const std::vector<Scalar>& pt) const {
  if (pt.size() != nvars()) return false;
  for (const auto& p : defining_ideal())
    if (ring_.evaluate(p, pt) != 0) return false;
  return true;
}

std::vector<std::vector<Scalar>> Algebra::points() const {
  std::vector<std::vector<Scalar>> out;
  const std::size_t n = nvars();
  std::vector<Scalar> unit(n, Scalar(1));
  if (is_point(unit)) out.push_back(unit);
  if (n > 12) return out;
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::vector<Scalar> pt(n);
    for (std::size_t i = 0; i < n; ++i) pt[i] = (mask >> i) & 1 ? 1 : 0;
    if (is_point(pt)) out.push_back(pt);
  }
  return out;
}

std::string Algebra::to_string() const {
  std::string s = k_.name() + "[" + q_.to_string() + "]";
  if (ideal_.empty()) return s;
  s += "/(";
  for (std::size_t i = 0; i < ideal_.size(); ++i)
    s += (i ? ", " : "") + ring_.to_string(ideal_[i]);
  return s + ")";
}

Vec map_element(const MonoidHom& ring_part, const Algebra& source, const Algebra& target,
                const Vec& p) {
  if (ring_part.images.size() != source.nvars())
    fail(ErrorKind::InvalidArgument, "ring map arity");
  std::vector<Vec> images;
  for (const auto& e : ring_part.images) images.push_back(target.monomial(e));
  return target.reduce(source.ring().substitute(p, images, target.ring()));
}

bool is_ring_map(const MonoidHom& ring_part, const Algebra& source, const Algebra& target) {
  if (ring_part.images.size() != source.nvars()) return false;
  for (const auto& e : ring_part.images)
    if (e.size() != target.nvars()) return false;
  for (const auto& g : source.defining_ideal())
    if (!map_element(ring_part, source, target, g).empty()) return false;
  return true;
}

// --- charts ------------------------------------------------------------------------

void ChartPreLogRing::validate() const {
  if (phi.source.ngens() != P.ngens() || phi.target.ngens() != ring.nvars())
    fail(ErrorKind::InvalidArgument, "structure map has the wrong shape");
  if (!phi.is_well_defined())
    fail(ErrorKind::InvalidArgument, "structure map does not respect relations");
}

std::string ChartPreLogRing::to_string() const {
  std::string s = "(" + ring.to_string() + ", " + P.to_string() + ", ";
  for (std::size_t j = 0; j < P.ngens(); ++j)
    s += (j ? ", " : "") + P.names()[j] + " -> " + ring.monoid().word(phi.images[j]);
  return s + (unit_tag ? ", log)" : ")");
}

ChartPreLogRing trivial_chart(const Algebra& a) {
  MonoidPresentation zero;
  return ChartPreLogRing{a, zero, MonoidHom{zero, a.monoid(), {}}, false};
}

ChartPreLogRing free_chart(const Field& k, const MonoidPresentation& p) {
  Algebra a(k, p);
  return ChartPreLogRing{a, p, identity_hom(p), false};
}

void PreLogMorphism::validate() const {
  source.validate();
  target.validate();
  if (!is_ring_map(ring_part, source.ring, target.ring))
    fail(ErrorKind::InvalidArgument, "ring part is not a ring map");
  if (monoid_part.images.size() != source.P.ngens() ||
      monoid_part.target.ngens() != target.P.ngens() || !monoid_part.is_well_defined())
    fail(ErrorKind::InvalidArgument, "monoid part is not a monoid map");
  for (std::size_t j = 0; j < source.P.ngens(); ++j) {
    auto e = exp_unit(source.P.ngens(), j);
    if (!target.ring.monoid().equivalent(target.phi.apply(monoid_part.apply(e)),
                                         ring_part.apply(source.phi.apply(e))))
      fail(ErrorKind::InvalidArgument,
           "structure maps do not commute at " + source.P.names()[j]);
  }
}

PreLogMorphism identity_morphism(const ChartPreLogRing& x) {
  return PreLogMorphism{x, x, identity_hom(x.ring.monoid()), identity_hom(x.P)};
}

PreLogMorphism compose(const PreLogMorphism& g, const PreLogMorphism& f) {
  return PreLogMorphism{f.source, g.target, compose(g.ring_part, f.ring_part),
                        compose(g.monoid_part, f.monoid_part)};
}

ChartPreLogRing over(const ChartPreLogRing& x, const Field& k) {
  auto y = x;
  y.ring = x.ring.over(k);
  return y;
}

PreLogMorphism over(const PreLogMorphism& f, const Field& k) {
  auto g = f;
  g.source = over(f.source, k);
  g.target = over(f.target, k);
  return g;
}

// --- log condition -----------------------------------------------------------------

UnitPreimage alpha_preimage_units(const ChartPreLogRing& x) {
  std::vector<std::size_t> gens;
  for (std::size_t j = 0; j < x.P.ngens(); ++j)
    if (x.ring.is_unit(x.alpha(exp_unit(x.P.ngens(), j)))) gens.push_back(j);
  return UnitPreimage{gens, submonoid(x.P, gens)};
}

namespace {

Exponent restrict_to(const Exponent& e, const std::vector<std::size_t>& coords) {
  Exponent out;
  for (auto c : coords) out.push_back(e[c]);
  return out;
}

Exponent pad(const Exponent& e, std::size_t before, std::size_t after) {
  Exponent out(before, 0);
  out.insert(out.end(), e.begin(), e.end());
  out.resize(before + e.size() + after, 0);
  return out;
}

Vec extend_vars(const Vec& p, std::size_t before, std::size_t after) {
  Vec out = p;
  for (auto& t : out) t.exp = pad(t.exp, before, after);
  return out;
}

}  // namespace

Logification logify(const ChartPreLogRing& x) {
  x.validate();
  const auto& Q = x.ring.monoid();
  auto F = alpha_preimage_units(x);
  auto ugens = x.ring.unit_generators();
  MonoidHom U = submonoid(Q, ugens);
  std::vector<Exponent> to_units;
  for (auto g : F.generators) {
    const auto& q = x.phi.images[g];
    for (std::size_t c = 0; c < q.size(); ++c)
      if (q[c] && std::find(ugens.begin(), ugens.end(), c) == ugens.end())
        fail(ErrorKind::Incompatible, "unit monomial outside the unit generators");
    to_units.push_back(restrict_to(q, ugens));
  }
  MonoidHom f_to_u{F.inclusion.source, U.source, to_units};
  auto po = pushout(F.inclusion, f_to_u);
  auto phi_images = x.phi.images;
  phi_images.insert(phi_images.end(), U.images.begin(), U.images.end());
  ChartPreLogRing chart{x.ring, po.object, MonoidHom{po.object, Q, phi_images}, true};
  auto sharp = sharpening(po.object);
  bool log = x.unit_tag && is_isomorphism(f_to_u);
  return Logification{chart, sharp.target, sharp, log};
}

MonoidHom relogification_map(const Logification& l) {
  auto again = logify(l.log_chart);
  const std::size_t n = l.characteristic.ngens(), total = again.characteristic.ngens();
  std::vector<Exponent> images;
  for (std::size_t j = 0; j < n; ++j) images.push_back(exp_unit(total, j));
  return MonoidHom{l.characteristic, again.characteristic, images};
}

ChartPreLogRing trivial_locus(const ChartPreLogRing& x) {
  x.validate();
  const auto& Q = x.ring.monoid();
  const std::size_t n = Q.ngens(), m = x.P.ngens();
  Embedding e = canonical_embedding(Q);
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(e.gens.column(i));
  auto names = Q.names();
  for (std::size_t j = 0; j < m; ++j) {
    IntVector v = e.gens * to_int_vector(x.phi.images[j]);
    for (auto& c : v) c = -c;
    cols.push_back(v);
    names.push_back(x.P.names()[j] + "_inv");
  }
  auto qgens = IntMatrix::from_columns(e.dim(), cols);
  MonoidPresentation Qp = from_embedding(qgens, e.rels, names);
  std::vector<Vec> ideal;
  for (const auto& p : x.ring.ideal()) ideal.push_back(extend_vars(p, 0, m));
  Algebra ring(x.ring.field(), Qp, ideal);

  std::vector<Relation> rels;
  for (const auto& r : x.P.relations()) rels.push_back({pad(r.lhs, 0, m), pad(r.rhs, 0, m)});
  for (std::size_t j = 0; j < m; ++j)
    rels.push_back({exp_add(exp_unit(2 * m, j), exp_unit(2 * m, m + j)), exp_zero(2 * m)});
  auto pnames = x.P.names();
  for (std::size_t j = 0; j < m; ++j) pnames.push_back(x.P.names()[j] + "_inv");
  MonoidPresentation Pgp(2 * m, rels, pnames);
  std::vector<Exponent> phi;
  for (std::size_t j = 0; j < m; ++j) phi.push_back(pad(x.phi.images[j], 0, m));
  for (std::size_t j = 0; j < m; ++j) phi.push_back(exp_unit(n + m, n + j));
  ChartPreLogRing out{ring, Pgp, MonoidHom{Pgp, Qp, phi}, x.unit_tag};
  out.validate();
  return out;
}

ChartPreLogRing inverse_image(const MonoidHom& ring_part, const Algebra& target,
                              const ChartPreLogRing& x) {
  if (!is_ring_map(ring_part, x.ring, target))
    fail(ErrorKind::Incompatible, "inverse image along a map that is not a ring map");
  auto rp = ring_part;
  rp.target = target.monoid();
  return ChartPreLogRing{target, x.P, compose(rp, x.phi), x.unit_tag};
}

ChartPreLogRing direct_image(const MonoidHom& ring_part, const Algebra& source,
                             const ChartPreLogRing& y) {
  if (!is_ring_map(ring_part, source, y.ring))
    fail(ErrorKind::Incompatible, "direct image along a map that is not a ring map");
  auto rp = ring_part;
  rp.source = source.monoid();
  auto fp = fiber_product(y.phi, rp);
  return ChartPreLogRing{source, fp.object, fp.to_second, y.unit_tag};
}

MonoidHom characteristic_map(const PreLogMorphism& f) {
  f.validate();
  auto l1 = logify(inverse_image(f.ring_part, f.target.ring, f.source));
  auto l2 = logify(f.target);
  const std::size_t m = f.source.P.ngens(), m2 = f.target.P.ngens();
  const std::size_t u = l1.log_chart.P.ngens() - m;
  if (l2.log_chart.P.ngens() != m2 + u) fail(ErrorKind::Incompatible, "unit blocks differ");
  std::vector<Exponent> images;
  for (std::size_t j = 0; j < m; ++j) images.push_back(pad(f.monoid_part.images[j], 0, u));
  for (std::size_t k = 0; k < u; ++k) images.push_back(exp_unit(m2 + u, m2 + k));
  MonoidHom h{l1.characteristic, l2.characteristic, images};
  if (!h.is_well_defined()) fail(ErrorKind::Incompatible, "characteristic map not well defined");
  return h;
}

bool is_strict(const PreLogMorphism& f) { return is_isomorphism(characteristic_map(f)); }

PreLogPushout pushout(const PreLogMorphism& f, const PreLogMorphism& g) {
  f.validate();
  g.validate();
  auto qs = pushout(f.ring_part, g.ring_part);
  auto ps = pushout(f.monoid_part, g.monoid_part);
  const std::size_t nb = f.target.ring.nvars(), nr = g.target.ring.nvars();
  std::vector<Vec> ideal;
  for (const auto& p : f.target.ring.ideal()) ideal.push_back(extend_vars(p, 0, nr));
  for (const auto& p : g.target.ring.ideal()) ideal.push_back(extend_vars(p, nb, 0));
  Algebra ring(f.target.ring.field(), qs.object, ideal);
  std::vector<Exponent> phi;
  for (const auto& e : f.target.phi.images) phi.push_back(pad(e, 0, nr));
  for (const auto& e : g.target.phi.images) phi.push_back(pad(e, nb, 0));
  ChartPreLogRing s{ring, ps.object, MonoidHom{ps.object, qs.object, phi},
                    f.target.unit_tag || g.target.unit_tag};
  s.validate();
  auto fix = [&](MonoidHom h, const MonoidPresentation& target) {
    h.target = target;
    return h;
  };
  PreLogMorphism b{f.target, s, fix(qs.from_first, qs.object), fix(ps.from_first, ps.object)};
  PreLogMorphism r{g.target, s, fix(qs.from_second, qs.object), fix(ps.from_second, ps.object)};
  return PreLogPushout{s, b, r};
}

}  // namespace logalg
