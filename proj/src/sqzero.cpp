#include "logalg/sqzero.hpp"

#include <set>

#include "logalg/error.hpp"

namespace logalg {

namespace {

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

// Module of an ideal J = (g_1..g_m) of R, presented on the g_i.
std::vector<Vec> ideal_relations(const Algebra& r, const std::vector<Vec>& gens) {
  const auto& R = r.ring();
  auto all = gens;
  for (const auto& g : r.defining_ideal()) all.push_back(g);
  std::vector<Vec> out;
  for (const auto& s : syzygies(R, all, 1)) {
    Vec v;
    for (const auto& t : s)
      if (t.comp < gens.size()) v.push_back(t);
    v = R.normalize(v);
    if (!v.empty()) out.push_back(v);
  }
  return out;
}

}  // namespace

// --- the ring -------------------------------------------------------------------

SquareZeroRing::SquareZeroRing(Algebra S, ModulePresentation J, std::vector<Vec> eps)
    : s_(std::move(S)), j_(std::move(J)), eps_(std::move(eps)) {
  if (eps_.empty()) eps_.resize(s_.defining_ideal().size());
  if (eps_.size() != s_.defining_ideal().size())
    fail(ErrorKind::InvalidArgument, "one eps value per defining generator of S");
  for (auto& e : eps_) e = j_.reduce(e);
}

SquareZeroRing SquareZeroRing::from_quotient(const Algebra& r, const std::vector<Vec>& J) {
  const auto& R = r.ring();
  for (std::size_t a = 0; a < J.size(); ++a)
    for (std::size_t b = a; b < J.size(); ++b)
      if (!r.reduce(R.mul(J[a], J[b])).empty())
        fail(ErrorKind::InvalidArgument,
             "J^2 != 0: (" + R.to_string(J[a]) + ")*(" + R.to_string(J[b]) + ") survives");
  auto ideal = r.ideal();
  ideal.insert(ideal.end(), J.begin(), J.end());
  Algebra s(r.field(), r.monoid(), ideal);
  ModulePresentation jm(s, numbered("j", J.size()), ideal_relations(r, J));
  auto all = J;
  for (const auto& g : r.defining_ideal()) all.push_back(g);
  std::vector<Vec> eps;
  for (const auto& h : s.defining_ideal()) {
    auto c = lift(R, all, 1, h);
    if (!c) fail(ErrorKind::InvalidArgument, "defining generator outside I_R + J");
    Vec v;
    for (std::size_t i = 0; i < J.size(); ++i)
      v = R.add(v, R.with_comp((*c)[i], static_cast<std::uint32_t>(i)));
    eps.push_back(v);
  }
  SquareZeroRing out(s, jm, eps);
  out.carrier_ = r;
  out.carrier_ideal_ = J;
  return out;
}

Vec SquareZeroRing::epsilon(const Vec& h) const {
  if (h.empty()) return {};
  const auto& R = s_.ring();
  auto c = lift(R, s_.defining_ideal(), 1, h);
  if (!c) fail(ErrorKind::InvalidArgument, "not in the defining ideal: " + R.to_string(h));
  Vec out;
  for (std::size_t l = 0; l < eps_.size(); ++l) out = R.add(out, R.mul((*c)[l], eps_[l]));
  return j_.reduce(out);
}

Vec SquareZeroRing::cocycle(const Vec& a, const Vec& b) const {
  auto prod = s_.ring().mul(a, b);
  return epsilon(s_.ring().sub(prod, s_.reduce(prod)));
}

bool SquareZeroRing::is_well_defined() const {
  const auto& R = s_.ring();
  const auto& gens = s_.defining_ideal();
  if (gens.empty()) return true;
  for (const auto& syz : syzygies(R, gens, 1)) {
    Vec v;
    for (std::uint32_t l = 0; l < gens.size(); ++l)
      v = R.add(v, R.mul(R.with_comp(R.component(syz, l), 0), eps_[l]));
    if (!j_.is_zero(v)) return false;
  }
  return true;
}

bool SquareZeroRing::is_split() const {
  for (const auto& e : eps_)
    if (!j_.is_zero(e)) return false;
  return true;
}

SqzElement SquareZeroRing::element(const Vec& s, const Vec& j) const {
  // a representative s of its class contributes eps(s - NF(s)) to J
  auto nf = s_.reduce(s);
  auto shift = epsilon(s_.ring().sub(s, nf));
  return {nf, j_.reduce(s_.ring().add(j, shift))};
}

SqzElement SquareZeroRing::one() const { return {s_.ring().constant(1), {}}; }

SqzElement SquareZeroRing::add(const SqzElement& a, const SqzElement& b) const {
  const auto& R = s_.ring();
  return {R.add(a.s, b.s), R.add(a.j, b.j)};
}

SqzElement SquareZeroRing::sub(const SqzElement& a, const SqzElement& b) const {
  const auto& R = s_.ring();
  return {R.sub(a.s, b.s), R.sub(a.j, b.j)};
}

SqzElement SquareZeroRing::mul(const SqzElement& a, const SqzElement& b) const {
  const auto& R = s_.ring();
  auto j = R.add(R.mul(a.s, b.j), R.mul(b.s, a.j));
  return element(R.mul(a.s, b.s), j);
}

SqzElement SquareZeroRing::pow(const SqzElement& a, std::int64_t n) const {
  SqzElement out = one(), base = a;
  for (; n > 0; n >>= 1) {
    if (n & 1) out = mul(out, base);
    if (n > 1) base = mul(base, base);
  }
  return out;
}

SqzElement SquareZeroRing::evaluate(const Vec& p, const std::vector<SqzElement>& images) const {
  const auto& R = s_.ring();
  SqzElement out;
  for (const auto& t : p) {
    SqzElement term{R.constant(t.coef), {}};
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i]) term = mul(term, pow(images.at(i), t.exp[i]));
    out = add(out, term);
  }
  return out;
}

std::vector<SqzElement> SquareZeroRing::variables() const {
  std::vector<SqzElement> out;
  for (std::size_t i = 0; i < s_.nvars(); ++i) out.push_back(element(s_.ring().variable(i)));
  return out;
}

SqzElement SquareZeroRing::monomial(const Exponent& e) const {
  return evaluate(s_.ring().monomial(e), variables());
}

bool SquareZeroRing::equal(const SqzElement& a, const SqzElement& b) const {
  return s_.equal(a.s, b.s) && j_.equal(a.j, b.j);
}

std::string SquareZeroRing::to_string(const SqzElement& a) const {
  return "(" + s_.ring().to_string(a.s) + ", " + s_.ring().to_string(a.j, j_.labels()) + ")";
}

// --- k-bases ---------------------------------------------------------------------

KBasis k_basis(const ModulePresentation& m) {
  const auto& R = m.ring().ring();
  KBasis out{m, {}};
  std::set<std::pair<std::uint32_t, Exponent>> seen;
  std::vector<Vec> queue;
  for (std::uint32_t c = 0; c < m.ngens(); ++c) queue.push_back(R.basis_vector(c));
  while (!queue.empty()) {
    Vec mono = queue.back();
    queue.pop_back();
    if (!seen.insert({mono.front().comp, mono.front().exp}).second) continue;
    if (m.reduce(mono) != mono) continue;
    out.basis.push_back(mono);
    if (out.basis.size() > limits().max_enumeration)
      fail(ErrorKind::TooLarge, "module is not finite dimensional within the enumeration cap");
    for (std::size_t i = 0; i < R.nvars(); ++i)
      queue.push_back(R.mul(R.variable(i), mono));
  }
  return out;
}

std::vector<Scalar> KBasis::coords(const Vec& v) const {
  std::vector<Scalar> out(basis.size());
  for (const auto& t : module.reduce(v)) {
    std::size_t i = 0;
    while (i < basis.size() &&
           !(basis[i].front().comp == t.comp && basis[i].front().exp == t.exp))
      ++i;
    if (i == basis.size()) fail(ErrorKind::InvalidArgument, "normal form outside the k-basis");
    out[i] = t.coef;
  }
  return out;
}

// --- log structure ---------------------------------------------------------------

namespace {

SqzElement alpha_word(const LogSquareZero& e, const Exponent& w) {
  SqzElement out = e.ring.one();
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k]) out = e.ring.mul(out, e.ring.pow(e.alpha.at(k), w[k]));
  return out;
}

// Chart of R on the generators of Q, through an inverse of pi_flat.
std::vector<SqzElement> chart_on_q(const LogSquareZero& e) {
  auto inv = find_inverse(e.pi_flat);
  if (!inv) fail(ErrorKind::NotStrict, "chart of R does not lift the chart of S isomorphically");
  std::vector<SqzElement> out;
  for (const auto& w : inv->images) out.push_back(alpha_word(e, w));
  return out;
}

SqzElement chart_word(const SquareZeroRing& r, const std::vector<SqzElement>& a, const Exponent& w) {
  SqzElement out = r.one();
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k]) out = r.mul(out, r.pow(a.at(k), w[k]));
  return out;
}

IntMatrix zeros(std::size_t r, std::size_t c) { return IntMatrix(r, c); }

IntMatrix from_exponents(std::size_t rows, const std::vector<Exponent>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = static_cast<long>(cols[c][r]);
  return m;
}

// Units of the source mapped into the units of the target, as exponents
// over the unit generators of the target.
std::vector<Exponent> unit_map(const MonoidHom& f, const Units& us, const Units& ut) {
  std::vector<Exponent> out;
  for (auto u : us.unit_generators) {
    auto w = find_preimage(ut.inclusion, f.images[u]);
    if (!w) fail(ErrorKind::Incompatible, "a unit does not map into the units");
    out.push_back(*w);
  }
  return out;
}

PreLogMorphism structure_map(const ChartPreLogRing& base) {
  MonoidPresentation none;
  auto k = base.ring.field();
  return PreLogMorphism{free_chart(k, none), base, MonoidHom{none, base.ring.monoid(), {}},
                        MonoidHom{none, base.P, {}}};
}

}  // namespace

void LogSquareZero::validate() const {
  const auto& S = ring.base();
  if (S.to_string() != base.ring.to_string())
    fail(ErrorKind::Incompatible, "square-zero ring and chart have different bases");
  if (pi_flat.source.ngens() != P.ngens() || pi_flat.target.ngens() != base.P.ngens() ||
      !pi_flat.is_well_defined())
    fail(ErrorKind::Incompatible, "pi_flat is not a homomorphism P -> Q");
  if (alpha.size() != P.ngens()) fail(ErrorKind::Incompatible, "one chart value per generator of P");
  for (std::size_t p = 0; p < alpha.size(); ++p)
    if (!S.equal(alpha[p].s, S.monomial(base.phi.apply(pi_flat.images[p]))))
      fail(ErrorKind::Incompatible, "chart of R does not lift the chart of S at " + P.names()[p]);
  for (const auto& r : P.relations())
    if (!ring.equal(alpha_word(*this, r.lhs), alpha_word(*this, r.rhs)))
      fail(ErrorKind::Incompatible, "chart of R breaks " + P.word(r.lhs) + " = " + P.word(r.rhs));
}

LogSquareZero lift_chart(const SquareZeroRing& ring, const ChartPreLogRing& base,
                         std::vector<Vec> delta) {
  const std::size_t m = base.P.ngens();
  delta.resize(m);
  LogSquareZero e{ring, base, base.P, identity_hom(base.P), {}};
  for (std::size_t j = 0; j < m; ++j) {
    auto mono = ring.monomial(base.phi.images[j]);
    e.alpha.push_back(ring.element(mono.s, ring.base().ring().add(mono.j, delta[j])));
  }
  e.validate();
  return e;
}

LogSquareZero trivial_extension(const ChartPreLogRing& x, const ModulePresentation& j) {
  return lift_chart(SquareZeroRing(x.ring, j, {}), x);
}

StrictExactReport verify_strict_exact(const LogSquareZero& e) {
  e.validate();
  const auto& Q = e.base.P;
  if (!is_integral(e.P)) fail(ErrorKind::NotIntegral, "P is not integral");
  if (!is_integral(Q)) fail(ErrorKind::NotIntegral, "Q is not integral");
  StrictExactReport rep;
  if (auto w = exactness_witness(e.pi_flat)) {
    rep.witness = "element " + to_string(*w) + " of P^gp lands in Q but not in P";
    return rep;
  }
  // Q = P (+)_{P^x} Q^x
  auto up = units(e.P), uq = units(Q);
  MonoidHom u{up.submonoid, uq.submonoid, unit_map(e.pi_flat, up, uq)};
  auto po = pushout(up.inclusion, u);
  auto images = e.pi_flat.images;
  for (const auto& x : uq.inclusion.images) images.push_back(x);
  MonoidHom induced{po.object, Q, images};
  if (!induced.is_well_defined() || !is_isomorphism(induced)) {
    rep.witness = "Q is not P (+) Q^x over P^x: " + po.object.to_string() + " vs " + Q.to_string();
    return rep;
  }
  rep.ok = true;
  rep.certificate = "P = Q x_{Q^gp} P^gp and Q = P (+)_{P^x} Q^x (certified inverse)";
  return rep;
}

ExpSquares exp_square(const LogSquareZero& e) {
  auto rep = verify_strict_exact(e);
  if (!rep.ok) fail(ErrorKind::NotStrict, rep.witness);
  ExpSquares out;
  const std::size_t d = k_basis(e.ring.J()).dim();
  out.j_dim = d;
  const auto p = e.ring.base().field().characteristic();
  GroupPresentation gj = GroupPresentation::free(d);
  if (p) {
    IntMatrix rel(d, d);
    for (std::size_t i = 0; i < d; ++i) rel(i, i) = static_cast<long>(p);
    gj = GroupPresentation{rel};
  }
  auto up = units(e.P), uq = units(e.base.P);
  auto gup = up.submonoid.gp_presentation(), guq = uq.submonoid.gp_presentation();
  const std::size_t nu = gup.ambient(), nv = guq.ambient();
  const std::size_t nq = e.base.P.ngens();
  IntMatrix umap = from_exponents(nv, unit_map(e.pi_flat, up, uq));
  auto rx = gj.direct_sum(gup);
  auto pgp = gj.direct_sum(e.P.gp_presentation());
  IntMatrix to_s = zeros(nv, d).hconcat(umap);

  out.left = AbelianSquare{gj, rx, GroupPresentation::free(0), guq,
                           IntMatrix::identity(d).vconcat(zeros(nu, d)), zeros(0, d), to_s,
                           zeros(nv, 0)};
  out.right = AbelianSquare{rx, pgp, guq, e.base.P.gp_presentation(),
                            IntMatrix::identity(d).block_diagonal(up.inclusion.matrix()), to_s,
                            zeros(nq, d).hconcat(e.pi_flat.matrix()), uq.inclusion.matrix()};
  out.left_cartesian = square_is_cartesian(out.left);
  out.left_cocartesian = square_is_cocartesian(out.left);
  out.right_cartesian = square_is_cartesian(out.right);
  out.right_cocartesian = square_is_cocartesian(out.right);
  return out;
}

// --- classification --------------------------------------------------------------

ExtensionClass classify(const LogSquareZero& e, ClassifyRoute route) {
  auto rep = verify_strict_exact(e);
  if (!rep.ok) fail(ErrorKind::NotStrict, rep.witness);
  const auto& ring = e.ring;
  const auto& S = ring.base();
  const auto& R = S.ring();
  auto aq = chart_on_q(e);
  ExtensionClass c{structure_map(e.base), ring.J(), {}, {}, {}};
  const auto gens = S.defining_ideal();
  if (route == ClassifyRoute::Presentation) {
    c.eps = ring.eps();
  } else {
    auto vars = ring.variables();
    for (const auto& h : gens) {
      auto v = ring.evaluate(h, vars);
      if (!S.reduce(v.s).empty()) fail(ErrorKind::Incompatible, "relation survives in S");
      c.eps.push_back(v.j);
    }
  }
  for (std::size_t j = 0; j < aq.size(); ++j) {
    const auto& phi = e.base.phi.images[j];
    Vec base_j;
    if (route == ClassifyRoute::Presentation) {
      auto mono = R.monomial(phi);
      base_j = ring.epsilon(R.sub(mono, S.reduce(mono)));
    } else {
      base_j = ring.monomial(phi).j;
    }
    c.delta.push_back(ring.J().reduce(R.sub(aq[j].j, base_j)));
  }
  auto cx = rognes_pushout(c.structure);
  const std::size_t m = aq.size(), y1 = cx.c1.size() - m - c.eps.size();
  c.cochain = c.delta;
  c.cochain.resize(m + y1);
  c.cochain.insert(c.cochain.end(), c.eps.begin(), c.eps.end());
  return c;
}

bool is_cocycle(const ExtensionClass& c) {
  auto cx = rognes_pushout(c.structure);
  const auto& R = c.J.ring().ring();
  for (const auto& v : cx.d2) {
    Vec sum;
    for (std::uint32_t k = 0; k < cx.c1.size(); ++k)
      sum = R.add(sum, R.mul(R.with_comp(R.component(v, k), 0), c.cochain.at(k)));
    if (!c.J.is_zero(sum)) return false;
  }
  return true;
}

ExtensionClass add_coboundary(const ExtensionClass& c, const std::vector<Vec>& eta) {
  auto cx = rognes_pushout(c.structure);
  const auto& R = c.J.ring().ring();
  if (eta.size() != cx.c0.size()) fail(ErrorKind::InvalidArgument, "one value per C0 generator");
  ExtensionClass out = c;
  for (std::size_t k = 0; k < cx.c1.size(); ++k) {
    Vec sum = c.cochain[k];
    for (std::uint32_t g = 0; g < cx.c0.size(); ++g)
      sum = R.add(sum, R.mul(R.with_comp(R.component(cx.d1[k], g), 0), eta[g]));
    out.cochain[k] = c.J.reduce(sum);
  }
  const std::size_t m = c.delta.size(), ne = c.eps.size();
  out.delta.assign(out.cochain.begin(), out.cochain.begin() + static_cast<long>(m));
  out.eps.assign(out.cochain.end() - static_cast<long>(ne), out.cochain.end());
  return out;
}

bool same_class_at(const ExtensionClass& a, const ExtensionClass& b,
                   const std::vector<Scalar>& pt) {
  auto cx = rognes_pushout(a.structure);
  const auto& B = a.J.ring();
  const auto& R = B.ring();
  const auto& k = B.field();
  if (!B.is_point(pt)) fail(ErrorKind::NotAPoint, "point violates the ring relations");
  const std::size_t nj = a.J.ngens(), c0 = cx.c0.size(), c1 = cx.c1.size();
  FMatrix jrel = a.J.evaluate(pt);
  // unknowns: eta (c0 * nj), then per C1 generator a combination of J relations
  const std::size_t nr = jrel.size(), cols = c0 * nj + c1 * nr;
  FMatrix m;
  std::vector<Scalar> rhs;
  auto at = [&](const Vec& p) { return R.evaluate(R.with_comp(p, 0), pt); };
  for (std::size_t kk = 0; kk < c1; ++kk) {
    auto diff = R.sub(a.cochain[kk], b.cochain[kk]);
    for (std::uint32_t r = 0; r < nj; ++r) {
      std::vector<Scalar> row(cols);
      for (std::uint32_t g = 0; g < c0; ++g) row[g * nj + r] = at(R.component(cx.d1[kk], g));
      for (std::size_t l = 0; l < nr; ++l) row[c0 * nj + kk * nr + l] = jrel[l][r];
      m.push_back(row);
      rhs.push_back(k.normalize(at(R.component(diff, r))));
    }
  }
  if (m.empty()) return true;
  return solve(k, m, rhs, cols).has_value();
}

LogSquareZero reconstruct(const ExtensionClass& c) {
  auto cx = rognes_pushout(c.structure);
  const std::size_t m = c.delta.size();
  for (std::size_t k = m; k + c.eps.size() < cx.c1.size(); ++k)
    if (!c.J.is_zero(c.cochain[k]))
      fail(ErrorKind::NotADerivation, "cochain is nonzero on " + cx.c1[k]);
  SquareZeroRing ring(c.structure.target.ring, c.J, c.eps);
  if (!ring.is_well_defined())
    fail(ErrorKind::NotADerivation, "eps does not vanish on the syzygies of S");
  try {
    return lift_chart(ring, c.structure.target, c.delta);
  } catch (const Error& err) {
    fail(ErrorKind::NotADerivation, err.what());
  }
}

EquivalenceCertificate certify_equivalent(const LogSquareZero& a, const LogSquareZero& b) {
  EquivalenceCertificate cert;
  const auto& S = b.ring.base();
  cert.ring = a.ring.base().to_string() == S.to_string() &&
              same_presentation(a.ring.J(), b.ring.J());
  if (cert.ring)
    for (std::size_t l = 0; l < a.ring.eps().size(); ++l)
      cert.ring = cert.ring && b.ring.J().equal(a.ring.eps()[l], b.ring.eps()[l]);
  cert.monoid = cert.ring && a.P.to_string() == b.P.to_string() &&
                homs_equal(a.pi_flat, b.pi_flat) && a.alpha.size() == b.alpha.size();
  for (std::size_t p = 0; cert.monoid && p < a.alpha.size(); ++p)
    cert.monoid = b.ring.equal(a.alpha[p], b.alpha[p]);
  if (const auto& rc = a.ring.carrier()) {
    // x_i -> (x_i, 0) from the carrier onto S (+) J
    auto vars = b.ring.variables();
    cert.carrier = true;
    for (const auto& g : rc->defining_ideal())
      cert.carrier = cert.carrier && b.ring.equal(b.ring.evaluate(g, vars), b.ring.zero());
    const auto& jg = a.ring.carrier_ideal();
    for (std::uint32_t i = 0; i < jg.size(); ++i)
      cert.carrier = cert.carrier &&
                     b.ring.equal(b.ring.evaluate(jg[i], vars),
                                  SqzElement{{}, S.ring().basis_vector(i)});
    cert.carrier = cert.carrier &&
                   same_presentation(b.ring.J(), ModulePresentation(S, b.ring.J().labels(),
                                                                    ideal_relations(*rc, jg)));
  }
  return cert;
}

// --- lifting ----------------------------------------------------------------------

const char* to_string(LiftVerdict v) {
  switch (v) {
    case LiftVerdict::UniqueLift: return "UniqueLift";
    case LiftVerdict::LiftExistsNotUnique: return "LiftExistsNotUnique";
    case LiftVerdict::NoLift: return "NoLift";
  }
  return "?";
}

LiftResult lifting_test(const PreLogMorphism& f, const PreLogMorphism& g, const LogSquareZero& e) {
  f.validate();
  g.validate();
  e.validate();
  if (g.target.ring.to_string() != e.base.ring.to_string() ||
      g.target.P.to_string() != e.base.P.to_string())
    fail(ErrorKind::Incompatible, "g does not land in the base of the extension");
  const auto& A = f.source.ring;
  if (!A.monoid().relations().empty() || !A.ideal().empty() || !f.source.P.relations().empty())
    fail(ErrorKind::UnsupportedPresentation, "lifting needs a polynomial base with a free chart");
  const auto& ring = e.ring;
  const auto& S = ring.base();
  const auto& RS = S.ring();
  const auto& B = f.target.ring;
  const auto& RB = B.ring();
  const std::size_t nb = B.nvars(), mn = f.target.P.ngens();
  auto aq = chart_on_q(e);
  auto kb = k_basis(ring.J());
  const std::size_t d = kb.dim(), U = (nb + mn) * d;

  std::vector<Vec> gx;
  std::vector<SqzElement> h0;
  for (std::size_t i = 0; i < nb; ++i) {
    gx.push_back(S.monomial(g.ring_part.images[i]));
    h0.push_back(ring.element(gx.back()));
  }
  auto partial = [&](const Vec& p, std::size_t i) {
    return S.reduce(RB.substitute(RB.derivative(p, i), gx, RS));
  };

  struct Eq {
    std::vector<std::pair<std::size_t, Vec>> terms;  // unknown, S-coefficient
    Vec constant;                                    // in J
  };
  std::vector<Eq> eqs;
  auto ring_eq = [&](const Vec& p, const Vec& target_j) {
    Eq q;
    for (std::size_t i = 0; i < nb; ++i) q.terms.push_back({i, partial(p, i)});
    q.constant = RS.sub(ring.evaluate(p, h0).j, target_j);
    return q;
  };
  for (const auto& G : B.defining_ideal()) eqs.push_back(ring_eq(G, {}));
  for (std::size_t j = 0; j < mn; ++j) {
    auto t = chart_word(ring, aq, g.monoid_part.images[j]);
    auto q = ring_eq(RB.monomial(f.target.phi.images[j]), t.j);
    q.terms.push_back({nb + j, RS.neg(t.s)});
    eqs.push_back(q);
  }
  for (const auto& r : f.target.P.relations()) {
    Eq q;
    for (std::size_t j = 0; j < mn; ++j)
      if (r.lhs[j] != r.rhs[j]) q.terms.push_back({nb + j, RS.constant(Scalar(r.lhs[j] - r.rhs[j]))});
    eqs.push_back(q);
  }
  // base map: chart generators go to the chart of R, the rest lift with zero J part
  const std::size_t na = A.nvars(), ma = f.source.P.ngens();
  std::vector<SqzElement> u(na);
  std::vector<bool> set(na, false);
  for (std::size_t k = 0; k < ma; ++k) {
    const auto& ph = f.source.phi.images[k];
    std::size_t ones = 0, at = 0;
    for (std::size_t i = 0; i < na; ++i)
      if (ph[i]) ones += static_cast<std::size_t>(ph[i]), at = i;
    if (ones == 1 && !set[at]) {
      u[at] = chart_word(ring, aq, g.monoid_part.apply(f.monoid_part.images[k]));
      set[at] = true;
    }
  }
  for (std::size_t i = 0; i < na; ++i)
    if (!set[i]) u[i] = ring.element(S.monomial(g.ring_part.apply(f.ring_part.images[i])));
  for (std::size_t k = 0; k < ma; ++k) {
    auto lhs = ring.evaluate(A.ring().monomial(f.source.phi.images[k]), u);
    auto rhs = chart_word(ring, aq, g.monoid_part.apply(f.monoid_part.images[k]));
    if (!ring.equal(lhs, rhs))
      fail(ErrorKind::UnsupportedPresentation, "no base map through the chart of R");
  }
  for (std::size_t i = 0; i < na; ++i) eqs.push_back(ring_eq(RB.monomial(f.ring_part.images[i]), u[i].j));
  for (std::size_t k = 0; k < ma; ++k) {
    Eq q;
    for (std::size_t j = 0; j < mn; ++j)
      if (f.monoid_part.images[k][j])
        q.terms.push_back({nb + j, RS.constant(Scalar(f.monoid_part.images[k][j]))});
    eqs.push_back(q);
  }

  FMatrix m;
  std::vector<Scalar> rhs;
  const auto& k = S.field();
  for (const auto& q : eqs) {
    FMatrix block(d, std::vector<Scalar>(U));
    for (const auto& [var, coef] : q.terms)
      for (std::size_t t = 0; t < d; ++t) {
        auto c = kb.coords(RS.mul(coef, kb.basis[t]));
        for (std::size_t r = 0; r < d; ++r) block[r][var * d + t] = k.add(block[r][var * d + t], c[r]);
      }
    auto cc = kb.coords(q.constant);
    for (std::size_t r = 0; r < d; ++r) {
      m.push_back(block[r]);
      rhs.push_back(k.neg(cc[r]));
    }
  }
  LiftResult res;
  if (U == 0 || m.empty()) {
    res.verdict = LiftVerdict::UniqueLift;
    if (U) res.verdict = LiftVerdict::LiftExistsNotUnique, res.solution_dim = U;
    return res;
  }
  if (!solve(k, m, rhs, U)) {
    res.verdict = LiftVerdict::NoLift;
    res.obstruction = rhs;
    return res;
  }
  res.solution_dim = U - rank(k, m);
  res.verdict = res.solution_dim ? LiftVerdict::LiftExistsNotUnique : LiftVerdict::UniqueLift;
  return res;
}

}  // namespace logalg
