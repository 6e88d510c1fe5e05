#include <doctest.h>

#include <random>

#include "logalg/error.hpp"
#include "logalg/sqzero.hpp"

using namespace logalg;

namespace {

MonoidPresentation N1(const char* n = "t") { return MonoidPresentation::free(1, {n}); }
MonoidPresentation none() { return MonoidPresentation{}; }

MonoidHom hom(MonoidPresentation s, MonoidPresentation t, std::vector<Exponent> im) {
  return MonoidHom{std::move(s), std::move(t), std::move(im)};
}

PolyRing line_ring(const Field& k, const char* n = "t") { return PolyRing(k, {n}); }

// R = k[x]/(x^4) with J = (x^2), over S = k[x]/(x^2).
SquareZeroRing quartic(const Field& k) {
  auto r = line_ring(k, "x");
  Algebra R(k, N1("x"), {r.pow(r.variable(0), 4)});
  return SquareZeroRing::from_quotient(R, {r.pow(r.variable(0), 2)});
}

// k[e]/(e^2) over the log point k, chart e.
LogSquareZero log_dual_numbers(const Field& k) {
  auto r = line_ring(k, "e");
  Algebra R(k, N1("e"), {r.pow(r.variable(0), 2)});
  auto ring = SquareZeroRing::from_quotient(R, {r.variable(0)});
  ChartPreLogRing base{ring.base(), N1("e"), identity_hom(N1("e")), false};
  return lift_chart(ring, base);
}

// J = k[t]/(t - c) or k[t]/(t^n) as a module over the line.
ModulePresentation point_module(const Algebra& line, long c) {
  const auto& R = line.ring();
  return ModulePresentation(line, {"e"}, {R.sub(R.variable(0), R.constant(c))});
}
ModulePresentation fat_module(const Algebra& line, std::size_t n) {
  const auto& R = line.ring();
  return ModulePresentation(line, {"e"}, {R.pow(R.variable(0), n)});
}

PreLogMorphism times(const Field& k, std::int64_t n) {
  auto line = free_chart(k, N1());
  return PreLogMorphism{line, line, hom(N1(), N1(), {{n}}), hom(N1(), N1(), {{n}})};
}

PreLogMorphism from_point(const Field& k) {
  return PreLogMorphism{free_chart(k, none()), free_chart(k, N1()), hom(none(), N1(), {}),
                        hom(none(), N1(), {})};
}

}  // namespace

TEST_CASE("trivial extensions") {
  const Field QQ{};
  auto pt = free_chart(QQ, none());
  auto dual = trivial_extension(pt, ModulePresentation(pt.ring, {"e"}, {}));
  const auto& R = dual.ring;
  auto eps = R.exp(pt.ring.ring().basis_vector(0));
  auto e = R.sub(eps, R.one());
  CHECK(R.equal(R.mul(e, e), R.zero()));
  CHECK_FALSE(R.equal(e, R.zero()));
  CHECK(verify_strict_exact(dual).ok);

  auto zero = trivial_extension(pt, ModulePresentation(pt.ring, {}, {}));
  CHECK(zero.ring.is_split());
  CHECK(k_basis(zero.ring.J()).dim() == 0);

  auto line = free_chart(QQ, N1());
  const auto& L = line.ring.ring();
  auto ext = trivial_extension(line, ModulePresentation(line.ring, {"e"}, {}));
  auto x = L.mul(L.variable(0), L.basis_vector(0));
  auto u = ext.ring.exp(x), v = ext.ring.exp(L.neg(x));
  CHECK(ext.ring.equal(ext.ring.mul(u, v), ext.ring.one()));
  CHECK(ext.ring.is_unit(u));
}

TEST_CASE("multiplication against the quotient ring") {
  const Field QQ{};
  auto sq = quartic(QQ);
  CHECK(sq.is_well_defined());
  CHECK_FALSE(sq.is_split());
  auto r = line_ring(QQ, "x");
  Algebra R(QQ, N1("x"), {r.pow(r.variable(0), 4)});
  // c0 + c1 x + c2 x^2 + c3 x^3  ->  (c0 + c1 x, (c2 + c3 x) j1)
  auto embed = [&](const std::vector<long>& c) {
    Vec s = r.add(r.constant(c[0]), r.mul(r.constant(c[1]), r.variable(0)));
    Vec j = r.add(r.constant(c[2]), r.mul(r.constant(c[3]), r.variable(0)));
    return SqzElement{sq.base().reduce(s), sq.J().reduce(j)};
  };
  auto poly = [&](const std::vector<long>& c) {
    Vec p;
    for (std::size_t i = 0; i < 4; ++i) p = r.add(p, r.monomial({static_cast<std::int64_t>(i)}, c[i]));
    return p;
  };
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> a(4), b(4);
    for (auto& v : a) v = coef(rng);
    for (auto& v : b) v = coef(rng);
    auto prod = R.reduce(r.mul(poly(a), poly(b)));
    std::vector<long> c(4);
    for (const auto& t : prod) c[static_cast<std::size_t>(t.exp[0])] = t.coef.get_num().get_si();
    CHECK(sq.equal(sq.mul(embed(a), embed(b)), embed(c)));
    CHECK(sq.J().equal(sq.cocycle(embed(a).s, embed(b).s), sq.cocycle(embed(b).s, embed(a).s)));
  }
}

TEST_CASE("exp is a homomorphism and J squares to zero") {
  const Field QQ{};
  auto sq = quartic(QQ);
  const auto& R = sq.base().ring();
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> coef(-4, 4);
  auto random_j = [&] {
    return R.add(R.constant(coef(rng)), R.mul(R.constant(coef(rng)), R.variable(0)));
  };
  CHECK(sq.equal(sq.exp({}), sq.one()));
  for (int i = 0; i < 20; ++i) {
    auto a = random_j(), b = random_j();
    CHECK(sq.equal(sq.exp(R.add(a, b)), sq.mul(sq.exp(a), sq.exp(b))));
    SqzElement ja{{}, a}, jb{{}, b};
    CHECK(sq.equal(sq.mul(ja, jb), sq.zero()));
    auto x = sq.element(R.add(R.variable(0), R.constant(coef(rng))), a);
    auto y = sq.element(R.constant(coef(rng)), b);
    auto z = sq.element(R.variable(0), random_j());
    CHECK(sq.equal(sq.mul(sq.mul(x, y), z), sq.mul(x, sq.mul(y, z))));
  }

  auto r = line_ring(QQ, "x");
  Algebra cubic(QQ, N1("x"), {r.pow(r.variable(0), 3)});
  CHECK_THROWS_AS(SquareZeroRing::from_quotient(cubic, {r.variable(0)}), Error);
}

TEST_CASE("strict exactness") {
  const Field QQ{};
  auto d = log_dual_numbers(QQ);
  auto rep = verify_strict_exact(d);
  CHECK(rep.ok);
  CHECK_FALSE(rep.certificate.empty());

  // P = N^2 over Q = <a, b | a = b>
  auto q = MonoidPresentation(2, {{{1, 0}, {0, 1}}}, {"a", "b"});
  auto p = MonoidPresentation::free(2, {"a", "b"});
  Algebra S(QQ, N1());
  ChartPreLogRing base{S, q, hom(q, N1(), {{1}, {1}}), false};
  auto ring = SquareZeroRing(S, ModulePresentation(S, {"e"}, {}), {});
  LogSquareZero broken{ring, base, p, hom(p, q, {{1, 0}, {0, 1}}),
                       {ring.element(S.ring().variable(0)), ring.element(S.ring().variable(0))}};
  auto bad = verify_strict_exact(broken);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.find("P^gp") != std::string::npos);

  auto nonint = MonoidPresentation(2, {{{1, 1}, {2, 0}}}, {"a", "b"});
  ChartPreLogRing nb{Algebra(QQ, nonint), nonint, identity_hom(nonint), false};
  auto ne = trivial_extension(nb, ModulePresentation(nb.ring, {}, {}));
  CHECK_THROWS_AS(verify_strict_exact(ne), Error);
}

TEST_CASE("exp squares") {
  const Field F3(3);
  auto pt = free_chart(F3, none());
  auto dual = trivial_extension(pt, ModulePresentation(pt.ring, {"e"}, {}));
  auto sq = exp_square(dual);
  CHECK(sq.j_dim == 1);
  CHECK(sq.all());
  // |R^x| = |k^x| |J| by brute force over the nine elements
  const auto& R = dual.ring;
  const auto& P = pt.ring.ring();
  std::vector<SqzElement> elems;
  for (long a = 0; a < 3; ++a)
    for (long b = 0; b < 3; ++b) elems.push_back(R.element(P.constant(a), P.constant(b)));
  std::size_t units = 0;
  for (const auto& x : elems)
    for (const auto& y : elems)
      if (R.equal(R.mul(x, y), R.one())) {
        ++units;
        break;
      }
  CHECK(units == 2 * 3);

  CHECK(exp_square(trivial_extension(pt, ModulePresentation(pt.ring, {}, {}))).all());
  auto lsq = exp_square(log_dual_numbers(F3));
  CHECK(lsq.all());
  CHECK(exp_square(log_dual_numbers(Field{})).all());

  auto line = free_chart(F3, N1());
  CHECK(exp_square(trivial_extension(line, fat_module(line.ring, 2))).all());
}

TEST_CASE("classification and reconstruction") {
  for (const Field& k : {Field{}, Field(5)}) {
    CAPTURE(k.name());
    auto line = free_chart(k, N1());
    auto triv = trivial_extension(line, point_module(line.ring, 0));
    auto c0 = classify(triv);
    CHECK(is_cocycle(c0));
    for (const auto& v : c0.cochain) CHECK(c0.J.is_zero(v));
    CHECK(certify_equivalent(reconstruct(c0), triv).ok());

    auto d = log_dual_numbers(k);
    auto cd = classify(d);
    auto cd2 = classify(d, ClassifyRoute::RingArithmetic);
    CHECK(is_cocycle(cd));
    REQUIRE(cd.cochain.size() == cd2.cochain.size());
    for (std::size_t i = 0; i < cd.cochain.size(); ++i) CHECK(cd.J.equal(cd.cochain[i], cd2.cochain[i]));
    bool nonzero = false;
    for (const auto& v : cd.cochain) nonzero = nonzero || !cd.J.is_zero(v);
    CHECK(nonzero);
    auto zero = cd;
    for (auto& v : zero.cochain) v = {};
    CHECK_FALSE(same_class_at(cd, zero, {Scalar(0)}));
    auto back = reconstruct(cd);
    CHECK(verify_strict_exact(back).ok);
    CHECK(certify_equivalent(d, back).ok());

    // a second non-split extension, trivial log structure
    auto q = quartic(k);
    auto e = lift_chart(q, trivial_chart(q.base()));
    auto cq = classify(e);
    CHECK(is_cocycle(cq));
    auto zq = cq;
    for (auto& v : zq.cochain) v = {};
    CHECK_FALSE(same_class_at(cq, zq, {Scalar(0)}));
    CHECK(certify_equivalent(e, reconstruct(classify(e, ClassifyRoute::RingArithmetic))).ok());
  }
}

TEST_CASE("synthetic derivations up to coboundaries") {
  const Field QQ{};
  auto line = free_chart(QQ, N1());
  const auto& L = line.ring.ring();
  auto c = classify(trivial_extension(line, point_module(line.ring, 0)));
  auto shifted = add_coboundary(c, {L.basis_vector(0), L.zero()});
  CHECK(is_cocycle(shifted));
  auto e2 = reconstruct(shifted);
  auto c2 = classify(e2);
  CHECK(same_class_at(c2, c, {Scalar(0)}));
  bool differs = false;
  for (std::size_t i = 0; i < c.cochain.size(); ++i)
    differs = differs || !c.J.equal(c.cochain[i], c2.cochain[i]);
  CHECK(differs);

  // eps must kill the syzygy x * x^2 - x^3
  auto r = line_ring(QQ, "x");
  Algebra S(QQ, N1("x"), {r.pow(r.variable(0), 2), r.pow(r.variable(0), 3)});
  auto base = trivial_chart(S);
  auto ce = classify(trivial_extension(base, point_module(S, 0)));
  ce.eps.back() = S.ring().basis_vector(0);
  ce.cochain.back() = ce.eps.back();
  CHECK_THROWS_AS(reconstruct(ce), Error);
  try {
    reconstruct(ce);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotADerivation);
  }
}

TEST_CASE("lifting") {
  const Field QQ{};
  auto line = free_chart(QQ, N1());
  auto id = identity_morphism(line);
  std::vector<LogSquareZero> exts{trivial_extension(line, point_module(line.ring, 0)),
                                  trivial_extension(line, point_module(line.ring, 1)),
                                  trivial_extension(line, fat_module(line.ring, 2))};
  for (const auto& e : exts) {
    CHECK(lifting_test(id, id, e).verdict == LiftVerdict::UniqueLift);
    for (std::int64_t n : {2, 3}) {
      REQUIRE(is_derived_log_etale(times(QQ, n)).kind == VerdictKind::Yes);
      CHECK(lifting_test(times(QQ, n), id, e).passes(LiftMode::Etale));
    }
    auto r = lifting_test(from_point(QQ), id, e);
    CHECK(r.verdict == LiftVerdict::LiftExistsNotUnique);
    CHECK(r.passes(LiftMode::Smooth));
    // lifts form a torsor under Hom(omega, J) = J
    CHECK(r.solution_dim == k_basis(e.ring.J()).dim());
  }

  const Field F2(2);
  auto l2 = free_chart(F2, N1());
  auto e2 = trivial_extension(l2, point_module(l2.ring, 1));
  auto r2 = lifting_test(times(F2, 2), identity_morphism(l2), e2);
  CHECK(r2.verdict == LiftVerdict::LiftExistsNotUnique);

  // x -> x does not lift from k[x]/(x^2) to k[x]/(x^3)
  auto r = line_ring(QQ, "x");
  Algebra cubic(QQ, N1("x"), {r.pow(r.variable(0), 3)});
  auto sq = SquareZeroRing::from_quotient(cubic, {r.pow(r.variable(0), 2)});
  auto e = lift_chart(sq, trivial_chart(sq.base()));
  PreLogMorphism f{free_chart(QQ, none()), e.base, hom(none(), N1("x"), {}), hom(none(), none(), {})};
  auto res = lifting_test(f, identity_morphism(e.base), e);
  CHECK(res.verdict == LiftVerdict::NoLift);
  CHECK_FALSE(res.obstruction.empty());
}
