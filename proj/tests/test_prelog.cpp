#include <doctest.h>

#include "logalg/error.hpp"
#include "logalg/prelog.hpp"

using namespace logalg;

namespace {

const Field QQ{};

MonoidPresentation N1() { return MonoidPresentation::free(1, {"t"}); }
MonoidPresentation Z1() { return MonoidPresentation(2, {{{1, 1}, {0, 0}}}, {"t", "s"}); }

MonoidHom hom(MonoidPresentation s, MonoidPresentation t, std::vector<Exponent> im) {
  return MonoidHom{std::move(s), std::move(t), std::move(im)};
}

// (k[t], N, id)
ChartPreLogRing affine_line() { return free_chart(QQ, N1()); }

// (k[t, 1/t], N, n -> n t)
ChartPreLogRing punctured_line() {
  Algebra a(QQ, Z1());
  return ChartPreLogRing{a, N1(), hom(N1(), Z1(), {{1, 0}}), false};
}

// k[t]/(t) with N -> t: the standard log point
ChartPreLogRing log_point() {
  Algebra a(QQ, N1(), {PolyRing(QQ, {"t"}).variable(0)});
  return ChartPreLogRing{a, N1(), identity_hom(N1()), false};
}

bool iso_characteristics(const ChartPreLogRing& x) {
  return is_isomorphism(relogification_map(logify(x)));
}

}  // namespace

TEST_CASE("algebra basics") {
  auto a = affine_line().ring;
  CHECK_FALSE(a.is_zero_ring());
  CHECK(a.unit_generators().empty());
  CHECK(a.points().size() == 2);
  auto z = punctured_line().ring;
  CHECK(z.unit_generators().size() == 2);
  CHECK(z.points().size() == 1);
  CHECK(z.equal(z.monomial({1, 1}), z.ring().constant(1)));
  auto pt = log_point().ring;
  CHECK(pt.points().size() == 1);
  CHECK(pt.points()[0] == std::vector<Scalar>{0});
  PolyRing r(QQ, {"t"});
  Algebra split(QQ, N1(), {r.sub(r.pow(r.variable(0), 2), r.variable(0))});
  CHECK(split.points().size() == 2);
  CHECK(split.is_unit(r.sub(r.scale(r.variable(0), 2), r.constant(1))));
  CHECK(Algebra(QQ, N1(), {r.constant(1)}).is_zero_ring());
}

TEST_CASE("units pulled back along alpha") {
  CHECK(alpha_preimage_units(affine_line()).generators.empty());
  CHECK(alpha_preimage_units(punctured_line()).generators.size() == 1);
  auto zero_map = ChartPreLogRing{Algebra(QQ, Z1()), N1(), hom(N1(), Z1(), {{0, 0}}), false};
  CHECK(alpha_preimage_units(zero_map).generators.size() == 1);
  CHECK(alpha_preimage_units(log_point()).generators.empty());
}

TEST_CASE("logification") {
  auto l = logify(affine_line());
  CHECK_FALSE(l.already_log);
  CHECK(group_completion(l.characteristic).group == free_group(1));
  CHECK(is_sharp(l.characteristic));
  auto tagged = affine_line();
  tagged.unit_tag = true;
  CHECK(logify(tagged).already_log);
  CHECK(logify(l.log_chart).already_log);

  auto triv = logify(trivial_chart(affine_line().ring));
  CHECK(triv.characteristic.is_trivial());

  auto p = logify(punctured_line());
  CHECK(p.characteristic.is_trivial());
  CHECK_FALSE(p.already_log);
  CHECK(logify(p.log_chart).already_log);

  auto lp = logify(log_point());
  CHECK(group_completion(lp.characteristic).group == free_group(1));
}

TEST_CASE("logification is idempotent on characteristics") {
  PolyRing r(QQ, {"t"});
  std::vector<ChartPreLogRing> charts{affine_line(), punctured_line(), log_point(),
                                      trivial_chart(affine_line().ring),
                                      free_chart(QQ, MonoidPresentation::free(2))};
  auto two_three = MonoidPresentation(2, {{{3, 0}, {0, 2}}});
  charts.push_back(ChartPreLogRing{Algebra(QQ, N1()), two_three,
                                   hom(two_three, N1(), {{2}, {3}}), false});
  for (const auto& x : charts) {
    CAPTURE(x.to_string());
    CHECK(iso_characteristics(x));
    auto l = logify(x);
    CHECK(logify(l.log_chart).already_log);
  }
}

TEST_CASE("trivial locus") {
  auto t = trivial_locus(affine_line());
  CHECK(group_completion(t.ring.monoid()).group == free_group(1));
  CHECK(t.ring.unit_generators().size() == t.ring.nvars());
  CHECK(logify(t).characteristic.is_trivial());

  auto two_three = MonoidPresentation(2, {{{3, 0}, {0, 2}}});
  ChartPreLogRing c{Algebra(QQ, N1()), two_three, hom(two_three, N1(), {{2}, {3}}), false};
  auto tc = trivial_locus(c);
  CHECK(group_completion(tc.ring.monoid()).group == free_group(1));
  CHECK(tc.ring.unit_generators().size() == tc.ring.nvars());
  CHECK(logify(tc).characteristic.is_trivial());

  auto triv = trivial_locus(trivial_chart(affine_line().ring));
  CHECK(triv.ring.nvars() == 1);
  CHECK(triv.P.ngens() == 0);

  // inverting t on the log point kills the ring
  CHECK(trivial_locus(log_point()).ring.is_zero_ring());
}

TEST_CASE("inverse and direct images") {
  auto x = affine_line();
  auto id = identity_hom(N1());
  auto same = inverse_image(id, x.ring, x);
  CHECK(homs_equal(same.phi, x.phi));

  auto n2 = MonoidPresentation::free(2, {"t", "u"});
  auto plane = Algebra(QQ, n2);
  auto pushed = inverse_image(hom(N1(), n2, {{1, 0}}), plane, x);
  CHECK(pushed.phi.apply({3}) == Exponent{3, 0});

  auto to_torus = inverse_image(hom(N1(), Z1(), {{1, 0}}), Algebra(QQ, Z1()), x);
  CHECK(logify(to_torus).characteristic.is_trivial());

  // functoriality
  auto g = hom(n2, n2, {{0, 1}, {1, 0}});
  auto f = hom(N1(), n2, {{1, 0}});
  auto lhs = inverse_image(compose(g, f), plane, x);
  auto rhs = inverse_image(g, plane, inverse_image(f, plane, x));
  CHECK(homs_equal(lhs.phi, rhs.phi));

  auto back = direct_image(id, x.ring, x);
  CHECK(group_completion(back.P).group == free_group(1));
  CHECK(back.phi.apply(exp_unit(back.P.ngens(), 0)) == Exponent{1});

  auto times2 = hom(N1(), N1(), {{2}});
  auto d = direct_image(times2, x.ring, x);
  CHECK(group_completion(d.P).group == free_group(1));
  CHECK(d.P.ngens() == 1);

  auto d0 = direct_image(id, x.ring, trivial_chart(x.ring));
  CHECK(d0.P.is_trivial());

  CHECK_THROWS_AS(inverse_image(id, x.ring, log_point()), Error);
}

TEST_CASE("strictness") {
  auto x = affine_line();
  CHECK(is_strict(identity_morphism(x)));
  auto n2 = MonoidPresentation::free(2, {"t", "s"});
  auto y = free_chart(QQ, n2);
  PreLogMorphism f{x, y, hom(N1(), n2, {{1, 0}}), hom(N1(), n2, {{1, 0}})};
  CHECK_FALSE(is_strict(f));
  // k[t] -> k[t, s] with the chart pulled back: strict
  auto y2 = inverse_image(hom(N1(), n2, {{1, 0}}), y.ring, x);
  PreLogMorphism g{x, y2, hom(N1(), n2, {{1, 0}}), identity_hom(N1())};
  CHECK(is_strict(g));
  // strict base change along the x2 map
  auto times2 = PreLogMorphism{x, x, hom(N1(), N1(), {{2}}), hom(N1(), N1(), {{2}})};
  auto sq = pushout(g, times2);
  CHECK(is_strict(sq.from_second));
  CHECK_FALSE(is_strict(times2));
}

TEST_CASE("morphism validation") {
  auto x = affine_line();
  PreLogMorphism bad{x, x, hom(N1(), N1(), {{2}}), hom(N1(), N1(), {{1}})};
  CHECK_THROWS_AS(bad.validate(), Error);
  auto s = trivial_chart(Algebra::ground(QQ));
  PreLogMorphism ok{s, x, hom(MonoidPresentation{}, N1(), {}), hom(MonoidPresentation{}, N1(), {})};
  CHECK_NOTHROW(ok.validate());
}
