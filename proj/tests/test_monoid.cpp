#include <doctest.h>

#include <random>

#include "logalg/error.hpp"
#include "logalg/monoid.hpp"
#include "oracles.hpp"

using namespace logalg;

namespace {

MonoidPresentation pres(std::size_t n, std::vector<Relation> rels) {
  return MonoidPresentation(n, std::move(rels));
}

MonoidPresentation integers() { return pres(2, {{{1, 1}, {0, 0}}}); }

MonoidHom hom(MonoidPresentation s, MonoidPresentation t, std::vector<Exponent> im) {
  return MonoidHom{std::move(s), std::move(t), std::move(im)};
}

std::vector<MonoidPresentation> sample_monoids() {
  return {
      MonoidPresentation::free(1),
      MonoidPresentation::free(2),
      pres(2, {{{3, 0}, {0, 2}}}),                   // <2,3>
      pres(3, {{{2, 0, 0}, {0, 0, 2}}}),             // Z/2-twisted
      pres(2, {{{2, 0}, {0, 2}}}),
      pres(2, {{{1, 1}, {1, 0}}}),
      pres(1, {{{2}, {1}}}),
      pres(1, {{{3}, {1}}}),
      integers(),
      pres(2, {{{0, 2}, {0, 0}}}),                   // N + Z/2
      pres(3, {{{1, 0, 1}, {0, 2, 0}}}),             // <(2,0),(1,1),(0,2)>
      pres(3, {{{2, 1, 0}, {0, 0, 3}}, {{0, 2, 0}, {1, 0, 1}}}),
  };
}

}  // namespace

TEST_CASE("normal forms on small presentations") {
  auto idem = pres(1, {{{2}, {1}}});
  CHECK(idem.normal_form({5}) == Exponent{1});
  CHECK(idem.normal_form({0}) == Exponent{0});
  auto two_three = pres(2, {{{3, 0}, {0, 2}}});
  CHECK(two_three.equivalent({3, 0}, {0, 2}));
  CHECK(two_three.equivalent({3, 2}, {0, 4}));
  CHECK_FALSE(two_three.equivalent({1, 0}, {0, 1}));
  auto z = integers();
  CHECK(z.equivalent({3, 1}, {2, 0}));
  CHECK(z.equivalent({2, 2}, {0, 0}));
}

TEST_CASE("rewriting systems are locally confluent") {
  for (const auto& m : sample_monoids()) {
    CAPTURE(m.to_string());
    CHECK(m.rewriting().locally_confluent());
  }
}

TEST_CASE("word problem agrees with bounded congruence closure") {
  std::mt19937 rng(7);
  for (const auto& m : sample_monoids()) {
    CAPTURE(m.to_string());
    for (int t = 0; t < 60; ++t) {
      auto u = oracle::random_word(rng, m.ngens(), 5);
      auto v = (t % 2) ? oracle::random_walk(rng, m, u, 6, 8) : oracle::random_word(rng, m.ngens(), 5);
      bool fast = m.equivalent(u, v);
      bool slow = oracle::bfs_equivalent(m, u, v, 12);
      // The bounded search can only miss equalities needing longer words.
      if (slow) CHECK(fast);
      if (t % 2) CHECK(fast);
    }
  }
}

TEST_CASE("group completions") {
  CHECK(group_completion(MonoidPresentation::free(2)).group == free_group(2));
  auto g = group_completion(pres(2, {{{2, 0}, {0, 2}}})).group;
  CHECK(g.free_rank == 1);
  CHECK(g.torsion == std::vector<Int>{2});
  CHECK(group_completion(integers()).group == free_group(1));
  CHECK(group_completion(pres(1, {{{2}, {1}}})).group.is_trivial());
  auto zn = group_completion(pres(1, {{{3}, {0}}})).group;
  CHECK(zn.torsion == std::vector<Int>{3});
  auto gc = group_completion(pres(2, {{{3, 0}, {0, 2}}}));
  CHECK(gc.group == free_group(1));
  // unit map respects relations
  CHECK(gc.unit_map({3, 0}) == gc.unit_map({0, 2}));
}

TEST_CASE("integrality") {
  CHECK(is_integral(MonoidPresentation::free(2)));
  CHECK_FALSE(is_integral(pres(2, {{{1, 1}, {1, 0}}})));
  CHECK(is_integral(pres(2, {{{3, 0}, {0, 2}}})));
  CHECK_FALSE(is_integral(pres(1, {{{2}, {1}}})));
  CHECK(is_integral(pres(1, {{{2}, {0}}})));
  CHECK(is_integral(pres(2, {{{2, 0}, {0, 2}}})));

  auto i = integralize(pres(2, {{{1, 1}, {1, 0}}}));
  CHECK(i.equivalent({0, 1}, {0, 0}));
  CHECK(is_integral(i));
  CHECK(integralize(pres(1, {{{2}, {1}}})).is_trivial());
  CHECK(integralization_map(pres(1, {{{2}, {1}}})).is_well_defined());
}

TEST_CASE("integral iff integralization is an isomorphism") {
  for (const auto& m : sample_monoids()) {
    CAPTURE(m.to_string());
    CHECK(is_integral(m) == is_isomorphism(integralization_map(m)));
  }
}

TEST_CASE("saturation") {
  auto s = saturate(pres(2, {{{3, 0}, {0, 2}}}));
  CHECK(is_saturated(s));
  CHECK(group_completion(s).group == free_group(1));
  CHECK(s.ngens() == 1);
  CHECK(s.relations().empty());

  auto cone = pres(3, {{{1, 0, 1}, {0, 2, 0}}});
  CHECK(is_saturated(cone));
  CHECK_FALSE(is_saturated(pres(2, {{{3, 0}, {0, 2}}})));
  CHECK_THROWS_AS(is_saturated(pres(2, {{{2, 0}, {0, 2}}})), Error);
  CHECK(is_saturated(MonoidPresentation::free(3)));
  for (const auto& m : sample_monoids()) {
    if (!is_integral(m) || !group_completion(m).group.is_torsion_free()) continue;
    CAPTURE(m.to_string());
    auto t = saturate(m);
    CHECK(is_saturated(t));
    CHECK(group_completion(t).group == group_completion(m).group);
  }
}

TEST_CASE("virtual surjectivity and exactness") {
  auto n = MonoidPresentation::free(1);
  auto n2 = MonoidPresentation::free(2);
  auto sum = hom(n2, n, {{1}, {1}});
  auto times2 = hom(n, n, {{2}});
  auto diag = hom(n, n2, {{1, 1}});
  CHECK(is_virtually_surjective(sum));
  CHECK_FALSE(is_virtually_surjective(times2));
  CHECK_FALSE(is_virtually_surjective(diag));
  CHECK(is_virtually_surjective(identity_hom(n2)));
  CHECK_FALSE(is_exact(sum));
  CHECK(is_exact(times2));
  CHECK(is_exact(identity_hom(n2)));
  CHECK_FALSE(is_exact(hom(n, integers(), {{1, 0}})));
}

TEST_CASE("repletion of the sum map") {
  auto n = MonoidPresentation::free(1);
  auto sum = hom(MonoidPresentation::free(2), n, {{1}, {1}});
  auto r = repletion(sum);
  CHECK(r.replete.ngens() == 4);
  CHECK(r.unit.is_well_defined());
  CHECK(r.counit.is_well_defined());
  CHECK(homs_equal(compose(r.counit, r.unit), sum));
  CHECK(is_exact(r.counit));
  CHECK(group_completion(r.replete).group == free_group(2));
  CHECK(units(r.replete).group == free_group(1));
}

TEST_CASE("repletion rejects maps that are not virtually surjective") {
  auto diag = hom(MonoidPresentation::free(1), MonoidPresentation::free(2), {{1, 1}});
  CHECK_THROWS_AS(repletion(diag), Error);
  try {
    repletion(diag);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotVirtuallySurjective);
  }
}

TEST_CASE("repletion of an exact map is itself") {
  auto n = MonoidPresentation::free(1);
  auto id = identity_hom(MonoidPresentation::free(2));
  auto r = repletion(id);
  CHECK(is_isomorphism(r.counit));
  auto r2 = repletion(hom(MonoidPresentation::free(2), n, {{1}, {0}}));
  CHECK(is_exact(r2.counit));
}

TEST_CASE("fiber products") {
  auto n = MonoidPresentation::free(1);
  auto fp = fiber_product(hom(n, n, {{2}}), hom(n, n, {{3}}));
  CHECK(fp.object.ngens() == 1);
  CHECK(group_completion(fp.object).group == free_group(1));
  CHECK(fp.to_first.apply({1}) == Exponent{3});
  CHECK(fp.to_second.apply({1}) == Exponent{2});
  auto sum = hom(MonoidPresentation::free(2), n, {{1}, {1}});
  auto fp2 = fiber_product(sum, sum);
  CHECK(group_completion(fp2.object).group == free_group(3));
  CHECK(homs_equal(compose(sum, fp2.to_first), compose(sum, fp2.to_second)));
}

TEST_CASE("pushouts") {
  auto n = MonoidPresentation::free(1);
  auto p = pushout(hom(n, n, {{2}}), hom(n, integers(), {{1, 0}}));
  CHECK(group_completion(p.object).group == free_group(1));
  CHECK(units(p.object).unit_generators.size() == 3);
  auto q = pushout(identity_hom(n), hom(n, MonoidPresentation::free(2), {{1, 1}}));
  CHECK(group_completion(q.object).group == free_group(2));
  CHECK(homs_equal(compose(p.from_first, hom(n, n, {{2}})),
                   compose(p.from_second, hom(n, integers(), {{1, 0}}))));
}

TEST_CASE("pushout universal property against a finite monoid") {
  // T = {0, e} with e + e = e, and Z/2.
  std::vector<MonoidPresentation> targets{pres(1, {{{2}, {1}}}), pres(1, {{{2}, {0}}})};
  auto n = MonoidPresentation::free(1);
  auto f = hom(n, n, {{2}});
  auto g = hom(n, pres(2, {{{2, 0}, {0, 2}}}), {{1, 0}});
  auto p = pushout(f, g);
  for (const auto& t : targets) {
    for (std::int64_t a = 0; a < 2; ++a)
      for (std::int64_t b = 0; b < 2; ++b)
        for (std::int64_t c = 0; c < 2; ++c) {
          auto u = hom(f.target, t, {{a}});
          auto v = hom(g.target, t, {{b}, {c}});
          if (!u.is_well_defined() || !v.is_well_defined()) continue;
          bool compatible = homs_equal(compose(u, f), compose(v, g));
          std::vector<Exponent> im{{a}, {b}, {c}};
          auto w = hom(p.object, t, im);
          CHECK(compatible == w.is_well_defined());
        }
  }
}

TEST_CASE("units and sharpening") {
  CHECK(units(MonoidPresentation::free(2)).unit_generators.empty());
  CHECK(is_sharp(MonoidPresentation::free(2)));
  auto z = units(integers());
  CHECK(z.group == free_group(1));
  auto nz2 = pres(2, {{{0, 2}, {0, 0}}});
  auto u = units(nz2);
  CHECK(u.unit_generators == std::vector<std::size_t>{1});
  CHECK(u.group.torsion == std::vector<Int>{2});
  CHECK(u.group.free_rank == 0);
  CHECK_FALSE(is_sharp(nz2));
  auto s = sharpening(nz2);
  CHECK(is_sharp(s.target));
  CHECK(group_completion(s.target).group == free_group(1));
  CHECK(u.inclusion.is_well_defined());
  // a + b = 0 with b unused elsewhere: both a and b are units
  CHECK(units(pres(3, {{{1, 1, 0}, {0, 0, 0}}})).unit_generators.size() == 2);
}

TEST_CASE("preimages and inverses") {
  auto n = MonoidPresentation::free(1);
  auto times2 = hom(n, n, {{2}});
  CHECK(find_preimage(times2, {4}) == Exponent{2});
  CHECK_FALSE(find_preimage(times2, {3}).has_value());
  CHECK_FALSE(find_inverse(times2).has_value());
  auto swap = hom(MonoidPresentation::free(2), MonoidPresentation::free(2), {{0, 1}, {1, 0}});
  auto inv = find_inverse(swap);
  REQUIRE(inv.has_value());
  CHECK(homs_equal(compose(*inv, swap), identity_hom(swap.source)));
  CHECK(is_surjective(hom(MonoidPresentation::free(2), n, {{1}, {1}})));
  CHECK_FALSE(is_surjective(times2));
}

TEST_CASE("enumeration of finite monoids") {
  CHECK(enumerate_elements(pres(1, {{{3}, {0}}}), 100).size() == 3);
  CHECK(enumerate_elements(pres(1, {{{3}, {1}}}), 100).size() == 3);
  CHECK(enumerate_elements(pres(2, {{{2, 0}, {0, 0}}, {{0, 2}, {0, 0}}}), 100).size() == 4);
  CHECK_THROWS_AS(enumerate_elements(MonoidPresentation::free(1), 50), Error);
}

TEST_CASE("printing") {
  auto m = pres(2, {{{1, 1}, {1, 0}}});
  CHECK(m.word({2, 1}) == "2 a + b");
  CHECK(m.word({0, 0}) == "0");
  CHECK(MonoidPresentation::free(2).to_string() == "<a, b>");
}
