#include <doctest.h>

#include "logalg/cotangent.hpp"
#include "logalg/error.hpp"

using namespace logalg;

namespace {

MonoidPresentation N1() { return MonoidPresentation::free(1, {"t"}); }
MonoidPresentation N2() { return MonoidPresentation::free(2, {"x", "y"}); }
MonoidPresentation none() { return MonoidPresentation{}; }

MonoidHom hom(MonoidPresentation s, MonoidPresentation t, std::vector<Exponent> im) {
  return MonoidHom{std::move(s), std::move(t), std::move(im)};
}

PreLogMorphism from_point(const Field& k) {
  return PreLogMorphism{free_chart(k, none()), free_chart(k, N1()), hom(none(), N1(), {}),
                        hom(none(), N1(), {})};
}

PreLogMorphism times(const Field& k, std::int64_t n) {
  auto line = free_chart(k, N1());
  return PreLogMorphism{line, line, hom(N1(), N1(), {{n}}), hom(N1(), N1(), {{n}})};
}

PreLogMorphism into_plane(const Field& k) {
  return PreLogMorphism{free_chart(k, N1()), free_chart(k, N2()), hom(N1(), N2(), {{1, 0}}),
                        hom(N1(), N2(), {{1, 0}})};
}

// t -> xy, log structure on both branches.
PreLogMorphism node(const Field& k) {
  return PreLogMorphism{free_chart(k, N1()), free_chart(k, N2()), hom(N1(), N2(), {{1, 1}}),
                        hom(N1(), N2(), {{1, 1}})};
}

PreLogMorphism node_underlying(const Field& k) {
  Algebra line(k, N1()), plane(k, N2());
  return PreLogMorphism{trivial_chart(line), trivial_chart(plane), hom(N1(), N2(), {{1, 1}}),
                        hom(none(), none(), {})};
}

std::vector<Scalar> at(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("naive cotangent complexes") {
  const Field QQ{};
  PolyRing r(QQ, {"t"});
  auto x = r.variable(0);
  auto k = Algebra::ground(QQ);
  auto to_line = hom(none(), N1(), {});

  Algebra idem(QQ, N1(), {r.sub(r.pow(x, 2), x)});
  auto c = naive_cotangent(to_line, k, idem);
  CHECK(c.is_complex());
  CHECK(c.h0().is_zero_module());
  CHECK_FALSE(c.h1_witness());
  auto inv = invariants(c, {at({0}), at({1})});
  for (const auto& s : inv.samples) {
    CHECK(s.h0 == 0);
    CHECK(s.h1 == 0);
  }

  Algebra dual(QQ, N1(), {r.pow(x, 2)});
  auto d = naive_cotangent(to_line, k, dual);
  auto dinv = invariants(d);
  REQUIRE(dinv.samples.size() == 1);
  CHECK(dinv.samples[0].h0 == 1);
  CHECK(dinv.samples[0].h1 == 1);
  CHECK(d.h1_witness());

  Algebra line(QQ, N1());
  CHECK_THROWS_AS(naive_cotangent(identity_hom(N1()), dual, line), Error);
}

TEST_CASE("identity and multiplication maps") {
  const Field QQ{};
  auto id = identity_morphism(free_chart(QQ, N1()));
  auto c = rognes_pushout(id);
  CHECK(c.is_complex());
  CHECK(c.h0().is_zero_module());
  CHECK(is_derived_log_etale(id).kind == VerdictKind::Yes);

  for (std::int64_t n : {2, 3, 6}) {
    CAPTURE(n);
    auto v = is_derived_log_etale(times(QQ, n));
    CHECK(v.kind == VerdictKind::Yes);
    CHECK_FALSE(v.certificate.empty());
    for (std::uint64_t p : {2u, 3u, 5u}) {
      CAPTURE(p);
      auto w = is_derived_log_etale(times(Field(p), n));
      if (n % static_cast<std::int64_t>(p) == 0) {
        CHECK(w.kind == VerdictKind::No);
        CHECK(w.witness.find("pi0") != std::string::npos);
      } else {
        CHECK(w.kind == VerdictKind::Yes);
      }
    }
  }
}

TEST_CASE("smoothness verdicts") {
  const Field QQ{};
  auto f = from_point(QQ);
  auto s = is_derived_log_smooth(f);
  CHECK(s.kind == VerdictKind::Yes);
  CHECK(free_rank(rognes_pushout(f).h0()) == std::optional<std::size_t>(1));
  CHECK(is_derived_log_etale(f).kind == VerdictKind::No);
  for (const auto& smp : invariants(rognes_pushout(f)).samples) CHECK(smp.h0 == 1);

  CHECK(is_derived_log_smooth(node(QQ)).kind == VerdictKind::Yes);
  auto u = is_derived_log_smooth(node_underlying(QQ));
  CHECK(u.kind == VerdictKind::No);
  CHECK(u.witness.find("jumps") != std::string::npos);
  CHECK(is_derived_log_smooth(into_plane(QQ)).kind == VerdictKind::Yes);
}

TEST_CASE("pi0 of the total complex is the log differentials") {
  for (const Field& k : {Field{}, Field(2), Field(3)}) {
    std::vector<PreLogMorphism> maps{from_point(k), times(k, 2), times(k, 3), into_plane(k),
                                     node(k), node_underlying(k)};
    for (const auto& f : maps) {
      auto c = rognes_pushout(f);
      CHECK(c.is_complex());
      CHECK(pi0_matches_omega(f));
      auto om = omega_log(f);
      for (const auto& s : invariants(c).samples) CHECK(s.h0 == evaluate_at_point(om, s.point));
    }
  }
}

TEST_CASE("free rank by constant pivots") {
  const Field QQ{};
  Algebra B(QQ, N1());
  const auto& R = B.ring();
  CHECK(free_rank(ModulePresentation(B, {"a", "b"}, {})) == std::optional<std::size_t>(2));
  CHECK(free_rank(ModulePresentation(B, {"a", "b"}, {R.sub(R.basis_vector(0),
                                                           R.with_comp(R.variable(0), 1))})) ==
        std::optional<std::size_t>(1));
  CHECK_FALSE(free_rank(ModulePresentation(B, {"a"}, {R.with_comp(R.variable(0), 0)})));
}

TEST_CASE("transitivity") {
  for (const Field& k : {Field{}, Field(3)}) {
    CHECK(transitivity_check(from_point(k), times(k, 2)).ok());
    CHECK(transitivity_check(times(k, 2), times(k, 3)).ok());
    CHECK(transitivity_check(from_point(k), into_plane(k)).ok());
    auto r = transitivity_check(times(k, 3), into_plane(k));
    CHECK(r.ok());
    CHECK(r.euler_applicable);
  }
}

TEST_CASE("base change") {
  for (const Field& k : {Field{}, Field(2)}) {
    auto a = base_change_check(times(k, 2), times(k, 3));
    CHECK(a.isomorphic);
    CHECK(a.base_changed.target.ring.nvars() >= 1);
    CHECK(base_change_check(from_point(k), from_point(k)).isomorphic);
    CHECK(base_change_check(times(k, 2), into_plane(k)).isomorphic);
    CHECK(base_change_check(node(k), times(k, 2)).isomorphic);
  }
}

TEST_CASE("closed immersion has vanishing pi0 but not pi1") {
  const Field QQ{};
  PolyRing r(QQ, {"t"});
  Algebra line(QQ, N1()), origin(QQ, N1(), {r.variable(0)});
  PreLogMorphism f{trivial_chart(line), trivial_chart(origin), identity_hom(N1()),
                   hom(none(), none(), {})};
  auto c = rognes_pushout(f);
  CHECK(c.h0().is_zero_module());
  CHECK(c.h1_witness());
  auto v = is_derived_log_etale(f);
  CHECK(v.kind == VerdictKind::No);
  CHECK(v.witness.find("pi1") != std::string::npos);
  CHECK(invariants(c).samples.at(0).h1 == 1);
}
