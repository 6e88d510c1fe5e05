#include <doctest.h>

#include <cmath>

#include "logalg/error.hpp"
#include "logalg/kahler.hpp"

using namespace logalg;

namespace {

MonoidPresentation N1() { return MonoidPresentation::free(1, {"t"}); }

MonoidHom hom(MonoidPresentation s, MonoidPresentation t, std::vector<Exponent> im) {
  return MonoidHom{std::move(s), std::move(t), std::move(im)};
}

PreLogMorphism from_point(const Field& k) {
  auto base = free_chart(k, MonoidPresentation{});
  auto line = free_chart(k, N1());
  return PreLogMorphism{base, line, hom(MonoidPresentation{}, N1(), {}),
                        hom(MonoidPresentation{}, N1(), {})};
}

PreLogMorphism times(const Field& k, std::int64_t n) {
  auto line = free_chart(k, N1());
  return PreLogMorphism{line, line, hom(N1(), N1(), {{n}}), hom(N1(), N1(), {{n}})};
}

PreLogMorphism log_point(const Field& k) {
  auto base = free_chart(k, MonoidPresentation{});
  Algebra a(k, N1(), {PolyRing(k, {"t"}).variable(0)});
  ChartPreLogRing pt{a, N1(), identity_hom(N1()), false};
  return PreLogMorphism{base, pt, hom(MonoidPresentation{}, N1(), {}),
                        hom(MonoidPresentation{}, N1(), {})};
}

std::vector<Scalar> at(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("classical differentials") {
  const Field QQ{};
  PolyRing r(QQ, {"t"});
  Algebra dual(QQ, N1(), {r.pow(r.variable(0), 2)});
  auto k = Algebra::ground(QQ);
  auto om = omega_ring(hom(MonoidPresentation{}, N1(), {}), k, dual);
  REQUIRE(om.relations().size() == 1);
  CHECK(om.to_string() == "<dt | 2*t*dt>");
  CHECK(evaluate_at_point(om, at({0})) == 1);

  auto line = Algebra(QQ, N1());
  auto free1 = omega_ring(hom(MonoidPresentation{}, N1(), {}), k, line);
  CHECK(free1.relations().empty());
  CHECK(evaluate_at_point(free1, at({1})) == 1);

  auto id = omega_ring(identity_hom(N1()), line, line);
  CHECK(id.is_zero_module());
  CHECK_THROWS_AS(evaluate_at_point(om, at({1})), Error);
}

TEST_CASE("log differentials of the basic examples") {
  const Field QQ{};
  auto f = from_point(QQ);
  auto om = omega_log(f);
  CHECK(om.ngens() == 2);
  CHECK(evaluate_at_point(om, at({1})) == 1);
  CHECK(evaluate_at_point(om, at({0})) == 1);
  // dt = t dlog t
  CHECK(om.equal(om.ring().ring().basis_vector(0),
                 om.ring().ring().with_comp(om.ring().ring().variable(0), 1)));
  CHECK(omega_log(identity_morphism(f.target)).is_zero_module());

  auto lp = omega_log(log_point(QQ));
  CHECK(evaluate_at_point(lp, at({0})) == 1);
  CHECK_FALSE(lp.is_zero_module());
}

TEST_CASE("multiplication maps over various fields") {
  for (std::int64_t n : {2, 3, 6}) {
    CAPTURE(n);
    CHECK(evaluate_at_point(omega_log(times(Field{}, n)), at({1})) == 0);
    CHECK(evaluate_at_point(omega_log(times(Field{}, n)), at({0})) == 0);
    for (std::uint64_t p : {2u, 3u, 5u}) {
      CAPTURE(p);
      auto dim = evaluate_at_point(omega_log(times(Field(p), n)), at({1}));
      CHECK(dim == (n % static_cast<std::int64_t>(p) == 0 ? 1u : 0u));
    }
  }
}

TEST_CASE("closed form from the Smith form") {
  const Field QQ{};
  auto cf = monomial_closed_form(times(QQ, 3));
  CHECK(cf.module.ngens() == 1);
  CHECK(cf.module.relations().size() == 1);
  CHECK(certify_isomorphism(cf.from_dlog, cf.to_dlog));
  CHECK(monomial_closed_form(identity_morphism(free_chart(QQ, N1()))).module.ngens() == 0);

  auto n2 = MonoidPresentation::free(2, {"t", "s"});
  PreLogMorphism incl{free_chart(QQ, N1()), free_chart(QQ, n2), hom(N1(), n2, {{1, 0}}),
                      hom(N1(), n2, {{1, 0}})};
  auto c2 = monomial_closed_form(incl);
  CHECK(c2.module.ngens() == 1);
  CHECK(c2.module.relations().empty());

  CHECK(closed_form_matches(times(QQ, 3)));
  CHECK(closed_form_matches(incl));
  CHECK(closed_form_matches(from_point(QQ)));
  CHECK(closed_form_matches(times(Field(3), 3)));
  CHECK_THROWS_AS(closed_form_matches(log_point(QQ)), Error);
}

TEST_CASE("derivations") {
  const Field QQ{};
  auto f = from_point(QQ);
  const auto& B = f.target.ring;
  const auto& R = B.ring();
  ModulePresentation J(B, {"e"}, {});
  LogDerivation zero{f, J, {R.zero()}, {R.zero()}};
  CHECK(check_derivation(zero).ok);
  LogDerivation euler{f, J, {R.variable(0)}, {R.constant(1)}};
  CHECK(check_derivation(euler).ok);
  CHECK(derivation_map(euler).is_well_defined());
  LogDerivation bad{f, J, {R.constant(1)}, {R.zero()}};
  auto res = check_derivation(bad);
  CHECK_FALSE(res.ok);
  CHECK(res.witness == "exchange t");

  auto g = times(QQ, 2);
  LogDerivation m_kill{g, J, {R.variable(0)}, {R.constant(1)}};
  auto res2 = check_derivation(m_kill);
  CHECK_FALSE(res2.ok);
  CHECK(res2.witness.rfind("d", 0) == 0);
}

TEST_CASE("derivations into a point module match the fibre dimension") {
  // Brute force over F_3: count (a, b) making a derivation into k(pt).
  const Field F3(3);
  std::vector<PreLogMorphism> maps{from_point(F3), times(F3, 2), times(F3, 3), log_point(F3)};
  for (const auto& f : maps) {
    const auto& B = f.target.ring;
    const auto& R = B.ring();
    const std::size_t n = B.nvars(), m = f.target.P.ngens();
    for (const auto& pt : B.points()) {
      std::vector<Vec> rels;
      for (std::size_t i = 0; i < n; ++i) rels.push_back(R.sub(R.variable(i), R.constant(pt[i])));
      ModulePresentation J(B, {"e"}, rels);
      std::size_t count = 0, total = 1;
      for (std::size_t k = 0; k < n + m; ++k) total *= 3;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<Vec> vals;
        std::size_t c = code;
        for (std::size_t k = 0; k < n + m; ++k, c /= 3) vals.push_back(R.constant(Scalar(long(c % 3))));
        LogDerivation d{f, J, {vals.begin(), vals.begin() + long(n)}, {vals.begin() + long(n), vals.end()}};
        if (check_derivation(d).ok) ++count;
      }
      auto dim = evaluate_at_point(omega_log(f), pt);
      CHECK(count == static_cast<std::size_t>(std::llround(std::pow(3.0, double(dim)))));
    }
  }
}

TEST_CASE("module maps and cokernels") {
  const Field QQ{};
  Algebra B(QQ, N1());
  const auto& R = B.ring();
  ModulePresentation free2(B, {"u", "v"}, {});
  ModulePresentation one(B, {"w"}, {});
  ModuleMap incl{one, free2, {R.basis_vector(0)}};
  CHECK(incl.is_well_defined());
  auto q = cokernel(incl);
  CHECK(q.is_zero(R.basis_vector(0)));
  CHECK_FALSE(q.is_zero(R.basis_vector(1)));
  ModulePresentation q2(B, {"u", "v"}, {R.basis_vector(0)});
  CHECK(same_presentation(q, q2));
  auto tors = ModulePresentation(B, {"w"}, {R.with_comp(R.variable(0), 0)});
  ModuleMap bad{tors, one, {R.basis_vector(0)}};
  CHECK_FALSE(bad.is_well_defined());
}
