#include <random>

#include "doctest.h"
#include "logalg/error.hpp"
#include "logalg/poly.hpp"

using namespace logalg;

namespace {

Vec random_poly(std::mt19937& rng, const PolyRing& R, int terms, int deg) {
  Vec v;
  for (int i = 0; i < terms; ++i) {
    Exponent e(R.nvars());
    for (auto& x : e) x = rng() % (deg + 1);
    v.push_back(Term{0, e, Scalar(static_cast<int>(rng() % 7) - 3)});
  }
  return R.normalize(v);
}

}  // namespace

TEST_CASE("field arithmetic") {
  Field q, f3(3);
  CHECK(q.div(Scalar(1), Scalar(3)) == Scalar(1, 3));
  CHECK(f3.normalize(Scalar(5)) == 2);
  CHECK(f3.mul(f3.inv(Scalar(2)), Scalar(2)) == 1);
  CHECK(f3.normalize(Scalar(1, 2)) == 2);
  CHECK_THROWS_AS(Field(4), Error);
}

TEST_CASE("field linear algebra") {
  Field q;
  FMatrix m{{1, 2, 3}, {2, 4, 6}};
  CHECK(rank(q, m) == 1);
  auto ns = nullspace(q, m, 3);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
  CHECK(solve(q, m, {1, 2}, 3).has_value());
  CHECK_FALSE(solve(q, m, {1, 3}, 3).has_value());
  Field f2(2);
  CHECK(rank(f2, FMatrix{{2, 1}, {0, 1}}) == 1);
}

TEST_CASE("ideal membership and elimination") {
  PolyRing R(Field{}, {"t", "x", "y"});
  Vec t = R.variable(0), x = R.variable(1), y = R.variable(2);
  std::vector<Vec> I{R.sub(x, R.pow(t, 2)), R.sub(y, R.pow(t, 3))};
  auto elim = eliminate(R, I, 1);
  REQUIRE(elim.size() == 1);
  Vec cusp = R.sub(R.pow(y, 2), R.pow(x, 3));
  GroebnerBasis gb(R, elim);
  CHECK(gb.contains(cusp));
  CHECK_FALSE(gb.contains(x));
  GroebnerBasis unit(R, {R.sub(R.mul(x, y), R.constant(1)), x});
  CHECK(unit.contains_one());
}

TEST_CASE("random combinations lie in the ideal and lift back") {
  std::mt19937 rng(5);
  PolyRing R(Field{}, {"x", "y"});
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Vec> g{random_poly(rng, R, 3, 2), random_poly(rng, R, 3, 2)};
    Vec c0 = random_poly(rng, R, 2, 1), c1 = random_poly(rng, R, 2, 1);
    Vec v = R.add(R.mul(c0, g[0]), R.mul(c1, g[1]));
    GroebnerBasis gb(R, g);
    CHECK(gb.contains(v));
    auto l = lift(R, g, 1, v);
    REQUIRE(l.has_value());
    CHECK(R.add(R.mul((*l)[0], g[0]), R.mul((*l)[1], g[1])) == v);
    for (const auto& s : syzygies(R, g, 1)) {
      Vec z = R.add(R.mul(R.component(s, 0), g[0]), R.mul(R.component(s, 1), g[1]));
      CHECK(z.empty());
    }
  }
}

TEST_CASE("syzygies of (x, y) are generated by the Koszul relation") {
  PolyRing R(Field{}, {"x", "y"});
  Vec x = R.variable(0), y = R.variable(1);
  auto syz = syzygies(R, {x, y}, 1);
  REQUIRE(syz.size() == 1);
  Vec koszul = R.sub(R.with_comp(y, 0), R.with_comp(x, 1));
  GroebnerBasis gb(R, syz);
  CHECK(gb.contains(koszul));
}

TEST_CASE("module membership with components") {
  PolyRing R(Field(5), {"x"});
  Vec x = R.variable(0);
  // submodule of k[x]^2 generated by (x, 1) and (0, x^2)
  std::vector<Vec> g{R.add(R.with_comp(x, 0), R.basis_vector(1)),
                     R.with_comp(R.pow(x, 2), 1)};
  GroebnerBasis gb(R, g);
  CHECK(gb.contains(R.with_comp(R.pow(x, 3), 0)));
  CHECK_FALSE(gb.contains(R.basis_vector(0)));
  CHECK(R.to_string(R.scale(x, Scalar(5))) == "0");
}

TEST_CASE("derivative and substitution") {
  PolyRing R(Field{}, {"x", "y"});
  Vec x = R.variable(0), y = R.variable(1);
  Vec f = R.sub(R.mul(x, y), R.pow(x, 2));
  CHECK(R.derivative(f, 0) == R.sub(y, R.scale(x, 2)));
  Vec g = R.substitute(f, {y, x}, R);
  CHECK(g == R.sub(R.mul(x, y), R.pow(y, 2)));
  CHECK(R.evaluate(f, {2, 3}) == 2);
  CHECK(R.to_string(f) == "-x^2 + x*y");
}
