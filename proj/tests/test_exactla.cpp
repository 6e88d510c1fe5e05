#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "logalg/error.hpp"
#include "logalg/exactla.hpp"

using namespace logalg;

namespace {

bool divisibility_chain(const IntMatrix& d, std::size_t rank) {
  for (std::size_t i = 0; i + 1 < rank; ++i)
    if (!mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t())) return false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && d(i, j) != 0) return false;
      if (i == j && i >= rank && d(i, j) != 0) return false;
      if (i == j && i < rank && d(i, j) <= 0) return false;
    }
  return true;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<int> q(-2, 2);
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    int a = idx(rng), b = idx(rng);
    if (a == b) {
      u.negate_row(a);
      continue;
    }
    u.add_row_multiple(a, b, q(rng));
  }
  return u;
}

// Minimal elements of {x in [0,B]^m : Ax = 0, x != 0} by exhaustion.
std::set<std::vector<std::int64_t>> brute_hilbert(const IntMatrix& a, int bound) {
  const std::size_t m = a.cols();
  std::vector<std::vector<std::int64_t>> sols;
  std::vector<std::int64_t> x(m, 0);
  for (;;) {
    std::size_t k = 0;
    while (k < m && x[k] == bound) x[k++] = 0;
    if (k == m) break;
    ++x[k];
    IntVector v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = x[i];
    if ((a * v) == IntVector(a.rows())) sols.push_back(x);
  }
  std::set<std::vector<std::int64_t>> minimal;
  for (const auto& s : sols) {
    bool min = true;
    for (const auto& t : sols) {
      if (t == s) continue;
      bool le = true;
      for (std::size_t i = 0; i < m; ++i) le = le && t[i] <= s[i];
      if (le) {
        min = false;
        break;
      }
    }
    if (min) minimal.insert(s);
  }
  return minimal;
}

// Finite groups Z/n_1 + ... + Z/n_k, elements enumerated explicitly.
struct Finite {
  std::vector<int> n;
  GroupPresentation pres() const {
    IntMatrix r(n.size(), n.size());
    for (std::size_t i = 0; i < n.size(); ++i) r(i, i) = n[i];
    return {r};
  }
  std::vector<std::vector<int>> elements() const {
    std::vector<std::vector<int>> out{{}};
    for (int k : n) {
      std::vector<std::vector<int>> next;
      for (const auto& e : out)
        for (int v = 0; v < k; ++v) {
          auto f = e;
          f.push_back(v);
          next.push_back(f);
        }
      out = next;
    }
    return out;
  }
  std::vector<int> apply(const IntMatrix& m, const std::vector<int>& x) const {
    std::vector<int> y(n.size(), 0);
    for (std::size_t i = 0; i < n.size(); ++i) {
      long s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += m(i, j).get_si() * x[j];
      y[i] = static_cast<int>(((s % n[i]) + n[i]) % n[i]);
    }
    return y;
  }
};

IntMatrix random_hom(std::mt19937& rng, const Finite& s, const Finite& t) {
  IntMatrix m(t.n.size(), s.n.size());
  for (std::size_t i = 0; i < t.n.size(); ++i)
    for (std::size_t j = 0; j < s.n.size(); ++j) {
      std::vector<int> ok;
      for (int x = 0; x < t.n[i]; ++x)
        if ((static_cast<long>(x) * s.n[j]) % t.n[i] == 0) ok.push_back(x);
      m(i, j) = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
    }
  return m;
}

}  // namespace

TEST_CASE("cokernel of [[2,-2]] is Z + Z/2") {
  IntMatrix a{{2, -2}};
  FgAbelianGroup g = cokernel(a.transpose());
  CHECK(g.free_rank == 1);
  REQUIRE(g.torsion.size() == 1);
  CHECK(g.torsion[0] == 2);
  CHECK(g.to_string() == "Z + Z/2");
  CHECK(cokernel(a).is_trivial() == false);
  CHECK(cokernel(a).torsion == std::vector<Int>{2});
  CHECK(cokernel(a).free_rank == 0);
}

TEST_CASE("snf of [[2,4],[6,8]] is diag(2,4)") {
  IntMatrix a{{2, 4}, {6, 8}};
  SmithForm s = snf(a);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
  CHECK(s.U * a * s.V == s.D);
  CHECK(is_unimodular(s.U));
  CHECK(is_unimodular(s.V));
}

TEST_CASE("snf property: U A V = D, unimodular transforms, invariant under conjugation") {
  std::mt19937 rng(20240521);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 6);
    SmithForm s = snf(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    CHECK(divisibility_chain(s.D, s.rank));
    IntMatrix p = random_unimodular(rng, r), q = random_unimodular(rng, c);
    CHECK(snf(p * a * q).D == s.D);
    // |coker| = |det| for square nonsingular input
    if (r == c && determinant(a) != 0) {
      auto ord = cokernel(a).order();
      REQUIRE(ord.has_value());
      CHECK(*ord == abs(determinant(a)));
    }
  }
}

TEST_CASE("snf is reproducible") {
  IntMatrix a{{3, 5, 7}, {2, 4, 6}, {1, 1, 1}};
  SmithForm s1 = snf(a), s2 = snf(a);
  CHECK(s1.U == s2.U);
  CHECK(s1.V == s2.V);
}

TEST_CASE("cokernel coordinates identify the quotient") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + rng() % 3, c = rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 5);
    FgAbelianGroup g = cokernel(a);
    for (std::size_t j = 0; j < c; ++j) CHECK(g.is_zero(a.column(j)));
    // generators map to the unit coordinate vectors
    for (std::size_t k = 0; k < g.ngens(); ++k) {
      IntVector y = g.reduce(g.generators.column(k));
      for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == (i == k ? 1 : 0));
    }
  }
}

TEST_CASE("kernel basis and integer solving") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, 4);
    IntMatrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == c - snf(a).rank);
    IntVector x(c);
    for (auto& xi : x) xi = static_cast<int>(rng() % 7) - 3;
    IntVector b = a * x;
    auto sol = solve_integer(a, b);
    REQUIRE(sol.has_value());
    CHECK(a * *sol == b);
  }
  IntMatrix two{{2}};
  CHECK_FALSE(solve_integer(two, IntVector{1}).has_value());
}

TEST_CASE("lattice basis spans the same lattice") {
  IntMatrix g{{2, 4, 6}, {0, 2, 2}};
  IntMatrix b = lattice_basis(g);
  CHECK(b.cols() == 2);
  CHECK(lattice_contains_all(b, g));
  CHECK(lattice_contains_all(g, b));
  CHECK_FALSE(lattice_contains(g, IntVector{1, 0}));
}

TEST_CASE("hilbert basis examples") {
  auto h1 = hilbert_basis(IntMatrix{{1, -2}});
  CHECK(h1.elements == std::vector<std::vector<std::int64_t>>{{2, 1}});
  auto h2 = hilbert_basis(IntMatrix{{1, 1, -1}});
  CHECK(h2.elements == std::vector<std::vector<std::int64_t>>{{0, 1, 1}, {1, 0, 1}});
  CHECK(h2.candidates > 0);
}

TEST_CASE("hilbert basis agrees with exhaustive search") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t c = 2 + rng() % 3;
    IntMatrix a = random_matrix(rng, 1, c, 3);
    auto h = hilbert_basis(a);
    std::int64_t mx = 0;
    for (const auto& e : h.elements)
      for (auto v : e) mx = std::max(mx, v);
    if (mx > 6) continue;
    std::set<std::vector<std::int64_t>> got(h.elements.begin(), h.elements.end());
    CHECK(got == brute_hilbert(a, 6));
  }
}

TEST_CASE("hilbert basis respects the candidate cap") {
  Limits l;
  l.max_hilbert = 5;
  ScopedLimits guard(l);
  try {
    hilbert_basis(IntMatrix{{7, 11, -13, -17}});
    FAIL("expected ResourceExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceExceeded);
  }
}

TEST_CASE("nonnegative solutions") {
  IntMatrix a{{2, 3}};
  CHECK(nonnegative_solution(a, IntVector{5}).has_value());
  CHECK_FALSE(nonnegative_solution(a, IntVector{1}).has_value());
  auto s = nonnegative_solution(a, IntVector{7});
  REQUIRE(s);
  CHECK(2 * (*s)[0] + 3 * (*s)[1] == 7);
}

TEST_CASE("complex homology") {
  // Z --2--> Z --0--> 0
  IntMatrix d1{{2}};
  IntMatrix d0(0, 1);
  CHECK(complex_homology(d1, d0).torsion == std::vector<Int>{2});
  IntMatrix bad0{{1}};
  try {
    complex_homology(d1, bad0);
    FAIL("expected NotAComplex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAComplex);
  }
  // Z^2 --(1,1)^T--> ... : Z --[1;1]--> Z^2 --[1,-1]--> Z, exact
  CHECK(complex_homology(IntMatrix{{1}, {1}}, IntMatrix{{1, -1}}).is_trivial());
}

TEST_CASE("squares of finite abelian groups agree with enumeration") {
  std::mt19937 rng(99);
  std::vector<Finite> shapes{{{2}}, {{3}}, {{4}}, {{2, 2}}, {{6}}, {{2, 4}}, {{1}}};
  int checked = 0, cart = 0;
  for (int trial = 0; trial < 4000 && checked < 300; ++trial) {
    auto pick = [&]() { return shapes[rng() % shapes.size()]; };
    Finite A = pick(), B = pick(), C = pick(), D = pick();
    IntMatrix top = random_hom(rng, A, B), left = random_hom(rng, A, C);
    IntMatrix right = random_hom(rng, B, D), bottom = random_hom(rng, C, D);
    bool commutes = true;
    for (const auto& x : A.elements())
      commutes = commutes && D.apply(right, B.apply(top, x)) == D.apply(bottom, C.apply(left, x));
    AbelianSquare sq{A.pres(), B.pres(), C.pres(), D.pres(), top, left, right, bottom};
    CHECK(square_commutes(sq) == commutes);
    if (!commutes) {
      CHECK_THROWS_AS(square_is_cartesian(sq), Error);
      continue;
    }
    ++checked;
    std::set<std::pair<std::vector<int>, std::vector<int>>> fiber, image;
    for (const auto& b : B.elements())
      for (const auto& c : C.elements())
        if (D.apply(right, b) == D.apply(bottom, c)) fiber.insert({b, c});
    for (const auto& x : A.elements()) image.insert({B.apply(top, x), C.apply(left, x)});
    bool brute_cart = image == fiber && image.size() == A.elements().size();
    std::set<std::vector<int>> hit;
    for (const auto& b : B.elements())
      for (const auto& c : C.elements()) {
        auto u = D.apply(right, b), v = D.apply(bottom, c);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = ((u[i] - v[i]) % D.n[i] + D.n[i]) % D.n[i];
        hit.insert(u);
      }
    bool brute_cocart = brute_cart && hit.size() == D.elements().size();
    CHECK(square_is_cartesian(sq) == brute_cart);
    CHECK(square_is_cocartesian(sq) == brute_cocart);
    cart += brute_cart;
  }
  CHECK(checked > 50);
  CHECK(cart > 0);
}
