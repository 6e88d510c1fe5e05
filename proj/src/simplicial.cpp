#include "logalg/simplicial.hpp"

#include <future>
#include <map>

#include "logalg/error.hpp"

namespace logalg {

namespace {

// Simplicial identities for d(k, i): k -> k-1 and s(k, j): k -> k+1.
template <class Map, class Comp, class Eq, class Id>
bool identities(std::size_t n, const std::vector<std::vector<Map>>& d,
                const std::vector<std::vector<Map>>& s, Comp comp, Eq eq, Id id) {
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t j = 1; j <= k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (!eq(comp(d[k - 1][i], d[k][j]), comp(d[k - 1][j - 1], d[k][i]), k - 2)) return false;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= k + 1; ++i) {
        auto lhs = comp(d[k + 1][i], s[k][j]);
        bool ok;
        if (i < j)
          ok = eq(lhs, comp(s[k - 1][j - 1], d[k][i]), k);
        else if (i == j || i == j + 1)
          ok = eq(lhs, id(k), k);
        else
          ok = eq(lhs, comp(s[k - 1][j], d[k][i - 1]), k);
        if (!ok) return false;
      }
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (!eq(comp(s[k + 1][i], s[k][j]), comp(s[k + 1][j + 1], s[k][i]), k + 2)) return false;
  return true;
}

bool shape_ok(std::size_t n, std::size_t levels, std::size_t nfaces, std::size_t ndegs) {
  return levels == n + 1 && nfaces == n + 1 && ndegs >= n;
}

MonoidPresentation power(const MonoidPresentation& m, std::size_t k) {
  const std::size_t g = m.ngens();
  std::vector<Relation> rels;
  std::vector<std::string> names;
  for (std::size_t p = 0; p < k; ++p) {
    for (const auto& r : m.relations()) {
      Exponent a(g * k, 0), b(g * k, 0);
      for (std::size_t i = 0; i < g; ++i) {
        a[p * g + i] = r.lhs[i];
        b[p * g + i] = r.rhs[i];
      }
      rels.push_back({a, b});
    }
    for (const auto& nm : m.names()) names.push_back(nm + "." + std::to_string(p + 1));
  }
  return MonoidPresentation(g * k, rels, names);
}

// Block-moving map M^k -> M^j: block p goes to where(p), or vanishes when
// where(p) is negative.
template <class F>
MonoidHom block_map(const MonoidPresentation& src, const MonoidPresentation& tgt,
                    std::size_t g, std::size_t k, F where) {
  std::vector<Exponent> images;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < g; ++i) {
      Exponent e(tgt.ngens(), 0);
      long q = where(static_cast<long>(p));
      if (q >= 0) e[static_cast<std::size_t>(q) * g + i] = 1;
      images.push_back(e);
    }
  return MonoidHom{src, tgt, images};
}

IntMatrix alternating_sum(const std::vector<IntMatrix>& faces) {
  IntMatrix out(faces.front().rows(), faces.front().cols());
  for (std::size_t j = 0; j < faces.size(); ++j)
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c)
        out(r, c) += (j % 2 ? -1 : 1) * faces[j](r, c);
  return out;
}

}  // namespace

bool TruncSimplicialAb::check_identities() const {
  if (!shape_ok(n, levels.size(), faces.size(), degeneracies.size())) return false;
  auto comp = [](const IntMatrix& g, const IntMatrix& f) { return g * f; };
  auto eq = [this](const IntMatrix& a, const IntMatrix& b, std::size_t lvl) {
    return lattice_contains_all(levels[lvl].relations, a - b);
  };
  auto id = [this](std::size_t lvl) { return IntMatrix::identity(levels[lvl].ambient()); };
  return identities(n, faces, degeneracies, comp, eq, id);
}

bool TruncSimplicialMonoid::check_identities() const {
  if (!shape_ok(n, levels.size(), faces.size(), degeneracies.size())) return false;
  auto comp = [](const MonoidHom& g, const MonoidHom& f) { return compose(g, f); };
  auto eq = [](const MonoidHom& a, const MonoidHom& b, std::size_t) { return homs_equal(a, b); };
  auto id = [this](std::size_t lvl) { return identity_hom(levels[lvl]); };
  return identities(n, faces, degeneracies, comp, eq, id);
}

TruncSimplicialAb constant(const GroupPresentation& a, std::size_t n) {
  TruncSimplicialAb x;
  x.n = n;
  x.levels.assign(n + 1, a);
  auto id = IntMatrix::identity(a.ambient());
  x.faces.resize(n + 1);
  x.degeneracies.resize(n);
  for (std::size_t k = 1; k <= n; ++k) x.faces[k].assign(k + 1, id);
  for (std::size_t k = 0; k < n; ++k) x.degeneracies[k].assign(k + 1, id);
  return x;
}

TruncSimplicialMonoid constant(const MonoidPresentation& m, std::size_t n) {
  TruncSimplicialMonoid x;
  x.n = n;
  x.levels.assign(n + 1, m);
  auto id = identity_hom(m);
  x.faces.resize(n + 1);
  x.degeneracies.resize(n);
  for (std::size_t k = 1; k <= n; ++k) x.faces[k].assign(k + 1, id);
  for (std::size_t k = 0; k < n; ++k) x.degeneracies[k].assign(k + 1, id);
  return x;
}

FgAbelianGroup moore_homotopy(const TruncSimplicialAb& x, std::size_t i) {
  if (i + 1 > x.n)
    fail(ErrorKind::TruncationTooLow,
         "pi_" + std::to_string(i) + " needs level " + std::to_string(i + 1));
  auto up = alternating_sum(x.faces[i + 1]);
  if (i == 0)
    return homology_at(up, IntMatrix(0, x.levels[0].ambient()), x.levels[0],
                       GroupPresentation::free(0));
  return homology_at(up, alternating_sum(x.faces[i]), x.levels[i], x.levels[i - 1]);
}

TruncSimplicialMonoid bar(const MonoidPresentation& m, std::size_t n) {
  const std::size_t g = m.ngens();
  TruncSimplicialMonoid x;
  x.n = n;
  for (std::size_t k = 0; k <= n; ++k) x.levels.push_back(power(m, k));
  x.faces.resize(n + 1);
  x.degeneracies.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& src = x.levels[k];
    const auto& tgt = x.levels[k - 1];
    const long kk = static_cast<long>(k);
    for (long i = 0; i <= kk; ++i) {
      x.faces[k].push_back(block_map(src, tgt, g, k, [&](long p) -> long {
        if (i == 0) return p - 1;
        if (i == kk) return p == kk - 1 ? -1 : p;
        return p < i ? p : p - 1;
      }));
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (long i = 0; i <= static_cast<long>(k); ++i)
      x.degeneracies[k].push_back(block_map(x.levels[k], x.levels[k + 1], g, k,
                                            [&](long p) { return p < i ? p : p + 1; }));
  return x;
}

FgAbelianGroup pi1_of_bar(const MonoidPresentation& m) {
  // Edges are the level-1 generators, 2-simplices impose the relations of M.
  auto b = bar(m, 2);
  const auto& edges = b.levels[1];
  IntMatrix rel(edges.ngens(), edges.relations().size());
  for (std::size_t c = 0; c < edges.relations().size(); ++c)
    for (std::size_t r = 0; r < edges.ngens(); ++r)
      rel(r, c) = static_cast<long>(edges.relations()[c].lhs[r]) -
                  static_cast<long>(edges.relations()[c].rhs[r]);
  return GroupPresentation{rel}.invariants();
}

std::vector<FgAbelianGroup> bar_homology(const MonoidPresentation& m, std::size_t d) {
  auto elems = enumerate_elements(m, 32);
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  const std::size_t unit = index.at(m.normal_form(exp_zero(m.ngens())));
  std::vector<std::size_t> reduced;  // non-identity elements
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (i != unit) reduced.push_back(i);
  std::vector<long> pos(elems.size(), -1);
  for (std::size_t i = 0; i < reduced.size(); ++i) pos[reduced[i]] = static_cast<long>(i);
  const std::size_t q = reduced.size();

  std::vector<std::size_t> rank{1};
  for (std::size_t k = 1; k <= d + 1; ++k) {
    rank.push_back(rank.back() * q);
    if (rank.back() > limits().max_enumeration)
      fail(ErrorKind::TooLarge, "bar complex rank " + std::to_string(rank.back()) +
                                    " in degree " + std::to_string(k));
  }
  auto product = [&](std::size_t a, std::size_t b) {
    return index.at(m.normal_form(exp_add(elems[a], elems[b])));
  };
  // Boundary C_k -> C_{k-1}; tuples are base-q digits, first entry most significant.
  auto boundary = [&](std::size_t k) {
    IntMatrix out(rank[k - 1], rank[k]);
    std::vector<std::size_t> t(k);
    for (std::size_t col = 0; col < rank[k]; ++col) {
      std::size_t c = col;
      for (std::size_t p = k; p-- > 0; c /= q) t[p] = reduced[c % q];
      auto encode = [&](const std::vector<std::size_t>& u) {
        std::size_t r = 0;
        for (auto e : u) r = r * q + static_cast<std::size_t>(pos[e]);
        return r;
      };
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<std::size_t> face;
        if (i == 0) {
          face.assign(t.begin() + 1, t.end());
        } else if (i == k) {
          face.assign(t.begin(), t.end() - 1);
        } else {
          auto prod = product(t[i - 1], t[i]);
          if (prod == unit) continue;
          face.assign(t.begin(), t.begin() + static_cast<long>(i) - 1);
          face.push_back(prod);
          face.insert(face.end(), t.begin() + static_cast<long>(i) + 1, t.end());
        }
        out(encode(face), col) += (i % 2 ? -1 : 1);
      }
    }
    return out;
  };

  std::vector<IntMatrix> del{IntMatrix(0, 1)};
  for (std::size_t k = 1; k <= d + 1; ++k) del.push_back(boundary(k));
  const Limits caps = limits();
  std::vector<std::future<FgAbelianGroup>> jobs;
  for (std::size_t i = 0; i <= d; ++i)
    jobs.push_back(std::async(std::launch::async, [&, i] {
      ScopedLimits scope(caps);
      return complex_homology(del[i + 1], del[i]);
    }));
  std::vector<FgAbelianGroup> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

TruncSimplicialAb degreewise_gp(const TruncSimplicialMonoid& x) {
  TruncSimplicialAb y;
  y.n = x.n;
  for (const auto& l : x.levels) y.levels.push_back(l.gp_presentation());
  y.faces.resize(x.faces.size());
  y.degeneracies.resize(x.degeneracies.size());
  for (std::size_t k = 0; k < x.faces.size(); ++k)
    for (const auto& f : x.faces[k]) y.faces[k].push_back(f.matrix());
  for (std::size_t k = 0; k < x.degeneracies.size(); ++k)
    for (const auto& s : x.degeneracies[k]) y.degeneracies[k].push_back(s.matrix());
  return y;
}

MonoidPresentation pi0_monoid(const TruncSimplicialMonoid& x) {
  if (x.n == 0) return x.levels.at(0);
  std::vector<Relation> extra;
  const auto& l1 = x.levels[1];
  for (std::size_t g = 0; g < l1.ngens(); ++g) {
    auto e = exp_unit(l1.ngens(), g);
    auto a = x.faces[1][0].apply(e), b = x.faces[1][1].apply(e);
    if (a != b) extra.push_back({a, b});
  }
  return quotient(x.levels[0], extra).target;
}

bool is_grouplike(const TruncSimplicialMonoid& x) {
  auto p = pi0_monoid(x);
  return units(p).unit_generators.size() == p.ngens();
}

}  // namespace logalg
