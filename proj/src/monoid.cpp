#include "logalg/monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "logalg/error.hpp"

namespace logalg {

Exponent exp_add(const Exponent& a, const Exponent& b) {
  Exponent c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Exponent exp_scale(const Exponent& a, std::int64_t k) {
  Exponent c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * k;
  return c;
}

Exponent exp_zero(std::size_t n) { return Exponent(n, 0); }

Exponent exp_unit(std::size_t n, std::size_t i) {
  Exponent e(n, 0);
  e.at(i) = 1;
  return e;
}

IntVector to_int_vector(const Exponent& e) {
  IntVector v(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) v[i] = static_cast<long>(e[i]);
  return v;
}

namespace {

bool le(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

std::int64_t degree(const Exponent& a) {
  return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

IntVector to_int(const Exponent& e) { return to_int_vector(e); }

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 26) names.emplace_back(1, static_cast<char>('a' + i));
    else names.push_back("g" + std::to_string(i));
  }
  return names;
}

}  // namespace

// --- rewriting ---------------------------------------------------------------

RewriteSystem::RewriteSystem(std::size_t n, const std::vector<Relation>& relations,
                             MonomialOrder order)
    : n_(n), order_(std::move(order)) {
  for (const auto& r : relations) add(r.lhs, r.rhs);
  std::set<std::pair<Relation, Relation>> done;
  for (;;) {
    check_deadline();
    interreduce();
    bool added = false;
    const std::size_t count = rules_.size();
    for (std::size_t i = 0; i < count && i < rules_.size(); ++i)
      for (std::size_t j = i + 1; j < count && j < rules_.size(); ++j) {
        const Relation a = rules_[i], b = rules_[j];
        if (!done.insert({a, b}).second) continue;
        if (coprime(a.lhs, b.lhs)) continue;
        Exponent l(n_);
        for (std::size_t k = 0; k < n_; ++k) l[k] = std::max(a.lhs[k], b.lhs[k]);
        Exponent s1 = l, s2 = l;
        for (std::size_t k = 0; k < n_; ++k) {
          s1[k] += a.rhs[k] - a.lhs[k];
          s2[k] += b.rhs[k] - b.lhs[k];
        }
        if (add(s1, s2)) added = true;
      }
    if (added) continue;
    if (locally_confluent()) break;
    done.clear();
  }
  std::sort(rules_.begin(), rules_.end());
}

Exponent RewriteSystem::normal_form(Exponent w) const {
  if (w.size() != n_) fail(ErrorKind::InvalidArgument, "word length does not match generators");
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules_) {
      if (!le(r.lhs, w)) continue;
      for (std::size_t k = 0; k < n_; ++k) w[k] += r.rhs[k] - r.lhs[k];
      changed = true;
      break;
    }
  }
  return w;
}

bool RewriteSystem::add(Exponent a, Exponent b) {
  a = normal_form(std::move(a));
  b = normal_form(std::move(b));
  if (a == b) return false;
  if (order_.compare(a, b) < 0) std::swap(a, b);
  rules_.push_back({std::move(a), std::move(b)});
  if (rules_.size() > limits().max_gb)
    fail(ErrorKind::ResourceExceeded,
         "rewriting system exceeds " + std::to_string(limits().max_gb) + " rules");
  return true;
}

void RewriteSystem::interreduce() {
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < rules_.size() && !changed; ++i)
      for (std::size_t j = 0; j < rules_.size(); ++j) {
        if (i == j || !le(rules_[j].lhs, rules_[i].lhs)) continue;
        Relation r = rules_[i];
        rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(i));
        add(r.lhs, r.rhs);
        changed = true;
        break;
      }
    if (!changed) break;
  }
  for (auto& r : rules_) r.rhs = normal_form(r.rhs);
}

bool RewriteSystem::locally_confluent() const {
  for (std::size_t i = 0; i < rules_.size(); ++i)
    for (std::size_t j = i + 1; j < rules_.size(); ++j) {
      const auto& a = rules_[i];
      const auto& b = rules_[j];
      if (coprime(a.lhs, b.lhs)) continue;
      Exponent s1(n_), s2(n_);
      for (std::size_t k = 0; k < n_; ++k) {
        std::int64_t l = std::max(a.lhs[k], b.lhs[k]);
        s1[k] = l - a.lhs[k] + a.rhs[k];
        s2[k] = l - b.lhs[k] + b.rhs[k];
      }
      if (normal_form(s1) != normal_form(s2)) return false;
    }
  return true;
}

// --- presentations -----------------------------------------------------------

struct MonoidPresentation::Cache {
  std::once_flag rs_once;
  std::unique_ptr<RewriteSystem> rs;
  std::once_flag int_once;
  bool integral = false;
  std::vector<Relation> saturated;
};

MonoidPresentation::MonoidPresentation() : cache_(std::make_shared<Cache>()) {}

MonoidPresentation::MonoidPresentation(std::size_t n, std::vector<Relation> relations,
                                       std::vector<std::string> names)
    : n_(n), relations_(std::move(relations)), names_(std::move(names)),
      cache_(std::make_shared<Cache>()) {
  if (names_.empty()) names_ = default_names(n_);
  if (names_.size() != n_) fail(ErrorKind::InvalidArgument, "generator name count");
  for (const auto& r : relations_) {
    if (r.lhs.size() != n_ || r.rhs.size() != n_)
      fail(ErrorKind::InvalidArgument, "relation length does not match generators");
    for (std::size_t i = 0; i < n_; ++i)
      if (r.lhs[i] < 0 || r.rhs[i] < 0)
        fail(ErrorKind::InvalidArgument, "negative exponent in relation");
  }
}

MonoidPresentation MonoidPresentation::free(std::size_t n, std::vector<std::string> names) {
  return MonoidPresentation(n, {}, std::move(names));
}

MonoidPresentation MonoidPresentation::renamed(std::vector<std::string> names) const {
  return MonoidPresentation(n_, relations_, std::move(names));
}

const RewriteSystem& MonoidPresentation::rewriting() const {
  std::call_once(cache_->rs_once, [this] {
    cache_->rs = std::make_unique<RewriteSystem>(n_, relations_);
  });
  return *cache_->rs;
}

Exponent MonoidPresentation::normal_form(const Exponent& w) const {
  return rewriting().normal_form(w);
}

bool MonoidPresentation::equivalent(const Exponent& u, const Exponent& v) const {
  return normal_form(u) == normal_form(v);
}

bool MonoidPresentation::is_trivial() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (normal_form(exp_unit(n_, i)) != exp_zero(n_)) return false;
  return true;
}

GroupPresentation MonoidPresentation::gp_presentation() const {
  IntMatrix a(n_, relations_.size());
  for (std::size_t j = 0; j < relations_.size(); ++j)
    for (std::size_t i = 0; i < n_; ++i)
      a(i, j) = static_cast<long>(relations_[j].lhs[i] - relations_[j].rhs[i]);
  return GroupPresentation{a};
}

std::string MonoidPresentation::word(const Exponent& w) const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!w[i]) continue;
    if (!s.empty()) s += " + ";
    if (w[i] != 1) s += std::to_string(w[i]) + " ";
    s += names_[i];
  }
  return s.empty() ? "0" : s;
}

std::string MonoidPresentation::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < n_; ++i) s += (i ? ", " : "") + names_[i];
  if (relations_.empty()) return s + ">";
  s += " |";
  auto rels = relations_;
  std::sort(rels.begin(), rels.end());
  for (std::size_t j = 0; j < rels.size(); ++j)
    s += (j ? ", " : " ") + word(rels[j].lhs) + " = " + word(rels[j].rhs);
  return s + ">";
}

// --- homomorphisms -------------------------------------------------------------

Exponent MonoidHom::apply(const Exponent& w) const {
  if (w.size() != source.ngens()) fail(ErrorKind::InvalidArgument, "word length");
  Exponent out = exp_zero(target.ngens());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += w[i] * images[i][k];
  return out;
}

bool MonoidHom::is_well_defined() const {
  if (images.size() != source.ngens()) return false;
  for (const auto& im : images)
    if (im.size() != target.ngens()) return false;
  for (const auto& r : source.relations())
    if (!target.equivalent(apply(r.lhs), apply(r.rhs))) return false;
  return true;
}

IntMatrix MonoidHom::matrix() const {
  IntMatrix m(target.ngens(), source.ngens());
  for (std::size_t j = 0; j < source.ngens(); ++j)
    for (std::size_t i = 0; i < target.ngens(); ++i) m(i, j) = static_cast<long>(images[j][i]);
  return m;
}

MonoidHom identity_hom(const MonoidPresentation& m) {
  std::vector<Exponent> im;
  for (std::size_t i = 0; i < m.ngens(); ++i) im.push_back(exp_unit(m.ngens(), i));
  return MonoidHom{m, m, im};
}

MonoidHom compose(const MonoidHom& g, const MonoidHom& f) {
  std::vector<Exponent> im;
  for (const auto& x : f.images) im.push_back(g.apply(x));
  return MonoidHom{f.source, g.target, im};
}

bool homs_equal(const MonoidHom& f, const MonoidHom& g) {
  if (f.images.size() != g.images.size()) return false;
  for (std::size_t i = 0; i < f.images.size(); ++i)
    if (!f.target.equivalent(f.images[i], g.images[i])) return false;
  return true;
}

// --- group completion, integrality -----------------------------------------------

IntVector GroupCompletionData::unit_map(const Exponent& w) const {
  return group.reduce(to_int(w));
}

GroupCompletionData group_completion(const MonoidPresentation& m) {
  return GroupCompletionData{cokernel(m.gp_presentation().relations)};
}

namespace {

// Relations of the saturation of the pure-difference ideal with respect to
// x_var, by elimination of t in (I, t x_var - 1).
std::vector<Relation> saturate_variable(std::size_t n, const std::vector<Relation>& rels,
                                        std::size_t var) {
  std::vector<Relation> ext;
  auto pad = [&](const Exponent& e) {
    Exponent p(n + 1, 0);
    std::copy(e.begin(), e.end(), p.begin() + 1);
    return p;
  };
  for (const auto& r : rels) ext.push_back({pad(r.lhs), pad(r.rhs)});
  Exponent tx(n + 1, 0);
  tx[0] = 1;
  tx[var + 1] = 1;
  ext.push_back({tx, Exponent(n + 1, 0)});
  RewriteSystem rs(n + 1, ext, MonomialOrder{{1, n}});
  std::vector<Relation> out;
  for (const auto& r : rs.rules()) {
    if (r.lhs[0] || r.rhs[0]) continue;
    out.push_back({Exponent(r.lhs.begin() + 1, r.lhs.end()),
                   Exponent(r.rhs.begin() + 1, r.rhs.end())});
  }
  return out;
}

std::vector<Relation> saturate_all(std::size_t n, std::vector<Relation> rels) {
  for (std::size_t i = 0; i < n; ++i) rels = saturate_variable(n, rels, i);
  RewriteSystem rs(n, rels);
  return rs.rules();
}

}  // namespace

void MonoidPresentation::fill_lattice_cache() const {
  std::call_once(cache_->int_once, [this] {
    cache_->saturated = saturate_all(n_, relations_);
    cache_->integral = true;
    for (const auto& r : cache_->saturated)
      if (!equivalent(r.lhs, r.rhs)) {
        cache_->integral = false;
        break;
      }
  });
}

const std::vector<Relation>& MonoidPresentation::lattice_relations() const {
  fill_lattice_cache();
  return cache_->saturated;
}

bool MonoidPresentation::integral() const {
  fill_lattice_cache();
  return cache_->integral;
}

bool is_integral(const MonoidPresentation& m) { return m.integral(); }

MonoidPresentation integralize(const MonoidPresentation& m) {
  if (m.integral()) return m;
  return MonoidPresentation(m.ngens(), m.lattice_relations(), m.names());
}

MonoidHom integralization_map(const MonoidPresentation& m) {
  MonoidPresentation q = integralize(m);
  MonoidHom id = identity_hom(m);
  return MonoidHom{m, q, id.images};
}

MonoidPresentation lattice_monoid(std::size_t n, const IntMatrix& lattice) {
  if (lattice.rows() != n) fail(ErrorKind::InvalidArgument, "lattice dimension");
  IntMatrix basis = lattice_basis(lattice);
  std::vector<Relation> rels;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    Exponent p(n, 0), q(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Int& x = basis(i, j);
      if (!x.fits_slong_p()) fail(ErrorKind::TooLarge, "lattice entry exceeds 64 bits");
      long v = x.get_si();
      if (v > 0) p[i] = v;
      else q[i] = -v;
    }
    rels.push_back({p, q});
  }
  return MonoidPresentation(n, saturate_all(n, rels));
}

MonoidPresentation from_embedding(const IntMatrix& gens, const IntMatrix& rels,
                                  std::vector<std::string> names) {
  const std::size_t n = gens.cols();
  IntMatrix r = rels.cols() ? rels : IntMatrix(gens.rows(), 0);
  IntMatrix k = kernel_lattice(gens, GroupPresentation{r});
  MonoidPresentation m = lattice_monoid(n, k);
  if (!names.empty()) m = m.renamed(std::move(names));
  return m;
}

// --- embeddings and saturation -------------------------------------------------

Embedding canonical_embedding(const MonoidPresentation& m) {
  return Embedding{IntMatrix::identity(m.ngens()), m.gp_presentation().relations};
}

Embedding lattice_embedding(const MonoidPresentation& m) {
  FgAbelianGroup g = group_completion(m).group;
  if (!g.is_torsion_free()) fail(ErrorKind::TorsionGp, "group completion has torsion: " + g.to_string());
  return Embedding{g.coords, IntMatrix(g.free_rank, 0)};
}

std::optional<std::vector<std::int64_t>> embedded_preimage(const Embedding& e,
                                                           const IntVector& x) {
  IntMatrix sys = e.gens;
  if (e.rels.cols()) {
    IntMatrix neg(e.rels.rows(), e.rels.cols());
    for (std::size_t i = 0; i < neg.rows(); ++i)
      for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -e.rels(i, j);
    sys = sys.hconcat(e.rels).hconcat(neg);
  }
  auto s = nonnegative_solution(sys, x);
  if (!s) return std::nullopt;
  s->resize(e.gens.cols());
  return s;
}

namespace {

void require_integral(const MonoidPresentation& m, const char* what) {
  if (!is_integral(m)) fail(ErrorKind::NotIntegral, std::string(what) + " is not integral");
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Columns generating cone(gens) intersected with Z^d (gens of full rank d).
std::vector<IntVector> saturation_candidates(const IntMatrix& v) {
  const std::size_t d = v.rows(), n = v.cols();
  std::set<IntVector> cand;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector c = v.column(j);
    if (std::any_of(c.begin(), c.end(), [](const Int& x) { return x != 0; })) cand.insert(c);
  }
  std::size_t work = 0;
  Field q;
  for (const auto& sub : subsets(n, d)) {
    IntMatrix b(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) b(i, j) = v(i, sub[j]);
    if (determinant(b) == 0) continue;
    SmithForm s = snf(b);
    FMatrix bq = fmatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) bq[i][j] = Scalar(b(i, j));
    std::vector<Int> t(d, 0);
    for (;;) {
      if (++work > 64 * limits().max_enumeration)
        fail(ErrorKind::ResourceExceeded, "saturation candidate enumeration");
      IntVector y = s.Uinv * t;
      std::vector<Scalar> yq(d);
      for (std::size_t i = 0; i < d; ++i) yq[i] = Scalar(y[i]);
      auto coef = solve(q, bq, yq, d);
      IntVector pt(d);
      std::vector<Scalar> frac(d);
      for (std::size_t j = 0; j < d; ++j) {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), (*coef)[j].get_num_mpz_t(), (*coef)[j].get_den_mpz_t());
        frac[j] = (*coef)[j] - Scalar(fl);
      }
      bool nonzero = false;
      for (std::size_t i = 0; i < d; ++i) {
        Scalar acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc += Scalar(b(i, j)) * frac[j];
        pt[i] = acc.get_num();
        if (pt[i] != 0) nonzero = true;
      }
      if (nonzero) cand.insert(pt);
      std::size_t k = 0;
      while (k < d) {
        t[k] += 1;
        if (t[k] < s.D(k, k)) break;
        t[k] = 0;
        ++k;
      }
      if (k == d) break;
    }
  }
  return {cand.begin(), cand.end()};
}

bool in_generated(const std::vector<IntVector>& gens, std::size_t skip, const IntVector& x) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (i != skip) cols.push_back(gens[i]);
  if (cols.empty()) return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
  return nonnegative_solution(IntMatrix::from_columns(x.size(), cols), x).has_value();
}

std::vector<IntVector> prune_generators(std::vector<IntVector> gens) {
  std::sort(gens.begin(), gens.end(), [](const IntVector& a, const IntVector& b) {
    Int na = 0, nb = 0;
    for (const auto& x : a) na += abs(x);
    for (const auto& x : b) nb += abs(x);
    if (na != nb) return na > nb;
    return a > b;
  });
  for (std::size_t i = 0; i < gens.size();) {
    if (in_generated(gens, i, gens[i])) gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

std::vector<IntVector> saturation_generators(const MonoidPresentation& m, Embedding& e) {
  require_integral(m, "monoid");
  e = lattice_embedding(m);
  if (e.dim() == 0) return {};
  return prune_generators(saturation_candidates(e.gens));
}

}  // namespace

MonoidPresentation saturate(const MonoidPresentation& m) {
  Embedding e;
  auto gens = saturation_generators(m, e);
  if (gens.empty()) return MonoidPresentation(0, {});
  return from_embedding(IntMatrix::from_columns(e.dim(), gens), IntMatrix(e.dim(), 0));
}

bool is_saturated(const MonoidPresentation& m) {
  Embedding e;
  auto gens = saturation_generators(m, e);
  for (const auto& g : gens)
    if (!embedded_preimage(e, g)) return false;
  return true;
}

// --- exactness and repletion -----------------------------------------------------

bool is_virtually_surjective(const MonoidHom& f) {
  return logalg::is_surjective(f.matrix(), f.target.gp_presentation());
}

namespace {

struct FiberElement {
  IntVector g;   // in Z^{ngens(M)}
  Exponent nu;   // in N^{ngens(N)}, F g = nu in N^gp
};

// Generators of {g in M^gp : f(g) in N} for integral N.
// Coordinates for M^gp: a section X : Z^d -> Z^{ngens(M)} of the lattice
// coordinates when M^gp is torsion free, the identity otherwise.
IntMatrix gp_section(const MonoidPresentation& m) {
  const std::size_t nm = m.ngens();
  FgAbelianGroup g = group_completion(m).group;
  if (!g.is_torsion_free() || g.coords.cols() != nm) return IntMatrix::identity(nm);
  const std::size_t d = g.free_rank;
  IntMatrix x(nm, d);
  for (std::size_t c = 0; c < d; ++c) {
    IntVector e(d);
    e[c] = 1;
    auto s = solve_integer(g.coords, e);
    if (!s) return IntMatrix::identity(nm);
    for (std::size_t r = 0; r < nm; ++r) x(r, c) = (*s)[r];
  }
  return x;
}

std::vector<FiberElement> gp_fiber(const MonoidHom& f) {
  const std::size_t nm = f.source.ngens(), nn = f.target.ngens();
  IntMatrix X = gp_section(f.source);
  const std::size_t d = X.cols();
  IntMatrix F = f.matrix() * X;
  IntMatrix an = f.target.gp_presentation().relations;
  const std::size_t k = an.cols();
  IntMatrix sys(nn, 2 * d + nn + 2 * k);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      sys(i, j) = F(i, j);
      sys(i, d + j) = -F(i, j);
    }
    sys(i, 2 * d + i) = -1;
    for (std::size_t j = 0; j < k; ++j) {
      sys(i, 2 * d + nn + j) = -an(i, j);
      sys(i, 2 * d + nn + k + j) = an(i, j);
    }
  }
  auto hb = hilbert_basis(sys);
  std::vector<FiberElement> out;
  std::set<IntVector> seen;
  for (const auto& h : hb.elements) {
    IntVector y(d);
    bool nonzero = false;
    for (std::size_t j = 0; j < d; ++j) {
      y[j] = static_cast<long>(h[j] - h[d + j]);
      if (y[j] != 0) nonzero = true;
    }
    if (!nonzero || !seen.insert(y).second) continue;
    IntVector g(nm);
    for (std::size_t r = 0; r < nm; ++r)
      for (std::size_t c = 0; c < d; ++c) g[r] += X(r, c) * y[c];
    Exponent nu(h.begin() + static_cast<std::ptrdiff_t>(2 * d),
                h.begin() + static_cast<std::ptrdiff_t>(2 * d + nn));
    out.push_back({g, nu});
  }
  return out;
}

}  // namespace

std::optional<IntVector> exactness_witness(const MonoidHom& f) {
  require_integral(f.source, "source");
  require_integral(f.target, "target");
  Embedding e = canonical_embedding(f.source);
  for (const auto& el : gp_fiber(f))
    if (!embedded_preimage(e, el.g)) return el.g;
  return std::nullopt;
}

bool is_exact(const MonoidHom& f) { return !exactness_witness(f); }

Repletion repletion(const MonoidHom& f) {
  require_integral(f.source, "source");
  require_integral(f.target, "target");
  if (!is_virtually_surjective(f))
    fail(ErrorKind::NotVirtuallySurjective,
         "cokernel of the group completion is " +
             cokernel(f.matrix().hconcat(f.target.gp_presentation().relations)).to_string());
  auto fiber = gp_fiber(f);
  const std::size_t nm = f.source.ngens();
  std::vector<IntVector> cols;
  std::vector<Exponent> nus;
  for (const auto& el : fiber) {
    cols.push_back(el.g);
    nus.push_back(el.nu);
  }
  IntMatrix gens = IntMatrix::from_columns(nm, cols);
  IntMatrix am = f.source.gp_presentation().relations;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < cols.size(); ++i) names.push_back("r" + std::to_string(i));
  MonoidPresentation rep = from_embedding(gens, am, names);
  Embedding e{gens, am};
  std::vector<Exponent> unit_images;
  for (std::size_t i = 0; i < nm; ++i) {
    IntVector ei(nm);
    ei[i] = 1;
    auto pre = embedded_preimage(e, ei);
    if (!pre) fail(ErrorKind::InvalidArgument, "generator outside its repletion");
    unit_images.push_back(*pre);
  }
  return Repletion{rep, MonoidHom{f.source, rep, unit_images},
                   MonoidHom{rep, f.target, nus}, gens};
}

// --- pushouts and fiber products -----------------------------------------------------

namespace {

std::vector<std::string> joined_names(const MonoidPresentation& a, const MonoidPresentation& b) {
  std::vector<std::string> names = a.names();
  std::set<std::string> used(names.begin(), names.end());
  for (const auto& n : b.names()) {
    std::string c = n;
    while (used.count(c)) c += "'";
    used.insert(c);
    names.push_back(c);
  }
  return names;
}

Exponent concat(const Exponent& a, const Exponent& b) {
  Exponent c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

}  // namespace

Pushout pushout(const MonoidHom& f, const MonoidHom& g) {
  if (f.source.ngens() != g.source.ngens())
    fail(ErrorKind::InvalidArgument, "pushout legs have different sources");
  const std::size_t nm = f.target.ngens(), nn = g.target.ngens();
  std::vector<Relation> rels;
  for (const auto& r : f.target.relations())
    rels.push_back({concat(r.lhs, exp_zero(nn)), concat(r.rhs, exp_zero(nn))});
  for (const auto& r : g.target.relations())
    rels.push_back({concat(exp_zero(nm), r.lhs), concat(exp_zero(nm), r.rhs)});
  for (std::size_t k = 0; k < f.source.ngens(); ++k) {
    Relation r{concat(f.images[k], exp_zero(nn)), concat(exp_zero(nm), g.images[k])};
    if (r.lhs != r.rhs) rels.push_back(r);
  }
  MonoidPresentation p(nm + nn, rels, joined_names(f.target, g.target));
  std::vector<Exponent> i1, i2;
  for (std::size_t i = 0; i < nm; ++i) i1.push_back(exp_unit(nm + nn, i));
  for (std::size_t j = 0; j < nn; ++j) i2.push_back(exp_unit(nm + nn, nm + j));
  return Pushout{p, MonoidHom{f.target, p, i1}, MonoidHom{g.target, p, i2}};
}

FiberProduct fiber_product(const MonoidHom& f, const MonoidHom& g) {
  if (f.target.ngens() != g.target.ngens())
    fail(ErrorKind::InvalidArgument, "fiber product legs have different targets");
  require_integral(f.source, "first factor");
  require_integral(g.source, "second factor");
  require_integral(f.target, "base");
  const std::size_t nm = f.source.ngens(), nn = g.source.ngens(), nq = f.target.ngens();
  IntMatrix F = f.matrix(), G = g.matrix();
  IntMatrix aq = f.target.gp_presentation().relations;
  const std::size_t k = aq.cols();
  IntMatrix sys(nq, nm + nn + 2 * k);
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nm; ++j) sys(i, j) = F(i, j);
    for (std::size_t j = 0; j < nn; ++j) sys(i, nm + j) = -G(i, j);
    for (std::size_t j = 0; j < k; ++j) {
      sys(i, nm + nn + j) = -aq(i, j);
      sys(i, nm + nn + k + j) = aq(i, j);
    }
  }
  auto hb = hilbert_basis(sys);
  std::vector<Exponent> lam, mu;
  std::set<std::pair<Exponent, Exponent>> seen;
  for (const auto& h : hb.elements) {
    Exponent l(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(nm));
    Exponent m(h.begin() + static_cast<std::ptrdiff_t>(nm),
               h.begin() + static_cast<std::ptrdiff_t>(nm + nn));
    l = f.source.normal_form(l);
    m = g.source.normal_form(m);
    if (l == exp_zero(nm) && m == exp_zero(nn)) continue;
    if (!seen.insert({l, m}).second) continue;
    lam.push_back(l);
    mu.push_back(m);
  }
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < lam.size(); ++i) cols.push_back(to_int(concat(lam[i], mu[i])));
  IntMatrix rel = f.source.gp_presentation().relations.block_diagonal(
      g.source.gp_presentation().relations);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < cols.size(); ++i) names.push_back("p" + std::to_string(i));
  MonoidPresentation obj = cols.empty()
                               ? MonoidPresentation(0, {})
                               : from_embedding(IntMatrix::from_columns(nm + nn, cols), rel, names);
  return FiberProduct{obj, MonoidHom{obj, f.source, lam}, MonoidHom{obj, g.source, mu}};
}

// --- units, submonoids, quotients ------------------------------------------------------

MonoidHom submonoid(const MonoidPresentation& m, const std::vector<std::size_t>& gens) {
  const std::size_t n = m.ngens(), s = gens.size();
  std::vector<std::size_t> order;  // eliminated first, then kept
  std::vector<bool> kept(n, false);
  for (auto g : gens) kept.at(g) = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!kept[i]) order.push_back(i);
  order.insert(order.end(), gens.begin(), gens.end());
  auto permute = [&](const Exponent& e) {
    Exponent p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = e[order[i]];
    return p;
  };
  std::vector<Relation> rels;
  for (const auto& r : m.relations()) rels.push_back({permute(r.lhs), permute(r.rhs)});
  RewriteSystem rs(n, rels, MonomialOrder{{n - s, s}});
  std::vector<Relation> sub;
  for (const auto& r : rs.rules()) {
    bool free = true;
    for (std::size_t i = 0; i < n - s; ++i)
      if (r.lhs[i] || r.rhs[i]) free = false;
    if (!free) continue;
    sub.push_back({Exponent(r.lhs.begin() + static_cast<std::ptrdiff_t>(n - s), r.lhs.end()),
                   Exponent(r.rhs.begin() + static_cast<std::ptrdiff_t>(n - s), r.rhs.end())});
  }
  std::vector<std::string> names;
  for (auto g : gens) names.push_back(m.names()[g]);
  MonoidPresentation p(s, sub, names);
  std::vector<Exponent> im;
  for (auto g : gens) im.push_back(exp_unit(n, g));
  return MonoidHom{p, m, im};
}

Units units(const MonoidPresentation& m) {
  const std::size_t n = m.ngens();
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
  PolyRing R(Field{}, vars);
  std::vector<Vec> ideal;
  for (const auto& r : m.relations())
    ideal.push_back(R.sub(R.monomial(r.lhs), R.monomial(r.rhs)));
  std::vector<std::size_t> unit_gens;
  for (std::size_t i = 0; i < n; ++i) {
    auto gens = ideal;
    gens.push_back(R.variable(i));
    if (GroebnerBasis(R, gens).contains_one()) unit_gens.push_back(i);
  }
  MonoidHom inc = submonoid(m, unit_gens);
  return Units{unit_gens, inc.source, group_completion(inc.source).group, inc};
}

bool is_sharp(const MonoidPresentation& m) {
  auto u = units(m);
  for (auto g : u.unit_generators)
    if (!m.equivalent(exp_unit(m.ngens(), g), exp_zero(m.ngens()))) return false;
  return true;
}

MonoidHom quotient(const MonoidPresentation& m, const std::vector<Relation>& extra) {
  auto rels = m.relations();
  for (const auto& r : extra)
    if (r.lhs != r.rhs) rels.push_back(r);
  MonoidPresentation q(m.ngens(), rels, m.names());
  return MonoidHom{m, q, identity_hom(m).images};
}

MonoidHom sharpening(const MonoidPresentation& m) {
  auto u = units(m);
  std::vector<Relation> extra;
  for (auto g : u.unit_generators) extra.push_back({exp_unit(m.ngens(), g), exp_zero(m.ngens())});
  return quotient(m, extra);
}

// --- preimages and isomorphisms -------------------------------------------------------

std::optional<Exponent> find_preimage(const MonoidHom& f, const Exponent& y,
                                      std::int64_t max_degree) {
  const std::size_t nm = f.source.ngens();
  if (is_integral(f.target)) {
    Embedding e{f.matrix(), f.target.gp_presentation().relations};
    auto s = embedded_preimage(e, to_int(y));
    if (!s) return std::nullopt;
    return Exponent(s->begin(), s->end());
  }
  Exponent target = f.target.normal_form(y);
  // breadth-first over words by total degree
  std::set<Exponent> seen{exp_zero(nm)};
  std::deque<Exponent> queue{exp_zero(nm)};
  while (!queue.empty()) {
    Exponent w = queue.front();
    queue.pop_front();
    if (f.target.normal_form(f.apply(w)) == target) return w;
    if (degree(w) >= max_degree) continue;
    for (std::size_t i = 0; i < nm; ++i) {
      Exponent v = w;
      ++v[i];
      v = f.source.normal_form(v);
      if (seen.insert(v).second) queue.push_back(v);
    }
    if (seen.size() > 64 * limits().max_enumeration)
      fail(ErrorKind::ResourceExceeded, "preimage search");
  }
  return std::nullopt;
}

std::optional<MonoidHom> find_inverse(const MonoidHom& f, std::int64_t max_degree) {
  if (!f.is_well_defined()) return std::nullopt;
  std::vector<Exponent> im;
  for (std::size_t j = 0; j < f.target.ngens(); ++j) {
    auto p = find_preimage(f, exp_unit(f.target.ngens(), j), max_degree);
    if (!p) return std::nullopt;
    im.push_back(*p);
  }
  MonoidHom g{f.target, f.source, im};
  if (!g.is_well_defined()) return std::nullopt;
  if (!homs_equal(compose(g, f), identity_hom(f.source))) return std::nullopt;
  if (!homs_equal(compose(f, g), identity_hom(f.target))) return std::nullopt;
  return g;
}

bool is_isomorphism(const MonoidHom& f) { return find_inverse(f).has_value(); }

bool is_surjective(const MonoidHom& f) {
  for (std::size_t j = 0; j < f.target.ngens(); ++j)
    if (!find_preimage(f, exp_unit(f.target.ngens(), j))) return false;
  return true;
}

std::vector<Exponent> enumerate_elements(const MonoidPresentation& m, std::size_t cap) {
  const std::size_t n = m.ngens();
  std::set<Exponent> seen{m.normal_form(exp_zero(n))};
  std::deque<Exponent> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    Exponent w = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      Exponent v = w;
      ++v[i];
      v = m.normal_form(v);
      if (seen.insert(v).second) {
        if (seen.size() > cap)
          fail(ErrorKind::TooLarge, "monoid has more than " + std::to_string(cap) + " elements");
        queue.push_back(v);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace logalg
