#include "logalg/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "logalg/error.hpp"

namespace logalg {

namespace {

int grevlex(const Exponent& a, const Exponent& b, std::size_t lo, std::size_t hi) {
  std::int64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

bool exp_divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent exp_lcm(const Exponent& a, const Exponent& b) {
  Exponent l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

Exponent exp_sub(const Exponent& a, const Exponent& b) {
  Exponent d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

}  // namespace

int MonomialOrder::compare(const Exponent& a, const Exponent& b) const {
  if (blocks.empty()) return grevlex(a, b, 0, a.size());
  std::size_t lo = 0;
  for (std::size_t len : blocks) {
    int c = grevlex(a, b, lo, lo + len);
    if (c) return c;
    lo += len;
  }
  if (lo < a.size()) return grevlex(a, b, lo, a.size());
  return 0;
}

int MonomialOrder::compare(const Term& a, const Term& b) const {
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  return compare(a.exp, b.exp);
}

PolyRing::PolyRing(Field k, std::vector<std::string> names, MonomialOrder order)
    : k_(k), names_(std::move(names)), order_(std::move(order)) {}

Vec PolyRing::constant(const Scalar& c, std::uint32_t comp) const {
  Scalar n = k_.normalize(c);
  if (n == 0) return {};
  return {Term{comp, Exponent(nvars(), 0), n}};
}

Vec PolyRing::variable(std::size_t i) const {
  Exponent e(nvars(), 0);
  e.at(i) = 1;
  return {Term{0, e, 1}};
}

Vec PolyRing::monomial(const Exponent& e, const Scalar& c, std::uint32_t comp) const {
  if (e.size() != nvars()) fail(ErrorKind::InvalidArgument, "exponent length");
  Scalar n = k_.normalize(c);
  if (n == 0) return {};
  return {Term{comp, e, n}};
}

Vec PolyRing::normalize(Vec v) const {
  for (auto& t : v) t.coef = k_.normalize(t.coef);
  std::sort(v.begin(), v.end(),
            [&](const Term& a, const Term& b) { return order_.compare(a, b) > 0; });
  Vec out;
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().exp == t.exp) {
      out.back().coef = k_.add(out.back().coef, t.coef);
    } else {
      if (!out.empty() && out.back().coef == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef == 0) out.pop_back();
  return out;
}

Vec PolyRing::add(const Vec& a, const Vec& b) const {
  Vec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = order_.compare(a[i], b[j]);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      Scalar s = k_.add(a[i].coef, b[j].coef);
      if (s != 0) out.push_back(Term{a[i].comp, a[i].exp, s});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

Vec PolyRing::neg(const Vec& a) const {
  Vec out = a;
  for (auto& t : out) t.coef = k_.neg(t.coef);
  return out;
}

Vec PolyRing::sub(const Vec& a, const Vec& b) const { return add(a, neg(b)); }

Vec PolyRing::scale(const Vec& a, const Scalar& c) const {
  Scalar n = k_.normalize(c);
  if (n == 0) return {};
  Vec out = a;
  for (auto& t : out) t.coef = k_.mul(t.coef, n);
  return out;
}

Vec PolyRing::mul_term(const Vec& a, const Exponent& e, const Scalar& c) const {
  Scalar n = k_.normalize(c);
  if (n == 0) return {};
  Vec out = a;
  for (auto& t : out) {
    for (std::size_t i = 0; i < e.size(); ++i) t.exp[i] += e[i];
    t.coef = k_.mul(t.coef, n);
  }
  return out;
}

Vec PolyRing::mul(const Vec& p, const Vec& v) const {
  Vec out;
  for (const auto& t : p) {
    if (t.comp != 0) fail(ErrorKind::InvalidArgument, "multiplier is not a polynomial");
    out = add(out, mul_term(v, t.exp, t.coef));
  }
  return out;
}

Vec PolyRing::pow(const Vec& p, std::size_t n) const {
  Vec r = constant(1);
  for (std::size_t i = 0; i < n; ++i) r = mul(p, r);
  return r;
}

Vec PolyRing::with_comp(const Vec& p, std::uint32_t comp) const {
  Vec out = p;
  for (auto& t : out) t.comp = comp;
  return normalize(std::move(out));
}

Vec PolyRing::shift_comp(const Vec& v, std::int64_t delta) const {
  Vec out = v;
  for (auto& t : out) {
    std::int64_t c = static_cast<std::int64_t>(t.comp) + delta;
    if (c < 0) fail(ErrorKind::InvalidArgument, "negative component");
    t.comp = static_cast<std::uint32_t>(c);
  }
  return out;
}

Vec PolyRing::component(const Vec& v, std::uint32_t comp) const {
  Vec out;
  for (const auto& t : v)
    if (t.comp == comp) out.push_back(Term{0, t.exp, t.coef});
  return out;
}

std::uint32_t PolyRing::max_comp(const Vec& v) const {
  std::uint32_t m = 0;
  for (const auto& t : v) m = std::max(m, t.comp);
  return m;
}

Vec PolyRing::derivative(const Vec& p, std::size_t var) const {
  Vec out;
  for (const auto& t : p) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coef = k_.mul(t.coef, Scalar(static_cast<long>(t.exp[var])));
    d.exp[var] -= 1;
    if (d.coef != 0) out.push_back(std::move(d));
  }
  return normalize(std::move(out));
}

Vec PolyRing::substitute(const Vec& p, const std::vector<Vec>& images,
                         const PolyRing& target) const {
  if (images.size() != nvars()) fail(ErrorKind::InvalidArgument, "substitution arity");
  Vec out;
  for (const auto& t : p) {
    Vec m = target.constant(t.coef);
    for (std::size_t i = 0; i < nvars(); ++i)
      if (t.exp[i]) m = target.mul(target.pow(images[i], t.exp[i]), m);
    out = target.add(out, target.with_comp(m, t.comp));
  }
  return out;
}

Scalar PolyRing::evaluate(const Vec& p, const std::vector<Scalar>& point) const {
  Scalar s = 0;
  for (const auto& t : p) {
    Scalar m = t.coef;
    for (std::size_t i = 0; i < nvars(); ++i)
      for (std::int64_t e = 0; e < t.exp[i]; ++e) m = k_.mul(m, point[i]);
    s = k_.add(s, m);
  }
  return s;
}

std::string PolyRing::to_string(const Vec& v,
                                const std::vector<std::string>& labels) const {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : v) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (!t.exp[i]) continue;
      factors.push_back(t.exp[i] == 1 ? names_[i]
                                      : names_[i] + "^" + std::to_string(t.exp[i]));
    }
    if (!labels.empty()) factors.push_back(labels.at(t.comp));
    else if (t.comp) factors.push_back("e" + std::to_string(t.comp));
    Scalar c = t.coef;
    bool negative = !k_.is_prime_field() && c < 0;
    if (negative) c = -c;
    std::string body;
    if (c != 1 || factors.empty()) body = c.get_str();
    for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
    if (first) s += negative ? "-" + body : body;
    else s += (negative ? " - " : " + ") + body;
    first = false;
  }
  return s;
}

bool is_constant(const Vec& p) {
  for (const auto& t : p)
    for (auto e : t.exp)
      if (e) return false;
  return true;
}

// --- Buchberger -------------------------------------------------------------

namespace {

struct Engine {
  const PolyRing& R;
  std::vector<Vec> G;

  std::size_t divisor_index(const Term& t, std::size_t skip) const {
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (i == skip) continue;
      const Term& l = G[i].front();
      if (l.comp == t.comp && exp_divides(l.exp, t.exp)) return i;
    }
    return SIZE_MAX;
  }

  Vec reduce(Vec p, std::size_t skip = SIZE_MAX) const {
    Vec r;
    while (!p.empty()) {
      const Term& lt = p.front();
      std::size_t d = divisor_index(lt, skip);
      if (d == SIZE_MAX) {
        r.push_back(lt);
        p.erase(p.begin());
        continue;
      }
      const Term& l = G[d].front();
      Scalar q = R.field().div(lt.coef, l.coef);
      p = R.sub(p, R.mul_term(G[d], exp_sub(lt.exp, l.exp), q));
    }
    return r;
  }

  Vec monic(Vec p) const {
    if (p.empty()) return p;
    return R.scale(p, R.field().inv(p.front().coef));
  }
};

}  // namespace

GroebnerBasis::GroebnerBasis(const PolyRing& ring, std::vector<Vec> generators)
    : ring_(ring) {
  Engine e{ring_, {}};
  bool ideal_mode = true;
  for (auto& g : generators) {
    g = ring_.normalize(std::move(g));
    for (const auto& t : g)
      if (t.comp) ideal_mode = false;
  }
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_element = [&](Vec g) {
    g = e.monic(std::move(g));
    std::size_t idx = e.G.size();
    for (std::size_t i = 0; i < idx; ++i)
      if (e.G[i].front().comp == g.front().comp) pending.insert({i, idx});
    e.G.push_back(std::move(g));
    if (e.G.size() > limits().max_gb)
      fail(ErrorKind::ResourceExceeded,
           "Groebner basis exceeds " + std::to_string(limits().max_gb) + " elements");
  };
  for (auto& g : generators) {
    Vec r = e.reduce(std::move(g));
    if (!r.empty()) add_element(std::move(r));
  }
  auto lcm_term = [&](std::size_t i, std::size_t j) {
    return Term{e.G[i].front().comp, exp_lcm(e.G[i].front().exp, e.G[j].front().exp), 1};
  };
  while (!pending.empty()) {
    check_deadline();
    auto best = pending.begin();
    Term bl = lcm_term(best->first, best->second);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Term l = lcm_term(it->first, it->second);
      if (ring_.order().compare(l, bl) < 0) {
        best = it;
        bl = l;
      }
    }
    auto [i, j] = *best;
    pending.erase(best);
    const Term& li = e.G[i].front();
    const Term& lj = e.G[j].front();
    if (ideal_mode && coprime(li.exp, lj.exp)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < e.G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      const Term& lk = e.G[k].front();
      if (lk.comp != bl.comp || !exp_divides(lk.exp, bl.exp)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (!pending.count(key(i, k)) && !pending.count(key(j, k))) chain = true;
    }
    if (chain) continue;
    Vec s = ring_.sub(ring_.mul_term(e.G[i], exp_sub(bl.exp, li.exp), 1),
                      ring_.mul_term(e.G[j], exp_sub(bl.exp, lj.exp), 1));
    Vec r = e.reduce(std::move(s));
    if (!r.empty()) add_element(std::move(r));
  }
  // minimal, then reduced
  std::vector<Vec> minimal;
  for (std::size_t i = 0; i < e.G.size(); ++i) {
    const Term& li = e.G[i].front();
    bool redundant = false;
    for (std::size_t j = 0; j < e.G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Term& lj = e.G[j].front();
      if (lj.comp != li.comp || !exp_divides(lj.exp, li.exp)) continue;
      if (lj.exp != li.exp || j < i) redundant = true;
    }
    if (!redundant) minimal.push_back(e.G[i]);
  }
  e.G = std::move(minimal);
  for (std::size_t i = 0; i < e.G.size(); ++i) {
    Vec tail(e.G[i].begin() + 1, e.G[i].end());
    Vec rt = e.reduce(std::move(tail), i);
    Vec full{e.G[i].front()};
    e.G[i] = ring_.add(full, rt);
  }
  std::sort(e.G.begin(), e.G.end(), [&](const Vec& a, const Vec& b) {
    return ring_.order().compare(a.front(), b.front()) < 0;
  });
  basis_ = std::move(e.G);
}

Vec GroebnerBasis::reduce(const Vec& v) const {
  Engine e{ring_, basis_};
  return e.reduce(ring_.normalize(v));
}

bool GroebnerBasis::contains_one() const {
  for (const auto& g : basis_)
    if (g.size() == 1 && g.front().comp == 0 && is_constant(g)) return true;
  return false;
}

std::vector<Vec> syzygies(const PolyRing& ring, const std::vector<Vec>& gens,
                          std::size_t ncomp) {
  std::vector<Vec> h;
  for (std::size_t i = 0; i < gens.size(); ++i)
    h.push_back(ring.add(ring.normalize(gens[i]),
                         ring.basis_vector(static_cast<std::uint32_t>(ncomp + i))));
  GroebnerBasis gb(ring, h);
  std::vector<Vec> out;
  for (const auto& g : gb.elements())
    if (g.front().comp >= ncomp)
      out.push_back(ring.shift_comp(g, -static_cast<std::int64_t>(ncomp)));
  return out;
}

std::optional<std::vector<Vec>> lift(const PolyRing& ring, const std::vector<Vec>& gens,
                                     std::size_t ncomp, const Vec& v) {
  std::vector<Vec> h;
  for (std::size_t i = 0; i < gens.size(); ++i)
    h.push_back(ring.add(ring.normalize(gens[i]),
                         ring.basis_vector(static_cast<std::uint32_t>(ncomp + i))));
  GroebnerBasis gb(ring, h);
  Vec r = gb.reduce(v);
  if (!r.empty() && r.front().comp < ncomp) return std::nullopt;
  std::vector<Vec> c;
  for (std::size_t i = 0; i < gens.size(); ++i)
    c.push_back(ring.neg(ring.component(r, static_cast<std::uint32_t>(ncomp + i))));
  return c;
}

std::vector<Vec> eliminate(const PolyRing& ring, const std::vector<Vec>& ideal,
                           std::size_t first) {
  PolyRing elim = ring.with_order(MonomialOrder{{first, ring.nvars() - first}});
  std::vector<Vec> gens;
  for (const auto& g : ideal) gens.push_back(elim.normalize(g));
  GroebnerBasis gb(elim, gens);
  std::vector<Vec> out;
  for (const auto& g : gb.elements()) {
    bool free = true;
    for (const auto& t : g)
      for (std::size_t i = 0; i < first; ++i)
        if (t.exp[i]) free = false;
    if (free) out.push_back(ring.normalize(g));
  }
  return out;
}

}  // namespace logalg
