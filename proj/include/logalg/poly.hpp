#pragma once

// Polynomials and free-module vectors over k[x_1..x_n], with a Buchberger
// engine for submodules of k[x]^c (ideals are the c = 1 case). Used for
// exact module comparisons, syzygies and unit / membership tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logalg/field.hpp"

namespace logalg {

using Exponent = std::vector<std::int64_t>;

struct Term {
  std::uint32_t comp = 0;
  Exponent exp;
  Scalar coef;

  friend bool operator==(const Term& a, const Term& b) {
    return a.comp == b.comp && a.exp == b.exp && a.coef == b.coef;
  }
};

// Sorted descending under the ring's order; no zero coefficients, no
// repeated (comp, exp).
using Vec = std::vector<Term>;

// Block grevlex: blocks compared left to right, each by grevlex. Vectors
// use position-over-term with lower component index ranking higher.
struct MonomialOrder {
  std::vector<std::size_t> blocks;  // empty: a single block

  int compare(const Exponent& a, const Exponent& b) const;
  int compare(const Term& a, const Term& b) const;
};

class PolyRing {
 public:
  PolyRing() = default;
  PolyRing(Field k, std::vector<std::string> names, MonomialOrder order = {});

  const Field& field() const { return k_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  PolyRing with_order(MonomialOrder o) const { return PolyRing(k_, names_, std::move(o)); }

  Vec zero() const { return {}; }
  Vec constant(const Scalar& c, std::uint32_t comp = 0) const;
  Vec variable(std::size_t i) const;
  Vec monomial(const Exponent& e, const Scalar& c = 1, std::uint32_t comp = 0) const;
  Vec basis_vector(std::uint32_t comp) const { return constant(1, comp); }

  // Sort under this ring's order and combine like terms.
  Vec normalize(Vec v) const;

  Vec add(const Vec& a, const Vec& b) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(const Vec& a, const Scalar& c) const;
  Vec mul_term(const Vec& a, const Exponent& e, const Scalar& c) const;
  // p must be a polynomial (component 0); v any vector.
  Vec mul(const Vec& p, const Vec& v) const;
  Vec pow(const Vec& p, std::size_t n) const;
  Vec with_comp(const Vec& p, std::uint32_t comp) const;
  Vec shift_comp(const Vec& v, std::int64_t delta) const;
  Vec component(const Vec& v, std::uint32_t comp) const;
  std::uint32_t max_comp(const Vec& v) const;

  Vec derivative(const Vec& p, std::size_t var) const;
  // Ring map x_i -> images[i] (polynomials in `target`).
  Vec substitute(const Vec& p, const std::vector<Vec>& images, const PolyRing& target) const;
  Scalar evaluate(const Vec& p, const std::vector<Scalar>& point) const;

  std::string to_string(const Vec& v, const std::vector<std::string>& comp_labels = {}) const;

 private:
  Field k_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

bool is_constant(const Vec& p);

class GroebnerBasis {
 public:
  GroebnerBasis(const PolyRing& ring, std::vector<Vec> generators);

  const PolyRing& ring() const { return ring_; }
  const std::vector<Vec>& elements() const { return basis_; }
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  bool contains_one() const;

 private:
  PolyRing ring_;
  std::vector<Vec> basis_;
};

// Generators of {c : sum c_i gens_i = 0} in k[x]^m, m = gens.size();
// `ncomp` bounds the components used by gens.
std::vector<Vec> syzygies(const PolyRing& ring, const std::vector<Vec>& gens,
                          std::size_t ncomp);

// Coefficients c with v = sum c_i gens_i, if v lies in the submodule.
std::optional<std::vector<Vec>> lift(const PolyRing& ring, const std::vector<Vec>& gens,
                                     std::size_t ncomp, const Vec& v);

// Generators of the ideal intersected with k[x_first..x_n] (first variables
// eliminated). Result polynomials keep the full exponent length.
std::vector<Vec> eliminate(const PolyRing& ring, const std::vector<Vec>& ideal,
                           std::size_t first);

}  // namespace logalg
