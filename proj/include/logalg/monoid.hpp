#pragma once

// Finitely presented commutative monoids <x_1..x_n | a_j = b_j> and their
// homomorphisms. The word problem is solved by completing the
// pure-difference binomial ideal (x^a - x^b) into a confluent rewriting
// system under grevlex.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logalg/exactla.hpp"
#include "logalg/poly.hpp"

namespace logalg {

struct Relation {
  Exponent lhs, rhs;
  friend auto operator<=>(const Relation&, const Relation&) = default;
};

Exponent exp_add(const Exponent& a, const Exponent& b);
Exponent exp_scale(const Exponent& a, std::int64_t k);
Exponent exp_zero(std::size_t n);
Exponent exp_unit(std::size_t n, std::size_t i);
IntVector to_int_vector(const Exponent& e);

// Confluent, interreduced rewriting system lhs -> rhs with lhs > rhs.
class RewriteSystem {
 public:
  RewriteSystem(std::size_t n, const std::vector<Relation>& relations,
                MonomialOrder order = {});

  std::size_t nvars() const { return n_; }
  const std::vector<Relation>& rules() const { return rules_; }
  Exponent normal_form(Exponent w) const;
  // Every critical pair joins (recomputed from scratch).
  bool locally_confluent() const;

 private:
  bool add(Exponent a, Exponent b);
  void interreduce();

  std::size_t n_;
  MonomialOrder order_;
  std::vector<Relation> rules_;
};

class MonoidPresentation {
 public:
  MonoidPresentation();
  MonoidPresentation(std::size_t n, std::vector<Relation> relations,
                     std::vector<std::string> names = {});

  static MonoidPresentation free(std::size_t n, std::vector<std::string> names = {});

  std::size_t ngens() const { return n_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<std::string>& names() const { return names_; }
  MonoidPresentation renamed(std::vector<std::string> names) const;

  const RewriteSystem& rewriting() const;
  Exponent normal_form(const Exponent& w) const;
  bool equivalent(const Exponent& u, const Exponent& v) const;
  // All generators trivial.
  bool is_trivial() const;
  // Rewriting rules of the lattice congruence (saturated ideal).
  const std::vector<Relation>& lattice_relations() const;
  bool integral() const;

  // Z^n / span(a - b): the ambient presentation of the group completion.
  GroupPresentation gp_presentation() const;
  // Relations sorted, each oriented as rewriting rules (canonical text).
  std::string to_string() const;
  std::string word(const Exponent& w) const;

 private:
  struct Cache;
  void fill_lattice_cache() const;
  std::size_t n_ = 0;
  std::vector<Relation> relations_;
  std::vector<std::string> names_;
  std::shared_ptr<Cache> cache_;
};

struct MonoidHom {
  MonoidPresentation source, target;
  std::vector<Exponent> images;

  Exponent apply(const Exponent& w) const;
  // Images of relations agree in the target.
  bool is_well_defined() const;
  // target.ngens x source.ngens
  IntMatrix matrix() const;
};

MonoidHom identity_hom(const MonoidPresentation& m);
MonoidHom compose(const MonoidHom& g, const MonoidHom& f);  // g after f
// Homomorphisms agree on every generator.
bool homs_equal(const MonoidHom& f, const MonoidHom& g);

struct GroupCompletionData {
  FgAbelianGroup group;
  // Canonical coordinates of the image of an exponent vector.
  IntVector unit_map(const Exponent& w) const;
};

GroupCompletionData group_completion(const MonoidPresentation& m);

bool is_integral(const MonoidPresentation& m);
MonoidPresentation integralize(const MonoidPresentation& m);
// Quotient map M -> integralize(M) (identity on generators).
MonoidHom integralization_map(const MonoidPresentation& m);

// Submonoid generated by the columns of gens inside Z^d / col(rels).
MonoidPresentation from_embedding(const IntMatrix& gens, const IntMatrix& rels,
                                  std::vector<std::string> names = {});
// Lattice ideal presentation: the relations of N^n / lattice.
MonoidPresentation lattice_monoid(std::size_t n, const IntMatrix& lattice);

// Embedding of an integral monoid into its group completion, written in
// ambient coordinates Z^n / col(gp relations).
struct Embedding {
  IntMatrix gens;  // d x ngens
  IntMatrix rels;  // d x k
  std::size_t dim() const { return gens.rows(); }
};
Embedding canonical_embedding(const MonoidPresentation& m);
// Torsion-free coordinates (d = rank); throws TorsionGp.
Embedding lattice_embedding(const MonoidPresentation& m);
// lambda >= 0 with gens * lambda == x modulo rels.
std::optional<std::vector<std::int64_t>> embedded_preimage(const Embedding& e,
                                                           const IntVector& x);

MonoidPresentation saturate(const MonoidPresentation& m);
bool is_saturated(const MonoidPresentation& m);

bool is_virtually_surjective(const MonoidHom& f);
bool is_exact(const MonoidHom& f);
// An element of M^gp landing in N but not in M.
std::optional<IntVector> exactness_witness(const MonoidHom& f);

struct Repletion {
  MonoidPresentation replete;
  MonoidHom unit;    // M -> M^rep
  MonoidHom counit;  // M^rep -> N
  IntMatrix generators;  // M^rep generators in Z^{ngens(M)} modulo gp relations
};
Repletion repletion(const MonoidHom& f);

struct Pushout {
  MonoidPresentation object;
  MonoidHom from_first, from_second;  // M -> P, N -> P
};
Pushout pushout(const MonoidHom& f, const MonoidHom& g);

struct FiberProduct {
  MonoidPresentation object;
  MonoidHom to_first, to_second;  // F -> M, F -> N
};
FiberProduct fiber_product(const MonoidHom& f, const MonoidHom& g);

struct Units {
  std::vector<std::size_t> unit_generators;
  MonoidPresentation submonoid;  // presentation on the unit generators
  FgAbelianGroup group;
  MonoidHom inclusion;           // submonoid -> M
};
Units units(const MonoidPresentation& m);
bool is_sharp(const MonoidPresentation& m);
// M / M^x together with the quotient map.
MonoidHom sharpening(const MonoidPresentation& m);

// Presentation of the submonoid generated by the listed generators, with
// its inclusion.
MonoidHom submonoid(const MonoidPresentation& m, const std::vector<std::size_t>& gens);

// Quotient by extra relations; returns the quotient map.
MonoidHom quotient(const MonoidPresentation& m, const std::vector<Relation>& extra);

// Some w >= 0 with f(w) equivalent to y, searched by membership (integral
// target) or bounded breadth-first search.
std::optional<Exponent> find_preimage(const MonoidHom& f, const Exponent& y,
                                      std::int64_t max_degree = 8);
// Inverse of f certified on generators in both directions, if one exists.
std::optional<MonoidHom> find_inverse(const MonoidHom& f, std::int64_t max_degree = 8);
bool is_isomorphism(const MonoidHom& f);
bool is_surjective(const MonoidHom& f);

// Elements of a finite monoid as normal forms; TooLarge past the cap.
std::vector<Exponent> enumerate_elements(const MonoidPresentation& m, std::size_t cap);

}  // namespace logalg
