#pragma once

// Finitely presented modules over chart rings and log Kaehler
// differentials. A module element is a Vec whose component index names
// the generator; relations are elements of the free module.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logalg/prelog.hpp"

namespace logalg {

class ModulePresentation {
 public:
  ModulePresentation();
  ModulePresentation(Algebra ring, std::vector<std::string> labels, std::vector<Vec> relations);

  const Algebra& ring() const { return ring_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Vec>& relations() const { return relations_; }
  std::size_t ngens() const { return labels_.size(); }

  // Relations together with I * e_c for every generator.
  std::vector<Vec> submodule_generators() const;
  const GroebnerBasis& gb() const;
  bool is_zero(const Vec& v) const;
  bool equal(const Vec& a, const Vec& b) const;
  Vec reduce(const Vec& v) const;
  // Every generator is zero.
  bool is_zero_module() const;

  // Relation matrix evaluated at a point: rows are relations, columns generators.
  FMatrix evaluate(const std::vector<Scalar>& pt) const;
  std::string to_string() const;

 private:
  struct Cache;
  Algebra ring_;
  std::vector<std::string> labels_;
  std::vector<Vec> relations_;
  std::shared_ptr<Cache> cache_;
};

// dim_k (M (x) k(pt)); NotAPoint unless pt satisfies the ring's relations.
std::size_t evaluate_at_point(const ModulePresentation& m, const std::vector<Scalar>& pt);

// B-linear map given by the images of the source generators.
struct ModuleMap {
  ModulePresentation source, target;
  std::vector<Vec> images;

  Vec apply(const Vec& v) const;
  // Every source relation maps to zero.
  bool is_well_defined() const;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
// f and g are well defined and mutually inverse on generators.
bool certify_isomorphism(const ModuleMap& f, const ModuleMap& g);
// Target modulo the image of f, on the target's generators.
ModulePresentation cokernel(const ModuleMap& f);
// Same generators, same relation submodule.
bool same_presentation(const ModulePresentation& a, const ModulePresentation& b);
// B' (x)_B M along a monomial ring map.
ModulePresentation base_change(const ModulePresentation& m, const MonoidHom& ring_part,
                               const Algebra& target);

// d of a ring element as a vector on dx_0..dx_{n-1} starting at component `offset`.
Vec differential(const Algebra& b, const Vec& p, std::uint32_t offset = 0);

// Classical differentials of a monomial map A -> B.
ModulePresentation omega_ring(const MonoidHom& ring_part, const Algebra& a, const Algebra& b);
// Generators dx_i for the ring generators of the target, then dlog p_j for
// its pre-log generators.
ModulePresentation omega_log(const PreLogMorphism& f);

// B (x) coker(P^gp -> P'^gp) in Smith normal form generators.
struct ClosedForm {
  ModulePresentation module;
  ModulePresentation lattice_form;  // B^{m'} on dlog p_j modulo the lattice
  ModuleMap from_dlog;              // lattice_form -> module
  ModuleMap to_dlog;                // module -> lattice_form
};
ClosedForm monomial_closed_form(const PreLogMorphism& f);
// For free charts: the certified identification omega_log(f) ~ closed form.
bool closed_form_matches(const PreLogMorphism& f);

struct LogDerivation {
  PreLogMorphism f;
  ModulePresentation target;
  std::vector<Vec> d;       // per ring generator of the target chart
  std::vector<Vec> d_flat;  // per pre-log generator of the target chart
};

struct DerivationCheck {
  bool ok = true;
  std::string witness;
};
DerivationCheck check_derivation(const LogDerivation& der);
// The derivation as a map omega_log(f) -> target.
ModuleMap derivation_map(const LogDerivation& der);

}  // namespace logalg
