#pragma once

// Low-degree log cotangent complexes. The Rognes square
//
//   B (x) L_{k[N]/k[M]}  --psi-->  B (x) cofib(M^gp -> N^gp)
//          | phi                          |
//      L_{B/A}  -----------------------> L^Rog
//
// is realized as the mapping cone of (psi, -phi) on explicit free
// complexes over B, in degrees 0..2.

#include <optional>
#include <string>
#include <vector>

#include "logalg/kahler.hpp"

namespace logalg {

// C2 -> C1 -> C0, free modules over `ring` with labeled bases.
struct FreeComplex {
  Algebra ring;
  std::vector<std::string> c0, c1, c2;
  std::vector<Vec> d1;  // per C1 generator, in C0
  std::vector<Vec> d2;  // per C2 generator, in C1
  std::string provenance;

  bool is_complex() const;
  // coker d1 on the C0 labels.
  ModulePresentation h0() const;
  // A cycle of d1 outside the image of d2, if any (exact, Groebner based).
  std::optional<Vec> h1_witness() const;
  // A nonzero element of ker d2, if any.
  std::optional<Vec> h2_witness() const;
};

// Naive cotangent complex of a monomial map A -> B: d of the defining
// relations of B over A in degree 1, their syzygies in degree 2.
FreeComplex naive_cotangent(const MonoidHom& ring_part, const Algebra& a, const Algebra& b);
FreeComplex rognes_pushout(const PreLogMorphism& f);

struct PointSample {
  std::vector<Scalar> point;
  std::size_t h0 = 0, h1 = 0, h2 = 0;
};

struct CotangentInvariants {
  ModulePresentation pi0;
  std::vector<PointSample> samples;
};
// Point dimensions are for the complex evaluated at each point (an upper
// bound for H1 of the fibre).
CotangentInvariants invariants(const FreeComplex& c,
                               const std::vector<std::vector<Scalar>>& points);
CotangentInvariants invariants(const FreeComplex& c);

// The complex models the full cotangent complex: every relation set is a
// regular sequence (pairwise coprime leading monomials) over a polynomial
// base and the relation lattice of N is independent.
bool lci_certificate(const PreLogMorphism& f);

// pi0(rognes_pushout(f)) ~ omega_log(f) through the identity on generators.
bool pi0_matches_omega(const PreLogMorphism& f);

enum class VerdictKind { Yes, No, TruncatedYes };
const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::TruncatedYes;
  std::string witness;      // for No
  std::string certificate;  // for Yes / TruncatedYes
};

Verdict is_derived_log_etale(const PreLogMorphism& f);
Verdict is_derived_log_smooth(const PreLogMorphism& f);

// Eliminates generators through relations with a constant coefficient; a
// relation-free remainder certifies freeness with the returned rank.
std::optional<std::size_t> free_rank(const ModulePresentation& m);

struct TransitivityReport {
  bool maps_well_defined = false;
  bool exact = false;             // C (x) pi0 L_f -> pi0 L_gf -> pi0 L_g -> 0
  bool euler_applicable = false;  // all three certified lci
  bool euler_ok = false;
  bool ok() const { return maps_well_defined && exact && (!euler_applicable || euler_ok); }
};
TransitivityReport transitivity_check(const PreLogMorphism& f, const PreLogMorphism& g);

struct BaseChangeReport {
  bool isomorphic = false;  // S (x)_B pi0 L_f ~ pi0 L_{S/R}
  PreLogMorphism base_changed;
};
// f: (A,M) -> (B,N), g: (A,M) -> (R,P); compares along the pushout.
BaseChangeReport base_change_check(const PreLogMorphism& f, const PreLogMorphism& g);

}  // namespace logalg
