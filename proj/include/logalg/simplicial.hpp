#pragma once

// Truncated simplicial abelian groups and monoids, bar constructions and
// degreewise group completion. Everything is constant or bar-like, so the
// objects are finite lists of levels with explicit face and degeneracy maps.

#include <cstddef>
#include <vector>

#include "logalg/monoid.hpp"

namespace logalg {

// faces[k][i]: level k -> level k-1 (k >= 1, 0 <= i <= k); faces[0] is empty.
// degeneracies[k][i]: level k -> level k+1 (k < n, 0 <= i <= k).
struct TruncSimplicialAb {
  std::size_t n = 0;
  std::vector<GroupPresentation> levels;
  std::vector<std::vector<IntMatrix>> faces;
  std::vector<std::vector<IntMatrix>> degeneracies;

  bool check_identities() const;
};

struct TruncSimplicialMonoid {
  std::size_t n = 0;
  std::vector<MonoidPresentation> levels;
  std::vector<std::vector<MonoidHom>> faces;
  std::vector<std::vector<MonoidHom>> degeneracies;

  bool check_identities() const;
};

TruncSimplicialAb constant(const GroupPresentation& a, std::size_t n);
TruncSimplicialMonoid constant(const MonoidPresentation& m, std::size_t n);

// Homology of the alternating face complex at degree i (needs level i+1).
FgAbelianGroup moore_homotopy(const TruncSimplicialAb& x, std::size_t i);

// Level k = M^k; inner faces multiply adjacent entries, outer faces drop.
TruncSimplicialMonoid bar(const MonoidPresentation& m, std::size_t n);

// Abelianized fundamental group of the 2-truncated bar construction.
FgAbelianGroup pi1_of_bar(const MonoidPresentation& m);

// H_0..H_d of the normalized bar complex of a finite monoid (order <= 32).
std::vector<FgAbelianGroup> bar_homology(const MonoidPresentation& m, std::size_t d);

TruncSimplicialAb degreewise_gp(const TruncSimplicialMonoid& x);
// Coequalizer of d0, d1 : level 1 -> level 0.
MonoidPresentation pi0_monoid(const TruncSimplicialMonoid& x);
bool is_grouplike(const TruncSimplicialMonoid& x);

}  // namespace logalg
