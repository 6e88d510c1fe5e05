#pragma once

// Exact integer linear algebra: Smith normal form, lattices, finitely
// generated abelian groups, Hilbert bases of {x >= 0 : Ax = 0} and the
// (co)cartesian test for commutative squares of abelian groups.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace logalg {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows,
                                const std::vector<IntVector>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  // [this | other], [this ; other]
  IntMatrix hconcat(const IntMatrix& other) const;
  IntMatrix vconcat(const IntMatrix& other) const;
  IntMatrix block_diagonal(const IntMatrix& other) const;
  IntMatrix columns(std::size_t first, std::size_t count) const;
  IntMatrix row_range(std::size_t first, std::size_t count) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += q * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Int& q);
  void add_col_multiple(std::size_t a, std::size_t b, const Int& q);
  void negate_row(std::size_t a);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d_1 | d_2 | ..., nonnegative
  IntMatrix V;  // cols x cols, unimodular
  IntMatrix Uinv;
  std::size_t rank = 0;
};

// U * A * V = D. Pivot: smallest nonzero absolute value, ties broken by
// (row, col); the transforms are therefore reproducible.
SmithForm snf(const IntMatrix& a);

// Canonical form of a finitely generated abelian group
// Z^free_rank + Z/torsion[0] + ... with torsion[i] | torsion[i+1], all >= 2.
// When produced by cokernel() the group also carries its identification
// with a quotient of an ambient Z^n.
struct FgAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  IntMatrix coords;      // (#torsion + free_rank) x ambient
  IntMatrix generators;  // ambient x (#torsion + free_rank)

  std::size_t ambient() const { return coords.cols(); }
  std::size_t ngens() const { return torsion.size() + free_rank; }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_torsion_free() const { return torsion.empty(); }
  // Order of the group; nullopt when infinite.
  std::optional<Int> order() const;
  // Canonical coordinates of an ambient vector (torsion entries reduced).
  IntVector reduce(const IntVector& ambient_vector) const;
  bool is_zero(const IntVector& ambient_vector) const;
  std::string to_string() const;

  // Isomorphism type only: the ambient identification is not compared.
  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

FgAbelianGroup trivial_group();
FgAbelianGroup free_group(std::size_t rank);

// Z^rows / column span of a.
FgAbelianGroup cokernel(const IntMatrix& a);

// Columns form a basis of {x : a x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// Basis (as columns) of the lattice spanned by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens);
bool lattice_contains(const IntMatrix& gens, const IntVector& v);
bool lattice_contains_all(const IntMatrix& gens, const IntMatrix& vs);

struct HilbertBasis {
  std::vector<std::vector<std::int64_t>> elements;
  std::size_t rounds = 0;      // total degree reached by the completion
  std::size_t candidates = 0;  // candidates generated overall
};

// Minimal generating set of {x in N^m : a x = 0} by Contejean-Devie
// completion. Optional per-coordinate upper bounds restrict the search to a
// box (used for membership tests). Throws ResourceExceeded past the
// candidate cap in limits().
HilbertBasis hilbert_basis(
    const IntMatrix& a,
    const std::optional<std::vector<std::int64_t>>& upper = std::nullopt);

// Does b = a * lambda have a solution with lambda in N^m? Returns one.
std::optional<std::vector<std::int64_t>> nonnegative_solution(
    const IntMatrix& a, const IntVector& b);

// H = ker(d0) / im(d1) for Z^n1 --d1--> Z^n --d0--> Z^n0.
FgAbelianGroup complex_homology(const IntMatrix& d1, const IntMatrix& d0);

// Abelian group presented as Z^ambient / column span of relations.
struct GroupPresentation {
  IntMatrix relations;

  static GroupPresentation free(std::size_t rank);
  static GroupPresentation cyclic(const Int& n);
  std::size_t ambient() const { return relations.rows(); }
  FgAbelianGroup invariants() const;
  GroupPresentation direct_sum(const GroupPresentation& other) const;
};

// A homomorphism between presented groups is an ambient integer matrix
// (target.ambient x source.ambient) mapping relations into relations.
bool is_well_defined(const IntMatrix& map, const GroupPresentation& source,
                     const GroupPresentation& target);
// Generators (columns) of the preimage lattice {x : map x in rel(target)}.
IntMatrix kernel_lattice(const IntMatrix& map, const GroupPresentation& target);
bool is_injective(const IntMatrix& map, const GroupPresentation& source,
                  const GroupPresentation& target);
bool is_surjective(const IntMatrix& map, const GroupPresentation& target);
bool is_isomorphism(const IntMatrix& map, const GroupPresentation& source,
                    const GroupPresentation& target);
// Homology ker(g)/im(f) at the middle term of A --f--> B --g--> C.
FgAbelianGroup homology_at(const IntMatrix& f, const IntMatrix& g,
                           const GroupPresentation& b,
                           const GroupPresentation& c);

// a --top--> b
// |          |
// left       right
// v          v
// c --bottom-> d
struct AbelianSquare {
  GroupPresentation a, b, c, d;
  IntMatrix top, left, right, bottom;
};

bool square_commutes(const AbelianSquare& s);
// Cartesian: a -> b x_d c is an isomorphism.
bool square_is_cartesian(const AbelianSquare& s);
// Homotopy cocartesian (as constant simplicial abelian groups):
// 0 -> a -> b + c -> d -> 0 is exact.
bool square_is_cocartesian(const AbelianSquare& s);

std::string to_string(const IntVector& v);

}  // namespace logalg
