#include "logalg/exactla.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "logalg/error.hpp"

namespace logalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorKind::InvalidArgument, "ragged matrix");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows,
                                  const std::vector<IntVector>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      fail(ErrorKind::InvalidArgument, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::hconcat(const IntMatrix& o) const {
  if (o.rows_ != rows_) fail(ErrorKind::InvalidArgument, "hconcat rows");
  IntMatrix m(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
  }
  return m;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& o) const {
  if (o.cols_ != cols_) fail(ErrorKind::InvalidArgument, "vconcat cols");
  IntMatrix m(rows_ + o.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(o.data_.begin(), o.data_.end(), m.data_.begin() + data_.size());
  return m;
}

IntMatrix IntMatrix::block_diagonal(const IntMatrix& o) const {
  IntMatrix m(rows_ + o.rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) m(rows_ + i, cols_ + j) = o(i, j);
  return m;
}

IntMatrix IntMatrix::columns(std::size_t first, std::size_t count) const {
  IntMatrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t count) const {
  IntMatrix m(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
  return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += q * (*this)(b, j);
}

void IntMatrix::add_col_multiple(std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += q * (*this)(i, b);
}

void IntMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::InvalidArgument, "matrix product shape");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) fail(ErrorKind::InvalidArgument, "matrix-vector shape");
  IntVector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) r[i] += a(i, k) * v[k];
  return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorKind::InvalidArgument, "matrix difference shape");
  IntMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::InvalidArgument, "determinant of non-square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  Int d = determinant(a);
  return d == 1 || d == -1;
}

// --- Smith normal form ----------------------------------------------------

namespace {

struct SmithWork {
  IntMatrix D, U, Uinv, V, Vinv;

  void row_add(std::size_t a, std::size_t b, const Int& q) {
    D.add_row_multiple(a, b, q);
    U.add_row_multiple(a, b, q);
    Uinv.add_col_multiple(b, a, -q);
  }
  void col_add(std::size_t a, std::size_t b, const Int& q) {
    D.add_col_multiple(a, b, q);
    V.add_col_multiple(a, b, q);
    Vinv.add_row_multiple(b, a, -q);
  }
  void row_swap(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
    Vinv.swap_rows(a, b);
  }
  void row_negate(std::size_t a) {
    D.negate_row(a);
    U.negate_row(a);
    for (std::size_t i = 0; i < Uinv.rows(); ++i) Uinv(i, a) = -Uinv(i, a);
  }
};

SmithWork smith(const IntMatrix& a, std::size_t& rank) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithWork w{a, IntMatrix::identity(m), IntMatrix::identity(m),
              IntMatrix::identity(n), IntMatrix::identity(n)};
  rank = 0;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found_any = false;
    for (;;) {
      check_deadline();
      // pivot: smallest |entry|, first in (row, col) order
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = w.D(i, j);
          if (x == 0) continue;
          if (pi == m || mpz_cmpabs(x.get_mpz_t(), w.D(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) break;
      found_any = true;
      w.row_swap(t, pi);
      w.col_swap(t, pj);
      const Int p = w.D(t, t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.D(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w.D(i, t).get_mpz_t(), p.get_mpz_t());
        w.row_add(i, t, -q);
        if (w.D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.D(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), w.D(t, j).get_mpz_t(), p.get_mpz_t());
        w.col_add(j, t, -q);
        if (w.D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility of the remaining block
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(w.D(i, j).get_mpz_t(), p.get_mpz_t())) {
            w.row_add(t, i, 1);
            fixed = true;
            break;
          }
        }
      if (fixed) continue;
      if (w.D(t, t) < 0) w.row_negate(t);
      break;
    }
    if (!found_any) break;
    ++rank;
  }
  return w;
}

}  // namespace

SmithForm snf(const IntMatrix& a) {
  std::size_t rank = 0;
  SmithWork w = smith(a, rank);
  return SmithForm{std::move(w.U), std::move(w.D), std::move(w.V), std::move(w.Uinv), rank};
}

// --- abelian groups --------------------------------------------------------

std::optional<Int> FgAbelianGroup::order() const {
  if (free_rank) return std::nullopt;
  Int o = 1;
  for (const Int& d : torsion) o *= d;
  return o;
}

IntVector FgAbelianGroup::reduce(const IntVector& v) const {
  IntVector y = coords * v;
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), torsion[i].get_mpz_t());
    y[i] = r;
  }
  return y;
}

bool FgAbelianGroup::is_zero(const IntVector& v) const {
  IntVector y = reduce(v);
  return std::all_of(y.begin(), y.end(), [](const Int& x) { return x == 0; });
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  if (free_rank) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (const Int& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.get_str();
  }
  return s;
}

FgAbelianGroup trivial_group() { return FgAbelianGroup{}; }

FgAbelianGroup free_group(std::size_t rank) {
  FgAbelianGroup g;
  g.free_rank = rank;
  g.coords = IntMatrix::identity(rank);
  g.generators = IntMatrix::identity(rank);
  return g;
}

FgAbelianGroup cokernel(const IntMatrix& a) {
  std::size_t rank = 0;
  SmithWork w = smith(a, rank);
  const std::size_t m = a.rows();
  std::vector<std::size_t> tors_rows, free_rows;
  FgAbelianGroup g;
  for (std::size_t i = 0; i < m; ++i) {
    if (i < rank) {
      if (w.D(i, i) != 1) {
        tors_rows.push_back(i);
        g.torsion.push_back(w.D(i, i));
      }
    } else {
      free_rows.push_back(i);
    }
  }
  g.free_rank = free_rows.size();
  std::vector<std::size_t> keep = tors_rows;
  keep.insert(keep.end(), free_rows.begin(), free_rows.end());
  g.coords = IntMatrix(keep.size(), m);
  g.generators = IntMatrix(m, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t j = 0; j < m; ++j) {
      g.coords(k, j) = w.U(keep[k], j);
      g.generators(j, k) = w.Uinv(j, keep[k]);
    }
  return g;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  std::size_t rank = 0;
  SmithWork w = smith(a, rank);
  return w.V.columns(rank, a.cols() - rank);
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) fail(ErrorKind::InvalidArgument, "solve shape");
  std::size_t rank = 0;
  SmithWork w = smith(a, rank);
  IntVector ub = w.U * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), w.D(i, i).get_mpz_t()))
        return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), w.D(i, i).get_mpz_t());
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return w.V * y;
}

IntMatrix lattice_basis(const IntMatrix& gens) {
  std::size_t rank = 0;
  SmithWork w = smith(gens, rank);
  IntMatrix b(gens.rows(), rank);
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t i = 0; i < gens.rows(); ++i) b(i, k) = w.D(k, k) * w.Uinv(i, k);
  return b;
}

bool lattice_contains(const IntMatrix& gens, const IntVector& v) {
  return solve_integer(gens, v).has_value();
}

bool lattice_contains_all(const IntMatrix& gens, const IntMatrix& vs) {
  if (vs.cols() == 0) return true;
  std::size_t rank = 0;
  SmithWork w = smith(gens, rank);
  IntMatrix uv = w.U * vs;
  for (std::size_t j = 0; j < vs.cols(); ++j)
    for (std::size_t i = 0; i < gens.rows(); ++i) {
      if (i < rank) {
        if (!mpz_divisible_p(uv(i, j).get_mpz_t(), w.D(i, i).get_mpz_t())) return false;
      } else if (uv(i, j) != 0) {
        return false;
      }
    }
  return true;
}

// --- Hilbert bases ---------------------------------------------------------

namespace {

using Vec64 = std::vector<std::int64_t>;

std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) fail(ErrorKind::TooLarge, "entry exceeds 64 bits");
  return x.get_si();
}

bool dominates(const Vec64& q, const Vec64& b) {
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] < b[i]) return false;
  return true;
}

// Contejean-Devie completion. `stop` is consulted on every new solution;
// returning true ends the search early.
template <class Stop>
HilbertBasis contejean_devie(const IntMatrix& a,
                             const std::optional<Vec64>& upper, Stop stop) {
  const std::size_t p = a.rows(), m = a.cols();
  if (upper && upper->size() != m)
    fail(ErrorKind::InvalidArgument, "bound vector length");
  std::vector<Vec64> col(m, Vec64(p));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < p; ++i) col[j][i] = to_i64(a(i, j));

  HilbertBasis out;
  struct Node {
    Vec64 x, ax;
  };
  std::vector<Node> frontier;
  for (std::size_t j = 0; j < m; ++j) {
    if (upper && (*upper)[j] < 1) continue;
    Vec64 x(m, 0);
    x[j] = 1;
    frontier.push_back({x, col[j]});
  }
  out.candidates = frontier.size();
  const std::size_t cap = limits().max_hilbert;

  while (!frontier.empty()) {
    ++out.rounds;
    check_deadline();
    std::vector<Node> open;
    for (auto& nd : frontier) {
      bool zero = std::all_of(nd.ax.begin(), nd.ax.end(),
                              [](std::int64_t v) { return v == 0; });
      if (zero) {
        out.elements.push_back(nd.x);
        if (stop(nd.x)) return out;
      } else {
        open.push_back(std::move(nd));
      }
    }
    std::set<Vec64> seen;
    std::vector<Node> next;
    for (const auto& nd : open) {
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t dot = 0;
        for (std::size_t i = 0; i < p; ++i) dot += nd.ax[i] * col[j][i];
        if (dot >= 0) continue;
        if (upper && nd.x[j] + 1 > (*upper)[j]) continue;
        Vec64 q = nd.x;
        ++q[j];
        bool pruned = false;
        for (const auto& b : out.elements)
          if (dominates(q, b)) {
            pruned = true;
            break;
          }
        if (pruned || !seen.insert(q).second) continue;
        Vec64 aq = nd.ax;
        for (std::size_t i = 0; i < p; ++i) aq[i] += col[j][i];
        next.push_back({std::move(q), std::move(aq)});
        if (++out.candidates > cap)
          fail(ErrorKind::ResourceExceeded,
               "Hilbert basis candidates exceed " + std::to_string(cap));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

}  // namespace

HilbertBasis hilbert_basis(const IntMatrix& a, const std::optional<Vec64>& upper) {
  return contejean_devie(a, upper, [](const Vec64&) { return false; });
}

std::optional<Vec64> nonnegative_solution(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) fail(ErrorKind::InvalidArgument, "membership shape");
  const std::size_t m = a.cols();
  bool bzero = std::all_of(b.begin(), b.end(), [](const Int& x) { return x == 0; });
  if (bzero) return Vec64(m, 0);
  IntMatrix ext(a.rows(), m + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < m; ++j) ext(i, j) = a(i, j);
    ext(i, m) = -b[i];
  }
  Vec64 upper(m + 1, std::numeric_limits<std::int64_t>::max() / 4);
  upper[m] = 1;
  std::optional<Vec64> found;
  contejean_devie(ext, upper, [&](const Vec64& x) {
    if (x[m] == 1) {
      found = Vec64(x.begin(), x.begin() + m);
      return true;
    }
    return false;
  });
  return found;
}

// --- complexes and presented groups ---------------------------------------

namespace {

// Coordinates of the columns of `cols` in the (independent) basis columns of
// `basis`; every column must lie in the span.
IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& cols) {
  IntMatrix y(basis.cols(), cols.cols());
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    auto s = solve_integer(basis, cols.column(j));
    if (!s) fail(ErrorKind::InvalidArgument, "vector outside lattice");
    for (std::size_t i = 0; i < basis.cols(); ++i) y(i, j) = (*s)[i];
  }
  return y;
}

// Homology of a sub-lattice quotient: K (columns, independent) modulo the
// columns of `image` (contained in K). The result is expressed in ambient
// coordinates through K.
FgAbelianGroup lattice_quotient(const IntMatrix& k, const IntMatrix& image) {
  IntMatrix y = coordinates_in(k, image);
  FgAbelianGroup g = cokernel(y);
  g.generators = k * g.generators;
  // ambient -> K coordinates needs an integral left inverse of K, which
  // exists when K is saturated; otherwise coords stay in K coordinates.
  std::size_t rank = 0;
  SmithWork w = smith(k, rank);
  bool saturated = true;
  for (std::size_t i = 0; i < rank; ++i)
    if (w.D(i, i) != 1) saturated = false;
  if (saturated && rank == k.cols()) {
    // U K V = [I; 0] => left inverse of K is V * (first rank rows of U)
    IntMatrix left = w.V * w.U.row_range(0, rank);
    g.coords = g.coords * left;
  }
  return g;
}

}  // namespace

FgAbelianGroup complex_homology(const IntMatrix& d1, const IntMatrix& d0) {
  if (d1.rows() != d0.cols())
    fail(ErrorKind::InvalidArgument, "complex shapes do not compose");
  if (!(d0 * d1).is_zero()) fail(ErrorKind::NotAComplex, "d0 * d1 != 0");
  IntMatrix k = kernel_basis(d0);
  return lattice_quotient(k, d1);
}

GroupPresentation GroupPresentation::free(std::size_t rank) {
  return GroupPresentation{IntMatrix(rank, 0)};
}

GroupPresentation GroupPresentation::cyclic(const Int& n) {
  IntMatrix r(1, 1);
  r(0, 0) = n;
  return GroupPresentation{r};
}

FgAbelianGroup GroupPresentation::invariants() const { return cokernel(relations); }

GroupPresentation GroupPresentation::direct_sum(const GroupPresentation& o) const {
  return GroupPresentation{relations.block_diagonal(o.relations)};
}

bool is_well_defined(const IntMatrix& map, const GroupPresentation& source,
                     const GroupPresentation& target) {
  if (map.rows() != target.ambient() || map.cols() != source.ambient())
    return false;
  return lattice_contains_all(target.relations, map * source.relations);
}

IntMatrix kernel_lattice(const IntMatrix& map, const GroupPresentation& target) {
  if (map.rows() != target.ambient())
    fail(ErrorKind::InvalidArgument, "kernel_lattice shape");
  IntMatrix k = kernel_basis(map.hconcat(target.relations));
  return k.row_range(0, map.cols());
}

bool is_injective(const IntMatrix& map, const GroupPresentation& source,
                  const GroupPresentation& target) {
  return lattice_contains_all(source.relations, kernel_lattice(map, target));
}

bool is_surjective(const IntMatrix& map, const GroupPresentation& target) {
  return cokernel(map.hconcat(target.relations)).is_trivial();
}

bool is_isomorphism(const IntMatrix& map, const GroupPresentation& source,
                    const GroupPresentation& target) {
  return is_well_defined(map, source, target) &&
         is_injective(map, source, target) && is_surjective(map, target);
}

FgAbelianGroup homology_at(const IntMatrix& f, const IntMatrix& g,
                           const GroupPresentation& b,
                           const GroupPresentation& c) {
  IntMatrix k = lattice_basis(kernel_lattice(g, c));
  IntMatrix image = f.hconcat(b.relations);
  return lattice_quotient(k, image);
}

namespace {

struct SquareSequence {
  IntMatrix alpha, beta;
  GroupPresentation middle;
};

SquareSequence sequence_of(const AbelianSquare& s) {
  if (s.top.rows() != s.b.ambient() || s.top.cols() != s.a.ambient() ||
      s.left.rows() != s.c.ambient() || s.left.cols() != s.a.ambient() ||
      s.right.rows() != s.d.ambient() || s.right.cols() != s.b.ambient() ||
      s.bottom.rows() != s.d.ambient() || s.bottom.cols() != s.c.ambient())
    fail(ErrorKind::InvalidArgument, "square shapes");
  IntMatrix neg_bottom(s.bottom.rows(), s.bottom.cols());
  for (std::size_t i = 0; i < s.bottom.rows(); ++i)
    for (std::size_t j = 0; j < s.bottom.cols(); ++j) neg_bottom(i, j) = -s.bottom(i, j);
  return {s.top.vconcat(s.left), s.right.hconcat(neg_bottom), s.b.direct_sum(s.c)};
}

void require_commutes(const AbelianSquare& s) {
  if (!square_commutes(s)) fail(ErrorKind::NonCommuting, "square does not commute");
}

}  // namespace

bool square_commutes(const AbelianSquare& s) {
  SquareSequence q = sequence_of(s);
  if (!is_well_defined(s.top, s.a, s.b) || !is_well_defined(s.left, s.a, s.c) ||
      !is_well_defined(s.right, s.b, s.d) || !is_well_defined(s.bottom, s.c, s.d))
    fail(ErrorKind::InvalidArgument, "square map is not a homomorphism");
  return lattice_contains_all(s.d.relations, q.beta * q.alpha);
}

bool square_is_cartesian(const AbelianSquare& s) {
  require_commutes(s);
  SquareSequence q = sequence_of(s);
  return is_injective(q.alpha, s.a, q.middle) &&
         homology_at(q.alpha, q.beta, q.middle, s.d).is_trivial();
}

bool square_is_cocartesian(const AbelianSquare& s) {
  return square_is_cartesian(s) && is_surjective(sequence_of(s).beta, s.d);
}

}  // namespace logalg
