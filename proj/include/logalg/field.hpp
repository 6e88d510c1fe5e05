#pragma once

// Coefficient fields: Q or F_p (p < 2^31), with dense linear algebra.
// Scalars are mpq_class; in characteristic p they are kept as integers in
// [0, p).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace logalg {

using Scalar = mpq_class;

class Field {
 public:
  Field() = default;
  // p = 0 for Q; otherwise p must be prime and < 2^31.
  explicit Field(std::uint64_t characteristic);

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_prime_field() const noexcept { return p_ != 0; }
  std::string name() const;

  Scalar normalize(const Scalar& x) const;
  Scalar from_int(long v) const { return normalize(Scalar(v)); }
  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  // Field size when finite.
  std::optional<std::uint64_t> order() const {
    return p_ ? std::optional<std::uint64_t>(p_) : std::nullopt;
  }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_ = 0;
  mpz_class pz_;
};

bool is_prime(std::uint64_t n);

using FMatrix = std::vector<std::vector<Scalar>>;

FMatrix fmatrix(std::size_t rows, std::size_t cols);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(const Field& k, FMatrix& m);
std::size_t rank(const Field& k, FMatrix m);
// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<std::vector<Scalar>> nullspace(const Field& k, FMatrix m, std::size_t cols);
// Some x with m x = b, if any.
std::optional<std::vector<Scalar>> solve(const Field& k, const FMatrix& m,
                                         const std::vector<Scalar>& b, std::size_t cols);

}  // namespace logalg
