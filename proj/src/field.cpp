#include "logalg/field.hpp"

#include "logalg/error.hpp"

namespace logalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint64_t characteristic) : p_(characteristic) {
  if (p_ != 0 && (!is_prime(p_) || p_ >= (1ull << 31)))
    fail(ErrorKind::InvalidArgument, "characteristic must be 0 or a prime below 2^31");
  pz_ = static_cast<unsigned long>(p_);
}

std::string Field::name() const { return p_ ? "GF(" + std::to_string(p_) + ")" : "QQ"; }

Scalar Field::normalize(const Scalar& x) const {
  if (!p_) return x;
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class r;
  if (den != 1) {
    mpz_class di;
    if (!mpz_invert(di.get_mpz_t(), den.get_mpz_t(), pz_.get_mpz_t()))
      fail(ErrorKind::InvalidArgument, "denominator divisible by the characteristic");
    num *= di;
  }
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), pz_.get_mpz_t());
  return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) fail(ErrorKind::InvalidArgument, "division by zero");
  if (!p_) return 1 / a;
  mpz_class r, v = normalize(a).get_num();
  mpz_invert(r.get_mpz_t(), v.get_mpz_t(), pz_.get_mpz_t());
  return Scalar(r);
}

FMatrix fmatrix(std::size_t rows, std::size_t cols) {
  return FMatrix(rows, std::vector<Scalar>(cols));
}

std::vector<std::size_t> row_reduce(const Field& k, FMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (auto& row : m)
    for (auto& x : row) x = k.normalize(x);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Scalar iv = k.inv(m[r][c]);
    for (auto& x : m[r]) x = k.mul(x, iv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const Field& k, FMatrix m) { return row_reduce(k, m).size(); }

std::vector<std::vector<Scalar>> nullspace(const Field& k, FMatrix m, std::size_t cols) {
  auto piv = row_reduce(k, m);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = k.neg(m[r][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> solve(const Field& k, const FMatrix& m,
                                         const std::vector<Scalar>& b, std::size_t cols) {
  if (b.size() != m.size()) fail(ErrorKind::InvalidArgument, "solve shape");
  FMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = row_reduce(k, aug);
  std::vector<Scalar> x(cols);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == cols) return std::nullopt;
    x[piv[r]] = aug[r][cols];
  }
  return x;
}

}  // namespace logalg
