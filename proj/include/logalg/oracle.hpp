#pragma once

// Independent brute-force oracles shared by the unit tests and the corpus
// suites. None of them touch the rewriting or Groebner code.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <vector>

#include "logalg/monoid.hpp"

namespace logalg::oracle {

using logalg::Exponent;
using logalg::MonoidPresentation;

inline std::int64_t degree(const Exponent& w) {
  std::int64_t d = 0;
  for (auto x : w) d += x;
  return d;
}

// One-step rewrites of w using relations in either direction.
inline std::vector<Exponent> neighbours(const MonoidPresentation& m, const Exponent& w) {
  std::vector<Exponent> out;
  for (const auto& r : m.relations()) {
    for (int dir = 0; dir < 2; ++dir) {
      const Exponent& from = dir ? r.rhs : r.lhs;
      const Exponent& to = dir ? r.lhs : r.rhs;
      bool fits = true;
      for (std::size_t i = 0; i < w.size(); ++i) fits = fits && from[i] <= w[i];
      if (!fits) continue;
      Exponent v = w;
      for (std::size_t i = 0; i < w.size(); ++i) v[i] += to[i] - from[i];
      out.push_back(v);
    }
  }
  return out;
}

// Congruence closure restricted to words of total degree <= bound.
inline bool bfs_equivalent(const MonoidPresentation& m, const Exponent& u, const Exponent& v,
                           std::int64_t bound) {
  if (u == v) return true;
  std::set<Exponent> seen{u};
  std::deque<Exponent> q{u};
  while (!q.empty()) {
    Exponent w = q.front();
    q.pop_front();
    for (auto& n : neighbours(m, w)) {
      if (degree(n) > bound || !seen.insert(n).second) continue;
      if (n == v) return true;
      q.push_back(n);
    }
  }
  return false;
}

inline Exponent random_word(std::mt19937& rng, std::size_t n, std::int64_t max_deg) {
  Exponent w(n, 0);
  if (n == 0) return w;
  std::int64_t d = static_cast<std::int64_t>(rng() % (max_deg + 1));
  for (std::int64_t k = 0; k < d; ++k) ++w[rng() % n];
  return w;
}

// Random walk along relation applications that stays within the bound.
inline Exponent random_walk(std::mt19937& rng, const MonoidPresentation& m, Exponent w,
                            int steps, std::int64_t bound) {
  for (int s = 0; s < steps; ++s) {
    auto ns = neighbours(m, w);
    ns.erase(std::remove_if(ns.begin(), ns.end(),
                            [&](const Exponent& x) { return degree(x) > bound; }),
             ns.end());
    if (ns.empty()) break;
    w = ns[rng() % ns.size()];
  }
  return w;
}

// Minimal nonzero solutions of A x = 0 with 0 <= x_i <= bound.
inline std::set<std::vector<std::int64_t>> bounded_hilbert(const logalg::IntMatrix& a,
                                                           int bound) {
  const std::size_t m = a.cols();
  std::vector<std::vector<std::int64_t>> sols;
  std::vector<std::int64_t> x(m, 0);
  for (;;) {
    std::size_t k = 0;
    while (k < m && x[k] == bound) x[k++] = 0;
    if (k == m) break;
    ++x[k];
    bool zero = true;
    for (std::size_t i = 0; i < a.rows() && zero; ++i) {
      logalg::Int s = 0;
      for (std::size_t j = 0; j < m; ++j) s += a(i, j) * static_cast<long>(x[j]);
      zero = s == 0;
    }
    if (zero) sols.push_back(x);
  }
  std::set<std::vector<std::int64_t>> minimal;
  for (const auto& s : sols) {
    bool min = true;
    for (const auto& t : sols) {
      if (t == s) continue;
      bool below = true;
      for (std::size_t i = 0; i < m && below; ++i) below = t[i] <= s[i];
      if (below) {
        min = false;
        break;
      }
    }
    if (min) minimal.insert(s);
  }
  return minimal;
}

}  // namespace logalg::oracle
