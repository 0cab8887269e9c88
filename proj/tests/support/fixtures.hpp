#pragma once

// Shared fixtures for the test suites. Every generator is deterministic in
// the seed it is given.

#include <cstdint>
#include <random>
#include <vector>

#include "tcpkit/tensor.hpp"

namespace fixtures {

using tcpkit::Tensor;
using tcpkit::Vec;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
};

// A x^2 = (x1^2 + x2^2, (x1 - x2)^2): strictly semi-positive but not
// symmetric, and the induced map F = A x^2 + q is not pseudo-monotone for
// q = (-3/2, -1/2).
inline Tensor two_quadratics() {
  Tensor t(3, 2);
  t.set_entry({0, 0, 0}, 1.0);
  t.set_entry({0, 1, 1}, 1.0);
  t.set_entry({1, 0, 0}, 1.0);
  t.set_entry({1, 1, 0}, -2.0);
  t.set_entry({1, 1, 1}, 1.0);
  return t;
}

inline Vec two_quadratics_q() { return {-1.5, -0.5}; }

inline Tensor identity(int m, int n) { return Tensor::diagonal_identity(m, n); }

inline Tensor negated_identity(int m, int n) {
  return Tensor::diagonal_identity(m, n).scaled(-1.0);
}

inline Tensor zero(int m, int n) { return Tensor(m, n); }

inline Tensor all_ones(int m, int n) { return Tensor::constant(m, n, 1.0); }

inline Vec random_vec(Rng& rng, int n, double lo, double hi) {
  Vec v(static_cast<std::size_t>(n));
  for (double& c : v) c = rng.uniform(lo, hi);
  return v;
}

inline Tensor random_dense(Rng& rng, int m, int n, double lo, double hi) {
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
  Vec entries(total);
  for (double& e : entries) e = rng.uniform(lo, hi);
  return Tensor(m, n, std::move(entries));
}

inline Tensor random_symmetric(std::uint64_t seed, int m, int n, double lo = -1.0,
                               double hi = 1.0) {
  Rng rng(seed);
  return random_dense(rng, m, n, lo, hi).symmetrize();
}

// Strictly dominant principal diagonal: a_{i..i} exceeds the absolute row
// sum of the off-diagonal entries, which makes the tensor strictly
// semi-positive.
inline Tensor random_diag_dominant(std::uint64_t seed, int m, int n, bool symmetric) {
  Rng rng(seed);
  Tensor t = random_dense(rng, m, n, -0.5, 0.5);
  if (symmetric) t = t.symmetrize();
  std::size_t tails = 1;
  for (int i = 0; i < m - 1; ++i) tails *= static_cast<std::size_t>(n);
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t.set_entry(std::span<const int>(idx), 0.0);
    double row_abs = 0.0;
    const auto& raw = t.raw_entries();
    for (std::size_t tt = 0; tt < tails; ++tt) {
      row_abs += std::abs(raw[static_cast<std::size_t>(i) * tails + tt]);
    }
    t.set_entry(std::span<const int>(idx), row_abs + rng.uniform(0.5, 1.5));
  }
  return t;
}

}  // namespace fixtures
