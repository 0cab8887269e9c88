#include "tcpkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tcpkit {

namespace {

std::size_t checked_pow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::size_t{1} << 26) / static_cast<std::size_t>(base)) {
      throw std::invalid_argument("tensor too large for dense storage");
    }
    r *= static_cast<std::size_t>(base);
  }
  return r;
}

void check_shape(int order, int dim) {
  if (order < 2) throw std::invalid_argument("tensor order must be >= 2");
  if (dim < 1) throw std::invalid_argument("tensor dimension must be >= 1");
}

}  // namespace

Tensor::Tensor(int order, int dim)
    : order_(order), dim_(dim), entries_(), symmetric_hint_(false) {
  check_shape(order, dim);
  entries_.assign(checked_pow(dim, order), 0.0);
}

Tensor::Tensor(int order, int dim, Vec entries, bool symmetric_hint)
    : order_(order), dim_(dim), entries_(std::move(entries)), symmetric_hint_(symmetric_hint) {
  check_shape(order, dim);
  if (entries_.size() != checked_pow(dim, order)) {
    throw std::invalid_argument("entry count does not match dim^order");
  }
  if (!all_finite(entries_)) {
    throw std::invalid_argument("tensor entries must be finite");
  }
}

Tensor Tensor::diagonal_identity(int order, int dim) {
  Tensor t(order, dim);
  std::vector<int> idx(static_cast<std::size_t>(order));
  for (int i = 0; i < dim; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t.set_entry(std::span<const int>(idx), 1.0);
  }
  return t;
}

Tensor Tensor::constant(int order, int dim, double value) {
  Tensor t(order, dim);
  std::fill(t.entries_.begin(), t.entries_.end(), value);
  return t;
}

std::size_t Tensor::offset(std::span<const int> idx) const {
  if (idx.size() != static_cast<std::size_t>(order_)) {
    throw std::invalid_argument("index tuple length does not match tensor order");
  }
  std::size_t off = 0;
  for (int v : idx) {
    if (v < 0 || v >= dim_) throw std::out_of_range("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(v);
  }
  return off;
}

double Tensor::entry(std::span<const int> idx) const { return entries_[offset(idx)]; }

double Tensor::entry(std::initializer_list<int> idx) const {
  return entry(std::span<const int>(idx.begin(), idx.size()));
}

void Tensor::set_entry(std::span<const int> idx, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("tensor entries must be finite");
  entries_[offset(idx)] = value;
}

void Tensor::set_entry(std::initializer_list<int> idx, double value) {
  set_entry(std::span<const int>(idx.begin(), idx.size()), value);
}

Vec Tensor::apply(const Vec& x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("vector length does not match tensor dimension");
  }
  const int m = order_;
  const int n = dim_;
  const std::size_t tails = entries_.size() / static_cast<std::size_t>(n);
  Vec out(static_cast<std::size_t>(n), 0.0);

  // Odometer over the trailing (m-1)-tuple, lexicographic; pp[j] holds the
  // running product x[d0]*...*x[dj] so each tail costs O(1) amortized.
  std::vector<int> digits(static_cast<std::size_t>(m - 1), 0);
  std::vector<double> pp(static_cast<std::size_t>(m - 1));
  {
    double p = 1.0;
    for (int j = 0; j < m - 1; ++j) {
      p *= x[0];
      pp[static_cast<std::size_t>(j)] = p;
    }
  }
  for (std::size_t t = 0; t < tails; ++t) {
    const double xprod = pp[static_cast<std::size_t>(m - 2)];
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] += entries_[static_cast<std::size_t>(i) * tails + t] * xprod;
    }
    int j = m - 2;
    while (j >= 0) {
      if (++digits[static_cast<std::size_t>(j)] < n) break;
      digits[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    double base = (j == 0) ? 1.0 : pp[static_cast<std::size_t>(j - 1)];
    for (int k = j; k <= m - 2; ++k) {
      base *= x[static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
      pp[static_cast<std::size_t>(k)] = base;
    }
  }
  return out;
}

double Tensor::poly_value(const Vec& x) const { return dot(x, apply(x)); }

bool Tensor::is_symmetric() const {
  const int m = order_;
  const int n = dim_;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  std::vector<int> sorted(static_cast<std::size_t>(m));
  const std::size_t total = entries_.size();
  for (std::size_t off = 0; off < total; ++off) {
    std::size_t rest = off;
    for (int j = m - 1; j >= 0; --j) {
      idx[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (entries_[off] != entry(std::span<const int>(sorted))) return false;
  }
  return true;
}

Tensor Tensor::symmetrize() const {
  const int m = order_;
  const int n = dim_;
  Tensor out(m, n);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  const std::size_t total = entries_.size();
  for (std::size_t off = 0; off < total; ++off) {
    std::size_t rest = off;
    bool nondecreasing = true;
    for (int j = m - 1; j >= 0; --j) {
      idx[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    for (int j = 1; j < m; ++j) {
      if (idx[static_cast<std::size_t>(j)] < idx[static_cast<std::size_t>(j - 1)]) {
        nondecreasing = false;
        break;
      }
    }
    if (!nondecreasing) continue;
    // average over the distinct arrangements of this multiset
    std::vector<int> perm = idx;
    double sum = 0.0;
    std::size_t count = 0;
    do {
      sum += entry(std::span<const int>(perm));
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double avg = sum / static_cast<double>(count);
    perm = idx;
    do {
      out.set_entry(std::span<const int>(perm), avg);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  out.symmetric_hint_ = true;
  return out;
}

Tensor Tensor::scaled(double c) const {
  Vec e = entries_;
  for (double& v : e) v *= c;
  return Tensor(order_, dim_, std::move(e), symmetric_hint_);
}

Vec positive_part(const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i], 0.0);
  return out;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& v, double p) {
  if (std::isinf(p) && p > 0) return inf_norm(v);
  if (!(p > 1.0)) throw std::invalid_argument("norm: p must be > 1 or infinity");
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

double inf_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace tcpkit
