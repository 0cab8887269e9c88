#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tcpkit {

/// Dense real vector; length is fixed by context (the tensor dimension n).
using Vec = std::vector<double>;

/// Dense m-th order, n-dimensional real hypermatrix A = (a_{i1...im}).
///
/// Entries are stored row-major over index tuples, 0-based internally
/// (file formats are 1-based and translated by the parsers). Storage is
/// fully dense: the intended scale is n <= 8, m <= 5. Instances are
/// immutable after construction apart from set_entry, which is meant for
/// building fixtures before use; all evaluation paths are const and safe
/// to call concurrently.
class Tensor {
 public:
  /// Zero tensor of the given shape.
  Tensor(int order, int dim);

  /// Takes ownership of `entries` (length must be dim^order, all finite).
  /// `symmetric_hint` is a claim, verified on demand by is_symmetric().
  Tensor(int order, int dim, Vec entries, bool symmetric_hint = false);

  /// a_{ii...i} = 1, all other entries 0.
  static Tensor diagonal_identity(int order, int dim);
  /// Every entry equal to `value`.
  static Tensor constant(int order, int dim, double value);

  int order() const noexcept { return order_; }
  int dim() const noexcept { return dim_; }
  const Vec& raw_entries() const noexcept { return entries_; }
  bool symmetric_hint() const noexcept { return symmetric_hint_; }

  double entry(std::span<const int> idx) const;
  double entry(std::initializer_list<int> idx) const;
  void set_entry(std::span<const int> idx, double value);
  void set_entry(std::initializer_list<int> idx, double value);

  /// (A x^{m-1})_i = sum_{i2..im} a_{i i2...im} x_{i2} ... x_{im}.
  /// Summation order is fixed lexicographic in the trailing indices, so
  /// results are bit-identical across runs and thread counts.
  Vec apply(const Vec& x) const;

  /// A x^m = x . (A x^{m-1}); homogeneous of degree m.
  double poly_value(const Vec& x) const;

  /// Exact invariance of entries under index permutations.
  bool is_symmetric() const;

  /// Permutation average: symmetric, with the same poly_value everywhere.
  Tensor symmetrize() const;

  /// c * A.
  Tensor scaled(double c) const;

 private:
  std::size_t offset(std::span<const int> idx) const;

  int order_;
  int dim_;
  Vec entries_;
  bool symmetric_hint_;
};

/// Componentwise max(v_i, 0).
Vec positive_part(const Vec& v);

double dot(const Vec& a, const Vec& b);

/// p-norm for p in (1, inf]; pass std::numeric_limits<double>::infinity()
/// (or use inf_norm) for the max norm. Throws on p <= 1.
double norm(const Vec& v, double p);

double inf_norm(const Vec& v);

bool all_finite(const Vec& v);

}  // namespace tcpkit
