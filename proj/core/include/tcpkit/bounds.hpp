#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcpkit/budget.hpp"
#include "tcpkit/tcp.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

enum class BoundKind { MNorm, TwoNorm, InfNorm };

/// One evaluated global solution bound: lhs = ||x||^{m-1} in the matching
/// norm, rhs = ||(-q)_+|| / constant.
struct BoundReport {
  BoundKind kind = BoundKind::MNorm;
  double lhs = 0;
  double rhs = 0;
  double constant_used = 0;  ///< lambda, mu or beta fed by the caller
  bool satisfied = false;    ///< lhs <= rhs + 1e-10
  double slack = 0;          ///< rhs - lhs
};

struct BetaResult {
  double value = 0;
  Vec argmin;
};

/// beta(A) = min over { x >= 0, ||x||_inf = 1 } of max_i x_i (A x^{m-1})_i.
/// Positive for strictly semi-positive tensors. The inf-sphere is split
/// into its n faces (one coordinate pinned at 1) and each face is solved
/// as a box problem; results merge deterministically.
BetaResult beta(const Tensor& a, const SearchBudget& budget = {});

/// ||x||_m^{m-1} <= ||(-q)_+||_{m/(m-1)} / lambda_val. Throws on
/// lambda_val <= 0.
BoundReport bound_m_norm(const TCPInstance& inst, const Vec& x, double lambda_val);

/// ||x||_2^{m-1} <= ||(-q)_+||_2 / mu_val.
BoundReport bound_2_norm(const TCPInstance& inst, const Vec& x, double mu_val);

/// ||x||_inf^{m-1} <= ||(-q)_+||_inf / beta_val. No symmetry required.
BoundReport bound_inf_norm(const TCPInstance& inst, const Vec& x, double beta_val);

enum class GammaVerdict { LikelyBounded, UnboundedWitness, Undetermined };

/// Probe of the level set
///   Gamma(q, s, t) = { x >= 0 : q + A x^{m-1} >= 0, x.q + t A x^m <= s }.
/// Gamma(q, 0, 1) is exactly the solution set of the problem (A, q).
struct GammaProbe {
  Vec q;
  double s = 0;
  double t = 1;
  std::vector<Vec> members_found;
  /// Unit vector x' >= 0 with A x'^{m-1} >= -tol and |A x'^m| <= tol:
  /// a nonzero zero-offset solution, so every Gamma set is unbounded.
  std::optional<Vec> escape_direction;
  GammaVerdict verdict = GammaVerdict::Undetermined;
};

/// Searches for members of growing norm under a doubling cap (1..2^10)
/// and for an escape direction; LikelyBounded when member growth stops
/// and no escape direction exists at the budget.
GammaProbe gamma_probe(const Tensor& a, const Vec& q, double s, double t,
                       const SearchBudget& budget = {});

std::string to_string(BoundKind k);
std::string to_string(GammaVerdict v);

}  // namespace tcpkit
