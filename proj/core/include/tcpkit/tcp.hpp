#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcpkit/budget.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

/// The problem pair (A, q): find x >= 0 with w = q + A x^{m-1} >= 0 and
/// x . w = 0.
struct TCPInstance {
  Tensor A;
  Vec q;

  TCPInstance(Tensor tensor, Vec offset);  // validates dimension + finiteness
  int dim() const noexcept { return A.dim(); }
};

enum class SolveMethod { Enumerate, Merit };

struct TCPResiduals {
  double x_neg = 0;            ///< worst negativity of x
  double w_neg = 0;            ///< worst negativity of w
  double complementarity = 0;  ///< max_i |x_i w_i|
};

struct TCPSolution {
  Vec x;
  Vec w;  ///< q + A x^{m-1}, recomputed from x
  TCPResiduals residuals;
  SolveMethod method = SolveMethod::Merit;
  bool verified = false;  ///< all residuals <= the tolerance used
};

/// Recomputes w and the three residuals for a candidate x.
TCPSolution verify_solution(const TCPInstance& inst, const Vec& x, double tol,
                            SolveMethod method = SolveMethod::Merit);

struct EnumerateOptions {
  int max_dim = 4;  ///< 2^n support sets; refuse larger problems
  SearchBudget budget{};
};

/// Ground-truth solver: per support set, fixes x = 0 off the support and
/// drives the on-support slacks to zero by damped multistart Newton.
/// Returns every distinct solution found (possibly none), sorted
/// lexicographically.
std::vector<TCPSolution> solve_enumerate(const TCPInstance& inst,
                                         const EnumerateOptions& opts = {});

struct MeritSolveResult {
  std::optional<TCPSolution> solution;
  double best_merit = 0;  ///< squared natural-residual merit at best_x
  Vec best_x;             ///< best iterate; NotFound != nonexistence proof
};

/// Scalable solver: multistart projected minimization of the natural-
/// residual merit ||min(x, q + A x^{m-1})||_2^2 over x >= 0, with an
/// active-set Newton polish.
MeritSolveResult solve_merit(const TCPInstance& inst, const SearchBudget& budget = {});

/// Scales a strictly positive witness y (with A y^{m-1} > 0) so that
/// x = t^{1/(m-1)} y is feasible: x >= 0 and q + A x^{m-1} >= 0.
/// Throws if the witness is invalid.
Vec find_feasible(const TCPInstance& inst, const Vec& s_witness);

struct PseudomonotoneCheck {
  double lhs = 0;  ///< (x - y) . F(y)
  double rhs = 0;  ///< (x - y) . F(x)
  bool violated = false;  ///< lhs >= 0 while rhs < 0
};

/// One-shot pseudo-monotonicity probe of F(v) = A v^{m-1} + q at x, y >= 0.
PseudomonotoneCheck check_pseudomonotone_violation(const TCPInstance& inst,
                                                   const Vec& x, const Vec& y);

std::string to_string(SolveMethod m);

}  // namespace tcpkit
