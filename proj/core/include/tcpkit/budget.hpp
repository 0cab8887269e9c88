#pragma once

#include <cstdint>

namespace tcpkit {

/// Knobs for the grid + multistart searches behind classification,
/// extremal eigenvalue computation and boundedness probing.
///
/// Verdicts produced under a budget are relative to it; every report
/// carries the budget that produced it, and identical budgets (seed
/// included) reproduce identical reports bit for bit.
struct SearchBudget {
  double grid_resolution = 1.0 / 32.0;  ///< step per axis on unit faces
  int multistarts = 64;                 ///< local descents per search
  double tolerance = 1e-8;              ///< verdict/acceptance tolerance
  std::uint64_t seed = 0;               ///< root seed for all RNG streams
};

/// Defaults used by the extremal eigenvalue solvers (more starts).
inline SearchBudget pareto_defaults() {
  SearchBudget b;
  b.multistarts = 128;
  return b;
}

}  // namespace tcpkit
