#pragma once

// Internal search machinery shared by classify, pareto, tcp and bounds.
// Not installed; everything here is deterministic given (seed, index).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "tcpkit/budget.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit::detail {

// index i counts as "in the support" iff x_i > kSupportCut
inline constexpr double kSupportCut = 1e-10;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t s) : eng_(s) {}
  // uniform in [0,1), stdlib-independent bit path
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 eng_;
};

using Objective = std::function<double(const Vec&)>;
using Projection = std::function<void(Vec&)>;

struct DescentOptions {
  int max_iters = 300;
  double initial_step = 0.25;
  double armijo = 1e-4;
  double min_step = 1e-14;
  double fd_step = 1e-7;
};

struct DescentResult {
  Vec x;
  double value = 0;
};

Vec fd_gradient(const Objective& f, const Vec& x, double h0);

// Monotone projected descent with halving line search; finite-difference
// gradients, so it tolerates minimax-style kinks.
DescentResult projected_descent(const Objective& f, const Projection& proj, Vec x0,
                                const DescentOptions& opts = {});

struct SphereMinResult {
  Vec x;
  double value = 0;
  bool nonfinite = false;  // some objective evaluation was NaN/Inf
};

// Minimizes f over the unit inf-sphere: { ||x||_inf = 1 } intersected with
// the nonnegative orthant (signed_sphere = false) or taken whole
// (signed_sphere = true). The sphere is the union of axis faces with one
// coordinate pinned to +-1; each face is grid-seeded and polished by
// projected descent. Deterministic merge over task indices.
SphereMinResult minimize_over_inf_sphere(int n, bool signed_sphere, const Objective& f,
                                         const SearchBudget& budget,
                                         const DescentOptions& dopts = {});

struct NewtonOptions {
  int max_iters = 120;
  double f_tol = 1e-12;
  double fd_step = 1e-6;
};

// Damped Newton with finite-difference Jacobian; returns a root with
// ||F||_inf <= f_tol or nothing.
std::optional<Vec> newton_root(const std::function<Vec(const Vec&)>& F, Vec x0,
                               const NewtonOptions& opts = {});

// Solves a*x = b in place by Gaussian elimination with partial pivoting;
// false on (near-)singularity. `a` is row-major k x k.
bool solve_dense(std::vector<double>& a, Vec& b, int k);

// Escape-direction search shared by the R0 check and the Gamma probe:
// x' >= 0 on the unit inf-sphere with A x'^{m-1} >= -tol componentwise and
// |A x'^m| <= tol.
struct EscapeSearchResult {
  std::optional<Vec> direction;
  bool nonfinite = false;
};
EscapeSearchResult r0_escape_search(const Tensor& a, const SearchBudget& budget);

}  // namespace tcpkit::detail
