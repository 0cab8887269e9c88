#pragma once

#include <string>

#include "tcpkit/budget.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

enum class EigKind { H, Z };

/// How far (value, x) is from an exact Pareto eigenpair; all entries >= 0.
struct EigResiduals {
  double eigen_equation = 0;    ///< |A x^m - value * normalizer|
  double slackness = 0;         ///< worst negativity of the slack vector
  double nonneg_violation = 0;  ///< worst negativity of x
};

struct ParetoEigenpair {
  double value = 0;
  Vec vector;
  EigKind kind = EigKind::H;
  EigResiduals residuals;
  SearchBudget budget;
  /// The extremal-value-is-an-eigenvalue reading assumes symmetry; the
  /// constrained minimum is still well defined without it.
  bool symmetric_input = true;
};

/// Residuals of the H-eigenpair system
///   A x^m = value * sum_i x_i^m,  A x^{m-1} - value * x^{[m-1]} >= 0,  x >= 0.
EigResiduals verify_pareto_h(const Tensor& a, double value, const Vec& x);

/// Residuals of the Z-eigenpair system
///   A x^m = value * (x.x)^{m/2},  A x^{m-1} - value * (x.x)^{m/2-1} x >= 0.
EigResiduals verify_pareto_z(const Tensor& a, double value, const Vec& x);

/// min A x^m over { x >= 0, ||x||_m = 1 } by multistart projected descent
/// with an active-set polish; the smallest Pareto H-eigenvalue for
/// strictly copositive symmetric input.
ParetoEigenpair lambda_min(const Tensor& a, const SearchBudget& budget = pareto_defaults());

/// min A x^m over { x >= 0, ||x||_2 = 1 }; Z-eigenvalue counterpart.
ParetoEigenpair mu_min(const Tensor& a, const SearchBudget& budget = pareto_defaults());

std::string to_string(EigKind k);

}  // namespace tcpkit
