#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tcpkit/budget.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

/// Structural tensor classes decided (at a search budget) with witnesses.
enum class TensorClass {
  SemiPositive,
  StrictlySemiPositive,
  P,
  P0,
  Copositive,
  StrictlyCopositive,
  S,
  S0,
  R0,
};

enum class Verdict { Holds, Violated, Undetermined };

enum class WitnessMeaning { ViolatingVector, CertifyingVector };

struct ClassificationReport {
  TensorClass class_name = TensorClass::SemiPositive;
  Verdict verdict = Verdict::Undetermined;
  std::optional<Vec> witness;
  WitnessMeaning witness_meaning = WitnessMeaning::ViolatingVector;
  SearchBudget budget;
};

/// Every nonzero x >= 0 has a support index k with (A x^{m-1})_k >= 0.
/// Violated reports carry an x on the nonnegative unit inf-sphere whose
/// support is uniformly negative beyond the tolerance.
ClassificationReport check_semi_positive(const Tensor& a, const SearchBudget& budget = {});

/// As above with strict positivity at some support index.
ClassificationReport check_strictly_semi_positive(const Tensor& a, const SearchBudget& budget = {});

/// Some index has x_i (A x^{m-1})_i > 0 for every nonzero x (signed sphere).
ClassificationReport check_P(const Tensor& a, const SearchBudget& budget = {});

/// Some index has x_i != 0 and x_i (A x^{m-1})_i >= 0 for every nonzero x.
ClassificationReport check_P0(const Tensor& a, const SearchBudget& budget = {});

/// A x^m >= 0 on the nonnegative orthant.
ClassificationReport check_copositive(const Tensor& a, const SearchBudget& budget = {});

/// A x^m > 0 on the nonnegative orthant minus the origin.
ClassificationReport check_strictly_copositive(const Tensor& a, const SearchBudget& budget = {});

/// Searches for x > 0 with A x^{m-1} > 0. Holds with a strictly positive
/// certifying witness, or Undetermined: absence of a witness at a finite
/// budget is not a disproof.
ClassificationReport find_s_witness(const Tensor& a, const SearchBudget& budget = {});

/// Relaxed variant: x >= 0, x != 0 with A x^{m-1} >= 0.
ClassificationReport find_s0_witness(const Tensor& a, const SearchBudget& budget = {});

/// Only x = 0 solves the complementarity problem with zero offset.
/// Violated reports carry a nonzero unit solution up to the tolerance.
ClassificationReport check_R0(const Tensor& a, const SearchBudget& budget = {});

ClassificationReport run_class_check(const Tensor& a, TensorClass cls, const SearchBudget& budget = {});

std::string to_string(TensorClass cls);
std::string to_string(Verdict v);
std::string to_string(WitnessMeaning m);
std::optional<TensorClass> class_from_string(std::string_view name);

}  // namespace tcpkit
