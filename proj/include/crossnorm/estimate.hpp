#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "crossnorm/tensor.hpp"

namespace crossnorm {

/// How a computed value relates to the true norm.  Sup-type searches certify
/// lower bounds (they exhibit a feasible point), inf-type searches certify
/// upper bounds (they exhibit a feasible decomposition); only closed forms
/// may claim Exact.
enum class BoundDirection { Exact, LowerBound, UpperBound };

std::string to_string(BoundDirection d);

/// Certificate attached to an estimate: the functional pair attaining a
/// sup-type value, the decomposition attaining an inf-type cost, the tensor
/// attaining a ratio, or the pairing matrices attaining an operator-space sup.
struct FunctionalPairWitness {
  Vec f;
  Vec g;
};
struct DecompositionWitness {
  Decomposition decomposition;
};
struct MatrixWitness {
  Mat entries;
};
struct PairingWitness {
  Mat phi;
  Mat eta;
};
using Witness = std::variant<std::monostate, FunctionalPairWitness, DecompositionWitness,
                             MatrixWitness, PairingWitness>;

struct NormEstimate {
  double value = 0.0;
  BoundDirection direction = BoundDirection::LowerBound;
  /// False when the nominal direction could not be established from the
  /// directions of the inner estimates; such values are reported but never
  /// allowed to certify a verdict.
  bool certified = true;
  Witness witness;
  std::string method;
  int restarts = 0;
  std::uint64_t seed = 0;

  static NormEstimate exact(double v, std::string m) {
    NormEstimate e;
    e.value = v;
    e.direction = BoundDirection::Exact;
    e.method = std::move(m);
    return e;
  }
};

/// Search budget shared by the iterative estimators.  Per-restart seeds are
/// derived from (seed, restart index), so raising any budget field refines a
/// result without perturbing the streams already used.
struct Budget {
  int restarts = 32;
  int max_iters = 200;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  /// Random feasible-decomposition samples in inf-type searches
  /// (0 picks a default).
  int samples = 0;
  /// Deterministic coarse pre-scan points before ascent (0 picks a default).
  int pre_scan = 0;
  /// Term count for searches over operator tensors.
  int max_terms = 2;
  /// Dimension cap for 2^dim extreme-point enumerations.
  int enum_cap_dim = 12;
  /// Skip closed forms and force the iterative path (for cross-validation).
  bool force_iterative = false;

  Budget with_seed(std::uint64_t s) const {
    Budget b = *this;
    b.seed = s;
    return b;
  }
};

}  // namespace crossnorm
