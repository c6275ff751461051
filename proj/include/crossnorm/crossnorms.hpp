#pragma once

#include <optional>
#include <string>

#include "crossnorm/estimate.hpp"
#include "crossnorm/tensor.hpp"

namespace crossnorm {

/// Which crossnorm a computation refers to.  EntrywiseP(p) only attaches to
/// space pairs whose factors both carry exponent p; Hilbertian is the named
/// alias for EntrywiseP(2) on l2 factors.
struct CrossnormTag {
  enum class Kind { Injective, Projective, EntrywiseP, Hilbertian };
  Kind kind = Kind::Injective;
  Exponent p;  // meaningful for EntrywiseP

  static CrossnormTag injective() { return {Kind::Injective, Exponent(2.0)}; }
  static CrossnormTag projective() { return {Kind::Projective, Exponent(2.0)}; }
  static CrossnormTag entrywise(Exponent e) { return {Kind::EntrywiseP, e}; }
  static CrossnormTag hilbertian() { return {Kind::Hilbertian, Exponent(2.0)}; }

  bool attachable(const LpSpace& x, const LpSpace& y) const;
  /// True for EntrywiseP(2) and Hilbertian alike.
  bool is_entrywise_two() const {
    return kind == Kind::Hilbertian ||
           (kind == Kind::EntrywiseP && !p.is_inf() && p.value() == 2.0);
  }
  bool operator==(const CrossnormTag& o) const;
  std::string str() const;

  /// Parse "injective" | "projective" | "hilbertian" | "entrywise".
  /// Entrywise takes its exponent from the spaces it attaches to.
  static std::optional<CrossnormTag> parse(const std::string& name);
};

/// Resolve an "entrywise" tag against a concrete space pair (fills in p).
CrossnormTag resolve_tag(const CrossnormTag& tag, const LpSpace& x, const LpSpace& y);

/// Closed forms for sup_{||f||<=1,||g||<=1} |f^T F g| when they exist:
/// spectral norm for l2 x l2, dual-ball extreme-point enumeration when a
/// factor has exponent 1 or inf.  Returns nullopt otherwise.
std::optional<NormEstimate> injective_norm_exact(const Tensor& f, int enum_cap_dim = 12);

/// Injective norm: Exact where a closed form exists, otherwise a certified
/// lower bound from multi-start projected subgradient ascent of
/// ||F^T f||_Y over the unit sphere of X*.  Always attaches a feasible
/// functional-pair witness.
NormEstimate injective_norm(const Tensor& f, const Budget& budget = {});

/// Projective norm: Exact nuclear norm on l2 x l2, exact row/column formula
/// when a factor has exponent 1, otherwise a certified upper bound from a
/// search over exactly feasible decompositions (rank/row/column bases mixed
/// by random invertible matrices, then locally refined).  The witness
/// decomposition always reassembles to F exactly.
NormEstimate projective_norm(const Tensor& f, const Budget& budget = {});

/// Dispatch on the tag: injective_norm, projective_norm, or the entrywise
/// lp norm of the coefficient matrix (Exact).
NormEstimate alpha_norm(const Tensor& f, const CrossnormTag& tag, const Budget& budget = {});

/// (f (x) g)(F) = f^T F g.
double dual_injective_pair_value(const Functional& f, const Functional& g, const Tensor& t);

struct ConservativeValue;

/// Value guaranteed <= the true tag norm when certified (Exact and
/// LowerBound routes; the projective case falls back on the injective lower
/// bound where no exact route exists).
ConservativeValue tensor_norm_lower(const Tensor& t, const CrossnormTag& tag, const Budget& b);

/// Value guaranteed >= the true tag norm when certified (Exact and
/// UpperBound routes; uncertified for the injective norm away from its
/// closed forms).
ConservativeValue tensor_norm_upper(const Tensor& t, const CrossnormTag& tag, const Budget& b);

}  // namespace crossnorm
