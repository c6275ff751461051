#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crossnorm/operator_norms.hpp"

namespace crossnorm {

/// Outcome of a direction-aware comparison.  Violated is only ever produced
/// by a certified comparison (a certified lower value exceeding a certified
/// upper value beyond tolerance); comparisons whose bound directions cannot
/// expose a violation come back Inconclusive regardless of the raw values.
enum class Verdict { Holds, HoldsWithSlack, Inconclusive, Violated };

std::string to_string(Verdict v);
Verdict worst_verdict(Verdict a, Verdict b);

/// One comparison "lhs <= rhs" within a check.
struct ComparisonLink {
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  /// True when lhs certifies a lower value and rhs an upper value, i.e. a
  /// genuine violation would be visible here.
  bool detectable = false;
  double slack = 0.0;  // rhs - lhs
  Verdict verdict = Verdict::Inconclusive;
};

ComparisonLink compare_le(std::string claim, const NormEstimate& lhs, const NormEstimate& rhs,
                          double tol);

/// Product of two nonnegative estimates with direction composition:
/// Exact*Exact stays Exact, lower*lower stays a lower bound, upper*upper an
/// upper bound; a mixed product keeps the value but loses certification.
NormEstimate product_estimate(const NormEstimate& a, const NormEstimate& b);

struct CheckRecord {
  std::string name;
  std::vector<std::pair<std::string, NormEstimate>> sides;
  std::vector<ComparisonLink> links;
  Verdict verdict = Verdict::Holds;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::string spaces;
  std::string tag;

  std::vector<double> slacks() const;
  void finalize();  // verdict := worst link verdict
};

/// || F ||_injective <= || F ||_alpha <= || F ||_projective.
CheckRecord check_sandwich(const Tensor& f, const CrossnormTag& tag, const Budget& budget = {});

/// Induced norm of A (x) B against ||A|| ||B||, both directions.
CheckRecord check_uniform_identity(const Mat& a, const LpSpace& x, const LpSpace& v, const Mat& b,
                                   const LpSpace& y, const LpSpace& w, const CrossnormTag& tag,
                                   const Budget& budget = {});

/// Operator-space chain: injective <= induced [tag,tag] <= projective,
/// computed on B[X,V] (x) B[Y,W].
CheckRecord check_theorem_41(const OperatorTensor& l, const CrossnormTag& tag,
                             const Budget& budget = {});

/// Weighted chain: inf(inj/alpha) * ||L||_[inj,inj] <= ||L||_[alpha,alpha]
/// <= sup(proj/alpha) * ||L||_[proj,proj], ratio extrema combined
/// conservatively over the domain and codomain pairs.
CheckRecord check_corollary_44(const OperatorTensor& l, const CrossnormTag& tag,
                               const Budget& budget = {});

/// Four-term chain: injective <= [proj,inj] <= [tag,tag] <= projective.
CheckRecord check_remark_chain(const OperatorTensor& l, const CrossnormTag& tag,
                               const Budget& budget = {});

/// sup_{F != 0} ||F||_num / ||F||_den.  Exact closed form on l2 pairs for
/// tags among {injective, projective, entrywise-2} (the ratio depends only
/// on singular values); otherwise a certified lower bound by ascent with a
/// witness tensor attached.
NormEstimate equivalence_ratio(const CrossnormTag& numerator, const CrossnormTag& denominator,
                               const LpSpace& x, const LpSpace& y, const Budget& budget = {});

/// inf_{F != 0} ||F||_num / ||F||_den, as the reciprocal of the sup of the
/// swapped ratio.  A lower-bounded sup therefore yields an upper bound on
/// the inf.
NormEstimate equivalence_ratio_inf(const CrossnormTag& numerator, const CrossnormTag& denominator,
                                   const LpSpace& x, const LpSpace& y, const Budget& budget = {});

/// ||phi (x) eta||_{*[tag,tag]} <= ||phi|| ||eta|| on the operator duals.
CheckRecord check_prop_32_dual_bound(const Mat& phi, const Mat& eta, const LpSpace& x,
                                     const LpSpace& y, const LpSpace& v, const LpSpace& w,
                                     const CrossnormTag& tag, const Budget& budget = {});

/// Exploratory: does [inj,inj] <= [tag,tag] <= [proj,proj] hold?  Reported
/// but never treated as a failure; the ordering is not established theory.
CheckRecord check_question4(const OperatorTensor& l, const CrossnormTag& tag,
                            const Budget& budget = {});

/// Chain on a single tensor: inj <= alpha <= proj <= gamma * inj, where
/// gamma is the (precomputed) equivalence constant estimate for the pair.
CheckRecord check_gamma_chain(const Tensor& f, const CrossnormTag& tag,
                              const NormEstimate& gamma, const Budget& budget = {});

}  // namespace crossnorm
