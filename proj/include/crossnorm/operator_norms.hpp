#pragma once

#include "crossnorm/crossnorms.hpp"
#include "crossnorm/estimate.hpp"
#include "crossnorm/tensor.hpp"

namespace crossnorm {

/// Pair of crossnorm tags: `domain` equips X (x) Y, `codomain` equips
/// V (x) W; the induced norm is sup ||L(F)||_codomain / ||F||_domain.
struct InducedNormSpec {
  CrossnormTag domain;
  CrossnormTag codomain;

  static InducedNormSpec same(const CrossnormTag& t) { return {t, t}; }
  std::string str() const { return "[" + domain.str() + "," + codomain.str() + "]"; }
};

/// Induced norm of a single linear map, sup_{||x||_X <= 1} ||Ax||_V.
/// Exact for l2 -> l2 (spectral) and whenever a factor admits extreme-point
/// enumeration; otherwise a certified lower bound by ascent.
NormEstimate operator_norm(const Mat& a, const LpSpace& x, const LpSpace& v,
                           const Budget& budget = {});

/// Closed-form upper bound on the induced norm (exact value when a closed
/// form exists, otherwise the better of the Holder row/column bounds).
double operator_norm_upper(const Mat& a, const LpSpace& x, const LpSpace& v);

/// Induced norm of an operator tensor under the given tag pair.  Exact for
/// the all-l2 entrywise-2 case (spectral norm of the materialized map);
/// otherwise a lower bound from ascent over domain tensors, conservative in
/// both inner norms.  The estimate is certified only when the numerator norm
/// could be evaluated as {Exact, LowerBound} and the denominator as
/// {Exact, UpperBound}.
NormEstimate induced_crossnorm(const OperatorTensor& l, const InducedNormSpec& spec,
                               const Budget& budget = {});

/// Norm of the trace-pairing functional A |-> <phi, A> on B[X, V].
/// Exact for l2 -> l2 (nuclear norm of phi); otherwise a certified lower
/// bound from ascent with a closed-form upper bound in the denominator.
NormEstimate functional_operator_dual_norm(const Mat& phi, const LpSpace& x, const LpSpace& v,
                                           const Budget& budget = {});

/// Norm of a functional tensor k = sum phi_k (x) eta_k against the induced
/// norm: sup |k(L)| / ||L||_[spec] over operator tensors with at most
/// budget.max_terms terms, the denominator replaced by a certified upper
/// bound (representation cost; exact Kronecker spectral norm when
/// available).
NormEstimate functional_tensor_norm(const OperatorFunctionalTensor& k, const LpSpace& x,
                                    const LpSpace& y, const LpSpace& v, const LpSpace& w,
                                    const InducedNormSpec& spec, const Budget& budget = {});

/// Injective norm of L inside B[X,V] (x) B[Y,W]: sup over unit-dual-norm
/// functional pairs, searched over rank-one trace pairings (which have
/// closed-form dual norms in every lp regime and exhaust the extreme points
/// in the l2 regime).  Always a certified lower bound.
NormEstimate operator_tensor_injective_norm(const OperatorTensor& l, const Budget& budget = {});

/// Projective norm of L inside B[X,V] (x) B[Y,W]: inf over representations
/// of sum ||A_j|| ||B_j||, searched by random invertible mixings of the
/// given terms.  Factor norms use exact values where available and
/// closed-form upper bounds elsewhere, so the result is always a certified
/// upper bound.
NormEstimate operator_tensor_projective_norm(const OperatorTensor& l, const Budget& budget = {});

/// Certified upper bound on ||L||_[spec] by representation cost (valid when
/// the spec's tags make single-term maps submultiplicative, i.e. same-tag
/// specs and the (projective, injective) mixed spec); exact Kronecker route
/// when available.
double induced_norm_upper(const OperatorTensor& l, const InducedNormSpec& spec,
                          const Budget& budget = {});

}  // namespace crossnorm
