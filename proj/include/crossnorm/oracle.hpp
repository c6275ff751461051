#pragma once

#include <cstdint>

#include "crossnorm/tensor.hpp"

namespace crossnorm {

/// Brute-force references used to validate the estimators.  Everything here
/// is implemented independently of the estimator code paths: the SVD oracle
/// is power iteration with deflation (the estimators use Jacobi), and the
/// searches share no optimizer code with crossnorms/operator_norms.
namespace oracle {

struct OracleResult {
  double value = 0.0;
  enum class Certainty { Exact, GridLower, SampledUpper } certainty = Certainty::Exact;
  long long effort = 0;  // grid points or samples actually evaluated
};

/// Largest singular value via power iteration on M^T M.
double svd_spectral(const Mat& m);

/// Sum of singular values via power iteration with Wielandt deflation.
double svd_nuclear(const Mat& m);

/// Lower bound on the injective norm from a dense deterministic sweep of the
/// dual sphere of the X factor (the Y side is resolved exactly through
/// sup_{||f||<=1} ||F^T f||_Y).  The sweep is a fixed prefix sequence, so the
/// value is nondecreasing in `resolution` by construction.
OracleResult grid_injective(const Tensor& f, int resolution);

/// Upper bound on the projective norm: minimum cost over `samples` random
/// exactly feasible decompositions.  Sample 0 is a complete-pivot rank
/// factorization (one term for a single tensor), sample 1 the plain row
/// decomposition, and the rest random invertible mixings of the row
/// decomposition.
OracleResult random_decomposition_search(const Tensor& f, long long samples,
                                         std::uint64_t seed = 0x0adecafULL);

/// The matrix of F |-> sum_j A_j F B_j^T against flattened bases.  This is
/// the only Kronecker materialization in the codebase; the flattening puts
/// the row (X- or V-) index fastest, i.e. position (k, l) maps to k + n*l.
Mat kron_matrix(const OperatorTensor& l);

/// Exact induced norm for l2 spaces with the entrywise-2 norm on both sides:
/// the spectral norm of the materialized map.
double kron_spectral(const OperatorTensor& l);

}  // namespace oracle
}  // namespace crossnorm
