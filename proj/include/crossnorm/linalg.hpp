#pragma once

#include "crossnorm/matrix.hpp"

namespace crossnorm {

/// Full SVD m = u * diag(s) * v^T with singular values sorted descending.
/// u is rows x k and v is cols x k, k = min(rows, cols).
struct Svd {
  Mat u;
  Vec s;
  Mat v;
};

/// One-sided Jacobi SVD.  Accurate to machine precision at desk scale and
/// robust to repeated singular values.
Svd jacobi_svd(const Mat& m);

double spectral_norm(const Mat& m);
double nuclear_norm(const Mat& m);

}  // namespace crossnorm
