#pragma once

#include <utility>
#include <vector>

#include "crossnorm/matrix.hpp"
#include "crossnorm/space.hpp"

namespace crossnorm {

/// Element of X (x) Y stored as a dim(X) x dim(Y) matrix of coefficients
/// against the standard bases, tagged with its factor spaces.
struct Tensor {
  Mat entries;
  LpSpace x_space;
  LpSpace y_space;

  Tensor() = default;
  Tensor(Mat e, LpSpace xs, LpSpace ys) : entries(std::move(e)), x_space(xs), y_space(ys) {
    if (entries.rows() != x_space.dim || entries.cols() != y_space.dim)
      throw InputError("Tensor: entry shape does not match factor spaces");
  }

  static Tensor zero(LpSpace xs, LpSpace ys) { return Tensor(Mat(xs.dim, ys.dim), xs, ys); }

  bool is_zero(double tol = 0.0) const { return max_abs(entries) <= tol; }
};

/// One representation of a tensor as a finite sum of rank-one terms.
struct Decomposition {
  struct Term {
    Vec x;
    Vec y;
  };
  std::vector<Term> terms;

  /// Sum of ||x_i|| ||y_i|| under the given factor norms.
  double cost(const LpSpace& xs, const LpSpace& ys) const;
};

Tensor single_tensor(const Vec& x, const Vec& y, const LpSpace& x_space, const LpSpace& y_space);

Tensor assemble(const Decomposition& d, const LpSpace& x_space, const LpSpace& y_space);

/// Sum of operator pairs A_j (x) B_j mapping X (x) Y into V (x) W.
struct OperatorTensor {
  struct Term {
    Mat a;  // dim(V) x dim(X)
    Mat b;  // dim(W) x dim(Y)
  };
  std::vector<Term> terms;
  LpSpace x_space, y_space, v_space, w_space;

  OperatorTensor() = default;
  OperatorTensor(std::vector<Term> t, LpSpace xs, LpSpace ys, LpSpace vs, LpSpace ws);

  static OperatorTensor single(Mat a, Mat b, LpSpace xs, LpSpace ys, LpSpace vs, LpSpace ws) {
    std::vector<Term> t;
    t.push_back({std::move(a), std::move(b)});
    return OperatorTensor(std::move(t), xs, ys, vs, ws);
  }
};

/// Functional on operator tensors: a sum of pairs (phi_k, eta_k) acting by
/// trace pairing, sum_{k,j} <phi_k, A_j> <eta_k, B_j>.
struct OperatorFunctionalTensor {
  struct Term {
    Mat phi;  // shape of the A factors
    Mat eta;  // shape of the B factors
  };
  std::vector<Term> terms;
};

/// L applied to F: sum_j A_j F B_j^T, a tensor over (V, W).  The matrix form
/// is representation-free, so the result cannot depend on how L was written.
Tensor apply(const OperatorTensor& l, const Tensor& f);

/// k(L) = sum_{k,j} phi_k(A_j) eta_k(B_j); bilinear in both arguments.
double pair_value(const OperatorFunctionalTensor& k, const OperatorTensor& l);

/// Term-wise composition (A_j A'_i, B_j B'_i); represents L o M exactly.
OperatorTensor compose(const OperatorTensor& l, const OperatorTensor& m);

}  // namespace crossnorm
