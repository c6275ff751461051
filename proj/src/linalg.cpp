#include "crossnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace crossnorm {

namespace {

// One-sided Jacobi on a tall (rows >= cols) matrix: right-rotate column pairs
// until all columns are mutually orthogonal.  The rotations accumulate into v.
void jacobi_tall(Mat& a, Mat& v) {
  const int n = a.rows();
  const int m = a.cols();
  v = Mat::identity(m);
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < m - 1; ++i) {
      for (int j = i + 1; j < m; ++j) {
        double aii = 0.0, ajj = 0.0, aij = 0.0;
        for (int k = 0; k < n; ++k) {
          aii += a(k, i) * a(k, i);
          ajj += a(k, j) * a(k, j);
          aij += a(k, i) * a(k, j);
        }
        if (std::abs(aij) <= eps * std::sqrt(aii * ajj) || aij == 0.0) continue;
        rotated = true;
        const double zeta = (ajj - aii) / (2.0 * aij);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (int k = 0; k < n; ++k) {
          const double ai = a(k, i), aj = a(k, j);
          a(k, i) = cs * ai - sn * aj;
          a(k, j) = sn * ai + cs * aj;
        }
        for (int k = 0; k < m; ++k) {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = cs * vi - sn * vj;
          v(k, j) = sn * vi + cs * vj;
        }
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

Svd jacobi_svd(const Mat& m) {
  const bool flip = m.rows() < m.cols();
  Mat a = flip ? transpose(m) : m;
  Mat v;
  jacobi_tall(a, v);

  const int k = a.cols();
  Vec s(k, 0.0);
  Mat u(a.rows(), k);
  for (int j = 0; j < k; ++j) {
    double col = 0.0;
    for (int r = 0; r < a.rows(); ++r) col += a(r, j) * a(r, j);
    s[j] = std::sqrt(col);
    if (s[j] > 0.0) {
      for (int r = 0; r < a.rows(); ++r) u(r, j) = a(r, j) / s[j];
    } else {
      // Null column: any unit vector completes u; take a basis vector.
      u(std::min(j, a.rows() - 1), j) = 1.0;
    }
  }

  // Sort descending, permuting u and v columns alongside.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return s[x] > s[y]; });
  Svd out;
  out.s.resize(k);
  out.u = Mat(a.rows(), k);
  out.v = Mat(v.rows(), k);
  for (int j = 0; j < k; ++j) {
    out.s[j] = s[order[j]];
    for (int r = 0; r < a.rows(); ++r) out.u(r, j) = u(r, order[j]);
    for (int r = 0; r < v.rows(); ++r) out.v(r, j) = v(r, order[j]);
  }
  if (flip) std::swap(out.u, out.v);
  return out;
}

double spectral_norm(const Mat& m) {
  const Svd d = jacobi_svd(m);
  return d.s.empty() ? 0.0 : d.s.front();
}

double nuclear_norm(const Mat& m) {
  const Svd d = jacobi_svd(m);
  double s = 0.0;
  for (double x : d.s) s += x;
  return s;
}

}  // namespace crossnorm
