#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "crossnorm/errors.hpp"

namespace crossnorm {

using Vec = std::vector<double>;

// Dense row-major matrix.  Everything here is desk scale (dims <= ~12), so
// there is no attempt at blocking or sparsity.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}
  Mat(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw InputError("ragged matrix initializer");
      for (double v : r) a_.push_back(v);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Vec row(int r) const {
    Vec v(cols_);
    for (int c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
  }
  Vec col(int c) const {
    Vec v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

inline bool same_shape(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

inline Vec matvec(const Mat& m, const Vec& v) {
  if (static_cast<int>(v.size()) != m.cols()) throw InputError("matvec: size mismatch");
  Vec out(m.rows(), 0.0);
  for (int r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (int c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

// m^T v without materializing the transpose.
inline Vec tmatvec(const Mat& m, const Vec& v) {
  if (static_cast<int>(v.size()) != m.rows()) throw InputError("tmatvec: size mismatch");
  Vec out(m.cols(), 0.0);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[c] += m(r, c) * v[r];
  return out;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw InputError("matmul: shape mismatch");
  Mat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline Mat transpose(const Mat& m) {
  Mat out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  return out;
}

inline Mat outer(const Vec& u, const Vec& v) {
  Mat out(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) out(r, c) = u[r] * v[c];
  return out;
}

inline Mat add(const Mat& a, const Mat& b) {
  if (!same_shape(a, b)) throw InputError("add: shape mismatch");
  Mat out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

inline Mat sub(const Mat& a, const Mat& b) {
  if (!same_shape(a, b)) throw InputError("sub: shape mismatch");
  Mat out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

inline Mat scale(const Mat& a, double c) {
  Mat out = a;
  for (double& x : out.data()) x *= c;
  return out;
}

inline double frobenius(const Mat& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

inline double max_abs(const Mat& m) {
  double s = 0.0;
  for (double x : m.data()) s = std::max(s, std::abs(x));
  return s;
}

// Trace pairing <a, b> = sum_ij a_ij b_ij.
inline double trace_pair(const Mat& a, const Mat& b) {
  if (!same_shape(a, b)) throw InputError("trace_pair: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Gauss-Jordan inverse with partial pivoting; returns false if singular to
// working precision.
inline bool invert(const Mat& m, Mat& out) {
  const int n = m.rows();
  if (n != m.cols()) throw InputError("invert: not square");
  Mat a = m;
  out = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-12) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(out(piv, c), out(col, c));
      }
    }
    const double inv_p = 1.0 / a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) *= inv_p;
      out(col, c) *= inv_p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        out(r, c) -= f * out(col, c);
      }
    }
  }
  return true;
}

}  // namespace crossnorm
