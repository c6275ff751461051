#include "crossnorm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "crossnorm/rng.hpp"

namespace crossnorm {
namespace oracle {

namespace {

// Rayleigh-quotient power iteration for the top eigenvalue of a symmetric
// positive semidefinite matrix.  Deterministic start from a fixed stream.
double top_eigenvalue(Mat s, std::uint64_t stream) {
  const int n = s.rows();
  Rng rng(derive_seed(0x5eedULL, stream));
  Vec v(n);
  for (double& x : v) x = rng.gaussian();
  double nv = std::sqrt(dot(v, v));
  if (nv == 0.0) {
    v[0] = 1.0;
    nv = 1.0;
  }
  for (double& x : v) x /= nv;

  double rho = 0.0;
  int stable = 0;
  for (int it = 0; it < 200000; ++it) {
    Vec w = matvec(s, v);
    const double r = dot(v, w);
    const double nw = std::sqrt(dot(w, w));
    if (nw <= 1e-300) return 0.0;  // v is (numerically) in the null space
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (std::abs(r - rho) <= 1e-16 * std::max(1.0, std::abs(r))) {
      if (++stable >= 4) {
        rho = r;
        break;
      }
    } else {
      stable = 0;
    }
    rho = r;
  }
  // One last Rayleigh evaluation against the converged vector.
  Vec w = matvec(s, v);
  return std::max(rho, dot(v, w));
}

// Top eigenpair for deflation; same iteration, returns the vector too.
std::pair<double, Vec> top_eigenpair(const Mat& s, std::uint64_t stream) {
  const int n = s.rows();
  Rng rng(derive_seed(0x5eedULL, stream));
  Vec v(n);
  for (double& x : v) x = rng.gaussian();
  double nv = std::sqrt(dot(v, v));
  if (nv == 0.0) {
    v[0] = 1.0;
    nv = 1.0;
  }
  for (double& x : v) x /= nv;
  double rho = 0.0;
  int stable = 0;
  for (int it = 0; it < 200000; ++it) {
    Vec w = matvec(s, v);
    const double r = dot(v, w);
    const double nw = std::sqrt(dot(w, w));
    if (nw <= 1e-300) break;
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (std::abs(r - rho) <= 1e-16 * std::max(1.0, std::abs(r))) {
      if (++stable >= 4) {
        rho = r;
        break;
      }
    } else {
      stable = 0;
    }
    rho = r;
  }
  Vec w = matvec(s, v);
  return {std::max(rho, dot(v, w)), v};
}

Mat gram_smaller_side(const Mat& m) {
  // Work with the smaller of M^T M and M M^T.
  if (m.cols() <= m.rows()) return matmul(transpose(m), m);
  return matmul(m, transpose(m));
}

// Directions from a fixed prefix sequence: signed basis vectors, then sign
// vectors, then Halton-driven heavy-tailed points.  Dense in direction space
// as the index grows.
Vec sweep_direction(int dim, long long index) {
  if (index < 2 * dim) {
    Vec v(dim, 0.0);
    v[index / 2] = (index % 2 == 0) ? 1.0 : -1.0;
    return v;
  }
  index -= 2 * dim;
  const long long signs = 1LL << dim;
  if (index < signs) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (index >> i) & 1 ? 1.0 : -1.0;
    return v;
  }
  index -= signs;
  static const int primes[6] = {2, 3, 5, 7, 11, 13};
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    // Halton radical inverse in base primes[i].
    double f = 1.0, r = 0.0;
    long long k = index + 1;
    while (k > 0) {
      f /= primes[i];
      r += f * (k % primes[i]);
      k /= primes[i];
    }
    v[i] = std::tan((r - 0.5) * 3.14159265358979323846);
    if (!std::isfinite(v[i])) v[i] = 0.0;
  }
  return v;
}

// Complete-pivot rank factorization by outer-product elimination.
std::vector<Decomposition::Term> rank_factorization(const Mat& f) {
  std::vector<Decomposition::Term> terms;
  Mat r = f;
  const double scale = max_abs(f);
  if (scale == 0.0) return terms;
  for (int step = 0; step < std::min(f.rows(), f.cols()); ++step) {
    int pi = 0, pj = 0;
    double best = 0.0;
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j)
        if (std::abs(r(i, j)) > best) {
          best = std::abs(r(i, j));
          pi = i;
          pj = j;
        }
    if (best <= 1e-14 * scale) break;
    Vec u = r.col(pj);
    Vec v = r.row(pi);
    const double piv = r(pi, pj);
    for (double& x : v) x /= piv;
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j) r(i, j) -= u[i] * v[j];
    terms.push_back({std::move(u), std::move(v)});
  }
  // Whatever survives elimination is appended row by row so the
  // factorization reproduces f exactly.
  for (int i = 0; i < r.rows(); ++i) {
    Vec row = r.row(i);
    bool nonzero = false;
    for (double x : row)
      if (x != 0.0) nonzero = true;
    if (!nonzero) continue;
    Vec e(r.rows(), 0.0);
    e[i] = 1.0;
    terms.push_back({std::move(e), std::move(row)});
  }
  return terms;
}

}  // namespace

double svd_spectral(const Mat& m) {
  if (max_abs(m) == 0.0) return 0.0;
  return std::sqrt(std::max(0.0, top_eigenvalue(gram_smaller_side(m), 1)));
}

double svd_nuclear(const Mat& m) {
  if (max_abs(m) == 0.0) return 0.0;
  Mat s = gram_smaller_side(m);
  const int k = s.rows();
  double total = 0.0;
  const double scale = top_eigenvalue(s, 1);
  for (int i = 0; i < k; ++i) {
    auto [lam, v] = top_eigenpair(s, static_cast<std::uint64_t>(i + 1));
    if (lam <= 1e-28 * std::max(scale, 1.0)) break;
    total += std::sqrt(std::max(0.0, lam));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) s(r, c) -= lam * v[r] * v[c];
  }
  return total;
}

OracleResult grid_injective(const Tensor& f, int resolution) {
  if (f.x_space.dim > 3 || f.y_space.dim > 3)
    throw BudgetError("grid_injective: factor dims must be <= 3");
  if (resolution < 1) throw InputError("grid_injective: resolution must be >= 1");
  const LpSpace dual_x = f.x_space.dual();
  const int dim = dual_x.dim;
  const long long anchors = 2LL * dim + (1LL << dim);
  const long long count = anchors + static_cast<long long>(resolution) * resolution;
  double best = 0.0;
  for (long long i = 0; i < count; ++i) {
    Vec dir = sweep_direction(dim, i);
    const double n = lp_norm(dir, dual_x.p);
    if (n <= 1e-30) continue;
    for (double& x : dir) x /= n;
    const double val = lp_norm(tmatvec(f.entries, dir), f.y_space.p);
    best = std::max(best, val);
  }
  OracleResult res;
  res.value = best;
  res.certainty = OracleResult::Certainty::GridLower;
  res.effort = count;
  return res;
}

OracleResult random_decomposition_search(const Tensor& f, long long samples, std::uint64_t seed) {
  if (f.x_space.dim > 3 || f.y_space.dim > 3)
    throw BudgetError("random_decomposition_search: factor dims must be <= 3");
  if (samples < 1) throw InputError("random_decomposition_search: samples must be >= 1");
  const LpSpace xs = f.x_space;
  const LpSpace ys = f.y_space;
  OracleResult res;
  res.certainty = OracleResult::Certainty::SampledUpper;
  res.effort = samples;

  if (f.is_zero()) {
    res.value = 0.0;
    return res;
  }

  double best = 0.0;
  // Sample 0: rank factorization (one term when f is a single tensor).
  {
    Decomposition d;
    d.terms = rank_factorization(f.entries);
    best = d.cost(xs, ys);
  }

  const int n = xs.dim;
  // Row decomposition e_i (x) row_i as the mixing base.
  std::vector<Vec> base_y(n);
  for (int i = 0; i < n; ++i) base_y[i] = f.entries.row(i);

  if (samples > 1) {
    // Sample 1: the plain row decomposition (identity mixing).
    double row_cost = 0.0;
    for (int i = 0; i < n; ++i) {
      Vec e(n, 0.0);
      e[i] = 1.0;
      row_cost += vector_norm(e, xs) * vector_norm(base_y[i], ys);
    }
    best = std::min(best, row_cost);
  }

  Rng rng(derive_seed(seed, 0xdec0ULL));
  for (long long s = 2; s < samples; ++s) {
    // Random invertible mixing G: x parts are the rows of G, y parts the
    // rows of G^{-T} applied to the base.
    Mat g(n, n);
    Mat ginv;
    for (int attempt = 0; attempt < 16; ++attempt) {
      for (double& x : g.data()) x = rng.gaussian();
      if (invert(g, ginv)) break;
    }
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      Vec x = g.row(i);
      Vec y(f.y_space.dim, 0.0);
      for (int j = 0; j < n; ++j) {
        const double w = ginv(j, i);  // (G^{-T})_{ij}
        for (int c = 0; c < f.y_space.dim; ++c) y[c] += w * base_y[j][c];
      }
      cost += vector_norm(x, xs) * vector_norm(y, ys);
    }
    best = std::min(best, cost);
  }
  res.value = best;
  return res;
}

Mat kron_matrix(const OperatorTensor& l) {
  const int nx = l.x_space.dim, ny = l.y_space.dim;
  const int nv = l.v_space.dim, nw = l.w_space.dim;
  Mat k(nv * nw, nx * ny);
  for (const auto& t : l.terms)
    for (int kp = 0; kp < nv; ++kp)
      for (int lp = 0; lp < nw; ++lp)
        for (int kk = 0; kk < nx; ++kk)
          for (int ll = 0; ll < ny; ++ll)
            k(kp + nv * lp, kk + nx * ll) += t.a(kp, kk) * t.b(lp, ll);
  return k;
}

double kron_spectral(const OperatorTensor& l) {
  const Exponent two(2.0);
  if (l.x_space.p != two || l.y_space.p != two || l.v_space.p != two || l.w_space.p != two)
    throw CapabilityError("kron_spectral: all four spaces must be l2");
  return svd_spectral(kron_matrix(l));
}

}  // namespace oracle
}  // namespace crossnorm
