#include "crossnorm/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossnorm/rng.hpp"

namespace crossnorm {

std::string Exponent::str() const {
  if (inf_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

std::string LpSpace::str() const {
  std::ostringstream os;
  os << "l" << p.str() << "^" << dim;
  return os.str();
}

double lp_norm(const Vec& v, const Exponent& p) {
  if (p.is_inf()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (pv == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  // Scale out the max to keep pow well conditioned.
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / m, pv);
  return m * std::pow(s, 1.0 / pv);
}

double vector_norm(const Vec& v, const LpSpace& s) {
  if (static_cast<int>(v.size()) != s.dim) throw InputError("vector_norm: dim mismatch");
  return lp_norm(v, s.p);
}

Exponent dual_exponent(const Exponent& p) { return p.dual(); }

double dual_norm(const Functional& f) {
  return lp_norm(f.coefficients, f.space.p.dual());
}

Vec norming_functional(const Vec& v, const Exponent& p) {
  const int n = static_cast<int>(v.size());
  Vec g(n, 0.0);
  const double nv = lp_norm(v, p);
  if (nv == 0.0) return g;
  if (p.is_inf()) {
    int k = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[k])) k = i;
    g[k] = v[k] > 0.0 ? 1.0 : -1.0;
    return g;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    for (int i = 0; i < n; ++i) g[i] = v[i] > 0.0 ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
    return g;
  }
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(v[i]) / nv;
    const double w = std::pow(a, pv - 1.0);
    g[i] = v[i] >= 0.0 ? w : -w;
  }
  return g;
}

std::vector<Vec> unit_ball_extreme_points(const LpSpace& s, int enum_cap_dim) {
  std::vector<Vec> pts;
  if (!s.p.is_inf() && s.p.value() == 1.0) {
    pts.reserve(2 * s.dim);
    for (int i = 0; i < s.dim; ++i) {
      Vec e(s.dim, 0.0);
      e[i] = 1.0;
      pts.push_back(e);
      e[i] = -1.0;
      pts.push_back(e);
    }
    return pts;
  }
  if (s.p.is_inf()) {
    if (s.dim > enum_cap_dim)
      throw BudgetError("unit_ball_extreme_points: 2^dim exceeds enumeration cap");
    const std::uint64_t count = 1ULL << s.dim;
    pts.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Vec v(s.dim);
      for (int i = 0; i < s.dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
      pts.push_back(std::move(v));
    }
    return pts;
  }
  throw CapabilityError("unit_ball_extreme_points: the l" + s.p.str() +
                        " ball has no finite extreme point set");
}

Vec sample_unit_sphere(const LpSpace& s, std::uint64_t seed) {
  Rng rng(seed);
  Vec v(s.dim);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (double& x : v) x = rng.gaussian();
    const double n = lp_norm(v, s.p);
    if (n > 1e-12) {
      for (double& x : v) x /= n;
      return v;
    }
  }
  // Essentially unreachable; fall back to a basis vector.
  std::fill(v.begin(), v.end(), 0.0);
  v[0] = 1.0;
  return v;
}

}  // namespace crossnorm
