#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossnorm/matrix.hpp"

namespace crossnorm {

/// Extended exponent p in [1, inf].  Infinity is a distinct tag, never a
/// floating-point sentinel, so dual_exponent round-trips exactly.
class Exponent {
 public:
  Exponent() : value_(2.0), inf_(false) {}
  explicit Exponent(double p) : value_(p), inf_(false) {
    if (!(p >= 1.0) || std::isinf(p)) throw InputError("exponent must be a finite real >= 1 (use Exponent::infinity())");
  }
  static Exponent infinity() {
    Exponent e;
    e.inf_ = true;
    e.value_ = 0.0;
    return e;
  }

  bool is_inf() const { return inf_; }
  /// Finite value; only meaningful when !is_inf().
  double value() const { return value_; }

  Exponent dual() const {
    if (inf_) return Exponent(1.0);
    if (value_ == 1.0) return infinity();
    return Exponent(value_ / (value_ - 1.0));
  }

  bool operator==(const Exponent& o) const {
    return inf_ == o.inf_ && (inf_ || value_ == o.value_);
  }
  bool operator!=(const Exponent& o) const { return !(*this == o); }

  std::string str() const;

 private:
  double value_;
  bool inf_;
};

/// Finite-dimensional real space with an lp norm.
struct LpSpace {
  int dim = 0;
  Exponent p;

  LpSpace() = default;
  LpSpace(int d, Exponent e) : dim(d), p(e) {
    if (d < 1) throw InputError("LpSpace: dim must be >= 1");
  }
  LpSpace(int d, double e) : LpSpace(d, Exponent(e)) {}

  /// Space hosting the dual norm: same dimension, dual exponent.
  LpSpace dual() const { return LpSpace(dim, p.dual()); }

  bool operator==(const LpSpace& o) const { return dim == o.dim && p == o.p; }
  bool operator!=(const LpSpace& o) const { return !(*this == o); }

  std::string str() const;
};

/// Element of the dual of `space`, stored by its coefficient vector.
struct Functional {
  Vec coefficients;
  LpSpace space;

  Functional() = default;
  Functional(Vec c, LpSpace s) : coefficients(std::move(c)), space(s) {
    if (static_cast<int>(coefficients.size()) != space.dim)
      throw InputError("Functional: coefficient length does not match space dim");
  }

  double operator()(const Vec& x) const {
    if (x.size() != coefficients.size()) throw InputError("Functional: argument dim mismatch");
    return dot(coefficients, x);
  }
};

double lp_norm(const Vec& v, const Exponent& p);

/// ||v|| in s; throws InputError on a dimension mismatch.
double vector_norm(const Vec& v, const LpSpace& s);

Exponent dual_exponent(const Exponent& p);

/// Norm of f in the dual space, i.e. the lp' norm of its coefficients.
double dual_norm(const Functional& f);

/// g with ||g||_{p'} <= 1 and <g, v> = ||v||_p (the norming functional of v).
/// Also the subgradient of ||.||_p at v under the sign(0) = 0 convention.
/// Returns the zero vector when v = 0.
Vec norming_functional(const Vec& v, const Exponent& p);

/// Extreme points of the closed unit ball of s.  Only the polytope balls are
/// supported: p = 1 gives the 2*dim signed basis vectors, p = inf gives all
/// 2^dim sign vectors (dim capped by enum_cap_dim).
std::vector<Vec> unit_ball_extreme_points(const LpSpace& s, int enum_cap_dim = 12);

/// Deterministic point on the unit sphere of s: a seeded gaussian draw
/// normalized in the target norm.
Vec sample_unit_sphere(const LpSpace& s, std::uint64_t seed);

}  // namespace crossnorm
