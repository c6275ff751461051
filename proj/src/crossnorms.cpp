#include "crossnorm/crossnorms.hpp"

#include <algorithm>
#include <cmath>

#include "crossnorm/linalg.hpp"
#include "crossnorm/rng.hpp"
#include "crossnorm/search.hpp"

namespace crossnorm {

bool CrossnormTag::attachable(const LpSpace& x, const LpSpace& y) const {
  switch (kind) {
    case Kind::Injective:
    case Kind::Projective:
      return true;
    case Kind::EntrywiseP:
      return x.p == p && y.p == p;
    case Kind::Hilbertian: {
      const Exponent two(2.0);
      return x.p == two && y.p == two;
    }
  }
  return false;
}

bool CrossnormTag::operator==(const CrossnormTag& o) const {
  if (is_entrywise_two() && o.is_entrywise_two()) return true;
  if (kind != o.kind) return false;
  if (kind == Kind::EntrywiseP) return p == o.p;
  return true;
}

std::string CrossnormTag::str() const {
  switch (kind) {
    case Kind::Injective:
      return "injective";
    case Kind::Projective:
      return "projective";
    case Kind::Hilbertian:
      return "hilbertian";
    case Kind::EntrywiseP:
      return "entrywise(" + p.str() + ")";
  }
  return "?";
}

std::optional<CrossnormTag> CrossnormTag::parse(const std::string& name) {
  if (name == "injective") return injective();
  if (name == "projective") return projective();
  if (name == "hilbertian") return hilbertian();
  if (name == "entrywise") return entrywise(Exponent(2.0));  // resolved against spaces later
  return std::nullopt;
}

CrossnormTag resolve_tag(const CrossnormTag& tag, const LpSpace& x, const LpSpace& y) {
  if (tag.kind != CrossnormTag::Kind::EntrywiseP) return tag;
  if (x.p != y.p)
    throw CapabilityError("entrywise tag needs matching factor exponents, got " + x.str() +
                          " vs " + y.str());
  return CrossnormTag::entrywise(x.p);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_two(const Exponent& p) { return !p.is_inf() && p.value() == 2.0; }
bool is_one(const Exponent& p) { return !p.is_inf() && p.value() == 1.0; }

// Deterministic coarse scan directions, distinct from the oracle's sweep
// (Weyl rotation instead of Halton).
Vec weyl_direction(int dim, long long index) {
  static const double irr[6] = {1.4142135623730951, 1.7320508075688772, 2.23606797749979,
                                2.6457513110645907, 3.3166247903554, 3.605551275463989};
  Vec v(dim);
  for (int i = 0; i < dim; ++i) {
    double t = std::fmod(static_cast<double>(index + 1) * irr[i], 1.0);
    v[i] = std::tan((t - 0.5) * kPi);
    if (!std::isfinite(v[i])) v[i] = 0.0;
  }
  return v;
}

struct SphereSup {
  double value = 0.0;
  Vec point;
};

// Multi-start ascent of eval over the unit sphere of `sphere`.  eval must be
// scale-invariant up to the normalization performed here (points are always
// normalized before evaluation).  grad(point) returns an ascent direction.
template <typename Eval, typename Grad>
SphereSup sphere_ascent(const LpSpace& sphere, const std::vector<Vec>& anchors, Eval&& eval,
                        Grad&& grad, const Budget& b) {
  SphereSup best;
  best.point = Vec(sphere.dim, 0.0);
  best.point[0] = 1.0;

  auto normalize = [&](Vec v) -> std::optional<Vec> {
    const double n = lp_norm(v, sphere.p);
    if (n <= 1e-300) return std::nullopt;
    for (double& x : v) x /= n;
    return v;
  };
  auto consider = [&](const Vec& v) {
    const double val = eval(v);
    if (val > best.value) {
      best.value = val;
      best.point = v;
    }
  };

  std::vector<Vec> starts;
  for (const Vec& a : anchors)
    if (auto v = normalize(a)) starts.push_back(*v);

  const int pre = b.pre_scan > 0 ? b.pre_scan : 512;
  SphereSup scan_best;
  for (long long i = 0; i < pre; ++i) {
    auto v = normalize(weyl_direction(sphere.dim, i));
    if (!v) continue;
    const double val = eval(*v);
    if (val > scan_best.value) {
      scan_best.value = val;
      scan_best.point = *v;
    }
  }
  if (!scan_best.point.empty()) starts.insert(starts.begin(), scan_best.point);

  for (const Vec& s : starts) consider(s);

  for (int r = 0; r < b.restarts; ++r) {
    Vec f;
    if (r < static_cast<int>(starts.size())) {
      f = starts[r];
    } else {
      Rng rng(derive_seed(b.seed, 0xa5ce, static_cast<std::uint64_t>(r)));
      Vec g(sphere.dim);
      for (double& x : g) x = rng.gaussian();
      auto v = normalize(g);
      if (!v) continue;
      f = *v;
    }
    consider(f);
    double step = 0.5;
    for (int it = 0; it < b.max_iters; ++it) {
      Vec d = grad(f);
      const double dn = lp_norm(d, sphere.p);
      if (dn <= 1e-300) break;
      Vec next = f;
      for (int i = 0; i < sphere.dim; ++i) next[i] += step * d[i] / dn;
      auto nf = normalize(next);
      if (!nf) break;
      f = *nf;
      consider(f);
      step *= 0.9;
      if (step < 1e-12) break;
    }
  }
  return best;
}

NormEstimate make_zero_estimate(std::string method) {
  NormEstimate e = NormEstimate::exact(0.0, std::move(method));
  DecompositionWitness w;
  e.witness = w;
  return e;
}

// Strip terms whose cost contribution is negligible against the total.
void prune_terms(Decomposition& d, const LpSpace& xs, const LpSpace& ys) {
  const double total = d.cost(xs, ys);
  std::vector<Decomposition::Term> kept;
  for (auto& t : d.terms) {
    const double c = vector_norm(t.x, xs) * vector_norm(t.y, ys);
    if (c > 1e-15 * std::max(total, 1e-300)) kept.push_back(std::move(t));
  }
  d.terms = std::move(kept);
}

// Append the residual F - assemble(d) row by row so d reassembles exactly.
void repair_decomposition(Decomposition& d, const Tensor& f) {
  const Mat assembled = assemble(d, f.x_space, f.y_space).entries;
  const Mat r = sub(f.entries, assembled);
  for (int i = 0; i < r.rows(); ++i) {
    Vec row = r.row(i);
    bool nonzero = false;
    for (double x : row)
      if (x != 0.0) nonzero = true;
    if (!nonzero) continue;
    Vec e(r.rows(), 0.0);
    e[i] = 1.0;
    d.terms.push_back({std::move(e), std::move(row)});
  }
}

std::vector<Decomposition::Term> row_terms(const Mat& m) {
  std::vector<Decomposition::Term> terms;
  for (int i = 0; i < m.rows(); ++i) {
    Vec e(m.rows(), 0.0);
    e[i] = 1.0;
    terms.push_back({std::move(e), m.row(i)});
  }
  return terms;
}

std::vector<Decomposition::Term> col_terms(const Mat& m) {
  std::vector<Decomposition::Term> terms;
  for (int j = 0; j < m.cols(); ++j) {
    Vec e(m.cols(), 0.0);
    e[j] = 1.0;
    terms.push_back({m.col(j), std::move(e)});
  }
  return terms;
}

std::vector<Decomposition::Term> svd_terms(const Svd& d, double cut) {
  std::vector<Decomposition::Term> terms;
  for (std::size_t i = 0; i < d.s.size(); ++i) {
    if (d.s[i] <= cut) break;
    Vec x = d.u.col(static_cast<int>(i));
    for (double& v : x) v *= d.s[i];
    terms.push_back({std::move(x), d.v.col(static_cast<int>(i))});
  }
  return terms;
}

// Apply an invertible mixing G to a term list: x parts combine by the rows
// of G, y parts by the rows of G^{-T}; the assembled tensor is unchanged.
std::vector<Decomposition::Term> mix_terms(const std::vector<Decomposition::Term>& base,
                                           const Mat& g, const Mat& ginv) {
  const int r = static_cast<int>(base.size());
  const int nx = static_cast<int>(base[0].x.size());
  const int ny = static_cast<int>(base[0].y.size());
  std::vector<Decomposition::Term> out(r);
  for (int i = 0; i < r; ++i) {
    Vec x(nx, 0.0), y(ny, 0.0);
    for (int j = 0; j < r; ++j) {
      const double gij = g(i, j);
      const double hij = ginv(j, i);  // (G^{-T})_{ij}
      for (int c = 0; c < nx; ++c) x[c] += gij * base[j].x[c];
      for (int c = 0; c < ny; ++c) y[c] += hij * base[j].y[c];
    }
    out[i] = {std::move(x), std::move(y)};
  }
  return out;
}

double terms_cost(const std::vector<Decomposition::Term>& terms, const LpSpace& xs,
                  const LpSpace& ys) {
  double s = 0.0;
  for (const auto& t : terms) s += vector_norm(t.x, xs) * vector_norm(t.y, ys);
  return s;
}

}  // namespace

std::optional<NormEstimate> injective_norm_exact(const Tensor& t, int enum_cap_dim) {
  const LpSpace& xs = t.x_space;
  const LpSpace& ys = t.y_space;

  if (t.is_zero()) return make_zero_estimate("zero");

  if (is_two(xs.p) && is_two(ys.p)) {
    const Svd d = jacobi_svd(t.entries);
    NormEstimate e = NormEstimate::exact(d.s[0], "svd_spectral");
    e.witness = FunctionalPairWitness{d.u.col(0), d.v.col(0)};
    return e;
  }

  // A factor with exponent 1 or inf has a polytope dual ball, and
  // f |-> ||F^T f|| is convex, so the sup is attained at an extreme point.
  struct Side {
    bool on_x;
    long long points;
  };
  std::vector<Side> sides;
  auto polytope_points = [&](const LpSpace& s) -> long long {
    if (is_one(s.p)) return s.dim <= enum_cap_dim ? (1LL << s.dim) : -1;  // dual ball is l_inf
    if (s.p.is_inf()) return 2LL * s.dim;                                 // dual ball is l_1
    return -1;
  };
  if (long long n = polytope_points(xs); n > 0) sides.push_back({true, n});
  if (long long n = polytope_points(ys); n > 0) sides.push_back({false, n});
  if (sides.empty()) return std::nullopt;
  std::stable_sort(sides.begin(), sides.end(),
                   [](const Side& a, const Side& b) { return a.points < b.points; });

  const bool on_x = sides.front().on_x;
  const LpSpace dual = on_x ? xs.dual() : ys.dual();
  const std::vector<Vec> pts = unit_ball_extreme_points(dual, enum_cap_dim);
  double best = -1.0;
  Vec best_pt;
  Vec best_img;
  for (const Vec& p : pts) {
    const Vec img = on_x ? tmatvec(t.entries, p) : matvec(t.entries, p);
    const double val = lp_norm(img, on_x ? ys.p : xs.p);
    if (val > best) {
      best = val;
      best_pt = p;
      best_img = img;
    }
  }
  NormEstimate e = NormEstimate::exact(best, "dual_extreme_enumeration");
  const Vec partner = norming_functional(best_img, on_x ? ys.p : xs.p);
  if (on_x)
    e.witness = FunctionalPairWitness{best_pt, partner};
  else
    e.witness = FunctionalPairWitness{partner, best_pt};
  return e;
}

NormEstimate injective_norm(const Tensor& t, const Budget& budget) {
  if (t.is_zero()) return make_zero_estimate("zero");
  if (!budget.force_iterative) {
    if (auto e = injective_norm_exact(t, budget.enum_cap_dim)) return *e;
  }

  const LpSpace& xs = t.x_space;
  const LpSpace& ys = t.y_space;
  const LpSpace f_sphere = xs.dual();

  auto eval = [&](const Vec& f) { return lp_norm(tmatvec(t.entries, f), ys.p); };
  auto grad = [&](const Vec& f) {
    const Vec g = norming_functional(tmatvec(t.entries, f), ys.p);
    return matvec(t.entries, g);
  };

  std::vector<Vec> anchors;
  for (int i = 0; i < xs.dim; ++i) {
    Vec e(xs.dim, 0.0);
    e[i] = 1.0;
    anchors.push_back(e);
  }
  anchors.push_back(Vec(xs.dim, 1.0));
  const Svd d = jacobi_svd(t.entries);
  anchors.push_back(d.u.col(0));

  const SphereSup sup = sphere_ascent(f_sphere, anchors, eval, grad, budget);

  NormEstimate e;
  e.direction = BoundDirection::LowerBound;
  e.method = "projected_subgradient_ascent";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  const Vec g = norming_functional(tmatvec(t.entries, sup.point), ys.p);
  e.witness = FunctionalPairWitness{sup.point, g};
  // Value recomputed from the witness pair so the certificate is airtight.
  double v = 0.0;
  for (int r = 0; r < t.entries.rows(); ++r)
    for (int c = 0; c < t.entries.cols(); ++c) v += sup.point[r] * t.entries(r, c) * g[c];
  e.value = std::abs(v);
  return e;
}

NormEstimate projective_norm(const Tensor& t, const Budget& budget) {
  const LpSpace& xs = t.x_space;
  const LpSpace& ys = t.y_space;

  if (t.is_zero()) return make_zero_estimate("zero");

  if (!budget.force_iterative) {
    if (is_two(xs.p) && is_two(ys.p)) {
      const Svd d = jacobi_svd(t.entries);
      double nuc = 0.0;
      for (double s : d.s) nuc += s;
      NormEstimate e = NormEstimate::exact(nuc, "svd_nuclear");
      Decomposition w;
      w.terms = svd_terms(d, 0.0);
      repair_decomposition(w, t);
      e.witness = DecompositionWitness{std::move(w)};
      return e;
    }
    // l1 on a factor: the projective norm splits along that factor's basis.
    if (is_one(xs.p)) {
      double total = 0.0;
      for (int i = 0; i < t.entries.rows(); ++i)
        total += lp_norm(t.entries.row(i), ys.p);
      NormEstimate e = NormEstimate::exact(total, "l1_row_formula");
      Decomposition w;
      w.terms = row_terms(t.entries);
      e.witness = DecompositionWitness{std::move(w)};
      return e;
    }
    if (is_one(ys.p)) {
      double total = 0.0;
      for (int j = 0; j < t.entries.cols(); ++j)
        total += lp_norm(t.entries.col(j), xs.p);
      NormEstimate e = NormEstimate::exact(total, "l1_column_formula");
      Decomposition w;
      w.terms = col_terms(t.entries);
      e.witness = DecompositionWitness{std::move(w)};
      return e;
    }
  }

  // Search over exactly feasible decompositions: deterministic bases, random
  // invertible mixings of each base, then a local refinement of the best.
  const Svd svd = jacobi_svd(t.entries);
  const double sigma1 = svd.s.empty() ? 0.0 : svd.s[0];

  std::vector<std::vector<Decomposition::Term>> bases;
  bases.push_back(svd_terms(svd, 1e-14 * sigma1));
  bases.push_back(row_terms(t.entries));
  bases.push_back(col_terms(t.entries));

  double best_cost = -1.0;
  std::vector<Decomposition::Term> best_terms;
  auto consider = [&](const std::vector<Decomposition::Term>& terms) {
    const double c = terms_cost(terms, xs, ys);
    if (best_cost < 0.0 || c < best_cost) {
      best_cost = c;
      best_terms = terms;
    }
  };
  for (const auto& b : bases)
    if (!b.empty()) consider(b);

  const bool rank_one = svd.s.size() < 2 || svd.s[1] <= 1e-12 * sigma1;
  if (!rank_one) {
    const long long samples = budget.samples > 0 ? budget.samples : 4000;
    Rng rng(derive_seed(budget.seed, 0xdecafULL));
    for (long long s = 0; s < samples; ++s) {
      const auto& base = bases[static_cast<std::size_t>(s % bases.size())];
      if (base.empty()) continue;
      const int r = static_cast<int>(base.size());
      Mat g(r, r), ginv;
      bool ok = false;
      for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
        for (double& x : g.data()) x = rng.gaussian();
        ok = invert(g, ginv);
      }
      if (!ok) continue;
      consider(mix_terms(base, g, ginv));
    }

    // Local refinement: perturb a mixing of the best terms.
    const int r = static_cast<int>(best_terms.size());
    if (r > 0) {
      Mat g = Mat::identity(r), ginv = Mat::identity(r);
      auto base = best_terms;
      double step = 0.3;
      Rng rng2(derive_seed(budget.seed, 0x7ef1eULL));
      const int iters = std::max(200, budget.max_iters * 5);
      for (int it = 0; it < iters; ++it) {
        Mat gp = g;
        for (double& x : gp.data()) x += step * rng2.gaussian();
        Mat gpinv;
        if (!invert(gp, gpinv)) continue;
        const auto cand = mix_terms(base, gp, gpinv);
        const double c = terms_cost(cand, xs, ys);
        if (c < best_cost) {
          best_cost = c;
          best_terms = cand;
          g = gp;
          step = std::min(step * 1.1, 0.5);
        } else {
          step *= 0.97;
          if (step < 1e-10) break;
        }
      }
    }
  }

  Decomposition d;
  d.terms = std::move(best_terms);
  prune_terms(d, xs, ys);

  // Candidates come from exactly feasible families; anything beyond roundoff
  // here means a broken mixing.
  const double feas = max_abs(sub(assemble(d, xs, ys).entries, t.entries));
  if (feas > 1e-8 * std::max(1.0, max_abs(t.entries))) {
    d.terms = row_terms(t.entries);  // always feasible fallback
  }
  repair_decomposition(d, t);

  NormEstimate e;
  e.value = d.cost(xs, ys);
  e.direction = BoundDirection::UpperBound;
  e.method = rank_one ? "rank_one_decomposition" : "feasible_mixing_search";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  e.witness = DecompositionWitness{std::move(d)};
  return e;
}

NormEstimate alpha_norm(const Tensor& t, const CrossnormTag& tag_in, const Budget& budget) {
  const CrossnormTag tag = resolve_tag(tag_in, t.x_space, t.y_space);
  if (!tag.attachable(t.x_space, t.y_space))
    throw CapabilityError("tag " + tag.str() + " does not attach to " + t.x_space.str() +
                          " (x) " + t.y_space.str());
  switch (tag.kind) {
    case CrossnormTag::Kind::Injective:
      return injective_norm(t, budget);
    case CrossnormTag::Kind::Projective:
      return projective_norm(t, budget);
    case CrossnormTag::Kind::Hilbertian:
    case CrossnormTag::Kind::EntrywiseP: {
      const Exponent p = tag.kind == CrossnormTag::Kind::Hilbertian ? Exponent(2.0) : tag.p;
      return NormEstimate::exact(lp_norm(t.entries.data(), p), "entrywise_lp");
    }
  }
  throw CapabilityError("unknown tag");
}

double dual_injective_pair_value(const Functional& f, const Functional& g, const Tensor& t) {
  if (f.space != t.x_space || g.space != t.y_space)
    throw InputError("dual_injective_pair_value: functional spaces do not match tensor");
  double v = 0.0;
  for (int r = 0; r < t.entries.rows(); ++r)
    for (int c = 0; c < t.entries.cols(); ++c)
      v += f.coefficients[r] * t.entries(r, c) * g.coefficients[c];
  return v;
}

ConservativeValue tensor_norm_lower(const Tensor& t, const CrossnormTag& tag, const Budget& b) {
  switch (tag.kind) {
    case CrossnormTag::Kind::Hilbertian:
    case CrossnormTag::Kind::EntrywiseP:
      return {alpha_norm(t, tag, b).value, true};
    case CrossnormTag::Kind::Injective:
      return {injective_norm(t, b).value, true};
    case CrossnormTag::Kind::Projective: {
      const NormEstimate e = projective_norm(t, b);
      if (e.direction == BoundDirection::Exact) return {e.value, true};
      // The injective norm never exceeds the projective norm, so its lower
      // bound is a valid (if loose) lower bound here too.
      return {injective_norm(t, b).value, true};
    }
  }
  return {0.0, false};
}

ConservativeValue tensor_norm_upper(const Tensor& t, const CrossnormTag& tag, const Budget& b) {
  switch (tag.kind) {
    case CrossnormTag::Kind::Hilbertian:
    case CrossnormTag::Kind::EntrywiseP:
      return {alpha_norm(t, tag, b).value, true};
    case CrossnormTag::Kind::Projective:
      return {projective_norm(t, b).value, true};  // Exact or UpperBound
    case CrossnormTag::Kind::Injective: {
      const NormEstimate e = injective_norm(t, b);
      // Without a closed form the injective estimate only bounds from below.
      return {e.value, e.direction == BoundDirection::Exact};
    }
  }
  return {0.0, false};
}

}  // namespace crossnorm
