#include "crossnorm/operator_norms.hpp"

#include <algorithm>
#include <cmath>

#include "crossnorm/linalg.hpp"
#include "crossnorm/oracle.hpp"
#include "crossnorm/rng.hpp"
#include "crossnorm/search.hpp"

namespace crossnorm {

namespace {

bool is_two(const Exponent& p) { return !p.is_inf() && p.value() == 2.0; }

bool all_l2(const OperatorTensor& l) {
  const Exponent two(2.0);
  return l.x_space.p == two && l.y_space.p == two && l.v_space.p == two && l.w_space.p == two;
}

bool zero_terms(const OperatorTensor& l) {
  for (const auto& t : l.terms)
    if (max_abs(t.a) != 0.0 && max_abs(t.b) != 0.0) return false;
  return true;
}

// The operator norm of A : X -> V equals the injective norm of A viewed as
// a tensor over (V, X*): sup over the V* ball and the X ball.
Tensor operator_as_tensor(const Mat& a, const LpSpace& x, const LpSpace& v) {
  return Tensor(a, v, x.dual());
}

}  // namespace

NormEstimate operator_norm(const Mat& a, const LpSpace& x, const LpSpace& v,
                           const Budget& budget) {
  if (a.rows() != v.dim || a.cols() != x.dim)
    throw InputError("operator_norm: matrix shape does not match (V, X)");
  NormEstimate e = injective_norm(operator_as_tensor(a, x, v), budget);
  // In the witness pair, f is the output norming functional and g the input
  // vector attaining the value.
  e.method = "operator_norm/" + e.method;
  return e;
}

double operator_norm_upper(const Mat& a, const LpSpace& x, const LpSpace& v) {
  if (auto e = injective_norm_exact(operator_as_tensor(a, x, v))) return e->value;
  const Exponent xd = x.p.dual();
  // |(Ax)_r| <= ||row_r||_{p'} gives the row bound; expanding over columns
  // with Holder gives the column bound.  Both are valid for every (p, q).
  Vec row_norms(a.rows());
  for (int r = 0; r < a.rows(); ++r) row_norms[r] = lp_norm(a.row(r), xd);
  const double row_bound = lp_norm(row_norms, v.p);
  Vec col_norms(a.cols());
  for (int c = 0; c < a.cols(); ++c) col_norms[c] = lp_norm(a.col(c), v.p);
  const double col_bound = lp_norm(col_norms, xd);
  return std::min(row_bound, col_bound);
}

NormEstimate induced_crossnorm(const OperatorTensor& l, const InducedNormSpec& spec,
                               const Budget& budget) {
  const CrossnormTag dom = resolve_tag(spec.domain, l.x_space, l.y_space);
  const CrossnormTag cod = resolve_tag(spec.codomain, l.v_space, l.w_space);
  if (!dom.attachable(l.x_space, l.y_space))
    throw CapabilityError("induced_crossnorm: domain tag " + dom.str() + " does not attach");
  if (!cod.attachable(l.v_space, l.w_space))
    throw CapabilityError("induced_crossnorm: codomain tag " + cod.str() + " does not attach");

  if (zero_terms(l)) return NormEstimate::exact(0.0, "zero");

  if (!budget.force_iterative && dom.is_entrywise_two() && cod.is_entrywise_two() && all_l2(l)) {
    NormEstimate e = NormEstimate::exact(oracle::kron_spectral(l), "kron_spectral");
    return e;
  }

  const Budget ib = inner_search_budget(derive_seed(budget.seed, 0x1a2bULL));
  auto eval = [&](const Mat& f) -> ConservativeValue {
    const Tensor ft(f, l.x_space, l.y_space);
    const ConservativeValue den = tensor_norm_upper(ft, dom, ib);
    if (den.value <= 1e-300) return {0.0, den.certified};
    const ConservativeValue num = tensor_norm_lower(apply(l, ft), cod, ib);
    return {num.value / den.value, num.certified && den.certified};
  };

  std::vector<Mat> anchors;
  for (int k = 0; k < l.x_space.dim; ++k)
    for (int m = 0; m < l.y_space.dim; ++m) {
      Mat e(l.x_space.dim, l.y_space.dim);
      e(k, m) = 1.0;
      anchors.push_back(e);
    }
  {
    Mat ones(l.x_space.dim, l.y_space.dim);
    for (double& v : ones.data()) v = 1.0;
    anchors.push_back(ones);
    Mat diag(l.x_space.dim, l.y_space.dim);
    for (int i = 0; i < std::min(diag.rows(), diag.cols()); ++i) diag(i, i) = 1.0;
    anchors.push_back(diag);
  }
  // Witness-seeded starts: the outer product of the per-term operator norm
  // witnesses realizes ||A_j x|| ||B_j y|| directly.
  for (const auto& term : l.terms) {
    const NormEstimate na = operator_norm(term.a, l.x_space, l.v_space, inner_search_budget(derive_seed(budget.seed, 0x11ULL)));
    const NormEstimate nb = operator_norm(term.b, l.y_space, l.w_space, inner_search_budget(derive_seed(budget.seed, 0x12ULL)));
    const auto* wa = std::get_if<FunctionalPairWitness>(&na.witness);
    const auto* wb = std::get_if<FunctionalPairWitness>(&nb.witness);
    if (wa && wb) anchors.push_back(outer(wa->g, wb->g));
  }

  const MatAscentResult r =
      matrix_ascent(l.x_space.dim, l.y_space.dim, anchors, eval, budget);

  NormEstimate e;
  e.value = r.value;
  e.direction = BoundDirection::LowerBound;
  e.certified = r.certified;
  e.method = r.certified ? "ratio_ascent" : "ratio_ascent/heuristic";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  e.witness = MatrixWitness{r.point};
  return e;
}

NormEstimate functional_operator_dual_norm(const Mat& phi, const LpSpace& x, const LpSpace& v,
                                           const Budget& budget) {
  if (phi.rows() != v.dim || phi.cols() != x.dim)
    throw InputError("functional_operator_dual_norm: pairing shape does not match (V, X)");
  if (max_abs(phi) == 0.0) return NormEstimate::exact(0.0, "zero");

  if (!budget.force_iterative && is_two(x.p) && is_two(v.p)) {
    const Svd d = jacobi_svd(phi);
    double nuc = 0.0;
    for (double s : d.s) nuc += s;
    NormEstimate e = NormEstimate::exact(nuc, "svd_nuclear_dual");
    // The argmax operator U V^T has unit spectral norm and pairs to the
    // nuclear norm.
    e.witness = MatrixWitness{matmul(d.u, transpose(d.v))};
    return e;
  }

  auto eval = [&](const Mat& a) -> ConservativeValue {
    const double den = operator_norm_upper(a, x, v);
    if (den <= 1e-300) return {0.0, true};
    return {std::abs(trace_pair(phi, a)) / den, true};
  };
  std::vector<Mat> anchors;
  anchors.push_back(phi);
  const Svd d = jacobi_svd(phi);
  anchors.push_back(outer(d.u.col(0), d.v.col(0)));
  const MatAscentResult r = matrix_ascent(phi.rows(), phi.cols(), anchors, eval, budget);

  NormEstimate e;
  e.value = r.value;
  e.direction = BoundDirection::LowerBound;
  e.method = "pairing_ascent";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  const double den = operator_norm_upper(r.point, x, v);
  if (den > 0.0) e.witness = MatrixWitness{scale(r.point, 1.0 / den)};
  return e;
}

NormEstimate operator_tensor_injective_norm(const OperatorTensor& l, const Budget& budget) {
  if (zero_terms(l)) return NormEstimate::exact(0.0, "zero");
  const LpSpace& x = l.x_space;
  const LpSpace& y = l.y_space;
  const LpSpace& v = l.v_space;
  const LpSpace& w = l.w_space;

  // Rank-one pairings phi = u a^T, eta = s b^T have dual operator norm
  // ||u||_{V*} ||a||_X and ||s||_{W*} ||b||_Y; alternating coordinate
  // maximization over (u, a, s, b) is exact in each block.
  struct State {
    Vec u, a, s, b;
  };
  auto value_of = [&](const State& st) {
    double total = 0.0;
    for (const auto& t : l.terms) total += dot(st.u, matvec(t.a, st.a)) * dot(st.s, matvec(t.b, st.b));
    const double nu = lp_norm(st.u, v.p.dual()) * lp_norm(st.a, x.p) * lp_norm(st.s, w.p.dual()) *
                      lp_norm(st.b, y.p);
    return nu > 0.0 ? std::abs(total) / nu : 0.0;
  };

  double best = 0.0;
  State best_state;
  auto consider = [&](const State& st) {
    const double val = value_of(st);
    if (val > best) {
      best = val;
      best_state = st;
    }
  };

  std::vector<State> starts;
  for (const auto& t : l.terms) {
    const Svd da = jacobi_svd(t.a);
    const Svd db = jacobi_svd(t.b);
    starts.push_back({da.u.col(0), da.v.col(0), db.u.col(0), db.v.col(0)});
  }
  const int total_runs = std::max(budget.restarts, static_cast<int>(starts.size()));
  for (int r = 0; r < total_runs; ++r) {
    State st;
    if (r < static_cast<int>(starts.size())) {
      st = starts[r];
    } else {
      Rng rng(derive_seed(budget.seed, 0x0b5e55ULL, static_cast<std::uint64_t>(r)));
      auto draw = [&](int n) {
        Vec vv(n);
        for (double& q : vv) q = rng.gaussian();
        return vv;
      };
      st = {draw(v.dim), draw(x.dim), draw(w.dim), draw(y.dim)};
    }
    consider(st);
    if (r >= budget.restarts && r < static_cast<int>(starts.size())) continue;

    double prev = value_of(st);
    for (int it = 0; it < budget.max_iters; ++it) {
      // c_j = s^T B_j b fixed; maximize over u then a.
      Vec cu(v.dim, 0.0), ca(x.dim, 0.0);
      for (const auto& t : l.terms) {
        const double c = dot(st.s, matvec(t.b, st.b));
        const Vec av = matvec(t.a, st.a);
        for (int i = 0; i < v.dim; ++i) cu[i] += c * av[i];
      }
      if (lp_norm(cu, Exponent(2.0)) > 0.0) st.u = norming_functional(cu, v.p);
      for (const auto& t : l.terms) {
        const double c = dot(st.s, matvec(t.b, st.b));
        const Vec atv = tmatvec(t.a, st.u);
        for (int i = 0; i < x.dim; ++i) ca[i] += c * atv[i];
      }
      if (lp_norm(ca, Exponent(2.0)) > 0.0) st.a = norming_functional(ca, x.p.dual());
      // d_j = u^T A_j a fixed; maximize over s then b.
      Vec cs(w.dim, 0.0), cb(y.dim, 0.0);
      for (const auto& t : l.terms) {
        const double dcoef = dot(st.u, matvec(t.a, st.a));
        const Vec bv = matvec(t.b, st.b);
        for (int i = 0; i < w.dim; ++i) cs[i] += dcoef * bv[i];
      }
      if (lp_norm(cs, Exponent(2.0)) > 0.0) st.s = norming_functional(cs, w.p);
      for (const auto& t : l.terms) {
        const double dcoef = dot(st.u, matvec(t.a, st.a));
        const Vec btv = tmatvec(t.b, st.s);
        for (int i = 0; i < y.dim; ++i) cb[i] += dcoef * btv[i];
      }
      if (lp_norm(cb, Exponent(2.0)) > 0.0) st.b = norming_functional(cb, y.p.dual());

      const double val = value_of(st);
      consider(st);
      if (std::abs(val - prev) <= 1e-15 * std::max(1.0, std::abs(val))) break;
      prev = val;
    }
  }

  NormEstimate e;
  e.direction = BoundDirection::LowerBound;
  e.method = "rank_one_pairing_ascent";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  // Normalize the witness pairings to unit dual norm and recompute the value
  // from them.
  State st = best_state;
  if (best > 0.0) {
    auto unitize = [](Vec& vv, const Exponent& p) {
      const double n = lp_norm(vv, p);
      for (double& q : vv) q /= n;
    };
    unitize(st.u, v.p.dual());
    unitize(st.a, x.p);
    unitize(st.s, w.p.dual());
    unitize(st.b, y.p);
    double total = 0.0;
    for (const auto& t : l.terms) total += dot(st.u, matvec(t.a, st.a)) * dot(st.s, matvec(t.b, st.b));
    e.value = std::abs(total);
    e.witness = PairingWitness{outer(st.u, st.a), outer(st.s, st.b)};
  } else {
    e.value = 0.0;
  }
  return e;
}

NormEstimate operator_tensor_projective_norm(const OperatorTensor& l, const Budget& budget) {
  if (zero_terms(l)) return NormEstimate::exact(0.0, "zero");
  const int J = static_cast<int>(l.terms.size());

  bool all_exact = true;
  auto factor_norm = [&](const Mat& m, const LpSpace& from, const LpSpace& to) {
    if (auto e = injective_norm_exact(operator_as_tensor(m, from, to))) return e->value;
    all_exact = false;
    return operator_norm_upper(m, from, to);
  };
  auto rep_cost = [&](const std::vector<OperatorTensor::Term>& terms) {
    double c = 0.0;
    for (const auto& t : terms)
      c += factor_norm(t.a, l.x_space, l.v_space) * factor_norm(t.b, l.y_space, l.w_space);
    return c;
  };

  double best = rep_cost(l.terms);
  std::vector<OperatorTensor::Term> best_terms = l.terms;

  if (J > 1) {
    const long long samples = budget.samples > 0 ? budget.samples : 2000;
    Rng rng(derive_seed(budget.seed, 0x9137ULL));
    auto mixed = [&](const Mat& g, const Mat& ginv) {
      std::vector<OperatorTensor::Term> out(J);
      for (int i = 0; i < J; ++i) {
        Mat a(l.v_space.dim, l.x_space.dim);
        Mat b(l.w_space.dim, l.y_space.dim);
        for (int j = 0; j < J; ++j) {
          a = add(a, scale(l.terms[j].a, g(i, j)));
          b = add(b, scale(l.terms[j].b, ginv(j, i)));
        }
        out[i] = {std::move(a), std::move(b)};
      }
      return out;
    };
    for (long long s = 0; s < samples; ++s) {
      Mat g(J, J), ginv;
      bool ok = false;
      for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
        for (double& x : g.data()) x = rng.gaussian();
        ok = invert(g, ginv);
      }
      if (!ok) continue;
      const auto cand = mixed(g, ginv);
      const double c = rep_cost(cand);
      if (c < best) {
        best = c;
        best_terms = cand;
      }
    }
    // Local refinement around the identity mixing of the best terms found.
    Rng rng2(derive_seed(budget.seed, 0x9138ULL));
    Mat g = Mat::identity(J);
    auto base = best_terms;
    auto mixed_base = [&](const Mat& gg, const Mat& gginv) {
      std::vector<OperatorTensor::Term> out(J);
      for (int i = 0; i < J; ++i) {
        Mat a(l.v_space.dim, l.x_space.dim);
        Mat b(l.w_space.dim, l.y_space.dim);
        for (int j = 0; j < J; ++j) {
          a = add(a, scale(base[j].a, gg(i, j)));
          b = add(b, scale(base[j].b, gginv(j, i)));
        }
        out[i] = {std::move(a), std::move(b)};
      }
      return out;
    };
    double step = 0.2;
    for (int it = 0; it < std::max(200, budget.max_iters * 3); ++it) {
      Mat gp = g;
      for (double& x : gp.data()) x += step * rng2.gaussian();
      Mat gpinv;
      if (!invert(gp, gpinv)) continue;
      const auto cand = mixed_base(gp, gpinv);
      const double c = rep_cost(cand);
      if (c < best) {
        best = c;
        best_terms = cand;
        g = gp;
        step = std::min(step * 1.1, 0.5);
      } else {
        step *= 0.97;
        if (step < 1e-10) break;
      }
    }
  }

  NormEstimate e;
  e.value = best;
  e.direction = BoundDirection::UpperBound;
  e.certified = true;
  e.method = all_exact ? "representation_mixing" : "representation_mixing/holder_factors";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  return e;
}

double induced_norm_upper(const OperatorTensor& l, const InducedNormSpec& spec,
                          const Budget& budget) {
  const CrossnormTag dom = resolve_tag(spec.domain, l.x_space, l.y_space);
  const CrossnormTag cod = resolve_tag(spec.codomain, l.v_space, l.w_space);
  const bool same_tag = dom == cod;
  const bool proj_to_inj = dom.kind == CrossnormTag::Kind::Projective &&
                           cod.kind == CrossnormTag::Kind::Injective;
  if (!same_tag && !proj_to_inj)
    throw CapabilityError("induced_norm_upper: no certified upper route for " + spec.str());
  double bound = operator_tensor_projective_norm(l, budget).value;
  if (same_tag && dom.is_entrywise_two() && all_l2(l))
    bound = std::min(bound, oracle::kron_spectral(l));
  return bound;
}

NormEstimate functional_tensor_norm(const OperatorFunctionalTensor& k, const LpSpace& x,
                                    const LpSpace& y, const LpSpace& v, const LpSpace& w,
                                    const InducedNormSpec& spec, const Budget& budget) {
  bool zero = true;
  for (const auto& t : k.terms)
    if (max_abs(t.phi) != 0.0 && max_abs(t.eta) != 0.0) zero = false;
  if (zero) return NormEstimate::exact(0.0, "zero");

  const int terms = std::max(1, budget.max_terms);
  const int na = v.dim * x.dim;
  const int nb = w.dim * y.dim;

  // Candidate L packed as a single row vector of term entries.
  auto unpack = [&](const Mat& packed) {
    std::vector<OperatorTensor::Term> ts(terms);
    int idx = 0;
    for (int t = 0; t < terms; ++t) {
      Mat a(v.dim, x.dim), b(w.dim, y.dim);
      for (double& q : a.data()) q = packed.data()[idx++];
      for (double& q : b.data()) q = packed.data()[idx++];
      ts[t] = {std::move(a), std::move(b)};
    }
    return OperatorTensor(std::move(ts), x, y, v, w);
  };

  Budget den_budget;
  den_budget.restarts = 2;
  den_budget.max_iters = 20;
  den_budget.samples = 40;
  auto eval = [&](const Mat& packed) -> ConservativeValue {
    const OperatorTensor cand = unpack(packed);
    if (zero_terms(cand)) return {0.0, true};
    double den = 0.0;
    try {
      den = induced_norm_upper(cand, spec, den_budget);
    } catch (const CapabilityError&) {
      return {0.0, false};
    }
    if (den <= 1e-300) return {0.0, true};
    return {std::abs(pair_value(k, cand)) / den, true};
  };

  std::vector<Mat> anchors;
  {
    // Align a candidate with the pairing matrices themselves.
    Mat packed(1, terms * (na + nb));
    int idx = 0;
    for (int t = 0; t < terms; ++t) {
      const auto& kt = k.terms[static_cast<std::size_t>(t) % k.terms.size()];
      for (double q : kt.phi.data()) packed.data()[idx++] = q;
      for (double q : kt.eta.data()) packed.data()[idx++] = q;
    }
    anchors.push_back(packed);
    // And with the top rank-one factors of the first pairing.
    const auto& k0 = k.terms.front();
    const Svd dphi = jacobi_svd(k0.phi);
    const Svd deta = jacobi_svd(k0.eta);
    Mat packed2(1, terms * (na + nb));
    const Mat a0 = outer(dphi.u.col(0), dphi.v.col(0));
    const Mat b0 = outer(deta.u.col(0), deta.v.col(0));
    idx = 0;
    for (double q : a0.data()) packed2.data()[idx++] = q;
    for (double q : b0.data()) packed2.data()[idx++] = q;
    anchors.push_back(packed2);
  }

  const MatAscentResult r = matrix_ascent(1, terms * (na + nb), anchors, eval, budget);

  NormEstimate e;
  e.value = r.value;
  e.direction = BoundDirection::LowerBound;
  e.certified = r.certified;
  e.method = r.certified ? "operator_search" : "operator_search/heuristic";
  e.restarts = budget.restarts;
  e.seed = budget.seed;
  return e;
}

}  // namespace crossnorm
