#pragma once

#include <algorithm>
#include <vector>

#include "crossnorm/estimate.hpp"
#include "crossnorm/matrix.hpp"
#include "crossnorm/rng.hpp"

namespace crossnorm {

/// A conservatively evaluated quantity: when certified, the value really is
/// on the claimed side of the truth (which side depends on the caller).
struct ConservativeValue {
  double value = 0.0;
  bool certified = true;
};

/// Fixed small budget for inner evaluations inside ratio searches.  Kept
/// constant (rather than scaled from the outer budget) so an evaluation is a
/// pure function of its argument and refining the outer budget stays
/// monotone.
inline Budget inner_search_budget(std::uint64_t seed) {
  Budget b;
  b.restarts = 4;
  b.max_iters = 60;
  b.samples = 200;
  b.pre_scan = 128;
  b.seed = seed;
  return b;
}

struct MatAscentResult {
  double value = 0.0;
  Mat point;
  bool certified = true;
};

/// Hill-climb a scale-invariant ratio over nonzero matrices: anchors first,
/// then seeded Gaussian restarts, each refined by accept-if-better
/// perturbations with adaptive step.  Anchors beyond the restart budget are
/// still evaluated once, so a zero budget degrades to seeded evaluation.
template <typename Eval>
MatAscentResult matrix_ascent(int rows, int cols, const std::vector<Mat>& anchors, Eval&& eval,
                              const Budget& b) {
  MatAscentResult best;
  best.point = Mat(rows, cols);
  best.point(0, 0) = 1.0;
  bool have_any = false;

  auto consider = [&](const Mat& m, const ConservativeValue& v) {
    if (!have_any || v.value > best.value) {
      best.value = v.value;
      best.point = m;
      best.certified = v.certified;
      have_any = true;
    }
  };

  std::vector<Mat> starts;
  for (const Mat& a : anchors)
    if (max_abs(a) > 0.0) starts.push_back(a);

  const int total = std::max(b.restarts, static_cast<int>(starts.size()));
  for (int r = 0; r < total; ++r) {
    Mat f(rows, cols);
    if (r < static_cast<int>(starts.size())) {
      f = starts[r];
    } else {
      Rng rng(derive_seed(b.seed, 0xface, static_cast<std::uint64_t>(r)));
      for (double& x : f.data()) x = rng.gaussian();
    }
    if (max_abs(f) == 0.0) continue;
    ConservativeValue cur = eval(f);
    consider(f, cur);
    if (r >= b.restarts) continue;

    Rng step_rng(derive_seed(b.seed, 0x57e9, static_cast<std::uint64_t>(r)));
    double step = 0.5;
    for (int it = 0; it < b.max_iters; ++it) {
      Mat cand = f;
      const double scale = max_abs(f);
      for (double& x : cand.data()) x += step * scale * step_rng.gaussian();
      if (max_abs(cand) == 0.0) continue;
      const ConservativeValue v = eval(cand);
      if (v.value > cur.value) {
        cur = v;
        f = cand;
        consider(f, cur);
        step = std::min(step * 1.1, 1.0);
      } else {
        step *= 0.85;
        if (step < 1e-10) break;
      }
    }
  }
  return best;
}

}  // namespace crossnorm
