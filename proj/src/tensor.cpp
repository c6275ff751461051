#include "crossnorm/tensor.hpp"

namespace crossnorm {

double Decomposition::cost(const LpSpace& xs, const LpSpace& ys) const {
  double s = 0.0;
  for (const Term& t : terms) s += vector_norm(t.x, xs) * vector_norm(t.y, ys);
  return s;
}

Tensor single_tensor(const Vec& x, const Vec& y, const LpSpace& x_space, const LpSpace& y_space) {
  if (static_cast<int>(x.size()) != x_space.dim || static_cast<int>(y.size()) != y_space.dim)
    throw InputError("single_tensor: factor dims do not match spaces");
  return Tensor(outer(x, y), x_space, y_space);
}

Tensor assemble(const Decomposition& d, const LpSpace& x_space, const LpSpace& y_space) {
  Mat m(x_space.dim, y_space.dim);
  for (const auto& t : d.terms) {
    if (static_cast<int>(t.x.size()) != x_space.dim || static_cast<int>(t.y.size()) != y_space.dim)
      throw InputError("assemble: term dims do not match spaces");
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m(r, c) += t.x[r] * t.y[c];
  }
  return Tensor(std::move(m), x_space, y_space);
}

OperatorTensor::OperatorTensor(std::vector<Term> t, LpSpace xs, LpSpace ys, LpSpace vs, LpSpace ws)
    : terms(std::move(t)), x_space(xs), y_space(ys), v_space(vs), w_space(ws) {
  for (const Term& term : terms) {
    if (term.a.rows() != v_space.dim || term.a.cols() != x_space.dim)
      throw InputError("OperatorTensor: A factor shape does not match (V, X)");
    if (term.b.rows() != w_space.dim || term.b.cols() != y_space.dim)
      throw InputError("OperatorTensor: B factor shape does not match (W, Y)");
  }
}

Tensor apply(const OperatorTensor& l, const Tensor& f) {
  if (f.x_space != l.x_space || f.y_space != l.y_space)
    throw InputError("apply: tensor spaces do not match operator domain");
  Mat out(l.v_space.dim, l.w_space.dim);
  for (const auto& t : l.terms) {
    const Mat af = matmul(t.a, f.entries);          // V x Y
    const Mat afbt = matmul(af, transpose(t.b));    // V x W
    out = add(out, afbt);
  }
  return Tensor(std::move(out), l.v_space, l.w_space);
}

double pair_value(const OperatorFunctionalTensor& k, const OperatorTensor& l) {
  double s = 0.0;
  for (const auto& kt : k.terms)
    for (const auto& lt : l.terms) s += trace_pair(kt.phi, lt.a) * trace_pair(kt.eta, lt.b);
  return s;
}

OperatorTensor compose(const OperatorTensor& l, const OperatorTensor& m) {
  if (m.v_space != l.x_space || m.w_space != l.y_space)
    throw InputError("compose: codomain of m must match domain of l");
  std::vector<OperatorTensor::Term> terms;
  terms.reserve(l.terms.size() * m.terms.size());
  for (const auto& lt : l.terms)
    for (const auto& mt : m.terms) terms.push_back({matmul(lt.a, mt.a), matmul(lt.b, mt.b)});
  return OperatorTensor(std::move(terms), m.x_space, m.y_space, l.v_space, l.w_space);
}

}  // namespace crossnorm
