#include "cyclalg/descent.hpp"

#include <algorithm>
#include <sstream>

#include "cyclalg/errors.hpp"

namespace cyclalg {

ProjMatrix::ProjMatrix(const SeriesMatrix& m, int cap) : m_(m) {
  const int n = m.size();
  for (int k = 0; k < n * n && pivot_ < 0; ++k)
    if (!m(k / n, k % n).is_zero()) pivot_ = k;
  if (pivot_ < 0) throw Error(Errc::ApparentZero, "zero matrix has no projective class");
  const LaurentSeries s = inverse(m(pivot_ / n, pivot_ % n), cap);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m_(r, c) = m(r, c) * s;
}

bool proj_equal(const ProjMatrix& a, const ProjMatrix& b, int* min_prec) {
  if (a.size() != b.size()) return false;
  const int n = a.size();
  bool ok = a.pivot() == b.pivot();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const LaurentSeries& x = a.rep()(r, c);
      const LaurentSeries& y = b.rep()(r, c);
      if (min_prec && !(x.is_exact() && y.is_exact())) *min_prec = std::min(*min_prec, common_prec(x, y));
      if (!equal_within(x, y)) ok = false;
    }
  return ok;
}

SeriesMatrix anti_transpose(const SeriesMatrix& g) {
  const int n = g.size();
  SeriesMatrix r = g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = g(n - 1 - j, n - 1 - i);
  return r;
}

SeriesMatrix apply_entrywise(const LocalFieldAuto& f, const SeriesMatrix& g) {
  SeriesMatrix r = g;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) r(i, j) = f.apply(g(i, j));
  return r;
}

SeriesMatrix scalar_matrix(const LaurentSeries& s, int n) {
  SeriesMatrix r(n, LaurentSeries::zero(s.tower(), s.subfield_degree()));
  for (int k = 0; k < n; ++k) r(k, k) = s;
  return r;
}

LocalFieldAuto CyclicCocycle::gamma(int power) const {
  return LocalFieldAuto::frobenius(*F, l_degree(), static_cast<std::int64_t>(i) * power, cap);
}

CyclicCocycle standard_cocycle(std::shared_ptr<const FieldTower> F, int i, int m, const LaurentSeries& a, int cap) {
  if (m < 2) throw Error(Errc::BadInput, "cocycle degree must be at least 2");
  if (!coefficients_in(a, i)) throw Error(Errc::NotInSubfield, "a must lie in k");
  CyclicCocycle c;
  c.F = F;
  c.i = i;
  c.m = m;
  c.a = a.over(i * m);
  c.cap = cap;
  c.at_gamma = SeriesMatrix(m, LaurentSeries::zero(*F, i * m));
  c.at_gamma(0, m - 1) = c.a;
  for (int r = 1; r < m; ++r) c.at_gamma(r, r - 1) = LaurentSeries::constant(*F, i * m, F->one());
  return c;
}

SeriesMatrix cocycle_value(const CyclicCocycle& c, int k) {
  SeriesMatrix r = scalar_matrix(LaurentSeries::constant(*c.F, c.l_degree(), c.F->one()), c.m);
  for (int t = 0; t < k; ++t) r = r * apply_entrywise(c.gamma(t), c.at_gamma);
  return r;
}

bool cocycle_closes(const CyclicCocycle& c) {
  const SeriesMatrix id = scalar_matrix(LaurentSeries::constant(*c.F, c.l_degree(), c.F->one()), c.m);
  return proj_equal(ProjMatrix(cocycle_value(c, c.m), c.cap), ProjMatrix(id, c.cap));
}

DescentCheck descent_condition_check(const CyclicCocycle& c, const SeriesMatrix& b, bool e_flag,
                                     const LocalFieldAuto& beta) {
  if (beta.field_degree() != c.l_degree()) throw Error(Errc::MismatchedTower, "beta must be an automorphism of l");
  if (!coefficients_in(beta.image(), c.i)) throw Error(Errc::BadInput, "beta does not preserve k");
  const SeriesMatrix& C = c.at_gamma;
  const SeriesMatrix Cb = apply_entrywise(invert(beta), C);
  const SeriesMatrix tail = e_flag ? anti_transpose(Cb) : inverse(Cb, c.cap);
  const SeriesMatrix lhs = C * apply_entrywise(c.gamma(), b) * tail;
  DescentCheck r;
  r.holds = proj_equal(ProjMatrix(lhs, c.cap), ProjMatrix(b, c.cap), &r.min_prec);
  return r;
}

HankeResult hanke_test_deg3(std::shared_ptr<const FieldTower> F, int i, const LaurentSeries& a,
                            const LocalFieldAuto& alpha, int cap) {
  if (alpha.field_degree() != i) throw Error(Errc::MismatchedTower, "alpha must be an automorphism of k");
  const int l = 3 * i;
  const CyclicCocycle coc = standard_cocycle(F, i, 3, a, cap);
  const LaurentSeries aa = alpha.apply(a);
  HankeResult res;
  for (int branch = 1; branch <= 2 && !res.witness; ++branch) {
    const LaurentSeries target = branch == 1 ? aa * inverse(a, cap) : aa * a;
    auto lam = norm_equation_solve(target.truncated(std::min(target.prec(), cap + target.val())), i, 3, cap);
    if (!lam) continue;
    const LaurentSeries l1 = coc.gamma(1).apply(*lam), l2 = coc.gamma(2).apply(*lam);
    SeriesMatrix g(3, LaurentSeries::zero(*F, l));
    const LaurentSeries one = LaurentSeries::constant(*F, l, F->one());
    if (branch == 1) {
      g(0, 0) = l2 * l1;
      g(1, 1) = l2;
      g(2, 2) = one;
    } else {
      g(0, 2) = l2 * l1;
      g(1, 1) = l2;
      g(2, 0) = one;
    }
    res.witness = HankeWitness{branch, *lam, g};
  }
  res.in_aut_g = res.witness.has_value();
  if (res.witness) {
    const LocalFieldAuto beta = extend_to_E(alpha, l);
    const SeriesMatrix b = apply_entrywise(invert(beta), res.witness->g);
    DescentCheck d = descent_condition_check(coc, b, res.witness->branch == 2, beta);
    res.witness_verified = d.holds;
    res.min_prec = d.min_prec;
  }
  return res;
}

std::string matrix_str(const SeriesMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < m.size(); ++r) {
    os << (r ? "; " : "") << "[";
    for (int c = 0; c < m.size(); ++c) os << (c ? ", " : "") << m(r, c).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace cyclalg
