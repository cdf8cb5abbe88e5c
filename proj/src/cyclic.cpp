#include "cyclalg/cyclic.hpp"

#include <numeric>
#include <sstream>

#include "cyclalg/errors.hpp"

namespace cyclalg {

CyclicAlgebra::CyclicAlgebra(std::shared_ptr<const FieldTower> F, int i, int d, int r, int prec)
    : F_(std::move(F)), i_(i), d_(d), r_(r), prec_(prec) {
  if (i < 1 || d < 1) throw Error(Errc::BadInput, "cyclic algebra needs i, d >= 1");
  if (F_->M() % (i * d) != 0) throw Error(Errc::NotDivisor, "tower does not contain F_{p^{id}}");
  division_ = std::gcd(d, r) == 1;
}

LaurentSeries CyclicAlgebra::sigma(const LaurentSeries& x, std::int64_t t) const {
  return frobenius_coeffwise(x, std::int64_t{i_} * t);
}

AlgebraElement CyclicAlgebra::zero() const { return {std::vector<LaurentSeries>(static_cast<std::size_t>(d_), E_zero())}; }

AlgebraElement CyclicAlgebra::one() const { return from_E(E_one()); }

AlgebraElement CyclicAlgebra::u(int power) const {
  // u^{qd + s} = u^s T^{qr}
  const int s = ((power % d_) + d_) % d_;
  const int q = (power - s) / d_;
  AlgebraElement a = zero();
  a.c[static_cast<std::size_t>(s)] = LaurentSeries::T(*F_, id(), q * r_);
  return a;
}

AlgebraElement CyclicAlgebra::from_E(const LaurentSeries& x) const {
  AlgebraElement a = zero();
  a.c[0] = x.subfield_degree() == id() ? x : x.over(id());
  return a;
}

AlgebraElement CyclicAlgebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r = a;
  for (int s = 0; s < d_; ++s) r.c[s] = a.c[s] + b.c[s];
  return r;
}

AlgebraElement CyclicAlgebra::neg(const AlgebraElement& a) const {
  AlgebraElement r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

AlgebraElement CyclicAlgebra::sub(const AlgebraElement& a, const AlgebraElement& b) const { return add(a, neg(b)); }

AlgebraElement CyclicAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement r = zero();
  for (int s = 0; s < d_; ++s) {
    if (a.c[s].is_zero() && a.c[s].is_exact()) continue;
    for (int t = 0; t < d_; ++t) {
      if (b.c[t].is_zero() && b.c[t].is_exact()) continue;
      LaurentSeries term = sigma(a.c[s], t) * b.c[t];
      int k = s + t;
      if (k >= d_) {
        term = shift(term, r_);
        k -= d_;
      }
      r.c[k] = r.c[k] + term;
    }
  }
  return r;
}

SeriesMatrix CyclicAlgebra::rep(const AlgebraElement& a) const {
  SeriesMatrix m(d_, E_zero());
  for (int t = 0; t < d_; ++t)
    for (int s = 0; s < d_; ++s) {
      LaurentSeries v = sigma(a.c[s], t);
      if (s + t >= d_) v = shift(v, r_);
      m((s + t) % d_, t) = v;
    }
  return m;
}

LaurentSeries CyclicAlgebra::nrd(const AlgebraElement& a) const { return determinant(rep(a), prec_); }

AlgebraElement CyclicAlgebra::inverse(const AlgebraElement& a) const {
  std::vector<std::vector<LaurentSeries>> rhs{std::vector<LaurentSeries>(static_cast<std::size_t>(d_), E_zero())};
  rhs[0][0] = E_one();
  auto sol = solve(rep(a), std::move(rhs), prec_);
  return {sol[0]};
}

bool CyclicAlgebra::equal(const AlgebraElement& a, const AlgebraElement& b) const {
  for (int s = 0; s < d_; ++s)
    if (!equal_within(a.c[s], b.c[s])) return false;
  return true;
}

int CyclicAlgebra::compared_prec(const AlgebraElement& a, const AlgebraElement& b) const {
  int p = LaurentSeries::kExact;
  for (int s = 0; s < d_; ++s) p = std::min(p, common_prec(a.c[s], b.c[s]));
  return p;
}

std::string CyclicAlgebra::str(const AlgebraElement& a) const {
  std::ostringstream os;
  os << '[';
  for (int s = 0; s < d_; ++s) os << (s ? "; " : "") << a.c[s].str();
  os << ']';
  return os.str();
}

AlgebraMatrix mat_zero(const CyclicAlgebra& A, int n) {
  return {n, std::vector<AlgebraElement>(static_cast<std::size_t>(n) * n, A.zero())};
}

AlgebraMatrix mat_scalar(const CyclicAlgebra& A, int n, const AlgebraElement& a) {
  AlgebraMatrix m = mat_zero(A, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = a;
  return m;
}

AlgebraMatrix mat_identity(const CyclicAlgebra& A, int n) { return mat_scalar(A, n, A.one()); }

AlgebraMatrix mat_diag(const CyclicAlgebra& A, const std::vector<AlgebraElement>& d) {
  AlgebraMatrix m = mat_zero(A, static_cast<int>(d.size()));
  for (int k = 0; k < m.n; ++k) m.at(k, k) = d[k];
  return m;
}

AlgebraMatrix mat_elementary(const CyclicAlgebra& A, int n, int s, int t, const AlgebraElement& a) {
  AlgebraMatrix m = mat_identity(A, n);
  m.at(s, t) = A.add(m.at(s, t), a);
  return m;
}

namespace {
bool exact_zero(const AlgebraElement& a) {
  for (const auto& x : a.c)
    if (!(x.is_zero() && x.is_exact())) return false;
  return true;
}
}  // namespace

AlgebraMatrix mat_mul(const CyclicAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y) {
  AlgebraMatrix r = mat_zero(A, x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (exact_zero(x.at(i, k))) continue;
      for (int j = 0; j < x.n; ++j) {
        if (exact_zero(y.at(k, j))) continue;
        r.at(i, j) = A.add(r.at(i, j), A.mul(x.at(i, k), y.at(k, j)));
      }
    }
  return r;
}

AlgebraMatrix mat_add(const CyclicAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y) {
  AlgebraMatrix r = x;
  for (std::size_t k = 0; k < r.e.size(); ++k) r.e[k] = A.add(x.e[k], y.e[k]);
  return r;
}

AlgebraMatrix mat_pow(const CyclicAlgebra& A, const AlgebraMatrix& x, int e) {
  if (e < 0) return mat_pow(A, mat_inverse(A, x), -e);
  AlgebraMatrix r = mat_identity(A, x.n), b = x;
  while (e) {
    if (e & 1) r = mat_mul(A, r, b);
    e >>= 1;
    if (e) b = mat_mul(A, b, b);
  }
  return r;
}

SeriesMatrix mat_rep(const CyclicAlgebra& A, const AlgebraMatrix& x) {
  const int d = A.d();
  SeriesMatrix m(x.n * d, A.E_zero());
  for (int k = 0; k < x.n; ++k)
    for (int l = 0; l < x.n; ++l) {
      if (exact_zero(x.at(k, l))) continue;
      SeriesMatrix b = A.rep(x.at(k, l));
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) m(k * d + s, l * d + t) = b(s, t);
    }
  return m;
}

LaurentSeries mat_nrd(const CyclicAlgebra& A, const AlgebraMatrix& x) { return determinant(mat_rep(A, x), A.prec()); }

AlgebraMatrix mat_inverse(const CyclicAlgebra& A, const AlgebraMatrix& x) {
  const int d = A.d();
  SeriesMatrix inv = inverse(mat_rep(A, x), A.prec());
  AlgebraMatrix r = mat_zero(A, x.n);
  for (int k = 0; k < x.n; ++k)
    for (int l = 0; l < x.n; ++l)
      for (int s = 0; s < d; ++s) r.at(k, l).c[s] = inv(k * d + s, l * d);
  return r;
}

bool mat_equal(const CyclicAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y, int* min_prec) {
  if (x.n != y.n) return false;
  bool ok = true;
  for (std::size_t k = 0; k < x.e.size(); ++k) {
    if (min_prec) *min_prec = std::min(*min_prec, A.compared_prec(x.e[k], y.e[k]));
    if (!A.equal(x.e[k], y.e[k])) ok = false;
  }
  return ok;
}

namespace {

std::vector<LaurentSeries> prefix_products(const CyclicAlgebra& A, const LaurentSeries& x) {
  std::vector<LaurentSeries> xp{A.E_one()};
  for (int s = 1; s < A.d(); ++s) xp.push_back(xp.back() * A.sigma(x, s - 1));
  return xp;
}

SemilinearAuto make_phi(const CyclicAlgebra& A, int n, const LocalFieldAuto& alphaE, const LaurentSeries& x) {
  LaurentSeries xe = x.subfield_degree() == A.id() ? x : x.over(A.id());
  SemilinearAuto f{mat_identity(A, n), mat_identity(A, n), alphaE, xe, prefix_products(A, xe), true};
  return f;
}

}  // namespace

SemilinearAuto phi_auto(const CyclicAlgebra& A, int n, const LocalFieldAuto& alphaE, const LaurentSeries& x) {
  if (alphaE.field_degree() != A.id()) throw Error(Errc::MismatchedTower, "alphaE must be an automorphism of E");
  const LaurentSeries Tr = LaurentSeries::T(A.tower(), A.id(), A.r());
  const LaurentSeries want = alphaE.apply(Tr) * LaurentSeries::T(A.tower(), A.id(), -A.r());
  const LaurentSeries got = unramified_norm(x, A.i(), A.d());
  if (!equal_within(got, want))
    throw Error(Errc::AdmissibilityFailure, "N(x) = " + got.str() + " but alpha(T^r)/T^r = " + want.str());
  return make_phi(A, n, alphaE, x);
}

SemilinearAuto intaut(const CyclicAlgebra& A, const AlgebraMatrix& g) { return intaut(A, g, mat_inverse(A, g)); }

SemilinearAuto intaut(const CyclicAlgebra& A, const AlgebraMatrix& g, const AlgebraMatrix& g_inv) {
  SemilinearAuto f = identity_auto(A, g.n);
  f.inner = g;
  f.inner_inv = g_inv;
  f.inner_trivial = false;
  return f;
}

SemilinearAuto identity_auto(const CyclicAlgebra& A, int n) {
  return make_phi(A, n, LocalFieldAuto::identity(A.tower(), A.id(), A.prec()), A.E_one());
}

AlgebraElement apply_phi(const CyclicAlgebra& A, const SemilinearAuto& f, const AlgebraElement& a) {
  AlgebraElement r = a;
  for (int s = 0; s < A.d(); ++s) {
    if (a.c[s].is_zero() && a.c[s].is_exact()) continue;
    r.c[s] = f.xprod[s] * f.alphaE.apply(a.c[s]);
  }
  return r;
}

AlgebraMatrix apply_phi(const CyclicAlgebra& A, const SemilinearAuto& f, const AlgebraMatrix& m) {
  AlgebraMatrix r = m;
  for (auto& x : r.e) x = apply_phi(A, f, x);
  return r;
}

AlgebraMatrix apply(const CyclicAlgebra& A, const SemilinearAuto& f, const AlgebraMatrix& m) {
  AlgebraMatrix r = apply_phi(A, f, m);
  if (f.inner_trivial) return r;
  return mat_mul(A, mat_mul(A, f.inner, r), f.inner_inv);
}

SemilinearAuto compose(const CyclicAlgebra& A, const SemilinearAuto& f1, const SemilinearAuto& f2) {
  LocalFieldAuto alpha = compose(f1.alphaE, f2.alphaE);
  LaurentSeries x = f1.x * f1.alphaE.apply(f2.x);
  SemilinearAuto r = make_phi(A, f1.inner.n, alpha, x);
  if (f1.inner_trivial && f2.inner_trivial) return r;
  r.inner_trivial = false;
  if (f2.inner_trivial) {
    r.inner = f1.inner;
    r.inner_inv = f1.inner_inv;
  } else {
    r.inner = mat_mul(A, f1.inner, apply_phi(A, f1, f2.inner));
    r.inner_inv = mat_mul(A, apply_phi(A, f1, f2.inner_inv), f1.inner_inv);
  }
  return r;
}

SemilinearAuto inverse(const CyclicAlgebra& A, const SemilinearAuto& f) {
  LocalFieldAuto ai = invert(f.alphaE);
  LaurentSeries xi = ai.apply(cyclalg::inverse(f.x, A.prec()));
  SemilinearAuto r = make_phi(A, f.inner.n, ai, xi);
  if (f.inner_trivial) return r;
  r.inner_trivial = false;
  r.inner = apply_phi(A, r, f.inner_inv);
  r.inner_inv = apply_phi(A, r, f.inner);
  return r;
}

SemilinearAuto power(const CyclicAlgebra& A, const SemilinearAuto& f, int e) {
  if (e < 0) return power(A, inverse(A, f), -e);
  SemilinearAuto r = identity_auto(A, f.inner.n), b = f;
  while (e) {
    if (e & 1) r = compose(A, r, b);
    e >>= 1;
    if (e) b = compose(A, b, b);
  }
  return r;
}

const LocalFieldAuto& underlying(const SemilinearAuto& f) { return f.alphaE; }

std::vector<AlgebraMatrix> generator_set(const CyclicAlgebra& A, int n) {
  const FieldTower& F = A.tower();
  std::vector<AlgebraMatrix> g;
  g.push_back(mat_scalar(A, n, A.from_E(A.E(F.subfield_generator(A.id())))));
  g.push_back(mat_scalar(A, n, A.from_E(LaurentSeries::T(F, A.id()))));
  g.push_back(mat_scalar(A, n, A.u()));
  for (int s = 0; s + 1 < n; ++s) {
    g.push_back(mat_elementary(A, n, s, s + 1, A.one()));
    g.push_back(mat_elementary(A, n, s + 1, s, A.one()));
    g.push_back(mat_elementary(A, n, s, s + 1, A.u()));
  }
  return g;
}

ActionCheck same_action(const CyclicAlgebra& A, const SemilinearAuto& f, const SemilinearAuto& g) {
  ActionCheck r;
  for (const auto& G : generator_set(A, f.inner.n))
    if (!mat_equal(A, apply(A, f, G), apply(A, g, G), &r.min_prec)) r.equal = false;
  return r;
}

ActionCheck is_identity_action(const CyclicAlgebra& A, const SemilinearAuto& f) {
  ActionCheck r;
  for (const auto& G : generator_set(A, f.inner.n))
    if (!mat_equal(A, apply(A, f, G), G, &r.min_prec)) r.equal = false;
  return r;
}

}  // namespace cyclalg
