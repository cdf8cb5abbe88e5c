#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cyclalg/autk.hpp"
#include "cyclalg/linalg.hpp"

namespace cyclalg {

// sum_s u^s c[s] with c[s] in E = F_{p^{id}}((T)).
struct AlgebraElement {
  std::vector<LaurentSeries> c;
};

// A(d,r) = (E/K, F^i, T^r): u^d = T^r and u^{-1} x u = F^i(x).
class CyclicAlgebra {
 public:
  CyclicAlgebra(std::shared_ptr<const FieldTower> F, int i, int d, int r, int prec = kDefaultPrecision);

  const FieldTower& tower() const { return *F_; }
  std::shared_ptr<const FieldTower> tower_ptr() const { return F_; }
  int i() const { return i_; }
  int d() const { return d_; }
  int r() const { return r_; }
  int id() const { return i_ * d_; }
  int prec() const { return prec_; }
  bool is_division() const { return division_; }

  LaurentSeries E(FFElement c, int v = 0) const { return LaurentSeries::monomial(*F_, id(), c, v); }
  LaurentSeries E_zero() const { return LaurentSeries::zero(*F_, id()); }
  LaurentSeries E_one() const { return E(F_->one()); }
  // sigma^t = F^{it} on coefficients
  LaurentSeries sigma(const LaurentSeries& x, std::int64_t t) const;

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement u(int power = 1) const;
  AlgebraElement from_E(const LaurentSeries& x) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement neg(const AlgebraElement& a) const;
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement inverse(const AlgebraElement& a) const;

  // Left multiplication on the right E-basis u^0..u^{d-1}: column t holds a*u^t.
  SeriesMatrix rep(const AlgebraElement& a) const;
  LaurentSeries nrd(const AlgebraElement& a) const;

  bool equal(const AlgebraElement& a, const AlgebraElement& b) const;
  int compared_prec(const AlgebraElement& a, const AlgebraElement& b) const;
  std::string str(const AlgebraElement& a) const;

 private:
  std::shared_ptr<const FieldTower> F_;
  int i_, d_, r_, prec_;
  bool division_;
};

// n x n matrix over A(d,r), row-major.
struct AlgebraMatrix {
  int n = 0;
  std::vector<AlgebraElement> e;
  AlgebraElement& at(int r, int c) { return e[static_cast<std::size_t>(r) * n + c]; }
  const AlgebraElement& at(int r, int c) const { return e[static_cast<std::size_t>(r) * n + c]; }
};

AlgebraMatrix mat_zero(const CyclicAlgebra& A, int n);
AlgebraMatrix mat_scalar(const CyclicAlgebra& A, int n, const AlgebraElement& a);
AlgebraMatrix mat_identity(const CyclicAlgebra& A, int n);
AlgebraMatrix mat_diag(const CyclicAlgebra& A, const std::vector<AlgebraElement>& d);
// Id + E_{s,t}(a)
AlgebraMatrix mat_elementary(const CyclicAlgebra& A, int n, int s, int t, const AlgebraElement& a);
AlgebraMatrix mat_mul(const CyclicAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y);
AlgebraMatrix mat_add(const CyclicAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y);
AlgebraMatrix mat_pow(const CyclicAlgebra& A, const AlgebraMatrix& x, int e);
// nd x nd block matrix, block (k,l) = rep(x_{kl}).
SeriesMatrix mat_rep(const CyclicAlgebra& A, const AlgebraMatrix& x);
LaurentSeries mat_nrd(const CyclicAlgebra& A, const AlgebraMatrix& x);
AlgebraMatrix mat_inverse(const CyclicAlgebra& A, const AlgebraMatrix& x);
bool mat_equal(const CyclicAlgebra& A, const AlgebraMatrix& x, const AlgebraMatrix& y, int* min_prec = nullptr);

// M -> inner * phi~(alphaE, x)(M) * inner^{-1}.  The inner part only matters
// up to a central scalar; equality is decided by action (see same_action).
struct SemilinearAuto {
  AlgebraMatrix inner, inner_inv;
  LocalFieldAuto alphaE;
  LaurentSeries x;
  std::vector<LaurentSeries> xprod;  // xprod[s] = prod_{t<s} sigma^t(x)
  bool inner_trivial = true;
};

// phi~(alphaE, x); AdmissibilityFailure unless N(x) = alphaE(T^r)/T^r within precision.
SemilinearAuto phi_auto(const CyclicAlgebra& A, int n, const LocalFieldAuto& alphaE, const LaurentSeries& x);
SemilinearAuto intaut(const CyclicAlgebra& A, const AlgebraMatrix& g);
SemilinearAuto intaut(const CyclicAlgebra& A, const AlgebraMatrix& g, const AlgebraMatrix& g_inv);
SemilinearAuto identity_auto(const CyclicAlgebra& A, int n);

AlgebraElement apply_phi(const CyclicAlgebra& A, const SemilinearAuto& f, const AlgebraElement& a);
AlgebraMatrix apply_phi(const CyclicAlgebra& A, const SemilinearAuto& f, const AlgebraMatrix& m);
AlgebraMatrix apply(const CyclicAlgebra& A, const SemilinearAuto& f, const AlgebraMatrix& m);
// (f1 o f2)(M) = f1(f2(M))
SemilinearAuto compose(const CyclicAlgebra& A, const SemilinearAuto& f1, const SemilinearAuto& f2);
SemilinearAuto inverse(const CyclicAlgebra& A, const SemilinearAuto& f);
SemilinearAuto power(const CyclicAlgebra& A, const SemilinearAuto& f, int e);
// The underlying automorphism of E.
const LocalFieldAuto& underlying(const SemilinearAuto& f);

// zeta_{id} Id, T Id, u Id, Id + E_{s,s+1}(1), Id + E_{s+1,s}(1), Id + E_{s,s+1}(u).
std::vector<AlgebraMatrix> generator_set(const CyclicAlgebra& A, int n);

struct ActionCheck {
  bool equal = true;
  int min_prec = LaurentSeries::kExact;
};
ActionCheck same_action(const CyclicAlgebra& A, const SemilinearAuto& f, const SemilinearAuto& g);
ActionCheck is_identity_action(const CyclicAlgebra& A, const SemilinearAuto& f);

}  // namespace cyclalg
