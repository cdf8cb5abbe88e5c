#pragma once

#include <random>

#include "cyclalg/autk.hpp"
#include "cyclalg/series.hpp"

namespace testutil {

using cyclalg::FFElement;
using cyclalg::FieldTower;
using cyclalg::LaurentSeries;
using cyclalg::LocalFieldAuto;

inline FFElement random_in(const FieldTower& F, int j, std::mt19937_64& rng, bool nonzero = false) {
  const auto& el = F.subfield_elements(j);
  FFElement x;
  do x = el[rng() % el.size()];
  while (nonzero && x.is_zero());
  return x;
}

inline LaurentSeries random_series(const FieldTower& F, int j, std::mt19937_64& rng, int v, int prec) {
  std::vector<FFElement> c(static_cast<std::size_t>(prec - v));
  for (auto& x : c) x = random_in(F, j, rng);
  return LaurentSeries::from_coeffs(F, j, v, c, prec);
}

inline LaurentSeries random_unit(const FieldTower& F, int j, std::mt19937_64& rng, int prec) {
  return random_series(F, j, rng, 1, prec) + LaurentSeries::constant(F, j, random_in(F, j, rng, true));
}

// Exact polynomial image T*(c + a_2 T + ... ) with `terms` random higher coefficients.
inline LocalFieldAuto random_auto(const FieldTower& F, int j, std::mt19937_64& rng, int cap, int terms = 4,
                                  bool in_J = false) {
  std::vector<FFElement> c(static_cast<std::size_t>(terms) + 1);
  c[0] = in_J ? F.one() : random_in(F, j, rng, true);
  for (std::size_t k = 1; k < c.size(); ++k) c[k] = random_in(F, j, rng);
  const int e = in_J ? 0 : static_cast<int>(rng() % static_cast<unsigned>(j));
  return LocalFieldAuto(j, e, LaurentSeries::from_coeffs(F, j, 1, c), cap);
}

}  // namespace testutil

#include "cyclalg/cyclic.hpp"

namespace testutil {

using cyclalg::AlgebraElement;
using cyclalg::AlgebraMatrix;
using cyclalg::CyclicAlgebra;
using cyclalg::SemilinearAuto;

inline AlgebraElement random_element(const CyclicAlgebra& A, std::mt19937_64& rng, int prec) {
  AlgebraElement a = A.zero();
  for (auto& c : a.c) c = random_series(A.tower(), A.id(), rng, static_cast<int>(rng() % 3), prec);
  return a;
}

inline AlgebraMatrix random_matrix(const CyclicAlgebra& A, int n, std::mt19937_64& rng, int prec) {
  AlgebraMatrix m = cyclalg::mat_zero(A, n);
  for (auto& e : m.e) e = random_element(A, rng, prec);
  return m;
}

// Random K-automorphism extended to E, with x solving N(x) = alpha(T^r)/T^r
// twisted by a random norm-one factor y/sigma(y).
inline SemilinearAuto random_phi(const CyclicAlgebra& A, int n, std::mt19937_64& rng) {
  const FieldTower& F = A.tower();
  LocalFieldAuto aK = random_auto(F, A.i(), rng, A.prec());
  LocalFieldAuto aE = cyclalg::extend_to_E(aK, A.id());
  LaurentSeries c = aK.apply(LaurentSeries::T(F, A.i(), A.r())) * LaurentSeries::T(F, A.i(), -A.r());
  LaurentSeries lam = *cyclalg::norm_equation_solve(c.truncated(A.prec()), A.i(), A.d(), A.prec());
  LaurentSeries y = random_unit(F, A.id(), rng, A.prec());
  LaurentSeries x = lam * y * cyclalg::inverse(A.sigma(y, 1), A.prec());
  return cyclalg::phi_auto(A, n, aE, x);
}

}  // namespace testutil
