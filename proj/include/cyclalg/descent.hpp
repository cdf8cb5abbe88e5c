#pragma once

#include <memory>
#include <optional>
#include <string>

#include "cyclalg/autk.hpp"
#include "cyclalg/linalg.hpp"

namespace cyclalg {

// Class of an invertible matrix over l modulo scalars.  The representative
// is scaled so that its first nonzero entry (row-major) is 1.
class ProjMatrix {
 public:
  explicit ProjMatrix(const SeriesMatrix& m, int cap = kDefaultPrecision);

  int size() const { return m_.size(); }
  const SeriesMatrix& rep() const { return m_; }
  int pivot() const { return pivot_; }

 private:
  SeriesMatrix m_;
  int pivot_ = -1;
};

// min_prec receives the smallest precision over compared entries.
bool proj_equal(const ProjMatrix& a, const ProjMatrix& b, int* min_prec = nullptr);

// (at g)_{ij} = g_{m+1-j, m+1-i}
SeriesMatrix anti_transpose(const SeriesMatrix& g);
SeriesMatrix apply_entrywise(const LocalFieldAuto& f, const SeriesMatrix& g);
SeriesMatrix scalar_matrix(const LaurentSeries& s, int n);

// Cocycle of the cyclic algebra (l/k, gamma, a) on Gal(l/k) = <gamma>, with
// l = F_{p^{mi}}((T)), gamma = F^i and c_gamma = [[0,..,0,a],[1,0,..],..,[0,..,1,0]].
struct CyclicCocycle {
  std::shared_ptr<const FieldTower> F;
  int i = 1;
  int m = 3;
  LaurentSeries a;
  SeriesMatrix at_gamma;
  int cap = kDefaultPrecision;

  int l_degree() const { return i * m; }
  LocalFieldAuto gamma(int power = 1) const;
};

CyclicCocycle standard_cocycle(std::shared_ptr<const FieldTower> F, int i, int m, const LaurentSeries& a,
                               int cap = kDefaultPrecision);
// c_{gamma^k} = c_gamma * gamma(c_gamma) * ... * gamma^{k-1}(c_gamma), k >= 0.
SeriesMatrix cocycle_value(const CyclicCocycle& c, int k);
bool cocycle_closes(const CyclicCocycle& c);

struct DescentCheck {
  bool holds = false;
  int min_prec = LaurentSeries::kExact;
};

// Whether (b, e) composed with Id_beta descends, evaluated at gamma:
//   c_gamma * gamma(b) * e(beta^{-1}(c_gamma))^{-1} = b  projectively,
// where e is the identity or g -> at(g)^{-1}.  beta must preserve k, so
// beta^{-1} gamma beta = gamma.
DescentCheck descent_condition_check(const CyclicCocycle& c, const SeriesMatrix& b, bool e_flag,
                                     const LocalFieldAuto& beta);

struct HankeWitness {
  int branch = 1;  // 1: alpha(a)/a = N(lambda), 2: alpha(a)*a = N(lambda)
  LaurentSeries lambda;
  SeriesMatrix g;
};

struct HankeResult {
  bool in_aut_g = false;
  std::optional<HankeWitness> witness;
  bool witness_verified = false;
  int min_prec = LaurentSeries::kExact;
};

// Degree 3, l/k unramified.  The witness g solves ^beta c ^gamma g e c^{-1} e^{-1} = g,
// and b = beta^{-1}(g) is confirmed by descent_condition_check.
HankeResult hanke_test_deg3(std::shared_ptr<const FieldTower> F, int i, const LaurentSeries& a,
                            const LocalFieldAuto& alpha, int cap = kDefaultPrecision);

std::string matrix_str(const SeriesMatrix& m);

}  // namespace cyclalg
