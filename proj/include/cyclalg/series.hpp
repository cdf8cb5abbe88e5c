#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclalg/gf_tower.hpp"

namespace cyclalg {

inline constexpr int kDefaultPrecision = 32;

// Truncated Laurent series sum_k c_k T^k over F_{p^j} inside a tower, known
// modulo T^prec.  prec == kExact marks data that is exactly known (finite
// polynomials, monomials); anything at or above kExact/2 collapses to it.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;

  LaurentSeries() = default;

  static LaurentSeries zero(const FieldTower& F, int j, int prec = kExact);
  static LaurentSeries constant(const FieldTower& F, int j, FFElement c);
  static LaurentSeries monomial(const FieldTower& F, int j, FFElement c, int v);
  static LaurentSeries T(const FieldTower& F, int j, int power = 1) { return monomial(F, j, F.one(), power); }
  // Coefficient of T^{v+k} is c[k].  Throws NotInSubfield for coefficients outside F_{p^j}.
  static LaurentSeries from_coeffs(const FieldTower& F, int j, int v, std::vector<FFElement> c,
                                   int prec = kExact);

  const FieldTower& tower() const { return *F_; }
  const FieldTower* tower_ptr() const { return F_; }
  int subfield_degree() const { return j_; }
  int val() const { return val_; }
  int prec() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }
  // Zero within precision.
  bool is_zero() const { return c_.empty(); }
  bool is_monomial() const { return c_.size() == 1; }
  // Coefficient of T^k (zero beyond the stored range; callers respect prec).
  FFElement coeff(int k) const;
  FFElement leading() const;
  const std::vector<FFElement>& coeffs() const { return c_; }

  // Same series known only modulo T^n (n >= prec is a no-op).
  LaurentSeries truncated(int n) const;
  // Reinterpret over F_{p^j2} (coefficients must lie there).
  LaurentSeries over(int j2) const;

  std::string str() const;

 private:
  LaurentSeries(const FieldTower* F, int j, int v, std::vector<FFElement> c, int prec);
  void normalize();

  const FieldTower* F_ = nullptr;
  int j_ = 1;
  int val_ = kExact;
  int prec_ = kExact;
  std::vector<FFElement> c_;

  friend struct SeriesAccess;
};

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries scale(const LaurentSeries& s, FFElement c);
// s * T^k, exact.
LaurentSeries shift(const LaurentSeries& s, int k);
// `cap` bounds the absolute precision of results that would otherwise be infinite.
LaurentSeries inverse(const LaurentSeries& s, int cap = kDefaultPrecision);
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, int cap = kDefaultPrecision);
LaurentSeries pow(const LaurentSeries& s, std::int64_t e, int cap = kDefaultPrecision);

LaurentSeries frobenius_coeffwise(const LaurentSeries& s, std::int64_t e);
// s(T -> t); val(t) must be 1.
LaurentSeries substitute(const LaurentSeries& s, const LaurentSeries& t, int cap = kDefaultPrecision);
// Formal derivative.
LaurentSeries derivative(const LaurentSeries& s);
// Compositional inverse r of t (val 1): t(r) = T.
LaurentSeries reversion(const LaurentSeries& t, int cap = kDefaultPrecision);

// Unique x in 1 + T*O with x^m = s.
LaurentSeries hensel_root(const LaurentSeries& s, int m, int cap = kDefaultPrecision);
// prod_{t<d} F^{it}(s), landing over F_{p^i}.
LaurentSeries unramified_norm(const LaurentSeries& s, int i, int d);
// lambda over F_{p^{id}} with unramified_norm(lambda) = c, or nullopt when d does not divide val(c).
std::optional<LaurentSeries> norm_equation_solve(const LaurentSeries& c, int i, int d,
                                                 int cap = kDefaultPrecision);

// Agreement on every exponent below min(prec_a, prec_b).
bool equal_within(const LaurentSeries& a, const LaurentSeries& b);
int common_prec(const LaurentSeries& a, const LaurentSeries& b);
// All coefficients fixed by F^j.
bool coefficients_in(const LaurentSeries& s, int j);

// Accepts the output of str() and sums/products of terms such as
// "1 + [0,1]*T^2 - T^-1", "T^2 * (1 + T) mod T^10", "g^5*T".
LaurentSeries parse_series(const FieldTower& F, int j, const std::string& text,
                           int default_prec = LaurentSeries::kExact);

}  // namespace cyclalg
