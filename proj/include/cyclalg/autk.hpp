#pragma once

#include <memory>
#include <string>

#include "cyclalg/series.hpp"

namespace cyclalg {

// Continuous automorphism of F_{p^j}((T)): coefficients go through F^e,
// then T -> image.  j is i for K and id for E.
class LocalFieldAuto {
 public:
  LocalFieldAuto(int field_degree, std::int64_t frob, LaurentSeries image, int cap = kDefaultPrecision);

  static LocalFieldAuto identity(const FieldTower& F, int j, int cap = kDefaultPrecision);
  // T -> cT
  static LocalFieldAuto ev(const FieldTower& F, int j, FFElement c, int cap = kDefaultPrecision);
  static LocalFieldAuto frobenius(const FieldTower& F, int j, std::int64_t e, int cap = kDefaultPrecision);

  const FieldTower& tower() const { return image_.tower(); }
  int field_degree() const { return j_; }
  int frob() const { return e_; }
  const LaurentSeries& image() const { return image_; }
  int cap() const { return cap_; }
  bool in_J() const;

  LaurentSeries apply(const LaurentSeries& s) const;
  FFElement apply_residue(FFElement c) const { return tower().frobenius(c, e_); }

  std::string str() const;

 private:
  const LaurentSeries& power(int k) const;

  int j_;
  int e_;
  LaurentSeries image_;
  int cap_;
  struct PowerCache;
  std::shared_ptr<PowerCache> cache_;
};

// (a o b)(s) = a(b(s))
LocalFieldAuto compose(const LocalFieldAuto& a, const LocalFieldAuto& b);
LocalFieldAuto invert(const LocalFieldAuto& a);

struct AutoDecomposition {
  LocalFieldAuto jpart;
  FFElement scalar;
  int frob;
};
// a = jpart o ev(scalar*T) o F^frob
AutoDecomposition decompose(const LocalFieldAuto& a);
LocalFieldAuto recompose(const AutoDecomposition& parts);

// Same residue exponent (now mod id) and same image, over E = F_{p^{id}}((T)).
LocalFieldAuto extend_to_E(const LocalFieldAuto& a, int id);
// Back to F_{p^i}((T)); the image must have coefficients in F_{p^i}.
LocalFieldAuto restrict_to(const LocalFieldAuto& a, int i);

bool equal_within(const LocalFieldAuto& a, const LocalFieldAuto& b);

// "e=<int>; T -> <series>"
LocalFieldAuto parse_auto(const FieldTower& F, int j, const std::string& text, int cap = kDefaultPrecision);

}  // namespace cyclalg
