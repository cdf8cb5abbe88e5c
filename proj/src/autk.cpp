#include "cyclalg/autk.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "cyclalg/errors.hpp"
#include "cyclalg/numtheory.hpp"

namespace cyclalg {

struct LocalFieldAuto::PowerCache {
  std::mutex mu;
  std::map<int, LaurentSeries> powers;
};

LocalFieldAuto::LocalFieldAuto(int field_degree, std::int64_t frob, LaurentSeries image, int cap)
    : j_(field_degree),
      e_(static_cast<int>(mod_floor(frob, field_degree))),
      image_(std::move(image)),
      cap_(cap),
      cache_(std::make_shared<PowerCache>()) {
  if (image_.is_zero() || image_.val() != 1)
    throw Error(Errc::NotUniformiser, "image of T must have valuation 1");
  if (!coefficients_in(image_, j_)) throw Error(Errc::NotInSubfield, "image of T not over the field");
  if (image_.subfield_degree() != j_) image_ = image_.over(j_);
}

LocalFieldAuto LocalFieldAuto::identity(const FieldTower& F, int j, int cap) {
  return LocalFieldAuto(j, 0, LaurentSeries::T(F, j), cap);
}

LocalFieldAuto LocalFieldAuto::ev(const FieldTower& F, int j, FFElement c, int cap) {
  return LocalFieldAuto(j, 0, LaurentSeries::monomial(F, j, c, 1), cap);
}

LocalFieldAuto LocalFieldAuto::frobenius(const FieldTower& F, int j, std::int64_t e, int cap) {
  return LocalFieldAuto(j, e, LaurentSeries::T(F, j), cap);
}

bool LocalFieldAuto::in_J() const { return e_ == 0 && image_.leading() == tower().one(); }

const LaurentSeries& LocalFieldAuto::power(int k) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& pw = cache_->powers;
  auto it = pw.find(k);
  if (it != pw.end()) return it->second;
  const int W = image_.is_exact() ? cap_ + 1 : image_.prec();
  auto clip = [&](LaurentSeries r, int m) {
    return r.is_exact() && !r.is_monomial() ? r.truncated(W + std::max(m, 0)) : r;
  };
  if (pw.empty()) pw.emplace(0, LaurentSeries::constant(tower(), j_, tower().one()));
  const int step = k > 0 ? 1 : -1;
  const LaurentSeries unit = k > 0 ? image_ : inverse(image_, W);
  int m = 0;
  while (pw.count(m + step) && m != k) m += step;
  for (; m != k; m += step) pw.emplace(m + step, clip(pw.at(m) * unit, m + step));
  return pw.at(k);
}

LaurentSeries LocalFieldAuto::apply(const LaurentSeries& s) const {
  const FieldTower& F = tower();
  if (s.tower_ptr() != &F) throw Error(Errc::MismatchedTower, "series and automorphism over different towers");
  LaurentSeries fs = e_ ? frobenius_coeffwise(s, e_) : s;
  const int j = std::lcm(fs.subfield_degree(), j_);
  if (image_.is_exact() && image_.is_monomial()) {
    const FFElement c = image_.leading();
    if (c == F.one()) return fs.over(j);
    std::vector<FFElement> out(fs.coeffs().size());
    FFElement ck = F.pow_signed(c, fs.val());
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = F.mul(fs.coeffs()[k], ck);
      ck = F.mul(ck, c);
    }
    return LaurentSeries::from_coeffs(F, j, fs.val(), std::move(out), fs.prec());
  }
  if (fs.is_zero()) return LaurentSeries::zero(F, j, fs.prec());
  const int vs = fs.val();
  std::int64_t P = std::min<std::int64_t>(fs.prec(), std::int64_t{vs} + image_.prec() - 1);
  if (P >= LaurentSeries::kExact / 2) P = std::max(cap_, vs + 1);
  LaurentSeries acc = LaurentSeries::zero(F, j, static_cast<int>(P));
  for (std::size_t k = 0; k < fs.coeffs().size() && vs + std::int64_t(k) < P; ++k) {
    const FFElement c = fs.coeffs()[k];
    if (c.is_zero()) continue;
    const int e = vs + static_cast<int>(k);
    const LaurentSeries& pw = power(e);
    LaurentSeries term = scale(pw.prec() >= P ? pw : substitute(LaurentSeries::T(F, j, e), image_, static_cast<int>(P)), c);
    acc = acc + term.truncated(static_cast<int>(P));
  }
  return acc;
}

std::string LocalFieldAuto::str() const { return "e=" + std::to_string(e_) + "; T -> " + image_.str(); }

LocalFieldAuto compose(const LocalFieldAuto& a, const LocalFieldAuto& b) {
  if (a.field_degree() != b.field_degree()) throw Error(Errc::MismatchedTower, "automorphisms of different fields");
  return LocalFieldAuto(a.field_degree(), a.frob() + b.frob(), a.apply(b.image()), std::min(a.cap(), b.cap()));
}

LocalFieldAuto invert(const LocalFieldAuto& a) {
  LaurentSeries r = reversion(a.image(), a.cap());
  return LocalFieldAuto(a.field_degree(), -a.frob(), frobenius_coeffwise(r, -a.frob()), a.cap());
}

AutoDecomposition decompose(const LocalFieldAuto& a) {
  const FieldTower& F = a.tower();
  const FFElement c = a.image().leading();
  LaurentSeries img = scale(a.image(), F.inv(c)).over(a.field_degree());
  return {LocalFieldAuto(a.field_degree(), 0, img, a.cap()), c, a.frob()};
}

LocalFieldAuto recompose(const AutoDecomposition& parts) {
  const FieldTower& F = parts.jpart.tower();
  const int j = parts.jpart.field_degree();
  const int cap = parts.jpart.cap();
  return compose(parts.jpart, compose(LocalFieldAuto::ev(F, j, parts.scalar, cap), LocalFieldAuto::frobenius(F, j, parts.frob, cap)));
}

LocalFieldAuto extend_to_E(const LocalFieldAuto& a, int id) {
  if (id % a.field_degree() != 0) throw Error(Errc::NotDivisor, "extension degree must be a multiple of the field degree");
  return LocalFieldAuto(id, a.frob(), a.image().over(id), a.cap());
}

LocalFieldAuto restrict_to(const LocalFieldAuto& a, int i) {
  return LocalFieldAuto(i, a.frob(), a.image().over(i), a.cap());
}

bool equal_within(const LocalFieldAuto& a, const LocalFieldAuto& b) {
  return a.field_degree() == b.field_degree() && a.frob() == b.frob() && equal_within(a.image(), b.image());
}

LocalFieldAuto parse_auto(const FieldTower& F, int j, const std::string& text, int cap) {
  const auto semi = text.find(';');
  const auto arrow = text.find("->");
  if (semi == std::string::npos || arrow == std::string::npos || arrow < semi)
    throw Error(Errc::BadInput, "automorphism must look like \"e=<int>; T -> <series>\": " + text);
  std::string head = text.substr(0, semi);
  const auto eq = head.find('=');
  if (eq == std::string::npos) throw Error(Errc::BadInput, "missing e=<int> in " + text);
  std::int64_t e = 0;
  try {
    e = std::stoll(head.substr(eq + 1));
  } catch (const std::exception&) {
    throw Error(Errc::BadInput, "bad residue exponent in " + text);
  }
  LaurentSeries img = parse_series(F, j, text.substr(arrow + 2), LaurentSeries::kExact);
  return LocalFieldAuto(j, e, img, cap);
}

}  // namespace cyclalg
