#include "cyclalg/series.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "cyclalg/errors.hpp"
#include "cyclalg/numtheory.hpp"

namespace cyclalg {

using Vec = std::vector<FFElement>;

namespace {

int clamp_prec(std::int64_t p) {
  return p >= LaurentSeries::kExact / 2 ? LaurentSeries::kExact : static_cast<int>(p);
}

// First L coefficients of a*b.
Vec mul_trunc(const FieldTower& F, const Vec& a, const Vec& b, std::size_t L) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = std::min(L, a.size() + b.size() - 1);
  Vec r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t hi = std::min(k, a.size() - 1);
    if (lo > hi) continue;
    r[k] = F.dot_rev(a.data() + lo, b.data() + (k - lo), hi - lo + 1);
  }
  return r;
}

// Inverse of a unit power series to L terms, Newton doubling.
Vec inv_trunc(const FieldTower& F, const Vec& a, std::size_t L) {
  Vec x{F.inv(a[0])};
  std::size_t n = 1;
  while (n < L) {
    n = std::min(2 * n, L);
    Vec ax = mul_trunc(F, a, x, n);
    ax.resize(n, F.zero());
    for (auto& c : ax) c = F.neg(c);
    ax[0] = F.add(ax[0], F.one());  // 1 - a*x
    Vec corr = mul_trunc(F, x, ax, n);
    x.resize(n, F.zero());
    for (std::size_t k = 0; k < corr.size(); ++k) x[k] = F.add(x[k], corr[k]);
  }
  return x;
}

Vec pow_trunc(const FieldTower& F, Vec a, std::uint64_t e, std::size_t L) {
  Vec r{F.one()};
  while (e) {
    if (e & 1) r = mul_trunc(F, r, a, L);
    e >>= 1;
    if (e) a = mul_trunc(F, a, a, L);
  }
  return r;
}

const FieldTower& same_tower(const LaurentSeries& a, const LaurentSeries& b) {
  if (!a.tower_ptr() || a.tower_ptr() != b.tower_ptr())
    throw Error(Errc::MismatchedTower, "series over different towers");
  return a.tower();
}

int join_degree(int a, int b) { return std::lcm(a, b); }

// One past the highest stored exponent; zero series contribute nothing.
std::int64_t stored_end(const LaurentSeries& s) {
  return s.is_zero() ? std::numeric_limits<std::int64_t>::min() : s.val() + std::int64_t(s.coeffs().size());
}

}  // namespace

struct SeriesAccess {
  static LaurentSeries make(const FieldTower* F, int j, int v, Vec c, int prec) {
    return LaurentSeries(F, j, v, std::move(c), prec);
  }
};

namespace {
LaurentSeries make(const FieldTower& F, int j, int v, Vec c, int prec) {
  return SeriesAccess::make(&F, j, v, std::move(c), prec);
}
}  // namespace

LaurentSeries::LaurentSeries(const FieldTower* F, int j, int v, Vec c, int prec)
    : F_(F), j_(j), val_(v), prec_(clamp_prec(prec)), c_(std::move(c)) {
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
  }
  if (!is_exact() && !c_.empty()) {
    const std::int64_t room = std::int64_t{prec_} - val_;
    if (room <= 0)
      c_.clear();
    else if (static_cast<std::int64_t>(c_.size()) > room)
      c_.resize(static_cast<std::size_t>(room));
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) val_ = prec_;
}

LaurentSeries LaurentSeries::zero(const FieldTower& F, int j, int prec) { return make(F, j, prec, {}, prec); }

LaurentSeries LaurentSeries::constant(const FieldTower& F, int j, FFElement c) { return monomial(F, j, c, 0); }

LaurentSeries LaurentSeries::monomial(const FieldTower& F, int j, FFElement c, int v) {
  return from_coeffs(F, j, v, {c});
}

LaurentSeries LaurentSeries::from_coeffs(const FieldTower& F, int j, int v, Vec c, int prec) {
  if (j < 1 || F.M() % j != 0) throw Error(Errc::NotDivisor, "subfield degree must divide M");
  for (auto x : c)
    if (!F.in_subfield(x, j)) throw Error(Errc::NotInSubfield, F.format(x) + " not in F_{p^" + std::to_string(j) + "}");
  return make(F, j, v, std::move(c), prec);
}

FFElement LaurentSeries::coeff(int k) const {
  const std::int64_t idx = std::int64_t{k} - val_;
  if (idx < 0 || idx >= static_cast<std::int64_t>(c_.size())) return FFElement{};
  return c_[static_cast<std::size_t>(idx)];
}

FFElement LaurentSeries::leading() const {
  if (c_.empty()) throw Error(Errc::ApparentZero, "leading coefficient of zero series");
  return c_.front();
}

LaurentSeries LaurentSeries::truncated(int n) const {
  if (n >= prec_) return *this;
  return make(*F_, j_, val_, c_, n);
}

LaurentSeries LaurentSeries::over(int j2) const { return from_coeffs(*F_, j2, val_, c_, prec_); }

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const FieldTower& F = same_tower(a, b);
  const int P = std::min(a.prec(), b.prec());
  const int v = std::min(a.val(), b.val());
  std::int64_t end = P;
  if (P == LaurentSeries::kExact) end = std::max(stored_end(a), stored_end(b));
  Vec c;
  if (end > v) {
    c.resize(static_cast<std::size_t>(end - v));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = F.add(a.coeff(v + int(k)), b.coeff(v + int(k)));
  }
  const int v0 = c.empty() ? P : v;
  return make(F, join_degree(a.subfield_degree(), b.subfield_degree()), v0, std::move(c), P);
}

LaurentSeries operator-(const LaurentSeries& a) {
  Vec c = a.coeffs();
  for (auto& x : c) x = a.tower().neg(x);
  return make(a.tower(), a.subfield_degree(), a.val(), std::move(c), a.prec());
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const FieldTower& F = same_tower(a, b);
  const int j = join_degree(a.subfield_degree(), b.subfield_degree());
  const int P = clamp_prec(std::min(std::int64_t{a.prec()} + b.val(), std::int64_t{b.prec()} + a.val()));
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(F, j, P);
  const int v = a.val() + b.val();
  std::size_t L = a.coeffs().size() + b.coeffs().size() - 1;
  if (P != LaurentSeries::kExact) L = std::min<std::size_t>(L, static_cast<std::size_t>(std::max(P - v, 0)));
  return make(F, j, v, mul_trunc(F, a.coeffs(), b.coeffs(), L), P);
}

LaurentSeries scale(const LaurentSeries& s, FFElement c) {
  Vec r = s.coeffs();
  for (auto& x : r) x = s.tower().mul(x, c);
  int k = 1;
  while (!s.tower().in_subfield(c, k) || s.tower().M() % k) ++k;
  const int j = std::lcm(s.subfield_degree(), k);
  return make(s.tower(), j, s.val(), std::move(r), s.prec());
}

LaurentSeries shift(const LaurentSeries& s, int k) {
  const std::int64_t P = s.is_exact() ? LaurentSeries::kExact : std::int64_t{s.prec()} + k;
  return make(s.tower(), s.subfield_degree(), s.val() + k, s.coeffs(), static_cast<int>(P));
}

LaurentSeries inverse(const LaurentSeries& s, int cap) {
  if (s.is_zero()) throw Error(Errc::DivideByApparentZero, "series has no nonzero coefficient below T^" + std::to_string(s.prec()));
  const FieldTower& F = s.tower();
  const int v = s.val();
  int P;
  if (s.is_exact())
    P = s.is_monomial() ? LaurentSeries::kExact : std::max(cap, -v + 1);
  else
    P = s.prec() - 2 * v;
  if (s.is_monomial() && s.is_exact()) return make(F, s.subfield_degree(), -v, {F.inv(s.leading())}, P);
  const std::size_t L = static_cast<std::size_t>(P + v);
  return make(F, s.subfield_degree(), -v, inv_trunc(F, s.coeffs(), L), P);
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, int cap) { return a * inverse(b, cap); }

LaurentSeries pow(const LaurentSeries& s, std::int64_t e, int cap) {
  if (e < 0) return pow(inverse(s, cap), -e, cap);
  LaurentSeries r = LaurentSeries::constant(s.tower(), s.subfield_degree(), s.tower().one());
  LaurentSeries b = s;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

LaurentSeries frobenius_coeffwise(const LaurentSeries& s, std::int64_t e) {
  Vec c = s.coeffs();
  for (auto& x : c) x = s.tower().frobenius(x, e);
  return make(s.tower(), s.subfield_degree(), s.val(), std::move(c), s.prec());
}

LaurentSeries substitute(const LaurentSeries& s, const LaurentSeries& t, int cap) {
  const FieldTower& F = same_tower(s, t);
  if (t.is_zero() || t.val() != 1)
    throw Error(Errc::NotUniformiser, "substituted series must have valuation 1");
  const int j = join_degree(s.subfield_degree(), t.subfield_degree());
  if (t.is_exact() && t.is_monomial() && t.leading() == F.one()) return s.over(j);
  if (s.is_zero()) return LaurentSeries::zero(F, j, s.prec());
  const int vs = s.val();
  int P = clamp_prec(std::min(std::int64_t{s.prec()}, std::int64_t{vs} + t.prec() - 1));
  if (P == LaurentSeries::kExact && vs < 0 && !t.is_monomial()) P = std::max(cap, vs + 1);
  // Horner on the unit part, truncated at the relative length it can affect.
  const Vec& c = s.coeffs();
  LaurentSeries acc = LaurentSeries::constant(F, j, c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * t + LaurentSeries::constant(F, j, c[k]);
    if (P != LaurentSeries::kExact) acc = acc.truncated(P - vs);
  }
  // t^{vs} for vs < 0 loses one place per factor from the inverse's cap
  LaurentSeries tv = pow(t, vs, P == LaurentSeries::kExact ? cap : P + std::max(-vs, 0) + 1);
  LaurentSeries r = acc * tv;
  return P == LaurentSeries::kExact ? r : r.truncated(P);
}

LaurentSeries derivative(const LaurentSeries& s) {
  const FieldTower& F = s.tower();
  Vec c(s.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::int64_t e = s.val() + static_cast<std::int64_t>(k);
    c[k] = F.mul(F.from_int(e), s.coeffs()[k]);
  }
  const int P = s.is_exact() ? LaurentSeries::kExact : s.prec() - 1;
  return make(F, s.subfield_degree(), s.val() - 1, std::move(c), P);
}

LaurentSeries reversion(const LaurentSeries& t, int cap) {
  const FieldTower& F = t.tower();
  if (t.is_zero() || t.val() != 1) throw Error(Errc::NotUniformiser, "reversion needs valuation 1");
  const int j = t.subfield_degree();
  const int P = t.is_exact() ? cap : t.prec();
  if (t.is_exact() && t.is_monomial()) return LaurentSeries::monomial(F, j, F.inv(t.leading()), 1);
  const LaurentSeries tt = make(F, j, t.val(), t.coeffs(), LaurentSeries::kExact).truncated(P);
  const LaurentSeries dt = derivative(tt);
  const LaurentSeries X = LaurentSeries::T(F, j);
  LaurentSeries r = LaurentSeries::monomial(F, j, F.inv(t.leading()), 1);
  for (int n = 1; n < 2 * P; n *= 2) {
    LaurentSeries num = substitute(tt, r, P) - X;
    if (num.is_zero()) break;
    LaurentSeries den = substitute(dt, r, P);
    r = (r - divide(num, den, P)).truncated(P);
  }
  return make(F, j, r.val(), r.coeffs(), P);
}

LaurentSeries hensel_root(const LaurentSeries& s, int m, int cap) {
  const FieldTower& F = s.tower();
  if (m < 1) throw Error(Errc::BadInput, "root exponent must be positive");
  if (m % static_cast<int>(F.p()) == 0) throw Error(Errc::PDividesExponent, "p divides " + std::to_string(m));
  if (s.is_zero() || s.val() != 0 || s.leading() != F.one())
    throw Error(Errc::BadResidue, "hensel_root needs a series in 1 + T*O");
  if (m == 1) return s;
  const int P = s.is_exact() ? cap : s.prec();
  const std::size_t L = static_cast<std::size_t>(P);
  Vec target = s.coeffs();
  target.resize(L, F.zero());
  const FFElement m_el = F.from_int(m);
  Vec x{F.one()};
  std::size_t n = 1;
  while (n < L) {
    n = std::min(2 * n, L);
    x.resize(n, F.zero());
    Vec xm1 = pow_trunc(F, x, static_cast<std::uint64_t>(m - 1), n);
    Vec xm = mul_trunc(F, xm1, x, n);
    xm.resize(n, F.zero());
    for (std::size_t k = 0; k < n; ++k) xm[k] = F.sub(xm[k], target[k]);
    for (auto& c : xm1) c = F.mul(c, m_el);
    Vec corr = mul_trunc(F, xm, inv_trunc(F, xm1, n), n);
    for (std::size_t k = 0; k < corr.size(); ++k) x[k] = F.sub(x[k], corr[k]);
  }
  return make(F, s.subfield_degree(), 0, std::move(x), P);
}

LaurentSeries unramified_norm(const LaurentSeries& s, int i, int d) {
  const FieldTower& F = s.tower();
  if ((i * d) % s.subfield_degree() != 0)
    throw Error(Errc::NotInSubfield, "series is not over F_{p^{id}}");
  LaurentSeries r = s;
  for (int t = 1; t < d; ++t) r = r * frobenius_coeffwise(s, std::int64_t{i} * t);
  return make(F, i, r.val(), r.coeffs(), r.prec()).over(i);
}

std::optional<LaurentSeries> norm_equation_solve(const LaurentSeries& c, int i, int d, int cap) {
  const FieldTower& F = c.tower();
  if (c.is_zero()) throw Error(Errc::ApparentZero, "norm equation with zero right-hand side");
  if (!coefficients_in(c, i)) throw Error(Errc::NotInSubfield, "right-hand side not over F_{p^i}");
  const int v = c.val();
  if (mod_floor(v, d) != 0) return std::nullopt;
  const int id = i * d;
  const int P = c.is_exact() ? std::max(cap, v + 1) : c.prec();
  const std::size_t L = static_cast<std::size_t>(P - v);

  const auto& elems = F.subfield_elements(id);
  FFElement lambda0{};
  for (auto x : elems)
    if (!x.is_zero() && F.relative_norm(x, i, d) == c.leading()) {
      lambda0 = x;
      break;
    }
  // smallest preimage of each trace value
  std::map<std::uint32_t, FFElement> trace_pre;
  for (auto x : elems) trace_pre.emplace(F.relative_trace(x, i, d).code, x);

  Vec target = c.coeffs();
  target.resize(L, F.zero());
  Vec mu(L, F.zero());
  mu[0] = lambda0;
  for (std::size_t k = 1; k < L; ++k) {
    const std::size_t n = k + 1;
    Vec mu_n(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(n));
    Vec nm = mu_n;
    for (int t = 1; t < d; ++t) {
      Vec f = mu_n;
      for (auto& x : f) x = F.frobenius(x, std::int64_t{i} * t);
      nm = mul_trunc(F, nm, f, n);
    }
    Vec rho = mul_trunc(F, target, inv_trunc(F, nm, n), n);
    rho.resize(n, F.zero());
    const FFElement delta = rho[k];
    if (delta.is_zero()) continue;
    const FFElement eps = trace_pre.at(delta.code);
    for (std::size_t m = L; m-- > k;) mu[m] = F.add(mu[m], F.mul(eps, mu[m - k]));
  }
  return make(F, id, v / d, std::move(mu), v / d + static_cast<int>(L));
}

bool equal_within(const LaurentSeries& a, const LaurentSeries& b) {
  same_tower(a, b);
  const int P = std::min(a.prec(), b.prec());
  const int lo = std::min(a.val(), b.val());
  std::int64_t end = P;
  if (P == LaurentSeries::kExact) end = std::max(stored_end(a), stored_end(b));
  for (std::int64_t e = lo; e < end; ++e)
    if (a.coeff(int(e)) != b.coeff(int(e))) return false;
  return true;
}

int common_prec(const LaurentSeries& a, const LaurentSeries& b) { return std::min(a.prec(), b.prec()); }

bool coefficients_in(const LaurentSeries& s, int j) {
  for (auto x : s.coeffs())
    if (!s.tower().in_subfield(x, j)) return false;
  return true;
}

std::string LaurentSeries::str() const {
  std::ostringstream os;
  if (c_.empty()) {
    os << '0';
  } else {
    os << "T^" << val_ << " * (";
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << F_->format(c_[k]);
      if (k == 1) os << "*T";
      if (k > 1) os << "*T^" << k;
    }
    os << ')';
  }
  if (!is_exact()) os << " mod T^" << prec_;
  return os.str();
}

namespace {

class SeriesParser {
 public:
  SeriesParser(const FieldTower& F, int j, const std::string& s, int cap) : F_(F), j_(j), s_(s), cap_(cap) {}

  LaurentSeries run() {
    LaurentSeries r = expr();
    skip();
    if (s_.compare(pos_, 3, "mod") == 0) {
      pos_ += 3;
      skip();
      expect('T');
      skip();
      expect('^');
      r = r.truncated(static_cast<int>(integer()));
    }
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::BadInput, "series parse error (" + what + ") at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start])))) fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }
  LaurentSeries expr() {
    bool neg = false;
    if (peek() == '-') {
      ++pos_;
      neg = true;
    }
    LaurentSeries r = term();
    if (neg) r = -r;
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r = r + term();
      } else if (c == '-') {
        ++pos_;
        r = r - term();
      } else {
        return r;
      }
    }
  }
  LaurentSeries term() {
    LaurentSeries r = factor();
    while (peek() == '*') {
      ++pos_;
      r = r * factor();
    }
    return r;
  }
  LaurentSeries factor() {
    LaurentSeries r = atom();
    if (peek() == '^') {
      ++pos_;
      r = pow(r, integer(), cap_);
    }
    return r;
  }
  LaurentSeries atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      LaurentSeries r = expr();
      expect(')');
      return r;
    }
    if (c == 'T') {
      ++pos_;
      return LaurentSeries::T(F_, j_);
    }
    if (c == 'g') {
      ++pos_;
      return LaurentSeries::constant(F_, j_, F_.generator());
    }
    if (c == '[') {
      std::size_t end = s_.find(']', pos_);
      if (end == std::string::npos) fail("unterminated '['");
      FFElement x = F_.parse(s_.substr(pos_, end - pos_ + 1));
      pos_ = end + 1;
      return LaurentSeries::constant(F_, j_, x);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentSeries::constant(F_, j_, F_.from_int(integer()));
    fail("unexpected character");
  }

  const FieldTower& F_;
  int j_;
  std::string s_;
  int cap_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentSeries parse_series(const FieldTower& F, int j, const std::string& text, int default_prec) {
  const int cap = default_prec == LaurentSeries::kExact ? kDefaultPrecision : default_prec;
  return SeriesParser(F, j, text, cap).run().truncated(default_prec);
}

}  // namespace cyclalg
