#include "cyclalg/gf_tower.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cyclalg/errors.hpp"
#include "cyclalg/numtheory.hpp"

namespace cyclalg {
namespace {

using Poly = std::vector<unsigned>;  // low-to-high over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, unsigned p) {
  // f monic
  const std::size_t df = f.size() - 1;
  trim(a);
  while (a.size() > df) {
    unsigned t = a.back();
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t j = 0; j <= df; ++j)
      a[shift + j] = (a[shift + j] + (p - t) * f[j]) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < b.size(); ++t) r[s + t] = (r[s + t] + a[s] * b[t]) % p;
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly a, std::uint64_t e, const Poly& f, unsigned p) {
  Poly r{1};
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, p);
    a = poly_mulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    unsigned lc_inv = static_cast<unsigned>(pow_mod(b.back(), p - 2, p));
    Poly mb = b;
    for (auto& c : mb) c = c * lc_inv % p;
    a = poly_mod(std::move(a), mb, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test for a monic f of degree M.
bool irreducible(const Poly& f, unsigned p) {
  const int M = static_cast<int>(f.size()) - 1;
  const Poly X{0, 1};
  std::vector<Poly> frob(M + 1);
  frob[0] = poly_mod(X, f, p);
  for (int k = 1; k <= M; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);
  if (frob[M] != frob[0]) return false;
  for (auto l : prime_factors(static_cast<std::uint64_t>(M))) {
    Poly h = frob[M / l];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    Poly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

FieldTower::FieldTower(unsigned p, int i, int d, int b, KernelChoice kernel)
    : p_(p), i_(i), d_(d), b_(b) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (i < 1 || d < 1 || b < 1) throw Error(Errc::BadInput, "tower degrees must be positive");
  std::int64_t m = std::int64_t{i} * d * b;
  if (m > 64) throw Error(Errc::Overflow, "ambient degree too large");
  M_ = static_cast<int>(m);
  q_ = checked_pow(p, static_cast<unsigned>(M_), kMaxOrder);
  kern_ = kernel == KernelChoice::Scalar ? &kernels::gf2_scalar() : &kernels::gf2_active();

  pw_.resize(M_ + 1);
  pw_[0] = 1;
  for (int k = 1; k <= M_; ++k) pw_[k] = pw_[k - 1] * p_;

  // Smallest code = lexicographically smallest coefficient vector read high-to-low.
  for (std::uint64_t k = 0; k < q_; ++k) {
    Poly f(M_ + 1);
    std::uint64_t t = k;
    for (int j = 0; j < M_; ++j) {
      f[j] = static_cast<unsigned>(t % p_);
      t /= p_;
    }
    f[M_] = 1;
    if (irreducible(f, p_)) {
      modulus_ = f;
      break;
    }
  }

  // X^{M+k} mod f for k < M-1 (highest product degree is 2M-2).
  xpow_.assign(std::max(M_ - 1, 0), 0);
  {
    std::vector<unsigned> cur(M_ + 1, 0);
    for (int j = 0; j < M_; ++j) cur[j] = (p_ - modulus_[j]) % p_;  // X^M
    for (int k = 0; k < M_ - 1; ++k) {
      xpow_[k] = pack(cur.data());
      // multiply by X
      unsigned top = cur[M_ - 1];
      for (int j = M_ - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (int j = 0; j < M_; ++j) cur[j] = (cur[j] + (p_ - modulus_[j]) * top) % p_;
    }
  }
  if (p_ == 2) {
    red_.assign(3 * 256, 0);
    for (int c = 0; c < 3; ++c)
      for (unsigned v = 0; v < 256; ++v) {
        std::uint32_t acc = 0;
        for (int bit = 0; bit < 8; ++bit) {
          int k = 8 * c + bit;
          if ((v >> bit) & 1u && k < M_ - 1) acc ^= xpow_[k];
        }
        red_[c * 256 + v] = acc;
      }
  }

  frob_cols_.assign(static_cast<std::size_t>(M_) * M_, 0);
  for (int k = 0; k < M_; ++k) frob_cols_[k] = pw_[k];
  for (int e = 1; e < M_; ++e)
    for (int k = 0; k < M_; ++k)
      frob_cols_[e * M_ + k] = pow(FFElement{frob_cols_[(e - 1) * M_ + k]}, p_).code;

  const auto factors = prime_factors(q_ - 1);
  for (std::uint64_t c = 1; c < q_; ++c) {
    FFElement x{static_cast<std::uint32_t>(c)};
    bool ok = true;
    for (auto l : factors)
      if (pow(x, (q_ - 1) / l) == one()) {
        ok = false;
        break;
      }
    if (ok) {
      g_ = x;
      break;
    }
  }
}

void FieldTower::unpack(std::uint32_t code, unsigned* digits) const {
  for (int k = 0; k < M_; ++k) {
    digits[k] = code % p_;
    code /= p_;
  }
}

std::uint32_t FieldTower::pack(const unsigned* digits) const {
  std::uint32_t code = 0;
  for (int k = M_ - 1; k >= 0; --k) code = code * p_ + digits[k];
  return code;
}

std::uint32_t FieldTower::reduce_gf2(std::uint64_t x) const {
  const std::uint32_t mask = static_cast<std::uint32_t>((std::uint64_t{1} << M_) - 1);
  std::uint64_t hi = x >> M_;
  std::uint32_t lo = static_cast<std::uint32_t>(x) & mask;
  return lo ^ red_[hi & 255] ^ red_[256 + ((hi >> 8) & 255)] ^ red_[512 + ((hi >> 16) & 255)];
}

std::uint32_t FieldTower::reduce_digits(std::int64_t* acc) const {
  const std::int64_t p = p_;
  for (int k = 2 * M_ - 2; k >= M_; --k) {
    std::int64_t t = acc[k] % p;
    if (t == 0) continue;
    const int shift = k - M_;
    for (int j = 0; j < M_; ++j) acc[shift + j] -= t * modulus_[j];
  }
  unsigned digits[64];
  for (int k = 0; k < M_; ++k) digits[k] = static_cast<unsigned>(mod_floor(acc[k], p));
  return pack(digits);
}

FFElement FieldTower::from_int(std::int64_t v) const {
  return FFElement{static_cast<std::uint32_t>(mod_floor(v, p_))};
}

FFElement FieldTower::from_coeffs(const std::vector<unsigned>& c) const {
  if (static_cast<int>(c.size()) > M_) throw Error(Errc::BadInput, "too many coefficients");
  unsigned digits[64] = {};
  for (std::size_t k = 0; k < c.size(); ++k) digits[k] = c[k] % p_;
  return FFElement{pack(digits)};
}

std::vector<unsigned> FieldTower::coeffs(FFElement x) const {
  std::vector<unsigned> out(M_);
  unpack(x.code, out.data());
  return out;
}

FFElement FieldTower::add(FFElement a, FFElement b) const {
  if (p_ == 2) return FFElement{a.code ^ b.code};
  unsigned da[64], db[64];
  unpack(a.code, da);
  unpack(b.code, db);
  for (int k = 0; k < M_; ++k) da[k] = (da[k] + db[k]) % p_;
  return FFElement{pack(da)};
}

FFElement FieldTower::neg(FFElement a) const {
  if (p_ == 2) return a;
  unsigned da[64];
  unpack(a.code, da);
  for (int k = 0; k < M_; ++k) da[k] = (p_ - da[k]) % p_;
  return FFElement{pack(da)};
}

FFElement FieldTower::sub(FFElement a, FFElement b) const { return add(a, neg(b)); }

FFElement FieldTower::mul_raw(FFElement a, FFElement b) const {
  if (p_ == 2) return FFElement{reduce_gf2(kern_->mul(a.code, b.code))};
  unsigned da[64], db[64];
  unpack(a.code, da);
  unpack(b.code, db);
  std::int64_t acc[128] = {};
  for (int s = 0; s < M_; ++s) {
    if (!da[s]) continue;
    for (int t = 0; t < M_; ++t) acc[s + t] += static_cast<std::int64_t>(da[s]) * db[t];
  }
  return FFElement{reduce_digits(acc)};
}

FFElement FieldTower::mul(FFElement a, FFElement b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  return mul_raw(a, b);
}

FFElement FieldTower::dot_rev(const FFElement* a, const FFElement* b_end, std::size_t n) const {
  static_assert(sizeof(FFElement) == sizeof(std::uint32_t));
  if (p_ == 2)
    return FFElement{reduce_gf2(kern_->dot_rev(reinterpret_cast<const std::uint32_t*>(a),
                                               reinterpret_cast<const std::uint32_t*>(b_end), n))};
  std::int64_t acc[128] = {};
  unsigned da[64], db[64];
  for (std::size_t s = 0; s < n; ++s) {
    if (a[s].is_zero() || (b_end - s)->is_zero()) continue;
    unpack(a[s].code, da);
    unpack((b_end - s)->code, db);
    for (int u = 0; u < M_; ++u) {
      if (!da[u]) continue;
      for (int v = 0; v < M_; ++v) acc[u + v] += static_cast<std::int64_t>(da[u]) * db[v];
    }
  }
  return FFElement{reduce_digits(acc)};
}

FFElement FieldTower::pow(FFElement a, std::uint64_t e) const {
  FFElement r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FFElement FieldTower::inv(FFElement a) const {
  if (a.is_zero()) throw Error(Errc::DivideByApparentZero, "inverse of zero field element");
  return pow(a, q_ - 2);
}

FFElement FieldTower::pow_signed(FFElement a, std::int64_t e) const {
  if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
  return pow(inv(a), static_cast<std::uint64_t>(-e));
}

FFElement FieldTower::frobenius(FFElement x, std::int64_t e) const {
  const int ee = static_cast<int>(mod_floor(e, M_));
  if (ee == 0 || x.code < p_) return x;
  const std::uint32_t* cols = &frob_cols_[static_cast<std::size_t>(ee) * M_];
  if (p_ == 2) {
    std::uint32_t acc = 0, c = x.code;
    while (c) {
      int k = __builtin_ctz(c);
      acc ^= cols[k];
      c &= c - 1;
    }
    return FFElement{acc};
  }
  unsigned dx[64], dc[64], acc[64] = {};
  unpack(x.code, dx);
  for (int k = 0; k < M_; ++k) {
    if (!dx[k]) continue;
    unpack(cols[k], dc);
    for (int j = 0; j < M_; ++j) acc[j] = (acc[j] + dx[k] * dc[j]) % p_;
  }
  return FFElement{pack(acc)};
}

bool FieldTower::in_subfield(FFElement x, int j) const { return frobenius(x, j) == x; }

std::uint64_t FieldTower::multiplicative_order(FFElement x) const {
  if (x.is_zero()) throw Error(Errc::BadInput, "order of zero");
  std::uint64_t ord = q_ - 1;
  for (auto l : prime_factors(q_ - 1))
    while (ord % l == 0 && pow(x, ord / l) == one()) ord /= l;
  return ord;
}

FFElement FieldTower::subfield_generator(int j) const {
  if (j < 1 || M_ % j != 0)
    throw Error(Errc::NotDivisor, std::to_string(j) + " does not divide " + std::to_string(M_));
  return pow(g_, (q_ - 1) / (pw_[j] - 1));
}

FFElement FieldTower::relative_norm(FFElement x, int j, int m) const {
  if (j < 1 || m < 1 || M_ % (j * m) != 0)
    throw Error(Errc::NotDivisor, "jm must divide M");
  if (!in_subfield(x, j * m)) throw Error(Errc::NotInSubfield, "argument not in F_{p^{jm}}");
  FFElement r = one();
  for (int t = 0; t < m; ++t) r = mul(r, frobenius(x, j * t));
  return r;
}

FFElement FieldTower::relative_trace(FFElement x, int j, int m) const {
  if (j < 1 || m < 1 || M_ % (j * m) != 0)
    throw Error(Errc::NotDivisor, "jm must divide M");
  if (!in_subfield(x, j * m)) throw Error(Errc::NotInSubfield, "argument not in F_{p^{jm}}");
  FFElement r = zero();
  for (int t = 0; t < m; ++t) r = add(r, frobenius(x, j * t));
  return r;
}

FFElement FieldTower::hilbert90_solve(FFElement c, int j, int m) const {
  if (j < 1 || m < 1 || M_ % (j * m) != 0)
    throw Error(Errc::NotDivisor, "jm must divide M");
  if (c.is_zero() || !in_subfield(c, j * m))
    throw Error(Errc::NotInSubfield, "argument not in F_{p^{jm}}^x");
  if (relative_norm(c, j, m) != one()) throw Error(Errc::NormNotOne, "relative norm is not 1");
  if (c == one()) return one();
  // Resolvent of c^{-1}: sum_t (prod_{s<t} F^{js}(c^{-1})) F^{jt}(w) satisfies F^j(y) = c y.
  const FFElement ci = inv(c);
  const FFElement zeta = subfield_generator(j * m);
  FFElement w = one();
  for (std::uint64_t tries = 0; tries < pw_[j * m]; ++tries) {
    FFElement y = zero(), partial = one();
    for (int t = 0; t < m; ++t) {
      y = add(y, mul(partial, frobenius(w, j * t)));
      partial = mul(partial, frobenius(ci, j * t));
    }
    if (!y.is_zero()) return y;
    w = mul(w, zeta);
  }
  throw Error(Errc::NormNotOne, "no resolvent found");
}

const std::vector<FFElement>& FieldTower::subfield_elements(int j) const {
  if (j < 1 || M_ % j != 0) throw Error(Errc::NotDivisor, "j must divide M");
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = subfield_cache_.find(j);
  if (it != subfield_cache_.end()) return it->second;
  std::vector<FFElement> out{zero()};
  FFElement z = subfield_generator(j), x = one();
  for (std::uint32_t k = 0; k + 1 < pw_[j]; ++k) {
    out.push_back(x);
    x = mul(x, z);
  }
  std::sort(out.begin(), out.end());
  return subfield_cache_.emplace(j, std::move(out)).first->second;
}

std::string FieldTower::format(FFElement x) const {
  if (x.code < p_) return std::to_string(x.code);
  auto c = coeffs(x);
  std::ostringstream os;
  os << '[';
  for (int k = 0; k < M_; ++k) os << (k ? "," : "") << c[k];
  os << ']';
  return os.str();
}

FFElement FieldTower::parse(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(Errc::BadInput, "empty field element");
  if (s.front() == '[') {
    if (s.back() != ']') throw Error(Errc::BadInput, "unterminated coefficient vector: " + text);
    std::vector<unsigned> c;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(static_cast<unsigned>(std::stoul(tok)));
    return from_coeffs(c);
  }
  if (s[0] == 'g' && s.size() > 2 && s[1] == '^') return pow_signed(g_, std::stoll(s.substr(2)));
  std::size_t used = 0;
  long long v = std::stoll(s, &used);
  if (used != s.size()) throw Error(Errc::BadInput, "bad field element: " + text);
  return from_int(v);
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " i=" << i_ << " d=" << d_ << " b=" << b_ << " M=" << M_ << " modulus=[";
  for (int k = 0; k <= M_; ++k) os << (k ? "," : "") << modulus_[k];
  os << "] generator=" << format(g_);
  return os.str();
}

std::shared_ptr<const FieldTower> build_tower(unsigned p, int i, int d, int b, KernelChoice kernel) {
  return std::make_shared<const FieldTower>(p, i, d, b, kernel);
}

}  // namespace cyclalg
