#include "cyclalg/brauer.hpp"

#include <numeric>

#include "cyclalg/errors.hpp"
#include "cyclalg/numtheory.hpp"

namespace cyclalg {

namespace {

std::int64_t i_times_pi_minus_1(std::int64_t p, std::int64_t i) {
  const auto q = static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(i), std::uint64_t{1} << 40));
  return i * (q - 1);
}

int valuation(std::int64_t x, std::int64_t q) {
  int v = 0;
  while (x != 0 && x % q == 0) {
    x /= q;
    ++v;
  }
  return v;
}

}  // namespace

std::string BrauerClass::str() const { return num == 0 ? "0" : std::to_string(num) + "/" + std::to_string(den); }

BrauerClass invariant(const CSADescriptor& A) {
  if (A.d < 1) throw Error(Errc::BadInput, "d must be positive");
  const std::int64_t num = mod_floor(A.r, A.d);
  const std::int64_t g = std::gcd(num, A.d);
  return num == 0 ? BrauerClass{0, 1} : BrauerClass{num / g, A.d / g};
}

BrauerClass scale(const BrauerClass& c, std::int64_t m) {
  const __int128 prod = static_cast<__int128>(c.num) * m;
  return invariant({c.den, static_cast<std::int64_t>(prod % c.den)});
}

WedderburnForm wedderburn(const CSADescriptor& A) {
  const std::int64_t a = std::gcd(A.d, A.r);
  return {a, {A.d / a, A.r / a}};
}

CSADescriptor base_change_csa(const CSADescriptor& A, std::int64_t m) {
  if (m < 1) throw Error(Errc::BadInput, "extension degree must be positive");
  return {A.d, A.r * m};
}

GroupDescriptor base_change_group(const GroupDescriptor& G, std::int64_t m) {
  if (m < 1) throw Error(Errc::BadInput, "extension degree must be positive");
  if (std::gcd(G.algebra.d, G.algebra.r) != 1)
    throw Error(Errc::NotDivisionInput, "A(" + std::to_string(G.algebra.d) + "," + std::to_string(G.algebra.r) + ") is not a division algebra");
  const std::int64_t a = std::gcd(G.algebra.d, m);
  return {a * G.n, {G.algebra.d / a, (m / a) * G.algebra.r}};
}

bool splits_over_subfield(std::int64_t n, std::int64_t d, std::int64_t m) { return n % std::gcd(n * d, m) == 0; }

std::optional<GroupDescriptor> descent_form(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t m) {
  if (std::gcd(d, r) != 1) throw Error(Errc::NotDivisionInput, "descent_form needs gcd(d, r) = 1");
  if (n < 1 || m < 1) throw Error(Errc::BadInput, "n and m must be positive");
  const std::int64_t a = std::gcd(n * d, m);
  if (n % a != 0) return std::nullopt;
  // gcd(m/a, d) = 1 follows from a | n
  const std::int64_t r0 = d == 1 ? 0 : mod_floor(r * mod_inv(mod_floor(m / a, d), d), d);
  std::int64_t rp = r0;
  while (std::gcd(rp, a * d) != 1) rp += d;
  return GroupDescriptor{n / a, {a * d, rp}};
}

bool galois_subfield_exists(std::int64_t p, std::int64_t i, std::int64_t q, std::int64_t a) {
  if (!is_prime(static_cast<std::uint64_t>(q))) throw Error(Errc::NotPrime, std::to_string(q) + " is not prime");
  if (q == p) return true;
  const std::int64_t N = i_times_pi_minus_1(p, i);
  return valuation(N, q) >= a;
}

bool splits_globally_charp(std::int64_t n, std::int64_t d, std::int64_t p, std::int64_t i) {
  return std::gcd(d, p) == 1 && n % std::gcd(n * d, i_times_pi_minus_1(p, i)) == 0;
}

SplitVerdict split_verdict_charp(std::int64_t n, std::int64_t d, std::int64_t p, std::int64_t i) {
  if (splits_globally_charp(n, d, p, i)) return {};
  const std::int64_t nd = n * d;
  if (d % p == 0) {
    const std::int64_t m = static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(valuation(nd, p))));
    return {false, m, std::gcd(nd, m)};
  }
  const std::int64_t N = i_times_pi_minus_1(p, i);
  const std::int64_t g = std::gcd(nd, N);
  for (auto q64 : prime_factors(static_cast<std::uint64_t>(g))) {
    const auto q = static_cast<std::int64_t>(q64);
    if (valuation(g, q) > valuation(n, q)) {
      const std::int64_t m = static_cast<std::int64_t>(checked_pow(q64, static_cast<unsigned>(valuation(g, q))));
      return {false, m, std::gcd(nd, m)};
    }
  }
  throw Error(Errc::BadInput, "internal: no witness for a non-split verdict");
}

std::pair<std::int64_t, std::int64_t> d_part(std::int64_t m, std::int64_t d) {
  if (m < 1 || d < 1) throw Error(Errc::BadInput, "d_part needs positive arguments");
  std::int64_t a = m, b = 1;
  for (std::int64_t g = std::gcd(a, d); g > 1; g = std::gcd(a, d)) {
    a /= g;
    b *= g;
  }
  return {a, b};
}

}  // namespace cyclalg
