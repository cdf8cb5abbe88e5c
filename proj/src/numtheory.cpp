#include "cyclalg/numtheory.hpp"

#include <boost/integer/mod_inverse.hpp>
#include <numeric>
#include <optional>

#include "cyclalg/errors.hpp"

namespace cyclalg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::Overflow: return "Overflow";
    case Errc::NotDivisor: return "NotDivisor";
    case Errc::NotInSubfield: return "NotInSubfield";
    case Errc::NormNotOne: return "NormNotOne";
    case Errc::DivideByApparentZero: return "DivideByApparentZero";
    case Errc::ApparentZero: return "ApparentZero";
    case Errc::NotUniformiser: return "NotUniformiser";
    case Errc::BadResidue: return "BadResidue";
    case Errc::PDividesExponent: return "PDividesExponent";
    case Errc::AdmissibilityFailure: return "AdmissibilityFailure";
    case Errc::NotDivisionInput: return "NotDivisionInput";
    case Errc::DecompositionFailure: return "DecompositionFailure";
    case Errc::OrderBound: return "OrderBound";
    case Errc::BadTower: return "BadTower";
    case Errc::BadGroup: return "BadGroup";
    case Errc::BadInput: return "BadInput";
    case Errc::MismatchedTower: return "MismatchedTower";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (base != 0 && r > limit / base)
      throw Error(Errc::Overflow, "power exceeds configured limit");
    r *= base;
  }
  if (r > limit) throw Error(Errc::Overflow, "power exceeds configured limit");
  return r;
}

std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  auto inv = boost::integer::mod_inverse(mod_floor(a, m), m);
  if (inv == 0) throw Error(Errc::BadInput, "element not invertible modulo " + std::to_string(m));
  return inv;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  unsigned __int128 r = 1 % m, b = base % m;
  while (exp) {
    if (exp & 1) r = r * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace cyclalg
