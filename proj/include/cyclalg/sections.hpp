#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cyclalg/cyclic.hpp"

namespace cyclalg {

// Basis used to embed F_{p^{idb}} into M_b(F_{p^{id}}).
//   Equivariant: power basis of an element fixed by the Frobenius power the
//     C_{a'} section acts by (shifted by a multiple of id), so conjugating
//     f_{C_b} by f_{C_{a'}} stays inside f_{C_b}.
//   AmbientGenerator: power basis of the tower's generator.
enum class CbBasis { Equivariant, AmbientGenerator };

struct SectionOptions {
  int prec = kDefaultPrecision;
  CbBasis basis = CbBasis::Equivariant;
  std::optional<int> c_override;  // skip the c*a' + 1 = 0 mod d check (negative controls)
};

struct SectionContext {
  int p, i, d, r, n;
  int a, b, ap, bp;  // ab = p^i - 1, a'b' = i
  int c;
  int prec;
  std::shared_ptr<const FieldTower> F;
  std::shared_ptr<const CyclicAlgebra> A;
  FFElement zeta;  // generator of F_{p^i}^x
  FFElement z;     // root_of_zeta
  FFElement y;     // F^{id}(y) = zeta^{ar} y
  CbBasis basis;
  FFElement beta;            // basis is beta^0..beta^{b-1}
  int beta_field = 0;        // beta generates F_{p^{beta_field}}
  AlgebraMatrix Y;
  std::vector<AlgebraMatrix> Ypow;  // Y^j, j < b
};

// Throws BadInput unless gcd(d, p) = gcd(d, r) = 1 and bb' | n.
SectionContext make_section_context(unsigned p, int i, int d, int r, int n, const SectionOptions& opt = {});

// Same context with another Hilbert 90 solution y.
SectionContext with_y(const SectionContext& ctx, FFElement y);

FFElement root_of_zeta(const SectionContext& ctx);
// x with x^{db'} = alpha(T^r)/T^r, x in 1 + T F_{p^i}[[T]].
LaurentSeries x_alpha(const SectionContext& ctx, const LocalFieldAuto& alpha);
// Matrix of multiplication by v in the chosen basis, v in F_{p^{idb}}.
std::vector<FFElement> embed_Cb(const SectionContext& ctx, FFElement v);

SemilinearAuto section_J(const SectionContext& ctx, const LocalFieldAuto& alpha);
SemilinearAuto section_Ca(const SectionContext& ctx, std::int64_t j);
SemilinearAuto section_Cb(const SectionContext& ctx, std::int64_t j);
SemilinearAuto section_Caprime(const SectionContext& ctx, std::int64_t j);
SemilinearAuto section_Cbprime(const SectionContext& ctx, std::int64_t j);
// The same formulas without reducing j modulo the group order; raising the
// j = 1 map to the order is the well-definedness test.
SemilinearAuto raw_Ca(const SectionContext& ctx, std::int64_t j);
SemilinearAuto raw_Cb(const SectionContext& ctx, std::int64_t j);
SemilinearAuto raw_Caprime(const SectionContext& ctx, std::int64_t j);
SemilinearAuto raw_Cbprime(const SectionContext& ctx, std::int64_t j);

struct GlueParts {
  LocalFieldAuto jpart;
  int j2, j3, j4, j5;
};
GlueParts glue_decompose(const SectionContext& ctx, const LocalFieldAuto& alpha);
SemilinearAuto glue_section(const SectionContext& ctx, const LocalFieldAuto& alpha);

// Random K-automorphisms for sampling; `in_J` forces the J(K) component only.
LocalFieldAuto random_K_auto(const SectionContext& ctx, std::mt19937_64& rng, bool in_J);

struct CheckResult {
  std::string name;
  std::string description;
  bool pass = true;
  int trials = 0;
  int min_prec = LaurentSeries::kExact;  // smallest precision at which equality was observed
  std::string failure;                   // first failing trial, if any
};

struct VerificationReport {
  int p, i, d, r, n, a, b, ap, bp, c, prec, samples;
  std::uint64_t seed;
  std::string basis;
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

VerificationReport verify_section(const SectionContext& ctx, int samples, std::uint64_t seed);

}  // namespace cyclalg
