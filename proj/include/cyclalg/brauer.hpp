#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace cyclalg {

struct CSADescriptor {
  std::int64_t d = 1;
  std::int64_t r = 0;
};

// Reduced fraction num/den in [0, 1).
struct BrauerClass {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const BrauerClass&, const BrauerClass&) = default;
  std::string str() const;
};

// SL_n(A(d, r))
struct GroupDescriptor {
  std::int64_t n = 1;
  CSADescriptor algebra;
};

BrauerClass invariant(const CSADescriptor& A);
// m * c in Q/Z
BrauerClass scale(const BrauerClass& c, std::int64_t m);

struct WedderburnForm {
  std::int64_t a;
  CSADescriptor division;
};
// A(d,r) = M_a(A(d/a, r/a)) with a = gcd(d, r).
WedderburnForm wedderburn(const CSADescriptor& A);

CSADescriptor base_change_csa(const CSADescriptor& A, std::int64_t m);
// Needs gcd(d', r') = 1 (NotDivisionInput otherwise).
GroupDescriptor base_change_group(const GroupDescriptor& G, std::int64_t m);

bool splits_over_subfield(std::int64_t n, std::int64_t d, std::int64_t m);
// nullopt when gcd(nd, m) does not divide n.
std::optional<GroupDescriptor> descent_form(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t m);

bool galois_subfield_exists(std::int64_t p, std::int64_t i, std::int64_t q, std::int64_t a);
bool splits_globally_charp(std::int64_t n, std::int64_t d, std::int64_t p, std::int64_t i);

struct SplitVerdict {
  bool splits = true;
  // On non-split: a Galois subfield index m = q^a with gcd(nd, m) not dividing n.
  std::int64_t witness_index = 0;
  std::int64_t witness_gcd = 0;
};
SplitVerdict split_verdict_charp(std::int64_t n, std::int64_t d, std::int64_t p, std::int64_t i);

// (a, b) with ab = m, every prime of b dividing d, gcd(a, d) = 1.
std::pair<std::int64_t, std::int64_t> d_part(std::int64_t m, std::int64_t d);

}  // namespace cyclalg
