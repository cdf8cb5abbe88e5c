#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cyclalg {

enum class Family { A, B, C, D, E, F, G };
enum class Isogeny { SimplyConnected, Adjoint, Intermediate };

struct SimpleType {
  Family family;
  int rank;
  Isogeny isogeny = Isogeny::SimplyConnected;
};

enum class AutR { Trivial, C2, S3, Unsupported };

// Throws BadInput for ranks outside the family's range.
AutR aut_r(const SimpleType& t);
const char* aut_r_name(AutR a);
std::optional<Family> parse_family(char c);
std::optional<Isogeny> parse_isogeny(const std::string& s);

// Cayley table on {0..order-1}; validated on construction (BadGroup).
class FiniteGroupTable {
 public:
  explicit FiniteGroupTable(std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(t_.size()); }
  int identity() const { return e_; }
  int mul(int a, int b) const { return t_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<std::vector<int>>& table() const { return t_; }

 private:
  std::vector<std::vector<int>> t_;
  std::vector<int> inv_;
  int e_ = 0;
};

FiniteGroupTable cyclic_group(int n);
FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);

struct ExtensionProblem {
  FiniteGroupTable G;
  std::vector<int> N;  // normal subgroup, validated by check_extension_problem
};
// Throws BadGroup unless N is a normal subgroup.
void check_extension_problem(const ExtensionProblem& p);

struct ComplementResult {
  bool splits = false;
  std::vector<int> complement;  // sorted; empty when non-split
};

inline constexpr int kDefaultOrderBound = 64;
// Subgroup H with H n N = {e} and |H| = |G|/|N|.  OrderBound above `bound`.
ComplementResult extension_splits(const ExtensionProblem& p, int bound = kDefaultOrderBound);
bool is_subgroup(const FiniteGroupTable& G, const std::vector<int>& H);

struct TitsIndex {
  int g;
  SimpleType type;
};

struct SesVerdict {
  bool splits;
  bool consulted_tower;
  ComplementResult complement;
};
// g = 1 or 6: split without looking at the tower.  g = 2 or 3: complement
// search on the supplied tower, whose normal subgroup must have order g.
SesVerdict ses_verdict(const TitsIndex& idx, const ExtensionProblem* tower, int bound = kDefaultOrderBound);

}  // namespace cyclalg
