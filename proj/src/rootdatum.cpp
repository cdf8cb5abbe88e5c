#include "cyclalg/rootdatum.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "cyclalg/errors.hpp"

namespace cyclalg {

namespace {

void check_rank(const SimpleType& t) {
  const int n = t.rank;
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = n >= 1; break;
    case Family::B: ok = n >= 2; break;
    case Family::C: ok = n >= 3; break;
    case Family::D: ok = n >= 4; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok) throw Error(Errc::BadInput, "rank " + std::to_string(n) + " out of range for this family");
}

}  // namespace

AutR aut_r(const SimpleType& t) {
  check_rank(t);
  switch (t.family) {
    case Family::A:
      return t.rank == 1 ? AutR::Trivial : AutR::C2;
    case Family::D:
      if (t.isogeny == Isogeny::Intermediate && t.rank % 2 == 0) return AutR::Unsupported;
      return t.rank == 4 ? AutR::S3 : AutR::C2;
    case Family::E:
      return t.rank == 6 ? AutR::C2 : AutR::Trivial;
    default:
      return AutR::Trivial;
  }
}

const char* aut_r_name(AutR a) {
  switch (a) {
    case AutR::Trivial: return "trivial";
    case AutR::C2: return "C2";
    case AutR::S3: return "S3";
    case AutR::Unsupported: return "unsupported";
  }
  return "?";
}

std::optional<Family> parse_family(char c) {
  const std::string fams = "ABCDEFG";
  auto pos = fams.find(c);
  if (pos == std::string::npos) return std::nullopt;
  return static_cast<Family>(pos);
}

std::optional<Isogeny> parse_isogeny(const std::string& s) {
  if (s == "sc" || s == "simply_connected") return Isogeny::SimplyConnected;
  if (s == "ad" || s == "adjoint") return Isogeny::Adjoint;
  if (s == "intermediate") return Isogeny::Intermediate;
  return std::nullopt;
}

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<int>> table) : t_(std::move(table)) {
  const int n = order();
  if (n < 1) throw Error(Errc::BadGroup, "empty table");
  for (const auto& row : t_) {
    if (static_cast<int>(row.size()) != n) throw Error(Errc::BadGroup, "table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw Error(Errc::BadGroup, "entry out of range");
  }
  e_ = -1;
  for (int a = 0; a < n && e_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = t_[a][b] == b && t_[b][a] == b;
    if (ok) e_ = a;
  }
  if (e_ < 0) throw Error(Errc::BadGroup, "no identity element");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t_[a][b] == e_ && t_[b][a] == e_) inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv_[a] < 0) throw Error(Errc::BadGroup, "element " + std::to_string(a) + " has no inverse");
  if (n <= kDefaultOrderBound)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t_[t_[a][b]][c] != t_[a][t_[b][c]]) throw Error(Errc::BadGroup, "table is not associative");
}

FiniteGroupTable cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroupTable(std::move(t));
}

FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  const int m = a.order(), k = b.order();
  std::vector<std::vector<int>> t(m * k, std::vector<int>(m * k));
  for (int x = 0; x < m * k; ++x)
    for (int y = 0; y < m * k; ++y) t[x][y] = a.mul(x / k, y / k) * k + b.mul(x % k, y % k);
  return FiniteGroupTable(std::move(t));
}

bool is_subgroup(const FiniteGroupTable& G, const std::vector<int>& H) {
  std::set<int> s(H.begin(), H.end());
  if (!s.count(G.identity())) return false;
  for (int a : s) {
    if (a < 0 || a >= G.order()) return false;
    if (!s.count(G.inv(a))) return false;
    for (int b : s)
      if (!s.count(G.mul(a, b))) return false;
  }
  return true;
}

void check_extension_problem(const ExtensionProblem& p) {
  if (!is_subgroup(p.G, p.N)) throw Error(Errc::BadGroup, "N is not a subgroup");
  std::set<int> s(p.N.begin(), p.N.end());
  for (int g = 0; g < p.G.order(); ++g)
    for (int x : s)
      if (!s.count(p.G.mul(p.G.mul(g, x), p.G.inv(g)))) throw Error(Errc::BadGroup, "N is not normal");
}

namespace {

using Mask = std::uint64_t;

Mask closure(const FiniteGroupTable& G, Mask gens) {
  Mask h = Mask{1} << G.identity();
  std::vector<int> frontier{G.identity()};
  std::vector<int> gv;
  for (int a = 0; a < G.order(); ++a)
    if (gens >> a & 1) gv.push_back(a);
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int g : gv) {
      int y = G.mul(x, g);
      if (!(h >> y & 1)) {
        h |= Mask{1} << y;
        frontier.push_back(y);
      }
    }
  }
  return h;
}

}  // namespace

ComplementResult extension_splits(const ExtensionProblem& p, int bound) {
  const FiniteGroupTable& G = p.G;
  if (G.order() > bound || G.order() > 64)
    throw Error(Errc::OrderBound, "|G| = " + std::to_string(G.order()) + " exceeds bound " + std::to_string(bound));
  check_extension_problem(p);
  std::set<int> ns(p.N.begin(), p.N.end());
  const int target = G.order() / static_cast<int>(ns.size());
  Mask nmask = 0;
  for (int x : ns) nmask |= Mask{1} << x;
  const Mask e = Mask{1} << G.identity();

  // Grow subgroups meeting N trivially one generator at a time; seen prunes repeats.
  std::set<Mask> seen{e};
  std::vector<Mask> layer{e};
  while (!layer.empty()) {
    std::vector<Mask> next;
    for (Mask h : layer) {
      if (__builtin_popcountll(h) == target) {
        ComplementResult r{true, {}};
        for (int a = 0; a < G.order(); ++a)
          if (h >> a & 1) r.complement.push_back(a);
        return r;
      }
      for (int a = 0; a < G.order(); ++a) {
        if (h >> a & 1 || nmask >> a & 1) continue;
        Mask k = closure(G, h | (Mask{1} << a));
        if ((k & nmask) != e) continue;
        const int sz = __builtin_popcountll(k);
        if (sz > target || target % sz != 0) continue;
        if (seen.insert(k).second) next.push_back(k);
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return {};
}

SesVerdict ses_verdict(const TitsIndex& idx, const ExtensionProblem* tower, int bound) {
  const AutR aut = aut_r(idx.type);
  const int g = idx.g;
  if (g != 1 && g != 2 && g != 3 && g != 6) throw Error(Errc::BadInput, "g must be 1, 2, 3 or 6");
  if (g > 1 && aut == AutR::Unsupported) throw Error(Errc::BadInput, "Aut R is not modelled for this isogeny type");
  if ((g == 2 && aut == AutR::Trivial) || ((g == 3 || g == 6) && aut != AutR::S3))
    throw Error(Errc::BadInput, "g = " + std::to_string(g) + " is not admissible for this type");
  if (g == 1 || g == 6) return {true, false, {}};
  if (!tower) throw Error(Errc::BadTower, "g = " + std::to_string(g) + " needs a Galois tower");
  std::set<int> ns(tower->N.begin(), tower->N.end());
  if (static_cast<int>(ns.size()) != g)
    throw Error(Errc::BadTower, "|N| = " + std::to_string(ns.size()) + " but g = " + std::to_string(g));
  ComplementResult c = extension_splits(*tower, bound);
  return {c.splits, true, c};
}

}  // namespace cyclalg
