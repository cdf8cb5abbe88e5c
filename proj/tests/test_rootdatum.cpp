#include "doctest.h"

#include <numeric>
#include <set>

#include "cyclalg/errors.hpp"
#include "group_fixtures.hpp"

using namespace cyclalg;
using namespace fixtures;

namespace {

void check_complement(const ExtensionProblem& p, const ComplementResult& r) {
  REQUIRE(r.splits);
  CHECK(is_subgroup(p.G, r.complement));
  CHECK(static_cast<int>(r.complement.size()) * static_cast<int>(p.N.size()) == p.G.order());
  std::set<int> n(p.N.begin(), p.N.end());
  for (int h : r.complement)
    if (h != p.G.identity()) CHECK(n.count(h) == 0);
}

// Brute force over all subsets when |G| is tiny.
bool brute_splits(const ExtensionProblem& p) {
  const int n = p.G.order();
  const int target = n / static_cast<int>(p.N.size());
  std::set<int> ns(p.N.begin(), p.N.end());
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (__builtin_popcount(m) != target) continue;
    std::vector<int> h;
    bool meets = false;
    for (int a = 0; a < n; ++a)
      if (m >> a & 1) {
        h.push_back(a);
        if (a != p.G.identity() && ns.count(a)) meets = true;
      }
    if (!meets && is_subgroup(p.G, h)) return true;
  }
  return false;
}

std::vector<ExtensionProblem> small_problems() {
  std::vector<ExtensionProblem> out;
  auto c4 = cyclic_group(4);
  out.push_back({c4, {0, 2}});
  std::vector<std::vector<int>> elts;
  auto s3 = perm_group({{1, 2, 0}, {1, 0, 2}}, &elts);
  out.push_back({s3, cyclic_span(s3, index_of(elts, {1, 2, 0}))});
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  out.push_back({v4, {0, 2}});
  auto c6 = cyclic_group(6);
  out.push_back({c6, {0, 2, 4}});
  out.push_back({c6, {0, 3}});
  auto q8 = quaternion_group();
  out.push_back({q8, {0, 4}});
  out.push_back({q8, {0, 1, 4, 5}});
  auto c2c4 = direct_product(cyclic_group(2), cyclic_group(4));
  out.push_back({c2c4, {0, 2}});
  out.push_back({c2c4, {0, 4}});
  out.push_back({c2c4, {0, 6}});
  auto d4 = perm_group({{1, 2, 3, 0}, {3, 2, 1, 0}}, &elts);
  out.push_back({d4, cyclic_span(d4, index_of(elts, {1, 2, 3, 0}))});
  out.push_back({d4, cyclic_span(d4, index_of(elts, {2, 3, 0, 1}))});
  out.push_back({c4, {0, 1, 2, 3}});
  out.push_back({c4, {0}});
  return out;
}

}  // namespace

TEST_CASE("aut_r per simple type") {
  CHECK(aut_r({Family::A, 3, Isogeny::Adjoint}) == AutR::C2);
  CHECK(aut_r({Family::A, 1}) == AutR::Trivial);
  CHECK(aut_r({Family::D, 4, Isogeny::SimplyConnected}) == AutR::S3);
  CHECK(aut_r({Family::D, 4, Isogeny::Adjoint}) == AutR::S3);
  CHECK(aut_r({Family::D, 4, Isogeny::Intermediate}) == AutR::Unsupported);
  CHECK(aut_r({Family::D, 6, Isogeny::Intermediate}) == AutR::Unsupported);
  CHECK(aut_r({Family::D, 5, Isogeny::Intermediate}) == AutR::C2);
  CHECK(aut_r({Family::D, 7}) == AutR::C2);
  CHECK(aut_r({Family::E, 6}) == AutR::C2);
  for (auto t : {SimpleType{Family::B, 3}, SimpleType{Family::C, 4}, SimpleType{Family::E, 7}, SimpleType{Family::E, 8},
                 SimpleType{Family::F, 4}, SimpleType{Family::G, 2}})
    CHECK(aut_r(t) == AutR::Trivial);
  CHECK_THROWS_AS(aut_r({Family::E, 5}), Error);
  CHECK_THROWS_AS(aut_r({Family::F, 3}), Error);
  CHECK_THROWS_AS(aut_r({Family::G, 3}), Error);
  CHECK_THROWS_AS(aut_r({Family::A, 0}), Error);
}

TEST_CASE("group table validation") {
  CHECK_THROWS_AS(FiniteGroupTable({{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(FiniteGroupTable({{0, 2}, {1, 0}}), Error);
  // a Latin square with identity that is not associative (order 5 loop)
  std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroupTable{loop}, Error);
  auto s3 = perm_group({{1, 2, 0}, {1, 0, 2}});
  CHECK(s3.order() == 6);
  CHECK_THROWS_AS(check_extension_problem({s3, {0, 1}}), Error);  // element 1 is a 3-cycle, so not closed
  CHECK_THROWS_AS(check_extension_problem({s3, cyclic_span(s3, 2)}), Error);  // a transposition: not normal
}

TEST_CASE("complements of the reference extensions") {
  auto c4 = cyclic_group(4);
  CHECK_FALSE(extension_splits({c4, {0, 2}}).splits);

  std::vector<std::vector<int>> elts;
  auto s3 = perm_group({{1, 2, 0}, {1, 0, 2}}, &elts);
  ExtensionProblem sa{s3, cyclic_span(s3, index_of(elts, {1, 2, 0}))};
  auto r = extension_splits(sa);
  check_complement(sa, r);

  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  ExtensionProblem vp{v4, {0, 2}};
  r = extension_splits(vp);
  check_complement(vp, r);
  CHECK(r.complement == std::vector<int>{0, 1});

  ExtensionProblem c6{cyclic_group(6), {0, 2, 4}};
  check_complement(c6, extension_splits(c6));

  CHECK_FALSE(extension_splits({quaternion_group(), {0, 4}}).splits);
}

TEST_CASE("complement search agrees with subset brute force") {
  for (const auto& p : small_problems()) {
    auto r = extension_splits(p);
    CHECK(r.splits == brute_splits(p));
    if (r.splits) check_complement(p, r);
  }
}

TEST_CASE("Schur-Zassenhaus: coprime normal subgroups always have complements") {
  std::vector<std::vector<int>> elts;
  auto a4 = perm_group({{1, 2, 0, 3}, {1, 0, 3, 2}}, &elts);
  REQUIRE(a4.order() == 12);
  std::vector<int> v{index_of(elts, {0, 1, 2, 3}), index_of(elts, {1, 0, 3, 2}), index_of(elts, {2, 3, 0, 1}),
                     index_of(elts, {3, 2, 1, 0})};
  std::vector<ExtensionProblem> cases{{a4, v}};
  auto s3 = perm_group({{1, 2, 0}, {1, 0, 2}}, &elts);
  cases.push_back({s3, cyclic_span(s3, index_of(elts, {1, 2, 0}))});
  auto c15 = cyclic_group(15);
  cases.push_back({c15, {0, 5, 10}});
  auto c3c8 = direct_product(cyclic_group(3), cyclic_group(8));
  cases.push_back({c3c8, {0, 8, 16}});
  // C7 x| C3 (Frobenius group of order 21)
  auto f21 = perm_group({{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}}, &elts);
  REQUIRE(f21.order() == 21);
  cases.push_back({f21, cyclic_span(f21, index_of(elts, {1, 2, 3, 4, 5, 6, 0}))});
  for (const auto& p : cases) {
    const int n = static_cast<int>(p.N.size());
    REQUIRE(std::gcd(n, p.G.order() / n) == 1);
    check_complement(p, extension_splits(p));
  }
}

TEST_CASE("verdict is invariant under relabeling") {
  std::mt19937_64 rng(7);
  auto probs = small_problems();
  probs.push_back({direct_product(quaternion_group(), cyclic_group(2)), {0, 8}});
  for (const auto& p : probs) {
    const bool base = extension_splits(p).splits;
    for (int trial = 0; trial < 10; ++trial) {
      auto q = relabel(p, rng);
      auto r = extension_splits(q);
      CHECK(r.splits == base);
      if (r.splits) check_complement(q, r);
    }
  }
}

TEST_CASE("order bound") {
  auto big = direct_product(cyclic_group(5), cyclic_group(13));
  CHECK_THROWS_AS(extension_splits({big, {0}}), Error);
  auto c64 = cyclic_group(64);
  std::vector<int> n;
  for (int x = 0; x < 64; x += 32) n.push_back(x);
  CHECK_FALSE(extension_splits({c64, n}).splits);
  CHECK_THROWS_AS(extension_splits({cyclic_group(8), {0, 4}}, 4), Error);
}

TEST_CASE("ses verdicts") {
  ExtensionProblem c4c2{cyclic_group(4), {0, 2}};
  // a tower that would say non-split must be ignored for g = 1 and 6
  auto v = ses_verdict({1, {Family::B, 3}}, &c4c2);
  CHECK(v.splits);
  CHECK_FALSE(v.consulted_tower);
  v = ses_verdict({6, {Family::D, 4}}, &c4c2);
  CHECK(v.splits);
  CHECK_FALSE(v.consulted_tower);
  v = ses_verdict({6, {Family::D, 4}}, nullptr);
  CHECK(v.splits);

  v = ses_verdict({2, {Family::A, 3}}, &c4c2);
  CHECK_FALSE(v.splits);
  CHECK(v.consulted_tower);
  ExtensionProblem v4{direct_product(cyclic_group(2), cyclic_group(2)), {0, 2}};
  v = ses_verdict({2, {Family::A, 3}}, &v4);
  CHECK(v.splits);

  std::vector<std::vector<int>> elts;
  auto s3 = perm_group({{1, 2, 0}, {1, 0, 2}}, &elts);
  ExtensionProblem sa{s3, cyclic_span(s3, index_of(elts, {1, 2, 0}))};
  v = ses_verdict({3, {Family::D, 4}}, &sa);
  CHECK(v.splits);
  ExtensionProblem c9{cyclic_group(9), {0, 3, 6}};
  CHECK_FALSE(ses_verdict({3, {Family::D, 4}}, &c9).splits);

  try {
    ses_verdict({3, {Family::D, 4}}, &c4c2);
    FAIL("expected BadTower");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadTower);
  }
  CHECK_THROWS_AS(ses_verdict({2, {Family::A, 3}}, nullptr), Error);
  CHECK_THROWS_AS(ses_verdict({2, {Family::B, 3}}, &c4c2), Error);
  CHECK_THROWS_AS(ses_verdict({3, {Family::A, 3}}, &c4c2), Error);
  CHECK_THROWS_AS(ses_verdict({2, {Family::D, 4, Isogeny::Intermediate}}, &c4c2), Error);
  CHECK_THROWS_AS(ses_verdict({4, {Family::A, 3}}, &c4c2), Error);
}
