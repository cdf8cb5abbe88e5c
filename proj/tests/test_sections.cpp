#include <random>

#include "cyclalg/errors.hpp"
#include "cyclalg/sections.hpp"
#include "doctest.h"

using namespace cyclalg;

namespace {

SectionContext ctx_of(unsigned p, int i, int d, int r, int n, int prec = 24) {
  SectionOptions o;
  o.prec = prec;
  return make_section_context(p, i, d, r, n, o);
}

void require_all_pass(const VerificationReport& rep) {
  for (const auto& c : rep.checks) {
    INFO(c.name << ": " << c.failure);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("context parameters") {
  auto c = ctx_of(2, 2, 3, 1, 3);
  CHECK(c.a == 1);
  CHECK(c.b == 3);
  CHECK(c.ap == 2);
  CHECK(c.bp == 1);
  CHECK((c.c * c.ap + 1) % c.d == 0);
  CHECK(c.F->M() == 18);
  CHECK_THROWS_AS(ctx_of(2, 2, 3, 1, 1), Error);  // bb' = 3 does not divide 1
  CHECK_THROWS_AS(ctx_of(2, 1, 2, 1, 1), Error);  // p | d
  CHECK_THROWS_AS(ctx_of(2, 1, 3, 3, 1), Error);  // gcd(d, r) != 1
  auto w = ctx_of(2, 3, 3, 1, 3);
  CHECK(w.a == 7);
  CHECK(w.bp == 3);
}

TEST_CASE("root of zeta") {
  auto c = ctx_of(2, 1, 3, 1, 1);
  CHECK(root_of_zeta(c) == c.F->one());
  auto c5 = ctx_of(2, 2, 5, 1, 1);
  REQUIRE(c5.a == 3);
  CHECK(root_of_zeta(c5) == c5.F->pow(c5.zeta, 2));
  CHECK(c5.F->pow(root_of_zeta(c5), 5) == c5.zeta);
  for (auto [p, i, d, r, n] : std::vector<std::array<int, 5>>{{2, 2, 5, 1, 1}, {2, 3, 3, 2, 3}, {3, 2, 5, 3, 1}, {2, 2, 7, 3, 1}}) {
    auto k = ctx_of(p, i, d, r, n);
    const FFElement z = root_of_zeta(k);
    CHECK(k.F->pow(z, k.a) == k.F->one());
    CHECK(k.F->pow(z, static_cast<std::uint64_t>(k.d) * k.bp) == k.F->pow(k.zeta, static_cast<std::uint64_t>(k.b) * r));
  }
}

TEST_CASE("section on J(K)") {
  auto c = ctx_of(2, 1, 3, 1, 1, 32);
  const CyclicAlgebra& A = *c.A;
  const FieldTower& F = *c.F;
  CHECK(is_identity_action(A, section_J(c, LocalFieldAuto::identity(F, 1, 32))).equal);

  LocalFieldAuto al(1, 0, LaurentSeries::T(F, 1) + LaurentSeries::T(F, 1, 2), 32);
  LaurentSeries x = x_alpha(c, al);
  CHECK(x.val() == 0);
  CHECK(x.leading() == F.one());
  CHECK(equal_within(pow(x, 3, 32), LaurentSeries::constant(F, 1, F.one()) + LaurentSeries::T(F, 1)));
  SemilinearAuto direct = phi_auto(A, 1, extend_to_E(al, 3), x.over(3));
  CHECK(same_action(A, section_J(c, al), direct).equal);

  LocalFieldAuto other(1, 0, LaurentSeries::T(F, 1) + LaurentSeries::T(F, 1, 3), 32);
  CHECK_FALSE(same_action(A, section_J(c, al), section_J(c, other)).equal);
  auto c4 = ctx_of(2, 2, 5, 1, 1);
  CHECK_THROWS_AS(section_J(c4, LocalFieldAuto::ev(*c4.F, 2, c4.zeta, 24)), Error);
  CHECK_THROWS_AS(section_J(c4, LocalFieldAuto::frobenius(*c4.F, 2, 1, 24)), Error);
}

TEST_CASE("C_a section") {
  auto c = ctx_of(2, 2, 5, 1, 1);
  const CyclicAlgebra& A = *c.A;
  CHECK(is_identity_action(A, section_Ca(c, 0)).equal);
  CHECK(is_identity_action(A, power(A, section_Ca(c, 1), c.a)).equal);
  CHECK_FALSE(is_identity_action(A, section_Ca(c, 1)).equal);
  for (int j = 0; j < 3; ++j)
    for (int jp = 0; jp < 3; ++jp)
      CHECK(same_action(A, compose(A, section_Ca(c, j), section_Ca(c, jp)), section_Ca(c, j + jp)).equal);
  auto w = ctx_of(2, 3, 3, 1, 3);
  CHECK(is_identity_action(*w.A, power(*w.A, section_Ca(w, 1), w.a)).equal);
  CHECK(same_action(*w.A, compose(*w.A, section_Ca(w, 3), section_Ca(w, 5)), section_Ca(w, 1)).equal);
}

TEST_CASE("C_b section") {
  auto one = ctx_of(2, 2, 5, 1, 1);
  CHECK(one.y == one.F->one());
  CHECK(section_Cb(one, 1).inner_trivial);

  auto c = ctx_of(2, 2, 3, 1, 3);
  const CyclicAlgebra& A = *c.A;
  const FieldTower& F = *c.F;
  CHECK(F.frobenius(c.y, 6) == F.mul(F.pow(c.zeta, c.a * c.r), c.y));
  CHECK(is_identity_action(A, power(A, section_Cb(c, 1), c.b)).equal);
  CHECK_FALSE(is_identity_action(A, section_Cb(c, 1)).equal);
  CHECK(same_action(A, compose(A, section_Cb(c, 2), section_Cb(c, 2)), section_Cb(c, 1)).equal);

  // g^b is the scalar y^{-b}
  const auto g = embed_Cb(c, F.inv(c.y));
  const auto gb = embed_Cb(c, F.pow(F.inv(c.y), 3));
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) CHECK(gb[s * 3 + t] == (s == t ? F.pow(F.inv(c.y), 3) : F.zero()));
  // embedding is multiplicative and lands in F_{p^{id}}
  const FFElement v = F.generator(), w = F.pow(F.generator(), 77);
  const auto mv = embed_Cb(c, v), mw = embed_Cb(c, w), mvw = embed_Cb(c, F.mul(v, w));
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) {
      FFElement acc = F.zero();
      for (int k = 0; k < 3; ++k) acc = F.add(acc, F.mul(mv[s * 3 + k], mw[k * 3 + t]));
      CHECK(acc == mvw[s * 3 + t]);
      CHECK(F.in_subfield(mv[s * 3 + t], 6));
    }

  // another Hilbert 90 solution gives the same automorphisms
  for (FFElement lam : {F.subfield_generator(6), F.pow(F.subfield_generator(6), 11)}) {
    auto alt = with_y(c, F.mul(c.y, lam));
    for (int j = 0; j < 3; ++j) CHECK(same_action(A, section_Cb(c, j), section_Cb(alt, j)).equal);
  }
}

TEST_CASE("C_a' and C_b' sections") {
  auto c = ctx_of(2, 2, 3, 1, 3);
  const CyclicAlgebra& A = *c.A;
  CHECK(is_identity_action(A, section_Caprime(c, 0)).equal);
  CHECK(is_identity_action(A, power(A, section_Caprime(c, 1), c.ap)).equal);
  const LocalFieldAuto down = restrict_to(underlying(section_Caprime(c, 1)), c.i);
  CHECK(down.frob() == c.bp % c.i);

  auto w = ctx_of(2, 3, 3, 1, 3);
  const CyclicAlgebra& B = *w.A;
  CHECK(is_identity_action(B, section_Cbprime(w, 0)).equal);
  const SemilinearAuto f = section_Cbprime(w, 1);
  CHECK_FALSE(is_identity_action(B, f).equal);
  CHECK(is_identity_action(B, power(B, f, w.bp)).equal);
  CHECK(mat_equal(B, mat_pow(B, f.inner, w.bp), mat_scalar(B, 3, B.u())));
  CHECK(restrict_to(underlying(f), w.i).frob() == w.ap);
}

TEST_CASE("glued section") {
  auto c = ctx_of(2, 2, 3, 1, 3, 24);
  const CyclicAlgebra& A = *c.A;
  const FieldTower& F = *c.F;
  CHECK(is_identity_action(A, glue_section(c, LocalFieldAuto::identity(F, 2, 24))).equal);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 3; ++s) {
    LocalFieldAuto j = random_K_auto(c, rng, true);
    CHECK(same_action(A, glue_section(c, j), section_J(c, j)).equal);
    LocalFieldAuto g = random_K_auto(c, rng, false);
    GlueParts parts = glue_decompose(c, g);
    CHECK(parts.j2 == 0);  // a = 1
    CHECK(equal_within(underlying(glue_section(c, g)).image(), g.image().over(6)));
  }
}

TEST_CASE("verification of the reference contexts") {
  require_all_pass(verify_section(ctx_of(2, 1, 3, 1, 1, 32), 20, 1));
  require_all_pass(verify_section(ctx_of(2, 2, 3, 1, 3, 32), 10, 2));
  require_all_pass(verify_section(ctx_of(3, 1, 2, 1, 2, 32), 10, 3));
}

TEST_CASE("verification over further contexts") {
  for (auto [p, i, d, r, n] : std::vector<std::array<int, 5>>{
           {2, 3, 3, 1, 3}, {2, 3, 3, 2, 6}, {2, 2, 5, 1, 1}, {5, 1, 2, 1, 4}, {2, 2, 3, 2, 6}, {3, 2, 5, 1, 1}, {3, 1, 4, 1, 4}}) {
    INFO(p << " " << i << " " << d << " " << r << " " << n);
    require_all_pass(verify_section(ctx_of(p, i, d, r, n, 20), 4, 11));
  }
}

TEST_CASE("negative controls") {
  SectionOptions bad;
  bad.prec = 24;
  bad.c_override = 0;  // 0*a' + 1 is not divisible by d = 3
  auto t = make_section_context(2, 1, 3, 1, 1, bad);
  auto rep = verify_section(t, 3, 5);
  REQUIRE(rep.find("order_Caprime"));
  CHECK_FALSE(rep.find("order_Caprime")->pass);
  CHECK_FALSE(rep.all_pass());

  // the tower generator's power basis does not commute with F^{ci+b'} on F_{2^18}
  SectionOptions amb;
  amb.prec = 24;
  amb.basis = CbBasis::AmbientGenerator;
  auto a = make_section_context(2, 2, 3, 1, 3, amb);
  auto ra = verify_section(a, 10, 2);
  CHECK_FALSE(ra.find("rel_Caprime_Cb")->pass);
  CHECK(ra.find("order_Cb")->pass);
  CHECK(ra.find("y_independence")->pass);
}

TEST_CASE("reports are reproducible") {
  auto c = ctx_of(3, 1, 2, 1, 2, 16);
  auto r1 = verify_section(c, 4, 9), r2 = verify_section(c, 4, 9);
  REQUIRE(r1.checks.size() == r2.checks.size());
  for (std::size_t k = 0; k < r1.checks.size(); ++k) {
    CHECK(r1.checks[k].trials == r2.checks[k].trials);
    CHECK(r1.checks[k].min_prec == r2.checks[k].min_prec);
  }
}
