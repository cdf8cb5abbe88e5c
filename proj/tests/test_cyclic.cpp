#include "cyclalg/cyclic.hpp"
#include "cyclalg/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cyclalg;
using namespace testutil;
using LS = LaurentSeries;

namespace {

struct Case {
  unsigned p;
  int i, d, r;
};
const Case kCases[] = {{2, 1, 2, 1}, {2, 1, 3, 1}, {3, 1, 2, 1}, {2, 2, 3, 1}};

CyclicAlgebra make(const Case& c, int prec = 16) { return CyclicAlgebra(build_tower(c.p, c.i, c.d, 1), c.i, c.d, c.r, prec); }

}  // namespace

TEST_CASE("defining relations") {
  for (const auto& cs : kCases) {
    CyclicAlgebra A = make(cs);
    const FieldTower& F = A.tower();
    CHECK(A.is_division());
    CHECK(A.equal(A.mul(A.u(), A.u(A.d() - 1)), A.from_E(LS::T(F, A.id(), A.r()))));
    FFElement z = F.subfield_generator(A.id());
    AlgebraElement Z = A.from_E(A.E(z));
    // x u = u sigma(x), i.e. u^{-1} x u = F^i(x)
    CHECK(A.equal(A.mul(Z, A.u()), A.mul(A.u(), A.from_E(A.E(F.frobenius(z, A.i()))))));
    AlgebraElement uinv = A.mul(A.u(A.d() - 1), A.from_E(LS::T(F, A.id(), -A.r())));
    CHECK(A.equal(A.mul(uinv, A.u()), A.one()));
    CHECK(A.equal(A.mul(A.mul(uinv, Z), A.u()), A.from_E(A.E(F.frobenius(z, A.i())))));
    CHECK(A.equal(A.inverse(A.u()), uinv));
    std::mt19937_64 rng(cs.p * 100 + cs.d);
    LS x = random_series(F, A.id(), rng, -1, 12), y = random_series(F, A.id(), rng, 0, 12);
    CHECK(A.equal(A.mul(A.from_E(x), A.from_E(y)), A.from_E(x * y)));
  }
}

TEST_CASE("regular representation") {
  auto F = build_tower(3, 1, 2, 1);
  CyclicAlgebra A(F, 1, 2, 1);
  SeriesMatrix I = A.rep(A.one());
  CHECK(equal_within(I(0, 0), A.E_one()));
  CHECK(I(0, 1).is_zero());
  SeriesMatrix U = A.rep(A.u());
  CHECK(U(0, 0).is_zero());
  CHECK(equal_within(U(0, 1), LS::T(*F, 2, 1)));
  CHECK(equal_within(U(1, 0), A.E_one()));
  CHECK(U(1, 1).is_zero());
  CHECK(equal_within(A.nrd(A.u()), -LS::T(*F, 2, 1)));

  std::mt19937_64 rng(3);
  for (const auto& cs : kCases) {
    CyclicAlgebra B = make(cs);
    LS x = random_unit(B.tower(), B.id(), rng, 12);
    SeriesMatrix R = B.rep(B.from_E(x));
    for (int s = 0; s < B.d(); ++s)
      for (int t = 0; t < B.d(); ++t) {
        if (s == t) CHECK(equal_within(R(s, t), B.sigma(x, s)));
        else CHECK(R(s, t).is_zero());
      }
    for (int it = 0; it < 10; ++it) {
      AlgebraElement a = random_element(B, rng, 12), b = random_element(B, rng, 12);
      CHECK(equal_within(B.rep(B.mul(a, b)), B.rep(a) * B.rep(b)));
    }
  }
}

TEST_CASE("ring axioms") {
  std::mt19937_64 rng(4);
  for (const auto& cs : kCases) {
    CyclicAlgebra A = make(cs);
    for (int it = 0; it < 15; ++it) {
      AlgebraElement a = random_element(A, rng, 12), b = random_element(A, rng, 12), c = random_element(A, rng, 12);
      CHECK(A.equal(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c))));
      CHECK(A.equal(A.mul(a, A.add(b, c)), A.add(A.mul(a, b), A.mul(a, c))));
      CHECK(A.equal(A.mul(A.add(a, b), c), A.add(A.mul(a, c), A.mul(b, c))));
      CHECK(A.equal(A.mul(a, A.inverse(a)), A.one()));
      CHECK(A.equal(A.mul(A.inverse(a), a), A.one()));
    }
  }
}

TEST_CASE("reduced norm") {
  std::mt19937_64 rng(5);
  for (const auto& cs : kCases) {
    CyclicAlgebra A = make(cs);
    CHECK(equal_within(A.nrd(A.one()), A.E_one()));
    for (int it = 0; it < 20; ++it) {
      AlgebraElement a = random_element(A, rng, 16), b = random_element(A, rng, 16);
      LS na = A.nrd(a);
      CHECK(coefficients_in(na, A.i()));
      CHECK(equal_within(A.nrd(A.mul(a, b)), na * A.nrd(b)));
      LS x = random_series(A.tower(), A.id(), rng, -1, 16);
      CHECK(equal_within(A.nrd(A.from_E(x)), unramified_norm(x, A.i(), A.d())));
    }
  }
  // d = 2 closed form: Nrd(a0 + u a1) = a0 sigma(a0) - T^r a1 sigma(a1)
  auto F = build_tower(3, 1, 2, 1);
  CyclicAlgebra B(F, 1, 2, 1);
  for (int it = 0; it < 20; ++it) {
    AlgebraElement a = random_element(B, rng, 14);
    LS want = a.c[0] * B.sigma(a.c[0], 1) - shift(a.c[1] * B.sigma(a.c[1], 1), B.r());
    CHECK(equal_within(B.nrd(a), want));
  }
}

TEST_CASE("matrix reduced norm and inverse") {
  std::mt19937_64 rng(6);
  CyclicAlgebra A = make({2, 1, 3, 1});
  CHECK(equal_within(mat_nrd(A, mat_identity(A, 2)), A.E_one()));
  AlgebraElement a = random_element(A, rng, 14);
  std::vector<AlgebraElement> dg{a, A.one(), A.one()};
  CHECK(equal_within(mat_nrd(A, mat_diag(A, dg)), A.nrd(a)));
  for (int it = 0; it < 5; ++it) {
    AlgebraMatrix m = random_matrix(A, 2, rng, 14), k = random_matrix(A, 2, rng, 14);
    CHECK(equal_within(mat_nrd(A, mat_mul(A, m, k)), mat_nrd(A, m) * mat_nrd(A, k)));
    AlgebraMatrix mi = mat_inverse(A, m);
    CHECK(mat_equal(A, mat_mul(A, m, mi), mat_identity(A, 2)));
    CHECK(mat_equal(A, mat_mul(A, mi, m), mat_identity(A, 2)));
  }
}

TEST_CASE("phi automorphisms") {
  std::mt19937_64 rng(7);
  for (const auto& cs : kCases) {
    CyclicAlgebra A = make(cs);
    const FieldTower& F = A.tower();
    SemilinearAuto id = identity_auto(A, 1);
    CHECK(is_identity_action(A, id).equal);
    CHECK(is_identity_action(A, phi_auto(A, 1, LocalFieldAuto::identity(F, A.id(), A.prec()), A.E_one())).equal);
    for (int it = 0; it < 10; ++it) {
      SemilinearAuto f = random_phi(A, 1, rng);
      // image of u is u*x
      CHECK(A.equal(apply_phi(A, f, A.u()), A.mul(A.u(), A.from_E(f.x))));
      for (int k = 0; k < 5; ++k) {
        AlgebraElement a = random_element(A, rng, 14), b = random_element(A, rng, 14);
        CHECK(A.equal(apply_phi(A, f, A.mul(a, b)), A.mul(apply_phi(A, f, a), apply_phi(A, f, b))));
        // Nrd(phi(a)) = alpha(Nrd(a))
        CHECK(equal_within(A.nrd(apply_phi(A, f, a)), f.alphaE.apply(A.nrd(a))));
      }
      SemilinearAuto g = random_phi(A, 1, rng), h = random_phi(A, 1, rng);
      CHECK(same_action(A, compose(A, f, identity_auto(A, 1)), f).equal);
      CHECK(is_identity_action(A, compose(A, f, inverse(A, f))).equal);
      CHECK(is_identity_action(A, compose(A, inverse(A, f), f)).equal);
      CHECK(same_action(A, compose(A, compose(A, f, g), h), compose(A, f, compose(A, g, h))).equal);
      AlgebraElement a = random_element(A, rng, 14);
      CHECK(A.equal(apply_phi(A, compose(A, f, g), a), apply_phi(A, f, apply_phi(A, g, a))));
    }
    // non-admissible x
    LocalFieldAuto aE = LocalFieldAuto::identity(F, A.id(), A.prec());
    try {
      phi_auto(A, 1, aE, LS::T(F, A.id()));
      FAIL("expected AdmissibilityFailure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::AdmissibilityFailure);
    }
  }
}

TEST_CASE("semilinear automorphisms of matrices") {
  std::mt19937_64 rng(8);
  CyclicAlgebra A = make({2, 1, 3, 1});
  const int n = 2;
  for (int it = 0; it < 5; ++it) {
    SemilinearAuto f = compose(A, intaut(A, random_matrix(A, n, rng, 14)), random_phi(A, n, rng));
    SemilinearAuto g = compose(A, intaut(A, random_matrix(A, n, rng, 14)), random_phi(A, n, rng));
    AlgebraMatrix m = random_matrix(A, n, rng, 14);
    CHECK(mat_equal(A, apply(A, compose(A, f, g), m), apply(A, f, apply(A, g, m))));
    CHECK(equal_within(mat_nrd(A, apply(A, f, m)), f.alphaE.apply(mat_nrd(A, m))));
    CHECK(is_identity_action(A, compose(A, f, inverse(A, f))).equal);
    // a central inner part acts trivially
    AlgebraElement t = A.from_E(LS::T(A.tower(), A.id(), 3) + A.E_one());
    CHECK(is_identity_action(A, intaut(A, mat_scalar(A, n, t))).equal);
  }
}
