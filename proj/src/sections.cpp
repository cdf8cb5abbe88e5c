#include "cyclalg/sections.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cyclalg/brauer.hpp"
#include "cyclalg/errors.hpp"
#include "cyclalg/numtheory.hpp"

namespace cyclalg {

namespace {

AlgebraElement scalar_el(const SectionContext& ctx, FFElement c) { return ctx.A->from_E(ctx.A->E(c)); }

// diag(Id_b, v Id_b, ..., v^{b'-1} Id_b) repeated n/bb' times, and its inverse.
std::pair<AlgebraMatrix, AlgebraMatrix> staircase(const SectionContext& ctx, const LaurentSeries& v) {
  const CyclicAlgebra& A = *ctx.A;
  std::vector<LaurentSeries> pw{A.E_one()};
  for (int t = 1; t < ctx.bp; ++t) pw.push_back(pw.back() * v);
  std::vector<AlgebraElement> dg, dgi;
  for (int k = 0; k < ctx.n; ++k) {
    const LaurentSeries& e = pw[(k / ctx.b) % ctx.bp];
    dg.push_back(A.from_E(e));
    dgi.push_back(A.from_E(inverse(e, A.prec())));
  }
  return {mat_diag(A, dg), mat_diag(A, dgi)};
}

// Solve V c = rhs over F_{p^M} (V square, invertible).
std::vector<FFElement> solve_ff(const FieldTower& F, std::vector<std::vector<FFElement>> V, std::vector<FFElement> rhs) {
  const std::size_t m = rhs.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && V[piv][col].is_zero()) ++piv;
    if (piv == m) throw Error(Errc::ApparentZero, "singular Vandermonde system");
    std::swap(V[piv], V[col]);
    std::swap(rhs[piv], rhs[col]);
    const FFElement inv = F.inv(V[col][col]);
    for (auto& x : V[col]) x = F.mul(x, inv);
    rhs[col] = F.mul(rhs[col], inv);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || V[r][col].is_zero()) continue;
      const FFElement f = V[r][col];
      for (std::size_t k = 0; k < m; ++k) V[r][k] = F.sub(V[r][k], F.mul(f, V[col][k]));
      rhs[r] = F.sub(rhs[r], F.mul(f, rhs[col]));
    }
  }
  return rhs;
}

std::int64_t lcm64(std::int64_t x, std::int64_t y) { return x / std::gcd(x, y) * y; }

void choose_basis(SectionContext& ctx) {
  const FieldTower& F = *ctx.F;
  const int id = ctx.i * ctx.d, M = id * ctx.b;
  if (ctx.b == 1) {
    ctx.beta = F.one();
    ctx.beta_field = 1;
    return;
  }
  if (ctx.basis == CbBasis::Equivariant) {
    const std::int64_t k = static_cast<std::int64_t>(ctx.c) * ctx.i + ctx.bp;
    for (int s = 0; s < ctx.b; ++s) {
      const std::int64_t kk = k + static_cast<std::int64_t>(id) * s;
      const int g = static_cast<int>(std::gcd(kk, static_cast<std::int64_t>(M)));
      if (lcm64(id, g) == M) {
        ctx.beta = F.subfield_generator(g);
        ctx.beta_field = g;
        return;
      }
    }
    // No such shift; the f_{C_{a'}} relation will show it.  Unreachable when b' = 1.
  }
  ctx.beta = F.generator();
  ctx.beta_field = M;
}

void build_Y(SectionContext& ctx) {
  const CyclicAlgebra& A = *ctx.A;
  const int n = ctx.n;
  const auto g = embed_Cb(ctx, ctx.F->inv(ctx.y));
  AlgebraMatrix Y = mat_zero(A, n);
  for (int blk = 0; blk < n / ctx.b; ++blk)
    for (int s = 0; s < ctx.b; ++s)
      for (int t = 0; t < ctx.b; ++t) Y.at(blk * ctx.b + s, blk * ctx.b + t) = scalar_el(ctx, g[s * ctx.b + t]);
  ctx.Y = Y;
  ctx.Ypow.assign(1, mat_identity(A, n));
  for (int j = 1; j < ctx.b; ++j) ctx.Ypow.push_back(mat_mul(A, ctx.Ypow.back(), Y));
}

}  // namespace

SectionContext with_y(const SectionContext& ctx, FFElement y) {
  SectionContext r = ctx;
  r.y = y;
  build_Y(r);
  return r;
}

SectionContext make_section_context(unsigned p, int i, int d, int r, int n, const SectionOptions& opt) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (i < 1 || d < 1 || n < 1) throw Error(Errc::BadInput, "i, d, n must be positive");
  if (d % static_cast<int>(p) == 0) throw Error(Errc::BadInput, "p divides d");
  if (std::gcd(d, r) != 1) throw Error(Errc::BadInput, "gcd(d, r) != 1");
  if (opt.prec < 4) throw Error(Errc::BadInput, "precision must be at least 4");
  SectionContext ctx{};
  ctx.p = static_cast<int>(p);
  ctx.i = i;
  ctx.d = d;
  ctx.r = r;
  ctx.n = n;
  ctx.prec = opt.prec;
  const std::int64_t q1 = static_cast<std::int64_t>(checked_pow(p, static_cast<unsigned>(i))) - 1;
  auto [aa, bb] = d_part(q1, d);
  auto [aap, bbp] = d_part(i, d);
  ctx.a = static_cast<int>(aa);
  ctx.b = static_cast<int>(bb);
  ctx.ap = static_cast<int>(aap);
  ctx.bp = static_cast<int>(bbp);
  if (n % (ctx.b * ctx.bp) != 0)
    throw Error(Errc::BadInput, "bb' = " + std::to_string(ctx.b * ctx.bp) + " does not divide n = " + std::to_string(n));
  if (opt.c_override) {
    ctx.c = *opt.c_override;
  } else {
    ctx.c = static_cast<int>(mod_floor(-mod_inv(ctx.ap, d), d));
  }
  ctx.F = build_tower(p, i, d, ctx.b);
  ctx.A = std::make_shared<CyclicAlgebra>(ctx.F, i, d, r, opt.prec);
  const FieldTower& F = *ctx.F;
  ctx.zeta = F.subfield_generator(i);
  ctx.z = root_of_zeta(ctx);
  if (ctx.b == 1) {
    ctx.y = F.one();
  } else {
    ctx.y = F.hilbert90_solve(F.pow(ctx.zeta, static_cast<std::uint64_t>(ctx.a) * static_cast<std::uint64_t>(mod_floor(r, ctx.b))), i * d, ctx.b);
  }
  ctx.basis = opt.basis;
  choose_basis(ctx);

  build_Y(ctx);
  return ctx;
}

FFElement root_of_zeta(const SectionContext& ctx) {
  if (ctx.a == 1) return ctx.F->one();
  const std::int64_t t = mod_floor(ctx.r * mod_inv(mod_floor(static_cast<std::int64_t>(ctx.d) * ctx.bp, ctx.a), ctx.a), ctx.a);
  return ctx.F->pow(ctx.zeta, static_cast<std::uint64_t>(ctx.b) * static_cast<std::uint64_t>(t));
}

std::vector<FFElement> embed_Cb(const SectionContext& ctx, FFElement v) {
  const FieldTower& F = *ctx.F;
  const int b = ctx.b, id = ctx.i * ctx.d;
  if (b == 1) return {v};
  // coordinates of w: sum_s c_s sigma^k(beta)^s = sigma^k(w), sigma = F^{id}
  std::vector<std::vector<FFElement>> V(b, std::vector<FFElement>(b));
  for (int k = 0; k < b; ++k) {
    const FFElement bk = F.frobenius(ctx.beta, static_cast<std::int64_t>(id) * k);
    for (int s = 0; s < b; ++s) V[k][s] = F.pow(bk, static_cast<std::uint64_t>(s));
  }
  std::vector<FFElement> m(static_cast<std::size_t>(b) * b);
  for (int t = 0; t < b; ++t) {
    const FFElement w = F.mul(v, F.pow(ctx.beta, static_cast<std::uint64_t>(t)));
    std::vector<FFElement> rhs(b);
    for (int k = 0; k < b; ++k) rhs[k] = F.frobenius(w, static_cast<std::int64_t>(id) * k);
    const auto col = solve_ff(F, V, rhs);
    for (int s = 0; s < b; ++s) m[s * b + t] = col[s];
  }
  return m;
}

LaurentSeries x_alpha(const SectionContext& ctx, const LocalFieldAuto& alpha) {
  const FieldTower& F = *ctx.F;
  const LaurentSeries Tr = LaurentSeries::T(F, ctx.i, ctx.r);
  const LaurentSeries q = alpha.apply(Tr) * LaurentSeries::T(F, ctx.i, -ctx.r);
  return hensel_root(q.truncated(std::min(q.prec(), ctx.prec)), ctx.d * ctx.bp, ctx.prec);
}

SemilinearAuto section_J(const SectionContext& ctx, const LocalFieldAuto& alpha) {
  if (!alpha.in_J()) throw Error(Errc::BadInput, "automorphism is not in J(K)");
  const CyclicAlgebra& A = *ctx.A;
  const int id = ctx.i * ctx.d;
  const LaurentSeries x = x_alpha(ctx, alpha).over(id);
  SemilinearAuto f = phi_auto(A, ctx.n, extend_to_E(alpha, id), pow(x, ctx.bp, ctx.prec));
  if (ctx.bp == 1) return f;
  auto [X, Xi] = staircase(ctx, x);
  return compose(A, intaut(A, X, Xi), f);
}

SemilinearAuto section_Ca(const SectionContext& ctx, std::int64_t j) { return raw_Ca(ctx, mod_floor(j, ctx.a)); }
SemilinearAuto section_Cb(const SectionContext& ctx, std::int64_t j) { return raw_Cb(ctx, mod_floor(j, ctx.b)); }
SemilinearAuto section_Caprime(const SectionContext& ctx, std::int64_t j) { return raw_Caprime(ctx, mod_floor(j, ctx.ap)); }
SemilinearAuto section_Cbprime(const SectionContext& ctx, std::int64_t j) { return raw_Cbprime(ctx, mod_floor(j, ctx.bp)); }

SemilinearAuto raw_Ca(const SectionContext& ctx, std::int64_t j) {
  const CyclicAlgebra& A = *ctx.A;
  const FieldTower& F = *ctx.F;
  const int id = ctx.i * ctx.d;
  const FFElement s = F.pow(ctx.zeta, static_cast<std::uint64_t>(ctx.b) * static_cast<std::uint64_t>(j));
  const FFElement zj = F.pow(ctx.z, static_cast<std::uint64_t>(j));
  SemilinearAuto f = phi_auto(A, ctx.n, LocalFieldAuto::ev(F, id, s, ctx.prec),
                              A.E(F.pow(zj, static_cast<std::uint64_t>(ctx.bp))));
  if (ctx.bp == 1 || j == 0) return f;
  auto [Z, Zi] = staircase(ctx, A.E(zj));
  return compose(A, intaut(A, Z, Zi), f);
}

SemilinearAuto raw_Cb(const SectionContext& ctx, std::int64_t j) {
  const CyclicAlgebra& A = *ctx.A;
  const FieldTower& F = *ctx.F;
  const int id = ctx.i * ctx.d;
  const FFElement s = F.pow(ctx.zeta, static_cast<std::uint64_t>(ctx.a) * static_cast<std::uint64_t>(j));
  const FFElement ratio = F.mul(F.frobenius(ctx.y, ctx.i), F.inv(ctx.y));
  SemilinearAuto f = phi_auto(A, ctx.n, LocalFieldAuto::ev(F, id, s, ctx.prec),
                              A.E(F.pow(ratio, static_cast<std::uint64_t>(j))));
  if (j == 0) return f;
  const AlgebraMatrix Yj = j < ctx.b ? ctx.Ypow[j] : mat_pow(A, ctx.Y, static_cast<int>(j));
  return compose(A, intaut(A, Yj, mat_inverse(A, Yj)), f);
}

SemilinearAuto raw_Caprime(const SectionContext& ctx, std::int64_t j) {
  const CyclicAlgebra& A = *ctx.A;
  const int id = ctx.i * ctx.d;
  const std::int64_t e = mod_floor(j * (static_cast<std::int64_t>(ctx.c) * ctx.i + ctx.bp), id);
  return phi_auto(A, ctx.n, LocalFieldAuto::frobenius(*ctx.F, id, e, ctx.prec), A.E_one());
}

SemilinearAuto raw_Cbprime(const SectionContext& ctx, std::int64_t j) {
  const CyclicAlgebra& A = *ctx.A;
  const int id = ctx.i * ctx.d;
  SemilinearAuto f = phi_auto(A, ctx.n, LocalFieldAuto::frobenius(*ctx.F, id, j * ctx.ap, ctx.prec), A.E_one());
  if (j == 0) return f;
  const int bb = ctx.b * ctx.bp;
  AlgebraMatrix W = mat_zero(A, ctx.n), Wi = mat_zero(A, ctx.n);
  const AlgebraElement uinv = A.inverse(A.u());
  for (int blk = 0; blk < ctx.n / bb; ++blk) {
    const int o = blk * bb;
    for (int s = 0; s < ctx.b; ++s) {
      W.at(o + s, o + bb - ctx.b + s) = A.u();
      Wi.at(o + bb - ctx.b + s, o + s) = uinv;
      for (int t = 1; t < ctx.bp; ++t) {
        W.at(o + t * ctx.b + s, o + (t - 1) * ctx.b + s) = A.one();
        Wi.at(o + (t - 1) * ctx.b + s, o + t * ctx.b + s) = A.one();
      }
    }
  }
  AlgebraMatrix Wj = W, Wji = Wi;
  for (int t = 1; t < j; ++t) {
    Wj = mat_mul(A, Wj, W);
    Wji = mat_mul(A, Wji, Wi);
  }
  return compose(A, intaut(A, Wj, Wji), f);
}

GlueParts glue_decompose(const SectionContext& ctx, const LocalFieldAuto& alpha) {
  if (alpha.field_degree() != ctx.i) throw Error(Errc::MismatchedTower, "expected an automorphism of K");
  const FieldTower& F = *ctx.F;
  AutoDecomposition parts = decompose(alpha);
  // scalar = zeta^m, m = b j2 + a j3 mod ab
  const std::uint64_t q1 = static_cast<std::uint64_t>(ctx.a) * ctx.b;
  std::int64_t m = -1;
  {
    FFElement x = F.one();
    for (std::uint64_t k = 0; k < q1; ++k, x = F.mul(x, ctx.zeta))
      if (x == parts.scalar) {
        m = static_cast<std::int64_t>(k);
        break;
      }
  }
  if (m < 0) throw Error(Errc::DecompositionFailure, "leading coefficient is not a power of zeta");
  GlueParts g{parts.jpart, 0, 0, 0, 0};
  if (ctx.a > 1) g.j2 = static_cast<int>(mod_floor(m * mod_inv(ctx.b % ctx.a, ctx.a), ctx.a));
  if (ctx.b > 1) g.j3 = static_cast<int>(mod_floor(m * mod_inv(ctx.a % ctx.b, ctx.b), ctx.b));
  const std::int64_t e = mod_floor(parts.frob, ctx.i);
  if (ctx.ap > 1) g.j4 = static_cast<int>(mod_floor(e * mod_inv(ctx.bp % ctx.ap, ctx.ap), ctx.ap));
  if (ctx.bp > 1) g.j5 = static_cast<int>(mod_floor(e * mod_inv(ctx.ap % ctx.bp, ctx.bp), ctx.bp));
  if (mod_floor(static_cast<std::int64_t>(ctx.b) * g.j2 + static_cast<std::int64_t>(ctx.a) * g.j3 - m, q1) != 0 ||
      mod_floor(static_cast<std::int64_t>(ctx.bp) * g.j4 + static_cast<std::int64_t>(ctx.ap) * g.j5 - e, ctx.i) != 0)
    throw Error(Errc::DecompositionFailure, "scalar or Frobenius part does not factor");
  return g;
}

SemilinearAuto glue_section(const SectionContext& ctx, const LocalFieldAuto& alpha) {
  const CyclicAlgebra& A = *ctx.A;
  GlueParts g = glue_decompose(ctx, alpha);
  SemilinearAuto f = section_J(ctx, g.jpart);
  f = compose(A, f, section_Ca(ctx, g.j2));
  f = compose(A, f, section_Cb(ctx, g.j3));
  f = compose(A, f, section_Caprime(ctx, g.j4));
  return compose(A, f, section_Cbprime(ctx, g.j5));
}

LocalFieldAuto random_K_auto(const SectionContext& ctx, std::mt19937_64& rng, bool in_J) {
  const FieldTower& F = *ctx.F;
  const auto& el = F.subfield_elements(ctx.i);
  auto pick = [&](bool nonzero) {
    FFElement x;
    do x = el[rng() % el.size()];
    while (nonzero && x.is_zero());
    return x;
  };
  std::vector<FFElement> c(static_cast<std::size_t>(ctx.prec));
  c[0] = in_J ? F.one() : pick(true);
  for (std::size_t k = 1; k < c.size(); ++k) c[k] = pick(false);
  const int e = in_J ? 0 : static_cast<int>(rng() % static_cast<unsigned>(ctx.i));
  return LocalFieldAuto(ctx.i, e, LaurentSeries::from_coeffs(F, ctx.i, 1, c, ctx.prec + 1), ctx.prec);
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

struct Recorder {
  CheckResult& c;
  void record(const ActionCheck& a, const std::string& trial) {
    ++c.trials;
    c.min_prec = std::min(c.min_prec, a.min_prec);
    if (!a.equal && c.pass) {
      c.pass = false;
      c.failure = trial;
    }
  }
  void record(bool ok, int prec, const std::string& trial) {
    ActionCheck a;
    a.equal = ok;
    a.min_prec = prec;
    record(a, trial);
  }
};

// h o f o h^{-1}
SemilinearAuto conj(const CyclicAlgebra& A, const SemilinearAuto& h, const SemilinearAuto& f) {
  return compose(A, compose(A, h, f), inverse(A, h));
}

std::string tag(const char* what, std::int64_t j, std::int64_t jp) {
  std::ostringstream os;
  os << what << " j=" << j << " j'=" << jp;
  return os.str();
}

}  // namespace

VerificationReport verify_section(const SectionContext& ctx, int samples, std::uint64_t seed) {
  const CyclicAlgebra& A = *ctx.A;
  const FieldTower& F = *ctx.F;
  const int id = ctx.i * ctx.d;
  VerificationReport rep{ctx.p, ctx.i, ctx.d, ctx.r, ctx.n, ctx.a, ctx.b, ctx.ap, ctx.bp, ctx.c, ctx.prec, samples, seed,
                         ctx.basis == CbBasis::Equivariant ? "equivariant" : "ambient", {}};
  auto add = [&](const char* name, const char* desc) -> CheckResult& {
    rep.checks.push_back(CheckResult{name, desc, true, 0, LaurentSeries::kExact, {}});
    return rep.checks.back();
  };
  rep.checks.reserve(24);
  std::mt19937_64 rng(seed);
  auto rint = [&](int m) { return m <= 1 ? 0 : static_cast<int>(rng() % static_cast<unsigned>(m)); };
  auto Fpow = [&](std::int64_t e) { return LocalFieldAuto::frobenius(F, ctx.i, e, ctx.prec); };
  auto evK = [&](FFElement s) { return LocalFieldAuto::ev(F, ctx.i, s, ctx.prec); };
  auto zpow = [&](std::int64_t e) { return F.pow(ctx.zeta, static_cast<std::uint64_t>(mod_floor(e, ctx.a * ctx.b))); };

  {
    Recorder z{add("root_of_zeta", "z lies in C_a, z^a = 1 and z^{db'} = zeta^{br}")};
    const FFElement z1 = F.pow(ctx.z, static_cast<std::uint64_t>(ctx.d) * ctx.bp);
    const bool ok = z1 == F.pow(ctx.zeta, static_cast<std::uint64_t>(ctx.b) * ctx.r) &&
                    F.pow(ctx.z, static_cast<std::uint64_t>(ctx.a)) == F.one();
    z.record(ok, LaurentSeries::kExact, "z");
  }
  {
    Recorder h{add("hilbert90", "y in F_{p^{idb}} with F^{id}(y) = zeta^{ar} y")};
    const FFElement lhs = F.frobenius(ctx.y, id);
    const FFElement rhs = F.mul(F.pow(ctx.zeta, static_cast<std::uint64_t>(ctx.a) * static_cast<std::uint64_t>(mod_floor(ctx.r, ctx.b))), ctx.y);
    h.record(ctx.y.is_zero() ? false : lhs == rhs, LaurentSeries::kExact, "y");
  }
  {
    Recorder o{add("order_Ca", "f_{C_a}(ev(zeta^b T))^a acts trivially")};
    o.record(is_identity_action(A, power(A, raw_Ca(ctx, 1), ctx.a)), "f^a");
  }
  {
    Recorder o{add("order_Cb", "f_{C_b}(ev(zeta^a T))^b acts trivially, including on u Id_n")};
    o.record(is_identity_action(A, power(A, raw_Cb(ctx, 1), ctx.b)), "f^b");
  }
  {
    Recorder o{add("order_Caprime", "f_{C_a'}(F^{b'})^{a'} acts trivially (well-definedness, needs ca'+1 in dZ)")};
    o.record(is_identity_action(A, power(A, raw_Caprime(ctx, 1), ctx.ap)), "f^a'");
  }
  {
    Recorder o{add("order_Cbprime", "f_{C_b'}(F^{a'})^{b'} acts trivially")};
    o.record(is_identity_action(A, power(A, raw_Cbprime(ctx, 1), ctx.bp)), "f^b'");
  }
  {
    Recorder o{add("y_independence", "f_{C_b} is unchanged when y is replaced by lambda*y, lambda in F_{p^{id}}^x")};
    if (ctx.b > 1) {
      const SectionContext alt = with_y(ctx, F.mul(ctx.y, F.subfield_generator(id)));
      for (int j = 1; j < ctx.b; ++j) o.record(same_action(A, section_Cb(ctx, j), section_Cb(alt, j)), tag("Cb", j, 0));
    }
  }

  CheckResult& cJ = add("J_cocycle", "x_{beta o alpha} = x_beta * beta(x_alpha) on J(K)");
  CheckResult& hJ = add("J_homomorphism", "f_J(beta o alpha) = f_J(beta) o f_J(alpha)");
  CheckResult& sJ = add("J_admissible", "x_alpha^{db'} = alpha(T^r)/T^r with x_alpha in 1 + T F_{p^i}[[T]]");
  CheckResult& rel1 = add("rel_Ca_Cb", "images of f_{C_a} and f_{C_b} commute");
  CheckResult& rel2 = add("rel_Ca_J", "f_{C_a}(s) f_J(alpha) f_{C_a}(s)^{-1} = f_J(s alpha s^{-1})");
  CheckResult& rel3 = add("rel_Cb_J", "f_{C_b}(s) f_J(alpha) f_{C_b}(s)^{-1} = f_J(s alpha s^{-1})");
  CheckResult& rel4 = add("rel_Caprime_Cbprime", "images of f_{C_a'} and f_{C_b'} commute");
  CheckResult& rel5 = add("rel_Caprime_Cb", "f_{C_a'}(F^{b'j}) conjugates f_{C_b}(ev(zeta^{aj'}T)) to f_{C_b}(ev(zeta^{aj'p^{b'j}}T))");
  CheckResult& rel6 = add("rel_Caprime_Ca", "f_{C_a'}(F^{b'j}) conjugates f_{C_a}(ev(zeta^{bj'}T)) to f_{C_a}(ev(zeta^{bj'p^{b'j}}T))");
  CheckResult& rel7 = add("rel_Caprime_J", "f_{C_a'}(F^{b'j}) f_J(alpha) f_{C_a'}(F^{b'j})^{-1} = f_J(F^{b'j} alpha F^{-b'j})");
  CheckResult& rel8 = add("rel_Cbprime_Cb", "f_{C_b'}(F^{a'j}) conjugates f_{C_b}(ev(zeta^{aj'}T)) to f_{C_b}(ev(zeta^{aj'p^{a'j}}T))");
  CheckResult& rel9 = add("rel_Cbprime_Ca", "f_{C_b'}(F^{a'j}) conjugates f_{C_a}(ev(zeta^{bj'}T)) to f_{C_a}(ev(zeta^{bj'p^{a'j}}T))");
  CheckResult& rel10 = add("rel_Cbprime_J", "f_{C_b'}(F^{a'j}) f_J(alpha) f_{C_b'}(F^{a'j})^{-1} = f_J(F^{a'j} alpha F^{-a'j})");
  CheckResult& hom = add("glue_homomorphism", "f(alpha o beta) = f(alpha) o f(beta) on random automorphisms of K");
  CheckResult& sec = add("section_property", "the underlying automorphism of f(alpha) restricts to alpha on K");

  auto p_pow_mod = [&](std::int64_t e, int m) {
    return static_cast<std::int64_t>(pow_mod(static_cast<std::uint64_t>(ctx.p), static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(m)));
  };

  for (int s = 0; s < samples; ++s) {
    const LocalFieldAuto al = random_K_auto(ctx, rng, true);
    const LocalFieldAuto be = random_K_auto(ctx, rng, true);
    const SemilinearAuto fa = section_J(ctx, al), fb = section_J(ctx, be);
    const LocalFieldAuto ba = compose(be, al);
    {
      const LaurentSeries xa = x_alpha(ctx, al), xb = x_alpha(ctx, be), xba = x_alpha(ctx, ba);
      const LaurentSeries rhs = xb * be.apply(xa);
      Recorder{cJ}.record(equal_within(xba, rhs), common_prec(xba, rhs), tag("J", s, 0));
      const LaurentSeries q = al.apply(LaurentSeries::T(F, ctx.i, ctx.r)) * LaurentSeries::T(F, ctx.i, -ctx.r);
      const LaurentSeries lhs = pow(xa, ctx.d * ctx.bp, ctx.prec);
      Recorder{sJ}.record(xa.leading() == F.one() && xa.val() == 0 && equal_within(lhs, q), common_prec(lhs, q), tag("J", s, 0));
    }
    Recorder{hJ}.record(same_action(A, section_J(ctx, ba), compose(A, fb, fa)), tag("J", s, 0));

    const int j = rint(std::max({ctx.a, ctx.b, ctx.ap, ctx.bp, 2})) + 1;
    const int jp = rint(std::max({ctx.a, ctx.b, 2})) + 1;

    Recorder{rel1}.record(same_action(A, compose(A, section_Ca(ctx, j), section_Cb(ctx, jp)),
                                      compose(A, section_Cb(ctx, jp), section_Ca(ctx, j))),
                          tag("Ca/Cb", j, jp));
    {
      const FFElement sa = zpow(static_cast<std::int64_t>(ctx.b) * j);
      const LocalFieldAuto c = compose(compose(evK(sa), al), evK(F.inv(sa)));
      Recorder{rel2}.record(same_action(A, conj(A, section_Ca(ctx, j), fa), section_J(ctx, c)), tag("Ca/J", j, 0));
      const FFElement sb = zpow(static_cast<std::int64_t>(ctx.a) * jp);
      const LocalFieldAuto cb = compose(compose(evK(sb), al), evK(F.inv(sb)));
      Recorder{rel3}.record(same_action(A, conj(A, section_Cb(ctx, jp), fa), section_J(ctx, cb)), tag("Cb/J", jp, 0));
    }
    Recorder{rel4}.record(same_action(A, compose(A, section_Caprime(ctx, j), section_Cbprime(ctx, jp)),
                                      compose(A, section_Cbprime(ctx, jp), section_Caprime(ctx, j))),
                          tag("Ca'/Cb'", j, jp));
    {
      const SemilinearAuto h = section_Caprime(ctx, j);
      const std::int64_t ex = static_cast<std::int64_t>(ctx.bp) * j;
      Recorder{rel5}.record(same_action(A, conj(A, h, section_Cb(ctx, jp)), section_Cb(ctx, jp * p_pow_mod(ex, ctx.b))),
                            tag("Ca'/Cb", j, jp));
      Recorder{rel6}.record(same_action(A, conj(A, h, section_Ca(ctx, jp)), section_Ca(ctx, jp * p_pow_mod(ex, ctx.a))),
                            tag("Ca'/Ca", j, jp));
      const LocalFieldAuto c = compose(compose(Fpow(ex), al), Fpow(-ex));
      Recorder{rel7}.record(same_action(A, conj(A, h, fa), section_J(ctx, c)), tag("Ca'/J", j, 0));
    }
    {
      const SemilinearAuto h = section_Cbprime(ctx, j);
      const std::int64_t ex = static_cast<std::int64_t>(ctx.ap) * j;
      Recorder{rel8}.record(same_action(A, conj(A, h, section_Cb(ctx, jp)), section_Cb(ctx, jp * p_pow_mod(ex, ctx.b))),
                            tag("Cb'/Cb", j, jp));
      Recorder{rel9}.record(same_action(A, conj(A, h, section_Ca(ctx, jp)), section_Ca(ctx, jp * p_pow_mod(ex, ctx.a))),
                            tag("Cb'/Ca", j, jp));
      const LocalFieldAuto c = compose(compose(Fpow(ex), al), Fpow(-ex));
      Recorder{rel10}.record(same_action(A, conj(A, h, fa), section_J(ctx, c)), tag("Cb'/J", j, 0));
    }

    const LocalFieldAuto x1 = random_K_auto(ctx, rng, false);
    const LocalFieldAuto x2 = random_K_auto(ctx, rng, false);
    const SemilinearAuto g1 = glue_section(ctx, x1);
    Recorder{hom}.record(same_action(A, glue_section(ctx, compose(x1, x2)), compose(A, g1, glue_section(ctx, x2))),
                         tag("glue", s, 0));
    const LocalFieldAuto back = restrict_to(underlying(g1), ctx.i);
    const bool ok = mod_floor(back.frob() - x1.frob(), ctx.i) == 0 && equal_within(back.image(), x1.image());
    Recorder{sec}.record(ok, common_prec(back.image(), x1.image()), tag("section", s, 0));
  }
  return rep;
}

}  // namespace cyclalg
