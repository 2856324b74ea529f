#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "hopfcoh/cohomology.hpp"
#include "hopfcoh/error.hpp"
#include "test_util.hpp"

using namespace hopfcoh;

namespace {

const RingSpec Z = RingSpec::integers();
const RingSpec Q = RingSpec::rationals();
const RingSpec F2 = RingSpec::prime_field(2);
const RingSpec F3 = RingSpec::prime_field(3);

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalConsistency;
}

// Cyclic group of order n acting trivially on the ring itself, read off the
// periodic resolution ... -> ZC_n -(g-1)-> ZC_n -> Z: odd degrees give the
// n-torsion of the coefficients, even positive degrees their quotient by n.
ModulePresentation cyclic_oracle(long n, const RingSpec& k, std::size_t degree) {
  if (degree == 0) return {k, 1, {}};
  if (k.kind() == RingKind::Integers) {
    if (degree % 2 == 1) return {k, 0, {}};
    return {k, 0, {mpz_class(n)}};
  }
  if (k.is_field()) return {k, mpz_class(n) % k.modulus() == 0 ? 1u : 0u, {}};
  // Z/m: both the n-torsion and the quotient are Z/gcd(n, m).
  mpz_class g;
  mpz_class nn(n);
  mpz_gcd(g.get_mpz_t(), nn.get_mpz_t(), k.modulus().get_mpz_t());
  if (g == 1) return {k, 0, {}};
  if (g == k.modulus()) return {k, 1, {}};
  return {k, 0, {g}};
}

// Homology of an explicit complex, independent of the normalized one.
std::vector<ModulePresentation> direct_homology(const CochainComplex& c) {
  std::vector<ModulePresentation> out;
  for (std::size_t n = 0; n < c.differentials.size(); ++n) {
    SparseMatrix in = n == 0 ? SparseMatrix(c.ring, c.ranks[0], 0) : c.differentials[n - 1];
    out.push_back(HomologyGroup::compute(c.differentials[n], in, HomologyGroup::Mode::PresentationOnly)
                      .presentation());
  }
  return out;
}

ComoduleData trivial(const HopfAlgebraData& h) { return trivial_comodule(h, 1); }

}  // namespace

TEST_CASE("hochschild complex shapes and square zero") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z);
  auto cx = hochschild_complex(trivial(c2.hopf), 4);
  CHECK(cx.ranks == std::vector<std::size_t>{1, 2, 4, 8, 16});
  cx.check_square_zero();

  auto mu2 = mu_n(2, Q).hopf;
  auto mc = hochschild_complex(trivial(mu2), 2);
  CHECK(mc.ranks[1] == 2);
  CHECK(mc.differentials[0].to_dense().is_zero());

  auto a2 = alpha_pr(2, 1, F2).hopf;
  CHECK(hochschild_complex(trivial(a2), 3).ranks == std::vector<std::size_t>{1, 2, 4, 8});
  CHECK(kind_of([&] { hochschild_complex(trivial(a2), 0); }) == ErrorKind::Usage);

  for (const RingSpec& k : {Z, F2, F3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      if (h.rank() > 4) continue;
      CobarComplex cc(regular_representation(h));
      cc.full(3);        // throws on a nonzero square
      cc.normalized(4);
    }
}

TEST_CASE("size guard") {
  setenv("HOPFCOH_MAX_RANK", "100", 1);
  auto s3 = constant_group_scheme(symmetric_group_table(3), Z).hopf;
  CHECK(kind_of([&] { Cohomology(trivial(s3), 3); }) == ErrorKind::SizeLimit);
  unsetenv("HOPFCOH_MAX_RANK");
  CHECK(max_cochain_rank() == 200000);
}

TEST_CASE("cyclic groups against the periodic resolution") {
  for (long n : {2, 3, 4}) {
    auto g = constant_group_scheme(cyclic_table(n), Z).hopf;
    auto hs = cohomology_groups(trivial(g), 5);
    for (std::size_t i = 0; i <= 5; ++i) CHECK_MESSAGE(hs[i] == cyclic_oracle(n, Z, i), "C", n, " H^", i);
  }
  for (long p : {2, 3}) {
    auto zp = RingSpec::integers_mod(p);
    auto g = constant_group_scheme(cyclic_table(p), zp).hopf;
    auto hs = cohomology_groups(trivial(g), 3);
    for (std::size_t i = 0; i <= 3; ++i) CHECK(hs[i] == cyclic_oracle(p, zp, i));
    CHECK(hs[1] == ModulePresentation{zp, 1, {}});
  }
  // Mixed moduli: C_4 with Z/6 and Z/2 coefficients, C_2 with Z/4.
  for (auto [n, m] : {std::pair{4L, 6L}, {4L, 2L}, {2L, 4L}, {3L, 4L}}) {
    auto k = RingSpec::integers_mod(m);
    auto g = constant_group_scheme(cyclic_table(n), k).hopf;
    auto hs = cohomology_groups(trivial(g), 4);
    for (std::size_t i = 0; i <= 4; ++i) CHECK_MESSAGE(hs[i] == cyclic_oracle(n, k, i), n, " ", m, " ", i);
  }
  for (const RingSpec& k : {F2, F3}) {
    auto g = constant_group_scheme(cyclic_table(2), k).hopf;
    auto hs = cohomology_groups(trivial(g), 4);
    for (std::size_t i = 0; i <= 4; ++i) CHECK(hs[i] == cyclic_oracle(2, k, i));
  }
}

TEST_CASE("symmetric group S3 in degree four") {
  // H^4(S3; Z) = Z/6 and H^2 = Z/2 (the abelianization dual), H^3 = 0.
  auto s3 = constant_group_scheme(symmetric_group_table(3), Z).hopf;
  auto hs = cohomology_groups(trivial(s3), 4);
  CHECK(hs[1].is_zero());
  CHECK(hs[2] == ModulePresentation{Z, 0, {2}});
  CHECK(hs[3].is_zero());
  CHECK(hs[4] == ModulePresentation{Z, 0, {6}});
}

TEST_CASE("diagonalizable and infinitesimal examples") {
  // mu_3 over Z: invariants are the degree-0 part, an exact functor.
  auto mu3 = mu_n(3, Z).hopf;
  std::vector<ComoduleData> family{trivial(mu3), regular_representation(mu3),
                                   tensor_comodule(regular_representation(mu3), regular_representation(mu3))};
  for (const auto& m : family) {
    auto hs = cohomology_groups(m, 4);
    for (std::size_t i = 1; i <= 4; ++i) CHECK(hs[i].is_zero());
    CHECK(hs[0].free_rank == invariants(m).cols());
    CHECK_FALSE(torsion_bound(m, 4).has_value());
  }
  // alpha_2 and constant C_2 over F_2: Ext over F_2[u]/(u^2) is F_2 in every degree.
  for (const auto& h : {alpha_pr(2, 1, F2).hopf, constant_group_scheme(cyclic_table(2), F2).hopf}) {
    auto hs = cohomology_groups(trivial(h), 5);
    for (const auto& p : hs) CHECK(p == ModulePresentation{F2, 1, {}});
  }
  // mu_2 over Q is linearly reductive.
  auto hs = cohomology_groups(trivial(mu_n(2, Q).hopf), 4);
  for (std::size_t i = 1; i <= 4; ++i) CHECK(hs[i].is_zero());
}

TEST_CASE("normalized and full complexes agree") {
  std::vector<ComoduleData> cases;
  for (const RingSpec& k : {Z, F2, F3, RingSpec::integers_mod(4)})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      if (h.rank() > 4) continue;
      cases.push_back(trivial(h));
      if (h.rank() <= 3) cases.push_back(regular_representation(h));
      if (auto s = sign_character(h)) cases.push_back(character_comodule(h, *s));
    }
  for (const auto& m : cases) {
    CobarComplex c(m);
    auto full = direct_homology(c.full(4));
    Cohomology coh(m, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
      CHECK(full[n] == coh.presentation(n));
      // Representatives embed as full cocycles and project back.
      const Matrix& reps = coh.group(n).representatives();
      for (std::size_t j = 0; j < reps.cols(); ++j) {
        auto e = c.embed(n, reps.col(j));
        CHECK(c.full_differential(n).apply(e) == std::vector<mpq_class>(c.full_rank(n + 1), 0));
        CHECK(c.project(n, e) == reps.col(j));
      }
    }
  }
}

TEST_CASE("H^0 equals invariants") {
  for (const RingSpec& k : {Z, F2, F3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      std::vector<ComoduleData> ms{trivial(h), regular_representation(h),
                                   regular_representation(h, Side::Left), trivial_comodule(h, 2)};
      for (const auto& m : ms) {
        Cohomology coh(m, 0);
        CHECK(coh.presentation(0) == ModulePresentation{k, invariants(m).cols(), {}});
        // Same subspace, not only the same rank.
        const Matrix& reps = coh.group(0).representatives();
        if (reps.cols() > 0) CHECK(solve(invariants(m), reps).has_value());
      }
    }
}

TEST_CASE("base change consistency") {
  for (const auto& name : builtin_group_names(Z)) {
    auto h = builtin_group(name, Z).hopf;
    if (h.rank() > 4) continue;
    auto hz = cohomology_groups(trivial(h), 3);
    auto hq = cohomology_groups(base_change(trivial(h), Q), 3);
    for (std::size_t i = 0; i <= 3; ++i) CHECK(hq[i].free_rank == hz[i].free_rank);
    for (long p : {2L, 3L}) {
      auto fp = RingSpec::prime_field(p);
      auto hp = cohomology_groups(base_change(trivial(h), fp), 3);
      for (std::size_t i = 0; i <= 3; ++i) {
        CHECK(hp[i].free_rank >= hz[i].free_rank);
        // Universal coefficients: p-rank of H^i plus p-rank of H^{i+1} torsion.
        std::size_t expect = hz[i].free_rank;
        for (const auto& f : hz[i].invariant_factors) expect += f % p == 0;
        if (i + 1 <= 3)
          for (const auto& f : hz[i + 1].invariant_factors) expect += f % p == 0;
        if (i < 3) CHECK_MESSAGE(hp[i].free_rank == expect, name, " F", p, " H^", i);
      }
    }
  }
}

TEST_CASE("cup products") {
  auto a2 = alpha_pr(2, 1, F2).hopf;
  Cohomology ca(trivial(a2), 4);
  auto one = ca.generator(0, 0);
  auto x = ca.generator(1, 0);
  CHECK(cup_product(ca, one, x).coordinates == x.coordinates);
  CHECK(cup_product(ca, x, one).coordinates == x.coordinates);
  auto p = x;
  for (std::size_t k = 2; k <= 4; ++k) {
    p = cup_product(ca, p, x);
    CHECK(p.degree == k);
    CHECK(p.coordinates == std::vector<mpq_class>{1});
  }
  CHECK(kind_of([&] { cup_product(ca, p, x); }) == ErrorKind::DegreeOverflow);

  auto fc2 = constant_group_scheme(cyclic_table(2), F2).hopf;
  Cohomology cc(trivial(fc2), 4);
  auto u = cc.generator(1, 0);
  auto sq = cup_product(cc, u, u);
  CHECK(sq.coordinates == cc.generator(2, 0).coordinates);

  // Z coefficients: C_3 has H^2 = Z/3 generated by z, and z^2 generates H^4.
  auto c3 = constant_group_scheme(cyclic_table(3), Z).hopf;
  Cohomology c(trivial(c3), 4);
  auto z2 = c.generator(2, 0);
  auto z4 = cup_product(c, z2, z2);
  CHECK(z4.group == ModulePresentation{Z, 0, {3}});
  CHECK((z4.coordinates[0] == 1 || z4.coordinates[0] == 2));

  CHECK(kind_of([&] { cup_product(Cohomology(regular_representation(c3), 2), z2, z2); }) == ErrorKind::Usage);
}

TEST_CASE("cup product ring axioms on all class pairs") {
  struct Case {
    HopfAlgebraData h;
    std::size_t nmax;
  };
  std::vector<Case> cases{{constant_group_scheme(cyclic_table(2), Z).hopf, 4},
                          {constant_group_scheme(cyclic_table(3), Z).hopf, 4},
                          {builtin_group("klein", F2).hopf, 3},
                          {constant_group_scheme(cyclic_table(3), F3).hopf, 4},
                          {alpha_pr(2, 1, F2).hopf, 4},
                          {constant_group_scheme(symmetric_group_table(3), F3).hopf, 3},
                          {builtin_group("klein", Z).hopf, 3}};
  for (const auto& cs : cases) {
    Cohomology c(trivial(cs.h), cs.nmax);
    const RingSpec& k = cs.h.ring();
    std::vector<CohomologyClass> gens;
    for (std::size_t n = 0; n <= cs.nmax; ++n)
      for (std::size_t i = 0; i < c.group(n).representatives().cols(); ++i) gens.push_back(c.generator(n, i));
    for (const auto& x : gens)
      for (const auto& y : gens) {
        if (x.degree + y.degree > cs.nmax) continue;
        auto xy = cup_product(c, x, y);
        auto yx = cup_product(c, y, x);
        const mpq_class sign = (x.degree * y.degree) % 2 ? -1 : 1;
        auto signed_yx = c.class_of(yx.degree, yx.representative);
        std::vector<mpq_class> scaled;
        for (const auto& v : yx.representative) scaled.push_back(k.canonical(sign * v));
        CHECK(xy.coordinates == c.class_of(yx.degree, scaled).coordinates);
        for (const auto& w : gens) {
          if (x.degree + y.degree + w.degree > cs.nmax) continue;
          CHECK(cup_product(c, xy, w).coordinates == cup_product(c, x, cup_product(c, y, w)).coordinates);
        }
      }
  }
}

TEST_CASE("induced modules are acyclic") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z).hopf;
  auto rep = acyclicity_check_induced(trivial(c2), 3);
  CHECK(rep.passed());
  CHECK(acyclicity_check_induced(trivial(alpha_pr(2, 1, F2).hopf), 3).passed());
  CHECK(acyclicity_check_induced(trivial(constant_group_scheme(cyclic_table(1), Z).hopf), 3).passed());
  CHECK(acyclicity_check_induced(trivial_comodule(builtin_group("klein", Z).hopf, 2), 2).passed());
  auto s = sign_character(c2);
  REQUIRE(s);
  CHECK(acyclicity_check_induced(character_comodule(c2, *s), 3).passed());
}

TEST_CASE("Bockstein for C_2") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z).hopf;
  auto les = bockstein_sequence(trivial(c2), 2, 4);
  CHECK_MESSAGE(les.report.passed(), les.report.summary());
  // H^1(Z/2) = Z/2 maps onto H^2(Z) = Z/2.
  REQUIRE(les.connecting.size() == 4);
  CHECK(les.connecting[1].rows() == 1);
  CHECK(les.connecting[1].cols() == 1);
  CHECK(les.connecting[1].at(0, 0) == 1);
  // Odd-degree targets vanish.
  CHECK(les.connecting[0].rows() == 0);
  CHECK(les.connecting[2].rows() == 0);
  CHECK(les.connecting[3].at(0, 0) == 1);

  auto c3 = constant_group_scheme(cyclic_table(3), Z).hopf;
  CHECK(bockstein_sequence(trivial(c3), 3, 4).report.passed());
  CHECK(bockstein_sequence(trivial(c3), 2, 3).report.passed());
  CHECK(bockstein_sequence(regular_representation(builtin_group("klein", Z).hopf), 2, 2).report.passed());
}

TEST_CASE("long exact sequences of free comodules") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z).hopf;
  auto reg = regular_representation(c2);
  auto triv = trivial(c2);
  auto sign = character_comodule(c2, *sign_character(c2));
  // 0 -> Z -> Z[C_2] -> sign -> 0 does not split as comodules.
  ShortExactSequence ses{triv, reg, sign, Matrix::from_rows(Z, {{1}, {1}}), Matrix::from_rows(Z, {{1, -1}})};
  auto les = long_exact_sequence(ses, 4);
  CHECK_MESSAGE(les.report.passed(), les.report.summary());
  // The regular term is acyclic, so the connecting maps are isomorphisms in
  // positive degrees: H^n(sign) -> H^{n+1}(Z).
  for (std::size_t n = 1; n < 4; ++n) {
    CHECK(les.connecting[n].rows() == les.connecting[n].cols());
    if (les.connecting[n].rows() == 1) CHECK(les.connecting[n].at(0, 0) != 0);
  }
  CHECK(les.connecting[1].rows() == 1);  // H^2(Z) = Z/2

  // Split sequence: zero connecting maps, exact report.
  auto sum_coaction = [&](const ComoduleData& a, const ComoduleData& b) {
    const std::size_t d = c2.rank();
    Matrix m(Z, (a.rank + b.rank) * d, a.rank + b.rank);
    for (std::size_t i = 0; i < a.rank * d; ++i)
      for (std::size_t j = 0; j < a.rank; ++j) m.set(i, j, a.coaction.at(i, j));
    for (std::size_t i = 0; i < b.rank * d; ++i)
      for (std::size_t j = 0; j < b.rank; ++j) m.set(a.rank * d + i, a.rank + j, b.coaction.at(i, j));
    return make_comodule(c2, m);
  };
  auto mid = sum_coaction(sign, triv);
  ShortExactSequence split{sign, mid, triv, Matrix::from_rows(Z, {{1}, {0}}), Matrix::from_rows(Z, {{0, 1}})};
  auto les2 = long_exact_sequence(split, 3);
  CHECK(les2.report.passed());
  for (const auto& d : les2.connecting) CHECK(d.is_zero());

  // Not exact: rejected.
  ShortExactSequence bad{triv, reg, sign, Matrix::from_rows(Z, {{1}, {1}}), Matrix::from_rows(Z, {{1, 1}})};
  CHECK(kind_of([&] { long_exact_sequence(bad, 2); }) == ErrorKind::MalformedData);
}

TEST_CASE("torsion bounds") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z).hopf;
  CHECK(torsion_bound(trivial(c2), 4) == std::optional<mpz_class>(2));
  auto klein = builtin_group("klein", Z).hopf;
  auto t = torsion_bound(trivial(klein), 3);
  REQUIRE(t);
  CHECK(4 % *t == 0);
  CHECK_FALSE(torsion_bound(trivial(mu_n(3, Z).hopf), 4));
  CHECK(kind_of([&] { torsion_bound(trivial(mu_n(3, Q).hopf), 2); }) == ErrorKind::UnsupportedRing);
  for (const auto& name : builtin_group_names(Z)) {
    auto h = builtin_group(name, Z).hopf;
    const std::size_t nmax = h.rank() > 4 ? 3 : 4;
    if (auto b = torsion_bound(trivial(h), nmax)) CHECK_MESSAGE(mpz_class(h.rank()) % *b == 0, name);
  }
}

TEST_CASE("cross product is a chain map") {
  for (const RingSpec& k : {F2, F3, Q})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      if (h.rank() > 4) continue;
      auto triv = trivial_galgebra(h);
      CHECK_MESSAGE(verify_cross_product(CobarComplex(triv.comodule), triv, 3).passed(), name);
      auto reg = regular_galgebra(h);
      CHECK_MESSAGE(verify_cross_product(CobarComplex(reg.comodule), reg, 3).passed(), name);
    }
}

TEST_CASE("cohomology rings") {
  auto a2 = alpha_pr(2, 1, F2).hopf;
  auto ring = algebra_cohomology_ring(trivial_galgebra(a2), 4);
  CHECK(ring.route == CohomologyRing::Route::CrossProduct);
  CHECK(ring.report.passed());
  CHECK(ring.generator_count(0) == 0);
  CHECK(ring.generator_count(1) == 1);
  for (std::size_t n = 2; n <= 4; ++n) {
    CHECK(ring.generator_count(n) == 0);
    CHECK(ring.relations[n].empty());
  }

  for (const auto& name : builtin_group_names(F2)) {
    auto h = builtin_group(name, F2).hopf;
    if (h.rank() > 4) continue;
    auto r = algebra_cohomology_ring(regular_galgebra(h), 3);
    CHECK(r.report.passed());
    for (std::size_t n = 1; n <= 3; ++n) CHECK_MESSAGE(r.generator_count(n) == 0, name);
  }

  auto q = algebra_cohomology_ring(trivial_galgebra(mu_n(2, Q).hopf), 4);
  CHECK(q.groups[0] == ModulePresentation{Q, 1, {}});
  for (std::size_t n = 1; n <= 4; ++n) CHECK(q.groups[n].is_zero());

  CHECK(kind_of([] { algebra_cohomology_ring(trivial_galgebra(mu_n(2, Z).hopf), 2); }) ==
        ErrorKind::UnsupportedRing);
}

TEST_CASE("Yoneda and cross-product routes agree") {
  for (const auto& h : {constant_group_scheme(cyclic_table(2), F2).hopf, alpha_pr(2, 1, F2).hopf,
                        builtin_group("klein", F2).hopf, constant_group_scheme(cyclic_table(3), F3).hopf}) {
    const std::size_t D = h.rank() > 2 ? 3 : 4;
    auto cross = algebra_cohomology_ring(trivial_galgebra(h), D, CohomologyRing::Route::CrossProduct);
    auto yon = algebra_cohomology_ring(trivial_galgebra(h), D, CohomologyRing::Route::Yoneda);
    CHECK(yon.route == CohomologyRing::Route::Yoneda);
    CHECK(cross.groups == yon.groups);
    CHECK(cross.product_ranks == yon.product_ranks);
    for (std::size_t n = 0; n <= D; ++n) {
      CHECK(cross.generator_count(n) == yon.generator_count(n));
      CHECK(cross.relations[n].size() == yon.relations[n].size());
    }
  }
  // Trivial coefficients of rank 2 (k x k with trivial coaction).
  auto fc2 = constant_group_scheme(cyclic_table(2), F2).hopf;
  Matrix mul(F2, 2, 4);
  mul.set(0, 0, 1);
  mul.set(1, 3, 1);
  GAlgebraData kk{trivial_comodule(fc2, 2), mul, Matrix::from_rows(F2, {{1}, {1}})};
  auto a = algebra_cohomology_ring(kk, 3, CohomologyRing::Route::CrossProduct);
  auto b = algebra_cohomology_ring(kk, 3, CohomologyRing::Route::Yoneda);
  CHECK(a.product_ranks == b.product_ranks);
  CHECK(a.generator_count(0) == 1);
}
