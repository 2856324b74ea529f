#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcoh/error.hpp"
#include "hopfcoh/hopf.hpp"
#include "hopfcoh/linalg.hpp"
#include "hopfcoh/schemes.hpp"
#include "test_util.hpp"

using namespace hopfcoh;

namespace {

const RingSpec Z = RingSpec::integers();
const RingSpec Q = RingSpec::rationals();

HopfAlgebraData with_antipode(const HopfAlgebraData& h, Matrix s) {
  return HopfAlgebraData::make(h.ring(), h.basis(), h.mul(), h.unit(), h.comul(), h.counit(),
                               std::move(s));
}

// The delta function at group element g as a functional on kG.
Matrix point_functional(std::size_t d, std::size_t g) {
  Matrix f(Z, 1, d);
  f.set(0, g, 1);
  return f;
}

}  // namespace

TEST_CASE("coalgebra checks") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z);
  CHECK(verify_coalgebra(c2.hopf.coalgebra()).passed());

  CoalgebraData one{Z, 1, {"e"}, Matrix::from_rows(Z, {{1}}), Matrix::from_rows(Z, {{1}})};
  CHECK(verify_coalgebra(one).passed());

  // Delta(e1) = e1 e1 + e2 e2, Delta(e2) = e2 e2, eps = (1, 0): the counit
  // identity holds on e1 and fails on the second basis vector.
  Matrix comul(Z, 4, 2);
  comul.set(0, 0, 1);
  comul.set(3, 0, 1);
  comul.set(3, 1, 1);
  CoalgebraData bad{Z, 2, {"e1", "e2"}, comul, Matrix::from_rows(Z, {{1, 0}})};
  auto rep = verify_coalgebra(bad);
  CHECK_FALSE(rep.passed());
  const CheckResult* left = rep.find("left counit");
  REQUIRE(left != nullptr);
  CHECK_FALSE(left->passed);
  CHECK(left->witness == std::optional<std::size_t>(1));
  CHECK(rep.find("right counit")->witness == std::optional<std::size_t>(1));
}

TEST_CASE("malformed shapes are rejected") {
  CoalgebraData c{Z, 2, {"a", "b"}, Matrix(Z, 3, 2), Matrix(Z, 1, 2)};
  CHECK_THROWS_AS(verify_coalgebra(c), Error);
  CHECK_THROWS_AS(HopfAlgebraData::make(Z, {}, Matrix(Z, 2, 4), Matrix(Z, 2, 1), Matrix(Z, 4, 2),
                                        Matrix(Z, 1, 3), Matrix(Z, 2, 2)),
                  Error);
}

TEST_CASE("hopf axioms on group algebras and mu_2") {
  auto zc3 = group_algebra(cyclic_table(3), Z);
  CHECK(verify_hopf(zc3).passed());
  CHECK(zc3.cocommutative());
  CHECK(zc3.commutative());

  auto broken = with_antipode(zc3, Matrix::identity(Z, 3));
  auto rep = verify_hopf(broken);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.find("antipode left")->passed);
  CHECK(rep.find("antipode left")->witness == std::optional<std::size_t>(1));
  CHECK(rep.find("associativity")->passed);

  CHECK(verify_hopf(mu_n(2, Q).hopf).passed());

  auto s3 = group_algebra(symmetric_group_table(3), Z);
  CHECK(verify_hopf(s3).passed());
  CHECK_FALSE(s3.commutative());
  CHECK(s3.cocommutative());
}

TEST_CASE("convolution in the dual of the group algebra") {
  auto kc2 = group_algebra(cyclic_table(2), Z);
  // Functionals on kC2 are maps kC2 -> Z, the trivial algebra of rank 1.
  AlgebraData ground{Z, 1, {"1"}, Matrix::from_rows(Z, {{1}}), Matrix::from_rows(Z, {{1}}), std::nullopt};
  auto fg = point_functional(2, 0), fh = point_functional(2, 1);
  CHECK(convolution(kc2.coalgebra(), ground, fg, fh).is_zero());
  CHECK(convolution(kc2.coalgebra(), ground, fg, fg) == fg);
  CHECK(convolution(kc2.coalgebra(), ground, fh, fh) == fh);

  Matrix unit_map = ground.unit * kc2.counit();
  std::mt19937_64 rng(11);
  auto f = testutil::random_matrix(Z, 1, 2, rng);
  CHECK(convolution(kc2.coalgebra(), ground, f, unit_map) == f);
  CHECK(convolution(kc2.coalgebra(), ground, unit_map, f) == f);
  CHECK_THROWS_AS(convolution(kc2.coalgebra(), ground, f.map_ring(Q), f), Error);
}

TEST_CASE("convolution is associative and unital on random maps") {
  std::mt19937_64 rng(20240611);
  for (const auto& name : builtin_group_names(Z)) {
    auto h = builtin_group(name, Z).hopf;
    const std::size_t d = h.rank();
    auto c = h.coalgebra();
    auto a = h.algebra();
    Matrix unit_map = h.unit() * h.counit();
    for (int trial = 0; trial < 3; ++trial) {
      auto f = testutil::random_matrix(Z, d, d, rng);
      auto g = testutil::random_matrix(Z, d, d, rng);
      auto k = testutil::random_matrix(Z, d, d, rng);
      CHECK(convolution(c, a, convolution(c, a, f, g), k) ==
            convolution(c, a, f, convolution(c, a, g, k)));
      CHECK(convolution(c, a, f, unit_map) == f);
      CHECK(convolution(c, a, unit_map, f) == f);
    }
    // The antipode is the convolution inverse of the identity.
    CHECK(convolution(c, a, h.antipode(), Matrix::identity(Z, d)) == unit_map);
  }
}

TEST_CASE("duals") {
  auto zc2 = group_algebra(cyclic_table(2), Z);
  auto dual = dual_hopf(zc2);
  CHECK(verify_hopf(dual).passed());
  CHECK(dual == constant_group_scheme(cyclic_table(2), Z).hopf);

  auto zc3 = group_algebra(cyclic_table(3), Z);
  CHECK(dual_hopf(dual_hopf(zc3)) == zc3);

  auto f3 = RingSpec::prime_field(3);
  auto mu2_dual = dual_hopf(mu_n(2, f3).hopf);
  CHECK(mu2_dual.rank() == 2);
  CHECK(verify_hopf(mu2_dual).passed());

  for (const RingSpec& k : {Z, Q, RingSpec::prime_field(2)})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      CHECK(verify_hopf(dual_hopf(h)).passed());
      CHECK(dual_hopf(dual_hopf(h)) == h);
    }
}

TEST_CASE("tensor coalgebras") {
  auto kc2 = constant_group_scheme(cyclic_table(2), Z).hopf.coalgebra();
  auto t = tensor_coalgebra(kc2, kc2);
  CHECK(verify_coalgebra(t).passed());
  auto klein = builtin_group("klein", Z).hopf;
  CHECK(t.comul == klein.comul());
  CHECK(t.counit == klein.counit());

  CoalgebraData one{Z, 1, {"e"}, Matrix::from_rows(Z, {{1}}), Matrix::from_rows(Z, {{1}})};
  auto c3 = constant_group_scheme(cyclic_table(3), Z).hopf.coalgebra();
  auto t1 = tensor_coalgebra(c3, one);
  CHECK(t1.comul == c3.comul);
  CHECK(t1.counit == c3.counit);

  // c2 (x) c3 and c3 (x) c2 are identified by the swap permutation.
  auto a = tensor_coalgebra(kc2, c3), b = tensor_coalgebra(c3, kc2);
  Matrix p = swap_matrix(Z, 2, 3);
  CHECK(kron(p, p) * a.comul == b.comul * p);
  CHECK(b.counit * p == a.counit);
}

TEST_CASE("antipode properties") {
  auto zc6 = group_algebra(cyclic_table(6), Z);
  auto rep = antipode_properties_check(zc6);
  CHECK(rep.passed());
  CHECK(rep.find("antipode is bijective")->passed);

  auto qc3 = group_algebra(cyclic_table(3), Q);
  CHECK(qc3.antipode() * qc3.antipode() == Matrix::identity(Q, 3));

  auto mu4 = mu_n(4, Z).hopf;
  CHECK(antipode_properties_check(mu4).passed());
  // S(t) = t^3.
  CHECK(mu4.antipode().col(1) == testutil::unit_vec(4, 3));

  for (const RingSpec& k : {Z, RingSpec::prime_field(2), RingSpec::prime_field(3)})
    for (const auto& name : builtin_group_names(k))
      CHECK_MESSAGE(antipode_properties_check(builtin_group(name, k).hopf).passed(), name);
  CHECK(antipode_properties_check(group_algebra(symmetric_group_table(3), Q)).passed());
}

TEST_CASE("base change") {
  auto zc2 = group_algebra(cyclic_table(2), Z);
  auto f2 = RingSpec::prime_field(2);
  auto f2c2 = base_change(zc2, f2);
  CHECK(f2c2 == group_algebra(cyclic_table(2), f2));
  CHECK(verify_hopf(f2c2).passed());
  CHECK(base_change(mu_n(3, Z).hopf, Q) == mu_n(3, Q).hopf);
  auto z4 = RingSpec::integers_mod(4);
  CHECK(verify_hopf(base_change(zc2, z4)).passed());
  CHECK_THROWS_AS(base_change(mu_n(2, Q).hopf, f2), Error);
  try {
    base_change(mu_n(2, Q).hopf, f2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedBaseChange);
  }
}
