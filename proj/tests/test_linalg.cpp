#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfcoh/error.hpp"
#include "hopfcoh/linalg.hpp"

using namespace hopfcoh;

namespace {

const RingSpec Z = RingSpec::integers();
const RingSpec Q = RingSpec::rationals();

// Oracle: the k-th determinantal divisor is the gcd of all k x k minors;
// invariant factors are the successive quotients. Brute force over subsets.
mpz_class minor_det(const Matrix& m, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  Matrix sub(Q, r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) sub.set(i, j, m.at(r[i], c[j]));
  return determinant(sub).get_num();
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<mpz_class> invariant_factors_by_minors(const Matrix& m) {
  std::vector<mpz_class> divisors = {1};
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    mpz_class g = 0;
    for (auto& r : rs)
      for (auto& c : cs) {
        mpz_class d = minor_det(m, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<mpz_class> f;
  for (std::size_t k = 1; k < divisors.size(); ++k) f.push_back(divisors[k] / divisors[k - 1]);
  return f;
}

Matrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Matrix m(Z, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, mpq_class(dist(rng)));
  return m;
}

bool is_diagonal_chain(const Matrix& d) {
  mpz_class prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (i != j && sgn(d.at(i, j)) != 0) return false;
    }
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    mpz_class x = d.at(i, i).get_num();
    if (x == 0) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || x < 0 || !mpz_divisible_p(x.get_mpz_t(), prev.get_mpz_t())) return false;
    prev = x;
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form of diag(2,3)") {
  Matrix m = Matrix::from_rows(Z, {{2, 0}, {0, 3}});
  SmithForm s = smith_normal_form(m);
  CHECK(s.d == Matrix::from_rows(Z, {{1, 0}, {0, 6}}));
  CHECK(s.u * m * s.v == s.d);
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);
  CHECK(invariant_factors_by_minors(m) == std::vector<mpz_class>{1, 6});
}

TEST_CASE("smith normal form of zero and identity") {
  Matrix z(Z, 2, 3);
  CHECK(smith_normal_form(z).d.is_zero());
  Matrix id = Matrix::identity(Z, 3);
  CHECK(smith_normal_form(id).d == id);
}

TEST_CASE("smith normal form rejects fields") {
  Matrix m = Matrix::identity(Q, 2);
  try {
    smith_normal_form(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UseRowReduction);
  }
  CHECK_THROWS_AS(smith_normal_form(Matrix::identity(RingSpec::prime_field(3), 2)), Error);
}

TEST_CASE("smith normal form agrees with determinantal divisors on random matrices") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    Matrix m = random_int_matrix(rng, r, c, -6, 6);
    SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(is_diagonal_chain(s.d));
    auto want = invariant_factors_by_minors(m);
    std::vector<mpz_class> got;
    for (std::size_t i = 0; i < std::min(r, c); ++i)
      if (sgn(s.d.at(i, i)) != 0) got.push_back(s.d.at(i, i).get_num());
    CHECK(got == want);
    CHECK(rank(m) == want.size());
    // Rank over Q through the field path agrees with the SNF rank.
    CHECK(rank(m.map_ring(Q)) == want.size());
  }
}

TEST_CASE("smith normal form survives int64 overflow") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_int_matrix(rng, 3, 3, -(1L << 39), 1L << 39);
    SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    auto want = invariant_factors_by_minors(m);
    std::vector<mpz_class> got;
    for (std::size_t i = 0; i < 3; ++i)
      if (sgn(s.d.at(i, i)) != 0) got.push_back(s.d.at(i, i).get_num());
    CHECK(got == want);
  }
}

TEST_CASE("smith normal form over Z/n by lifting") {
  RingSpec z12 = RingSpec::integers_mod(12);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = random_int_matrix(rng, 3, 3, 0, 11).map_ring(z12);
    SmithForm s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(z12.is_unit(determinant(s.u)));
    CHECK(z12.is_unit(determinant(s.v)));
    for (std::size_t i = 0; i < 3; ++i) {
      mpz_class x = s.d.at(i, i).get_num();
      if (x != 0) CHECK(12 % x.get_si() == 0);
    }
  }
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(Matrix::identity(Q, 2)).cols() == 0);

  Matrix k = kernel_basis(Matrix::from_rows(Z, {{1, -1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k == Matrix::from_rows(Z, {{1}, {1}}));
  // Saturation oracle: every small kernel vector is an integer multiple.
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      if (a - b != 0) continue;
      mpq_class t = mpq_class(a) / k.at(0, 0);
      CHECK(t.get_den() == 1);
      CHECK(t * k.at(1, 0) == b);
    }

  RingSpec z4 = RingSpec::integers_mod(4);
  Matrix g = kernel_basis(Matrix::from_rows(z4, {{2}}));
  REQUIRE(g.cols() == 1);
  CHECK(g.at(0, 0) == 2);
  // Enumerate residues: the kernel of x -> 2x on Z/4 is {0, 2}.
  for (long x = 0; x < 4; ++x) {
    bool in_kernel = (2 * x) % 4 == 0;
    bool generated = x % 2 == 0;
    CHECK(in_kernel == generated);
  }
}

TEST_CASE("kernel basis composes to zero and is saturated over Z") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix m = random_int_matrix(rng, 1 + rng() % 3, 2 + rng() % 3, -4, 4);
    Matrix k = kernel_basis(m);
    CHECK((m * k).is_zero());
    CHECK(k.cols() == m.cols() - rank(m));
    // Saturated: the quotient Z^n / span(k) restricted to ker is torsion-free,
    // i.e. span(k) has trivial invariant factors.
    if (k.cols() > 0) {
      for (const auto& f : smith_diagonal(k)) CHECK(f == 1);
    }
  }
}

TEST_CASE("subquotient examples") {
  Matrix ker = Matrix::identity(Z, 2);
  Matrix im = Matrix::from_rows(Z, {{2}, {0}});
  ModulePresentation p = subquotient(2, ker, im);
  CHECK(p.free_rank == 1);
  CHECK(p.invariant_factors == std::vector<mpz_class>{2});

  ModulePresentation zero = subquotient(2, ker, ker);
  CHECK(zero.is_zero());

  RingSpec f2 = RingSpec::prime_field(2);
  Matrix k3 = Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  Matrix i1 = Matrix::from_rows(f2, {{1}, {1}, {0}, {0}});
  ModulePresentation d = subquotient(4, k3, i1);
  CHECK(d.free_rank == 2);
  CHECK(d.invariant_factors.empty());
}

TEST_CASE("subquotient detects a broken differential") {
  Matrix ker = Matrix::from_rows(Z, {{1}, {0}});
  Matrix im = Matrix::from_rows(Z, {{0}, {1}});
  try {
    subquotient(2, ker, im);
    FAIL("expected containment violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ContainmentViolation);
  }
}

TEST_CASE("subquotient size bound and Z/n presentations") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix k = random_int_matrix(rng, 3, 3, -3, 3);
    Matrix c = random_int_matrix(rng, 3, 2, -3, 3);
    Matrix img = k * c;
    ModulePresentation p = subquotient(3, k, img);
    CHECK(p.free_rank + p.invariant_factors.size() <= 3);
  }
  RingSpec z4 = RingSpec::integers_mod(4);
  // (Z/4)^2 / <(2, 0)> = Z/2 + Z/4.
  ModulePresentation p = subquotient(2, Matrix::identity(z4, 2), Matrix::from_rows(z4, {{2}, {0}}));
  CHECK(p.free_rank == 1);
  CHECK(p.invariant_factors == std::vector<mpz_class>{2});
}

TEST_CASE("torsion exponent") {
  CHECK(*torsion_exponent({Z, 0, {2, 4}}) == 4);
  CHECK(!torsion_exponent({Z, 3, {}}).has_value());
  CHECK(*torsion_exponent({Z, 0, {6}}) == 6);
  CHECK_THROWS_AS(torsion_exponent({Q, 1, {}}), Error);
}

TEST_CASE("solve and inverse over each ring family") {
  Matrix a = Matrix::from_rows(Z, {{2, 1}, {1, 1}});
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK((*inv * a).is_identity());
  CHECK(!inverse(Matrix::from_rows(Z, {{2, 0}, {0, 1}})));
  CHECK(inverse(Matrix::from_rows(Q, {{2, 0}, {0, 1}})));
  RingSpec z6 = RingSpec::integers_mod(6);
  CHECK(inverse(Matrix::from_rows(z6, {{5, 0}, {0, 1}})));
  CHECK(!inverse(Matrix::from_rows(z6, {{2, 0}, {0, 1}})));
  auto x = solve(Matrix::from_rows(z6, {{2}}), Matrix::from_rows(z6, {{4}}));
  REQUIRE(x);
  CHECK(mpz_class(x->at(0, 0).get_num() * 2 % 6) == 4);
  CHECK(!solve(Matrix::from_rows(z6, {{2}}), Matrix::from_rows(z6, {{3}})));
}

TEST_CASE("homology group of Z --2--> Z --0--> Z") {
  SparseMatrix in = SparseMatrix::from_dense(Matrix::from_rows(Z, {{2}}));
  SparseMatrix out = SparseMatrix::from_dense(Matrix::from_rows(Z, {{0}}));
  HomologyGroup h = HomologyGroup::compute(out, in);
  CHECK(h.presentation().invariant_factors == std::vector<mpz_class>{2});
  CHECK(h.presentation().free_rank == 0);
  std::vector<mpq_class> one = {1}, two = {2}, three = {3};
  CHECK(h.coordinates(one)[0] == 1);
  CHECK(h.is_boundary(two));
  CHECK(h.coordinates(three)[0] == 1);
  HomologyGroup fast = HomologyGroup::compute(out, in, HomologyGroup::Mode::PresentationOnly);
  CHECK(fast.presentation() == h.presentation());
}

TEST_CASE("homology group over Z/4 and over a field") {
  RingSpec z4 = RingSpec::integers_mod(4);
  // C: Z/4 --2--> Z/4 --2--> Z/4: ker 2 = {0,2}, im 2 = {0,2}: zero homology.
  SparseMatrix two = SparseMatrix::from_dense(Matrix::from_rows(z4, {{2}}));
  CHECK(HomologyGroup::compute(two, two).presentation().is_zero());
  // Z/4 --0--> Z/4 --2--> Z/4: ker = {0,2} = Z/2.
  SparseMatrix zero = SparseMatrix::from_dense(Matrix::from_rows(z4, {{0}}));
  HomologyGroup h = HomologyGroup::compute(two, zero);
  CHECK(h.presentation().invariant_factors == std::vector<mpz_class>{2});
  std::vector<mpq_class> x = {2};
  CHECK(h.coordinates(x)[0] == 1);
  CHECK(h.representatives().at(0, 0) == 2);

  RingSpec f3 = RingSpec::prime_field(3);
  SparseMatrix out = SparseMatrix::from_dense(Matrix::from_rows(f3, {{1, 1, 0}}));
  SparseMatrix in = SparseMatrix::from_dense(Matrix::from_rows(f3, {{1}, {2}, {0}}));
  HomologyGroup g = HomologyGroup::compute(out, in);
  CHECK(g.presentation().free_rank == 1);
  std::vector<mpq_class> v = {1, 2, 0};
  CHECK(g.is_boundary(v));
  std::vector<mpq_class> w = {0, 0, 1};
  CHECK(!g.is_boundary(w));
  std::vector<mpq_class> bad = {1, 0, 0};
  CHECK_THROWS_AS(g.coordinates(bad), Error);
}

TEST_CASE("ring parsing and canonical forms") {
  CHECK(RingSpec::parse("Z/4").name() == "Z/4");
  CHECK(RingSpec::parse("F7").is_field());
  CHECK_THROWS_AS(RingSpec::parse("F4"), Error);
  CHECK_THROWS_AS(RingSpec::parse("Z/1"), Error);
  RingSpec f5 = RingSpec::prime_field(5);
  CHECK(f5.canonical(mpq_class(-1)) == 4);
  CHECK(f5.canonical(mpq_class(1, 2)) == 3);
  CHECK_THROWS_AS(Z.canonical(mpq_class(1, 2)), Error);
  CHECK(is_prime_deterministic(mpz_class("1000000007")));
  CHECK(!is_prime_deterministic(mpz_class("3215031751")));  // strong pseudoprime to 2, 3, 5, 7
}
