#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "hopfcoh/error.hpp"
#include "hopfcoh/integrals.hpp"
#include "test_util.hpp"

using namespace hopfcoh;
using testutil::unit_vec;

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

// Comodule over the constant group C_2 (functions on the group) from the
// matrix t of the nontrivial element: e_v -> sum_g g.e_v (x) delta_g.
ComoduleData c2_action(const HopfAlgebraData& h, const Matrix& t) {
  const std::size_t m = t.rows();
  Matrix co(h.ring(), m * 2, m);
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t v = 0; v < m; ++v) {
      co.set(w * 2, v, w == v ? 1 : 0);
      co.set(w * 2 + 1, v, t.at(w, v));
    }
  return make_comodule(h, co);
}

// F_2[x, y]/(x, y)^3 as monomials x^a y^b with a + b < 3, the swap action,
// and the quotient onto F_2[x]/(x^3) setting y = x.
struct TruncatedPlane {
  std::vector<std::pair<int, int>> mono;
  GAlgebraData alg;
  GAlgebraData line;
  Matrix quotient;
};

TruncatedPlane truncated_plane(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  TruncatedPlane p;
  for (int deg = 0; deg < 3; ++deg)
    for (int a = deg; a >= 0; --a) p.mono.push_back({a, deg - a});
  const std::size_t n = p.mono.size();
  auto idx = [&](int a, int b) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i)
      if (p.mono[i] == std::pair{a, b}) return i;
    return std::nullopt;
  };
  Matrix mul(k, n, n * n), swap(k, n, n), unit(k, n, 1);
  unit.set(0, 0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    swap.set(*idx(p.mono[i].second, p.mono[i].first), i, 1);
    for (std::size_t j = 0; j < n; ++j)
      if (auto r = idx(p.mono[i].first + p.mono[j].first, p.mono[i].second + p.mono[j].second))
        mul.set(*r, i * n + j, 1);
  }
  p.alg = {c2_action(h, swap), mul, unit};

  Matrix lmul(k, 3, 9), lunit(k, 3, 1);
  lunit.set(0, 0, 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; i + j < 3; ++j) lmul.set(i + j, i * 3 + j, 1);
  p.line = {trivial_comodule(h, 3), lmul, lunit};

  p.quotient = Matrix(k, 3, n);
  for (std::size_t i = 0; i < n; ++i) p.quotient.set(p.mono[i].first + p.mono[i].second, i, 1);
  return p;
}

bool same_span(const Matrix& a, const Matrix& b) {
  return a.cols() == b.cols() && solve(a, b).has_value() && solve(b, a).has_value();
}

}  // namespace

TEST_CASE("left integrals") {
  auto zc2 = group_algebra(cyclic_table(2), Z).algebra();
  auto li = left_integrals(zc2);
  REQUIRE(li.cols() == 1);
  CHECK(same_span(li, Matrix::from_rows(Z, {{1}, {1}})));

  auto qc3 = group_algebra(cyclic_table(3), Q).algebra();
  CHECK(same_span(left_integrals(qc3), Matrix::from_rows(Q, {{1}, {1}, {1}})));

  // Functions on C_2: the idempotent supported at the identity.
  auto fun = constant_group_scheme(cyclic_table(2), Z).hopf.algebra();
  CHECK(same_span(left_integrals(fun), Matrix::from_rows(Z, {{1}, {0}})));

  AlgebraData no_aug = zc2;
  no_aug.augmentation.reset();
  CHECK(kind_of([&] { left_integrals(no_aug); }) == ErrorKind::MalformedData);
}

TEST_CASE("dual coinvariants are the integrals of the dual") {
  for (const RingSpec& k : {Z, Q, F2, F3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      auto c = dual_coinvariants(h);
      CHECK(c.cols() == 1);
      CHECK_MESSAGE(same_span(left_integrals(dual_hopf(h).algebra()), c), name, " over ", k.name());
    }
  CHECK(dual_coinvariants(mu_n(2, Q).hopf).cols() == 1);
  CHECK(dual_coinvariants(constant_group_scheme(cyclic_table(2), F2).hopf).cols() == 1);
}

TEST_CASE("integrals times anything are invariant") {
  for (const RingSpec& k : {Z, F2, F3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      auto a = h.algebra();
      auto li = left_integrals(a);
      // Module family: the regular module and H (x) H with the diagonal action.
      for (std::size_t x = 0; x < h.rank(); ++x) {
        auto v = h.left_mult(li.col(0)).col(x);
        for (std::size_t b = 0; b < h.rank(); ++b)
          CHECK(h.left_mult(unit_vec(h.rank(), b)).apply(v) ==
                Matrix::column(k, v).scaled(h.counit().at(0, b)).col(0));
      }
      ModuleData reg2{a, h.rank() * h.rank(), Matrix(k, 0, 0)};
      reg2.action = Matrix(k, reg2.rank, h.rank() * reg2.rank);
      for (std::size_t b = 0; b < h.rank(); ++b) {
        Matrix blk = kron(h.left_mult(unit_vec(h.rank(), b)), Matrix::identity(k, h.rank()));
        for (std::size_t i = 0; i < reg2.rank; ++i)
          for (std::size_t j = 0; j < reg2.rank; ++j) reg2.action.set(i, b * reg2.rank + j, blk.at(i, j));
      }
      Matrix act_n(k, reg2.rank, reg2.rank);
      for (std::size_t b = 0; b < h.rank(); ++b)
        act_n = act_n + reg2.action.submatrix(0, b * reg2.rank, reg2.rank, reg2.rank).scaled(li.at(b, 0));
      Matrix inv = module_invariants(reg2);
      // Columns of N acting on H (x) H land in the invariants.
      if (inv.cols() == 0)
        CHECK(act_n.is_zero());
      else
        CHECK_MESSAGE(solve(inv, act_n).has_value(), name);
    }
}

TEST_CASE("trace maps") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z).hopf;
  auto t = trace_map(c2);
  CHECK(t.report.passed());
  CHECK((t.trace * c2.unit()).at(0, 0) == 2);

  // Functions on a group over Q: every idempotent delta_g has trace 1.
  auto s3 = constant_group_scheme(symmetric_group_table(3), Q).hopf;
  CHECK(trace_map(s3).trace == Matrix::from_rows(Q, {{1, 1, 1, 1, 1, 1}}));

  auto mu2 = mu_n(2, Z).hopf;
  auto tm = trace_map(mu2).trace;
  CHECK(tm == Matrix::from_rows(Z, {{2, 0}}));

  for (const RingSpec& k : {Z, Q, F2, F3, RingSpec::integers_mod(4)})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      auto tr = trace_map(h);
      CHECK_MESSAGE(tr.report.passed(), name);
      for (std::size_t b = 0; b < h.rank(); ++b) {
        Matrix l = h.left_mult(unit_vec(h.rank(), b));
        mpq_class s = 0;
        for (std::size_t i = 0; i < h.rank(); ++i) s += l.at(i, i);
        CHECK(tr.trace.at(0, b) == k.canonical(s));
      }
    }
}

TEST_CASE("Frobenius isomorphism") {
  for (const RingSpec& k : {Z, Q, F2, F3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      auto fr = frobenius_isomorphism(h);
      CHECK_MESSAGE(fr.report.passed(), name, " over ", k.name());
      CHECK(inverse(fr.phi).has_value());
      // psi spans the coinvariants of the dual.
      CHECK(same_span(Matrix::column(k, fr.psi), dual_coinvariants(h)));
    }
  auto kg = group_algebra(cyclic_table(2), F3);
  CHECK(frobenius_isomorphism(kg).report.passed());

  auto triv = constant_group_scheme(cyclic_table(1), Z).hopf;
  auto ft = frobenius_isomorphism(triv);
  CHECK(ft.norm == std::vector<mpq_class>{1});
  CHECK(ft.phi.at(0, 0) != 0);
}

TEST_CASE("bounded torsion certificates") {
  auto c2 = constant_group_scheme(cyclic_table(2), Z).hopf;
  auto z4 = RingSpec::integers_mod(4);
  auto cert = bounded_torsion_certificate(
      c2,
      {{"trivial", trivial_comodule(c2, 1)},
       {"regular", regular_representation(c2)},
       {"Z/4 trivial", trivial_comodule(base_change(c2, z4), 1)}},
      4);
  CHECK(cert.exponent == 2);
  CHECK(cert.passed());
  REQUIRE(cert.evidence.size() == 3);
  CHECK(cert.evidence[0].groups[1] == ModulePresentation{Z, 0, {2}});
  CHECK(cert.evidence[1].groups[0].is_zero());
  CHECK(cert.evidence[2].groups[0] == ModulePresentation{z4, 0, {2}});

  auto klein = builtin_group("klein", Z).hopf;
  auto ck = bounded_torsion_certificate(klein, {{"trivial", trivial_comodule(klein, 1)},
                                                {"regular", regular_representation(klein)}},
                                        3);
  CHECK(ck.exponent == 4);
  CHECK(ck.passed());

  auto triv = constant_group_scheme(cyclic_table(1), Z).hopf;
  auto ct = bounded_torsion_certificate(triv, {{"trivial", trivial_comodule(triv, 1)}}, 4);
  CHECK(ct.exponent == 1);
  for (const auto& g : ct.evidence[0].groups) CHECK(g.is_zero());

  CHECK(kind_of([] {
          auto h = constant_group_scheme(cyclic_table(2), Q).hopf;
          bounded_torsion_certificate(h, {}, 2);
        }) == ErrorKind::UnsupportedRing);
}

TEST_CASE("symmetric powers") {
  CHECK(monomial_basis(2, 2) == std::vector<std::vector<std::size_t>>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(monomial_basis(3, 1).size() == 3);
  CHECK(monomial_basis(3, 3).size() == 10);
  CHECK(monomial_basis(0, 0).size() == 1);
  CHECK(monomial_basis(0, 2).empty());

  for (const RingSpec& k : {Z, F2, F3}) {
    auto h = constant_group_scheme(cyclic_table(2), k).hopf;
    auto m = c2_action(h, Matrix::from_rows(k, {{0, 1}, {1, 0}}));
    for (std::size_t d = 1; d <= 4; ++d) {
      auto s = symmetric_power(m, d);
      CHECK(s.rank == d + 1);
      CHECK(verify_comodule(s).passed());
    }
    // S^1 is M itself.
    CHECK(symmetric_power(m, 1).coaction == m.coaction);
  }
  // The regular comodule of mu_3: S^2 is a comodule of rank 6.
  auto reg = regular_representation(mu_n(3, Z).hopf);
  CHECK(verify_comodule(symmetric_power(reg, 2)).passed());
  CHECK(kind_of([] {
          auto h = group_algebra(symmetric_group_table(3), Q);
          symmetric_power(regular_representation(h), 2);
        }) == ErrorKind::MalformedData);
}

TEST_CASE("power reductivity of the swap") {
  auto phi = [](const RingSpec& k) { return Matrix::from_rows(k, {{1, 1}}); };
  for (auto [k, expect] : {std::pair{F2, 2u}, {Z, 2u}, {Q, 1u}, {F3, 1u}}) {
    auto h = constant_group_scheme(cyclic_table(2), k).hopf;
    auto m = c2_action(h, Matrix::from_rows(k, {{0, 1}, {1, 0}}));
    auto w = power_reductivity_witness(m, phi(k), 4);
    REQUIRE_MESSAGE(w.degree, k.name());
    CHECK_MESSAGE(*w.degree == expect, k.name());
  }
  // Over F_2, degree 1 maps x + y to 2z = 0.
  auto h2 = constant_group_scheme(cyclic_table(2), F2).hopf;
  auto m2 = c2_action(h2, Matrix::from_rows(F2, {{0, 1}, {1, 0}}));
  auto w = power_reductivity_witness(m2, phi(F2), 1);
  CHECK_FALSE(w.degree);
  CHECK(w.images[0] == std::vector<mpq_class>{0});

  // Identity onto a trivial line.
  auto triv = trivial_comodule(h2, 1);
  CHECK(power_reductivity_witness(triv, Matrix::from_rows(F2, {{1}}), 3).degree == 1u);

  CHECK(kind_of([&] { power_reductivity_witness(m2, Matrix::from_rows(F2, {{1, 0}}), 2); }) ==
        ErrorKind::MalformedData);
  CHECK(kind_of([&] { power_reductivity_witness(m2, Matrix::from_rows(F2, {{0, 0}}), 2); }) ==
        ErrorKind::MalformedData);
}

TEST_CASE("power surjectivity") {
  auto h = constant_group_scheme(cyclic_table(2), F2).hopf;
  auto p = truncated_plane(h);
  REQUIRE(verify_galgebra(p.alg).passed());

  auto id_rep = power_surjectivity_check(p.alg, p.alg, Matrix::identity(F2, 6), 3);
  CHECK(id_rep.conclusive());
  for (const auto& hit : id_rep.hits) CHECK(hit.exponent == 1u);

  auto rep = power_surjectivity_check(p.alg, p.line, p.quotient, 4);
  CHECK(rep.conclusive());
  REQUIRE(rep.hits.size() == 3);
  std::map<std::vector<mpq_class>, std::size_t> exps;
  for (const auto& hit : rep.hits) {
    exps[hit.invariant] = *hit.exponent;
    // The witness polynomial t^e - f(a) kills b.
    Matrix b = Matrix::column(F2, hit.invariant), pw = b;
    for (std::size_t e = 1; e < *hit.exponent; ++e) pw = p.line.mul * kron(pw, b);
    CHECK(pw == p.quotient * Matrix::column(F2, hit.preimage));
    CHECK(hit.witness.rfind("t^" + std::to_string(*hit.exponent), 0) == 0);
  }
  CHECK(exps[{0, 1, 0}] == 2);  // x is not hit, x^2 = f(xy) is
  CHECK(exps[{1, 0, 0}] == 1);

  // k -> k x k diagonal: (1, 0) is idempotent and never diagonal.
  Matrix kkmul(F2, 2, 4);
  kkmul.set(0, 0, 1);
  kkmul.set(1, 3, 1);
  GAlgebraData kk{trivial_comodule(h, 2), kkmul, Matrix::from_rows(F2, {{1}, {1}})};
  auto diag = power_surjectivity_check(trivial_galgebra(h), kk, Matrix::from_rows(F2, {{1}, {1}}), 5);
  CHECK_FALSE(diag.conclusive());

  // Not a map of algebras.
  CHECK(kind_of([&] { power_surjectivity_check(p.alg, p.alg, Matrix::identity(F2, 6).scaled(0), 2); }) ==
        ErrorKind::MalformedData);
}
