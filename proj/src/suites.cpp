#include "hopfcoh/suites.hpp"

#include <functional>
#include <random>

#include "hopfcoh/cohomology.hpp"
#include "hopfcoh/error.hpp"
#include "hopfcoh/integrals.hpp"

namespace hopfcoh {

namespace {

const RingSpec kZ = RingSpec::integers();
const RingSpec kQ = RingSpec::rationals();
const RingSpec kF2 = RingSpec::prime_field(2);
const RingSpec kF3 = RingSpec::prime_field(3);

class Runner {
 public:
  explicit Runner(std::string name) { result_.name = std::move(name); }

  void item(const std::string& name, const std::function<std::string()>& body) {
    SuiteItem it{name, false, {}};
    try {
      it.detail = body();
      it.passed = it.detail.empty();
    } catch (const Error& e) {
      it.detail = std::string(error_kind_name(e.kind())) + ": " + e.what();
    }
    result_.items.push_back(std::move(it));
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string check(const VerificationReport& r) { return r.passed() ? "" : r.summary(); }

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

Matrix random_matrix(const RingSpec& k, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-3, 3);
  Matrix m(k, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, dist(rng));
  return m;
}

std::string label(const std::string& name, const RingSpec& k) { return name + "@" + k.name(); }

// Trivial rank-1 coefficients over C_n read off the periodic resolution.
ModulePresentation cyclic_expected(long n, const RingSpec& k, std::size_t degree) {
  if (degree == 0) return {k, 1, {}};
  if (k.kind() == RingKind::Integers) return degree % 2 ? ModulePresentation{k, 0, {}} : ModulePresentation{k, 0, {n}};
  mpz_class g;
  const mpz_class nn(n);
  mpz_gcd(g.get_mpz_t(), nn.get_mpz_t(), k.modulus().get_mpz_t());
  if (g == 1) return {k, 0, {}};
  if (g == k.modulus()) return {k, 1, {}};
  return {k, 0, {g}};
}

std::string compare_groups(const std::vector<ModulePresentation>& got,
                           const std::vector<ModulePresentation>& want) {
  for (std::size_t i = 0; i < want.size(); ++i)
    if (got[i] != want[i]) return "H^" + std::to_string(i) + " = " + got[i].to_string() + ", expected " + want[i].to_string();
  return "";
}

SuiteResult axioms(std::uint64_t seed) {
  Runner run("axioms");
  std::mt19937_64 rng(seed);
  for (const RingSpec& k : {kZ, kQ, kF2, kF3, RingSpec::integers_mod(4)})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      run.item("hopf axioms " + label(name, k), [&] { return check(verify_hopf(h)); });
      run.item("antipode properties " + label(name, k), [&] { return check(antipode_properties_check(h)); });
      run.item("dual involution " + label(name, k), [&] {
        auto dd = dual_hopf(dual_hopf(h));
        return expect(dd.mul() == h.mul() && dd.comul() == h.comul() && dd.unit() == h.unit() &&
                          dd.counit() == h.counit() && dd.antipode() == h.antipode(),
                      "dual of the dual differs");
      });
      if (h.rank() > 4) continue;
      run.item("convolution associativity " + label(name, k), [&] {
        const std::size_t d = h.rank();
        for (int t = 0; t < 3; ++t) {
          Matrix f = random_matrix(k, d, d, rng), g = random_matrix(k, d, d, rng), e = random_matrix(k, d, d, rng);
          auto c = h.coalgebra();
          auto a = h.algebra();
          if (convolution(c, a, convolution(c, a, f, g), e) != convolution(c, a, f, convolution(c, a, g, e)))
            return std::string("random triple ") + std::to_string(t);
        }
        return std::string();
      });
    }
  // Cartier: separable exactly when not infinitesimal.
  for (const auto& name : builtin_group_names(kQ)) {
    auto h = builtin_group(name, kQ).hopf;
    run.item("separable " + label(name, kQ), [&] { return expect(is_separable(h), "trace form degenerate"); });
  }
  run.item("alpha and mu_p inseparable in characteristic p", [] {
    for (const RingSpec& k : {kF2, kF3}) {
      const long p = k.modulus().get_si();
      if (is_separable(alpha_pr(p, 1, k).hopf) || is_separable(mu_n(p, k).hopf))
        return "separable over " + k.name();
    }
    return expect(!is_separable(alpha_pr(2, 2, kF2).hopf), "alpha_4 separable");
  });
  return run.take();
}

SuiteResult cohomology_oracles() {
  Runner run("cohomology-oracles");
  for (long n : {2L, 3L, 4L})
    for (const RingSpec& k : {kZ, RingSpec::integers_mod(n), RingSpec::prime_field(n == 4 ? 2 : n)}) {
      run.item("cyclic C" + std::to_string(n) + " trivial over " + k.name(), [&] {
        auto h = constant_group_scheme(cyclic_table(n), k).hopf;
        std::vector<ModulePresentation> want;
        for (std::size_t i = 0; i <= 4; ++i) want.push_back(cyclic_expected(n, k, i));
        return compare_groups(cohomology_groups(trivial_comodule(h, 1), 4), want);
      });
    }
  run.item("S3 over Z", [] {
    auto h = constant_group_scheme(symmetric_group_table(3), kZ).hopf;
    return compare_groups(cohomology_groups(trivial_comodule(h, 1), 4),
                          {{kZ, 1, {}}, {kZ, 0, {}}, {kZ, 0, {2}}, {kZ, 0, {}}, {kZ, 0, {6}}});
  });
  for (const auto& name : {std::string("alpha2"), std::string("constant-C2")})
    run.item(name + " over F2 is F2 in every degree", [&] {
      auto h = builtin_group(name, kF2).hopf;
      return compare_groups(cohomology_groups(trivial_comodule(h, 1), 5),
                            std::vector<ModulePresentation>(6, {kF2, 1, {}}));
    });
  run.item("mu3 over Z vanishes", [] {
    auto h = mu_n(3, kZ).hopf;
    auto hs = cohomology_groups(regular_representation(h), 4);
    for (std::size_t i = 1; i <= 4; ++i)
      if (!hs[i].is_zero()) return "H^" + std::to_string(i) + " = " + hs[i].to_string();
    return std::string();
  });
  for (const RingSpec& k : {kZ, kF2, kF3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      std::vector<std::pair<std::string, ComoduleData>> ms{{"trivial", trivial_comodule(h, 1)},
                                                           {"regular", regular_representation(h)},
                                                           {"trivial:2", trivial_comodule(h, 2)}};
      for (const auto& [mname, m] : ms) {
        run.item("H0 = invariants " + label(name, k) + " " + mname, [&] {
          Cohomology coh(m, 0);
          Matrix inv = invariants(m);
          if (coh.presentation(0) != ModulePresentation{k, inv.cols(), {}}) return coh.presentation(0).to_string();
          const Matrix& reps = coh.group(0).representatives();
          return expect(reps.cols() == 0 || solve(inv, reps).has_value(), "representatives not invariant");
        });
        if (h.rank() > 4 || (mname == "regular" && h.rank() > 3)) continue;
        run.item("square zero " + label(name, k) + " " + mname, [&] {
          CobarComplex c(m);
          c.full(3).check_square_zero();
          c.normalized(4).check_square_zero();
          return std::string();
        });
      }
    }
  for (const auto& name : {"constant-C2", "constant-C3", "klein", "mu2"})
    run.item(std::string("induced acyclic ") + name, [&] {
      auto h = builtin_group(name, kZ).hopf;
      return check(acyclicity_check_induced(trivial_comodule(h, 1), 3));
    });
  run.item("induced acyclic alpha2@F2", [] {
    return check(acyclicity_check_induced(trivial_comodule(alpha_pr(2, 1, kF2).hopf, 1), 3));
  });
  return run.take();
}

SuiteResult torsion() {
  Runner run("torsion");
  const RingSpec z4 = RingSpec::integers_mod(4);
  for (const auto& name : builtin_group_names(kZ))
    run.item("bounded torsion " + name, [&] {
      auto h = builtin_group(name, kZ).hopf;
      std::vector<std::pair<std::string, ComoduleData>> family{{"trivial", trivial_comodule(h, 1)}};
      if (h.rank() <= 4)
        family.push_back({"regular", regular_representation(h)});
      else if (auto s = sign_character(h))
        family.push_back({"sign", character_comodule(h, *s)});
      else
        family.push_back({"trivial:2", trivial_comodule(h, 2)});
      family.push_back({"Z/4 trivial", trivial_comodule(base_change(h, z4), 1)});
      auto cert = bounded_torsion_certificate(h, family, 4);
      return expect(cert.passed() && cert.exponent == h.rank(), "certificate failed");
    });
  return run.take();
}

SuiteResult frobenius(std::uint64_t seed) {
  Runner run("frobenius");
  std::mt19937_64 rng(seed);
  for (const RingSpec& k : {kZ, kQ, kF2, kF3})
    for (const auto& name : builtin_group_names(k)) {
      auto h = builtin_group(name, k).hopf;
      run.item("trace " + label(name, k), [&] { return check(trace_map(h).report); });
      run.item("hopf module " + label(name, k), [&] { return check(hopf_module_structure(dual_hopf_module(h)).report); });
      run.item("frobenius " + label(name, k), [&] {
        auto fr = frobenius_isomorphism(h);
        if (!fr.report.passed()) return fr.report.summary();
        // Left linearity on random elements, beyond the basis check.
        for (int t = 0; t < 3; ++t) {
          auto x = random_matrix(k, h.rank(), 1, rng).col(0);
          auto y = random_matrix(k, h.rank(), 1, rng).col(0);
          if (fr.phi.apply(h.product(x, y)) != functional_action(h, x).apply(fr.phi.apply(y)))
            return std::string("random pair ") + std::to_string(t);
        }
        return std::string();
      });
    }
  return run.take();
}

}  // namespace

bool SuiteResult::passed() const {
  for (const auto& i : items)
    if (!i.passed) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "cohomology-oracles", "torsion", "frobenius"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "axioms") return axioms(seed);
  if (name == "cohomology-oracles") return cohomology_oracles();
  if (name == "torsion") return torsion();
  if (name == "frobenius") return frobenius(seed);
  fail(ErrorKind::Usage, "unknown suite '" + name + "'");
}

}  // namespace hopfcoh
