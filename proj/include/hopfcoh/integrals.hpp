#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcoh/cohomology.hpp"
#include "hopfcoh/hopf.hpp"
#include "hopfcoh/rep.hpp"

namespace hopfcoh {

// Basis of {x : b x = aug(b) x for all b}, one stacked kernel system.
Matrix left_integrals(const AlgebraData& a);

// Coinvariants of H* as a right Hopf module over H; throws TheoremViolation
// unless the result has exactly one column.
Matrix dual_coinvariants(const HopfAlgebraData& h);

// Left multiplication by h on functionals, (h . f)(a) = f(a h).
Matrix functional_action(const HopfAlgebraData& h, std::span<const mpq_class> x);

struct FrobeniusData {
  HopfAlgebraData hopf;
  std::vector<mpq_class> psi;   // Phi(1), a functional (values on the basis)
  Matrix phi;                   // H -> H*, d x d
  std::vector<mpq_class> norm;  // N with N . psi = counit
  VerificationReport report;
};

// Phi = rho o S^{-1}, rho the inverse of the Hopf-module splitting of H*.
// Throws TheoremViolation when an invariant fails or S is not invertible.
FrobeniusData frobenius_isomorphism(const HopfAlgebraData& h);

struct TraceData {
  HopfAlgebraData hopf;
  Matrix trace;  // 1 x d
  VerificationReport report;
};

// Throws TheoremViolation when tr(1) != rank or tr is not a comodule map.
TraceData trace_map(const HopfAlgebraData& h);

struct TorsionEvidence {
  std::string module;
  std::vector<ModulePresentation> groups;  // H^1 .. H^nmax
  bool annihilated = true;
};

struct TorsionCertificate {
  mpz_class exponent;  // rank of k[G]
  std::string justification;
  std::vector<TorsionEvidence> evidence;
  bool passed() const;
};

// n = rank(k[G]) must kill H^i(G, M) for 1 <= i <= nmax. Throws TheoremViolation
// on a counterexample. Module names are free-form labels for the evidence.
TorsionCertificate bounded_torsion_certificate(const HopfAlgebraData& g,
                                               const std::vector<std::pair<std::string, ComoduleData>>& modules,
                                               std::size_t nmax);

struct PowerHit {
  std::vector<mpq_class> invariant;  // basis invariant b of B^G
  std::optional<std::size_t> exponent;
  std::vector<mpq_class> preimage;   // a in A^G with f(a) = b^e
  std::string witness;               // monic polynomial t^e - f(a)
};

struct PowerSurjectivityReport {
  std::vector<PowerHit> hits;
  bool conclusive() const;  // every invariant found a power
};

// Bounded search for b^e in f(A^G), e = 1..e_max. Throws MalformedData when f
// is not a map of G-algebras.
PowerSurjectivityReport power_surjectivity_check(const GAlgebraData& a, const GAlgebraData& b,
                                                 const Matrix& f, std::size_t e_max);

// Monomials of degree d in m variables, graded lexicographic (x0 first).
std::vector<std::vector<std::size_t>> monomial_basis(std::size_t m, std::size_t d);
// The literal symmetric power S^d M with the induced diagonal coaction.
ComoduleData symmetric_power(const ComoduleData& m, std::size_t d);

struct PowerReductivity {
  std::optional<std::size_t> degree;
  // per d: images of the invariants of S^d M in S^d L = k
  std::vector<std::vector<mpq_class>> images;
};

// Least d <= d_max with (S^d M)^G -> S^d L onto, for phi: M -> L = k trivial.
PowerReductivity power_reductivity_witness(const ComoduleData& m, const Matrix& phi, std::size_t d_max);

}  // namespace hopfcoh
