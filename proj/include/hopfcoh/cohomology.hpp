#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hopfcoh/hopf.hpp"
#include "hopfcoh/linalg.hpp"
#include "hopfcoh/rep.hpp"
#include "hopfcoh/schemes.hpp"

namespace hopfcoh {

// Complexes larger than this (in any single degree) are refused with a
// SizeLimit error. HOPFCOH_MAX_RANK overrides the default of 200000.
std::size_t max_cochain_rank();
inline constexpr std::size_t kDefaultMaxDegree = 6;

struct CochainComplex {
  RingSpec ring;
  std::vector<std::size_t> ranks;           // C^0 .. C^N
  std::vector<SparseMatrix> differentials;  // C^n -> C^{n+1}, n < N

  // Throws InternalConsistency when some composite of consecutive
  // differentials is nonzero.
  void check_square_zero() const;
};

// Cochains M (x) H^{(x)n} of a comodule M, in two coordinate systems.
//
// Full: the basis e_a (x) e_{j1} (x) ... (x) e_{jn}, index a * d^n + (j1 ... jn)
// read in base d with j1 most significant.
//
// Normalized: H = k.1 + I with I the augmentation ideal; the cochains with
// every tensor slot in I form a subcomplex, and the ones with some slot
// equal to 1 form a complement that is also a subcomplex, so both compute the
// same cohomology. The normalized basis uses a fixed basis b_1..b_{d-1} of I,
// index a * (d-1)^n + (j1-1 ... jn-1) in base d-1.
class CobarComplex {
 public:
  CobarComplex(const ComoduleData& m);

  const RingSpec& ring() const { return ring_; }
  std::size_t module_rank() const { return m_; }
  std::size_t hopf_rank() const { return d_; }
  std::size_t full_rank(std::size_t n) const;
  std::size_t normalized_rank(std::size_t n) const;

  SparseMatrix full_differential(std::size_t n) const;
  SparseMatrix normalized_differential(std::size_t n) const;
  CochainComplex full(std::size_t nmax) const;
  CochainComplex normalized(std::size_t nmax) const;

  // d x d, columns 1, b_1, ..., b_{d-1} in the original basis.
  const Matrix& adapted_basis() const { return basis_; }
  // Inclusion of normalized cochains into full ones (a chain map).
  std::vector<mpq_class> embed(std::size_t n, std::span<const mpq_class> v) const;
  // Projection of full cochains onto normalized ones along the degenerate
  // part (also a chain map).
  std::vector<mpq_class> project(std::size_t n, std::span<const mpq_class> v) const;

  // Structure constants in the adapted basis.
  const Matrix& adapted_comul() const { return comul_; }
  const Matrix& adapted_mul() const { return mul_; }
  const Matrix& adapted_coaction() const { return coaction_; }

 private:
  RingSpec ring_;
  std::size_t m_ = 0, d_ = 0;
  ComoduleData module_;
  Matrix basis_, basis_inv_;
  Matrix comul_, mul_, coaction_;  // adapted coordinates
};

struct CohomologyClass {
  std::size_t degree = 0;
  std::vector<mpq_class> representative;  // normalized cochain, a cocycle
  ModulePresentation group;
  std::vector<mpq_class> coordinates;     // on the generators of the group
};

// H^0 .. H^nmax through the normalized complex. Representatives are the
// stored generator cocycles (field path: echelon complement, lowest index
// first; Z and Z/n: the Smith generators).
class Cohomology {
 public:
  Cohomology(const ComoduleData& m, std::size_t nmax = kDefaultMaxDegree,
             HomologyGroup::Mode mode = HomologyGroup::Mode::Full);

  std::size_t max_degree() const { return groups_.size() - 1; }
  const CobarComplex& complex() const { return complex_; }
  const CochainComplex& cochains() const { return cochains_; }
  const HomologyGroup& group(std::size_t n) const;
  const ModulePresentation& presentation(std::size_t n) const { return group(n).presentation(); }
  std::vector<ModulePresentation> presentations() const;

  CohomologyClass class_of(std::size_t n, std::span<const mpq_class> cocycle) const;
  // The i-th generator of H^n.
  CohomologyClass generator(std::size_t n, std::size_t i) const;
  CohomologyClass from_coordinates(std::size_t n, std::span<const mpq_class> coords) const;

 private:
  CobarComplex complex_;
  CochainComplex cochains_;
  std::vector<HomologyGroup> groups_;
};

CochainComplex hochschild_complex(const ComoduleData& m, std::size_t nmax);
std::vector<ModulePresentation> cohomology_groups(const ComoduleData& m,
                                                  std::size_t nmax = kDefaultMaxDegree);

// Concatenation of cochains; both classes must come from `trivial`, the
// cohomology of a trivial rank-1 comodule. Throws DegreeOverflow when the
// total degree exceeds the computed range.
CohomologyClass cup_product(const Cohomology& trivial, const CohomologyClass& x,
                            const CohomologyClass& y);

// H^i(G, M (x) k[G]) = 0 for 1 <= i <= nmax and H^0 = M.
VerificationReport acyclicity_check_induced(const ComoduleData& m, std::size_t nmax);

struct ShortExactSequence {
  ComoduleData sub, middle, quotient;
  Matrix inclusion;   // middle.rank x sub.rank
  Matrix projection;  // quotient.rank x middle.rank
};

struct LongExactSequence {
  std::vector<Cohomology> terms;  // sub, middle, quotient
  // connecting[n] maps H^n(quotient) -> H^{n+1}(sub) in generator coordinates
  // (columns = generators of the source).
  std::vector<Matrix> connecting;
  VerificationReport report;
};

// Rejects (MalformedData) inputs that are not comodule maps or not exact.
LongExactSequence long_exact_sequence(const ShortExactSequence& ses, std::size_t nmax);
// Image of the class of a cocycle of the quotient under the connecting map.
CohomologyClass connecting_map(const LongExactSequence& les, const ShortExactSequence& ses,
                               const CohomologyClass& x);

// 0 -> M -n-> M -> M/n -> 0 for a comodule over Z; the quotient is the base
// change to Z/n, so it falls outside the free-module sequences above. Terms
// are (M, M, M/n) and connecting[k] is the Bockstein H^k(M/n) -> H^{k+1}(M).
LongExactSequence bockstein_sequence(const ComoduleData& m, const mpz_class& n, std::size_t nmax);

// lcm of the torsion exponents of H^1 .. H^nmax; Z only.
std::optional<mpz_class> torsion_bound(const ComoduleData& m, std::size_t nmax);

// Cochain-level cross product for a G-algebra A:
//   (a (x) x1..xn) . (b (x) y) = a b0 (x) x1 b1 (x) ... (x) xn bn (x) y
// in normalized adapted coordinates.
std::vector<mpq_class> cross_product(const CobarComplex& c, const GAlgebraData& a, std::size_t n,
                                     std::span<const mpq_class> x, std::size_t m,
                                     std::span<const mpq_class> y);
// Leibniz rule d(x.y) = dx.y + (-1)^n x.dy on basis cochains with n + m < max_degree.
VerificationReport verify_cross_product(const CobarComplex& c, const GAlgebraData& a,
                                        std::size_t max_degree);

// Ext_B(k, k) for the augmented algebra B = H*, with Yoneda products computed
// by lifting cocycles to chain maps on the normalized bar resolution. Fields only.
class YonedaExt {
 public:
  YonedaExt(const HopfAlgebraData& h, std::size_t nmax);
  std::size_t max_degree() const { return groups_.size() - 1; }
  const ModulePresentation& presentation(std::size_t n) const;
  std::size_t dimension(std::size_t n) const;
  // Product of generator i of Ext^n with generator j of Ext^m, as coordinates in Ext^{n+m}.
  std::vector<mpq_class> product(std::size_t n, std::size_t i, std::size_t m, std::size_t j) const;

 private:
  std::size_t gens(std::size_t n) const;
  // Boundary of b0 [t] in the bar resolution, as a vector over P_{n-1}.
  std::vector<mpq_class> resolution_boundary(std::size_t n, std::size_t b0, std::size_t tuple) const;

  RingSpec ring_;
  std::size_t d_ = 0;
  Matrix mul_;     // B multiplication in the adapted basis 1, b_1..b_{d-1}
  std::vector<mpq_class> aug_;
  std::vector<HomologyGroup> groups_;
};

struct CohomologyRing {
  enum class Route { CrossProduct, Yoneda };
  Route route = Route::CrossProduct;
  std::size_t degree_cap = 0;
  std::vector<ModulePresentation> groups;  // H^0 .. H^D
  // generators[n]: coordinate vectors in H^n of minimal algebra generators.
  std::vector<std::vector<std::vector<mpq_class>>> generators;
  // Monomials in the positive-degree generators (exponent vectors) and, per
  // degree, a basis of the linear relations among the monomials of that degree.
  std::vector<std::vector<std::vector<std::size_t>>> monomials;
  std::vector<std::vector<std::vector<mpq_class>>> relations;
  // product_ranks[n][m]: rank of H^n (x) H^m -> H^{n+m}, for n + m <= D.
  std::vector<std::vector<std::size_t>> product_ranks;
  VerificationReport report;

  std::size_t generator_count(std::size_t n) const { return generators[n].size(); }
};

// Generators and relations of H^*(G, A) up to the degree cap. Fields only.
// Falls back to Yoneda products when the cross product fails its chain-map
// check and A has trivial coaction; otherwise throws TheoremViolation.
// A forced route skips the automatic choice (Yoneda still needs trivial coaction).
CohomologyRing algebra_cohomology_ring(const GAlgebraData& a, std::size_t degree_cap,
                                       std::optional<CohomologyRing::Route> route = std::nullopt);

// The trivial G-algebra k.
GAlgebraData trivial_galgebra(const HopfAlgebraData& h);
// k[G] with its right regular coaction and own multiplication.
GAlgebraData regular_galgebra(const HopfAlgebraData& h);

}  // namespace hopfcoh
