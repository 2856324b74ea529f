#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopfcoh/matrix.hpp"
#include "hopfcoh/ring.hpp"

namespace hopfcoh {

struct SmithForm {
  Matrix u;
  Matrix d;
  Matrix v;
};

// U * m * V = D over Z or Z/n (Z/n through a lift to Z). Fields are rejected
// with ErrorKind::UseRowReduction.
SmithForm smith_normal_form(const Matrix& m);
// Nonzero invariant factors only; cheaper than the full form. Z only.
std::vector<mpz_class> smith_diagonal(const Matrix& m);

// Generating set of the kernel. Over Z and fields the columns are a basis;
// over Z the basis is in column Hermite form (topmost nonzero of each column
// positive, entries to its left in [0, pivot)).
Matrix kernel_basis(const Matrix& m);
// Rank over the fraction field for Z, the usual rank over a field, and the
// number of non-vanishing invariant factors over Z/n.
std::size_t rank(const Matrix& m);
mpq_class determinant(const Matrix& m);
// Some X with A X = B, or nothing when the system has no solution over the ring.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);
// Column Hermite form of the column span, Z only.
Matrix column_hermite_form(const Matrix& m);
// Small generating set of the column span: a basis over fields, the Hermite
// basis over Z, Hermite columns reduced mod n over Z/n.
Matrix span_basis(const Matrix& m);

struct ModulePresentation {
  RingSpec ring;
  std::size_t free_rank = 0;
  std::vector<mpz_class> invariant_factors;

  bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }
  std::string to_string() const;
  bool operator==(const ModulePresentation& o) const {
    return ring == o.ring && free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool operator!=(const ModulePresentation& o) const { return !(*this == o); }
};

// span(kernel_gens) / span(image_gens) inside ring^ambient_rank.
ModulePresentation subquotient(std::size_t ambient_rank, const Matrix& kernel_gens,
                               const Matrix& image_gens);
// Largest invariant factor; nothing when the torsion is trivial. Z only.
std::optional<mpz_class> torsion_exponent(const ModulePresentation& p);
// Orders of the generators: each invariant factor, then 0 for every free Z
// summand (the modulus for Z/n, the characteristic for F_p).
std::vector<mpz_class> generator_orders(const ModulePresentation& p);

// ker(out) / im(in) for out: R^dim -> R^a and in: R^b -> R^dim, with class
// representatives and a coordinate map onto the presentation's generators.
class HomologyGroup {
 public:
  enum class Mode { Full, PresentationOnly };

  static HomologyGroup compute(const SparseMatrix& out, const SparseMatrix& in,
                               Mode mode = Mode::Full);

  const ModulePresentation& presentation() const { return presentation_; }
  std::size_t dimension() const { return dim_; }
  // One column per generator, in presentation order (torsion factors first).
  const Matrix& representatives() const { return reps_; }
  bool has_representatives() const { return mode_ == Mode::Full; }
  // Coordinates of the class of a cycle, each reduced modulo its generator
  // order. Throws when the vector is not a cycle.
  std::vector<mpq_class> coordinates(std::span<const mpq_class> cycle) const;
  bool is_boundary(std::span<const mpq_class> cycle) const;
  // Linear combination of the representatives.
  std::vector<mpq_class> lift(std::span<const mpq_class> coords) const;

 private:
  enum class Path { Integers, IntegersMod, Field };

  Mode mode_ = Mode::Full;
  Path path_ = Path::Field;
  RingSpec ring_;
  std::size_t dim_ = 0;
  ModulePresentation presentation_;
  Matrix reps_;
  SparseMatrix out_;
  // Z and Z/n: coordinates = P * diag(1/s) * Kc * x, restricted to `kept_`.
  std::vector<std::vector<mpz_class>> kernel_coords_;  // rows of Kc
  std::vector<mpz_class> scale_;                       // s_i (Z/n only)
  std::vector<std::vector<mpz_class>> p_;              // rows of P
  std::vector<std::size_t> kept_;                      // rows of P that survive
  std::vector<mpz_class> orders_;                      // per surviving generator
  // Fields: free columns of out, image echelon rows in free coordinates, complement.
  std::vector<std::size_t> free_cols_;
  std::vector<std::vector<mpq_class>> image_rows_;
  std::vector<std::size_t> image_pivots_;
  std::vector<std::size_t> complement_;
};

}  // namespace hopfcoh
