#pragma once

#include <string>
#include <vector>

#include "hopfcoh/hopf.hpp"

namespace hopfcoh {

// Multiplication table of a finite group on {0, ..., n-1}: table[g][h] = gh.
using GroupTable = std::vector<std::vector<std::size_t>>;

struct GroupSchemeData {
  HopfAlgebraData hopf;
  std::string name;
  std::string provenance;  // constructor tag and parameters
};

struct SubgroupData {
  GroupSchemeData ambient;
  Matrix projection;  // k[G] -> k[H], surjective
  GroupSchemeData sub;
  Matrix ideal;  // basis (or Hermite generating set) of the kernel of the projection
};

// Validates closure, associativity, identity and inverses; returns the identity index.
std::size_t validate_group_table(const GroupTable& table);
GroupTable cyclic_table(std::size_t n);
GroupTable direct_product_table(const GroupTable& a, const GroupTable& b);
GroupTable symmetric_group_table(std::size_t n);

GroupSchemeData constant_group_scheme(const GroupTable& table, const RingSpec& ring,
                                      const std::string& name = "constant");
// Cocommutative; a group scheme only when the group is abelian, so the
// result is returned as plain Hopf data.
HopfAlgebraData group_algebra(const GroupTable& table, const RingSpec& ring);
GroupSchemeData mu_n(std::size_t n, const RingSpec& ring);
GroupSchemeData alpha_pr(const mpz_class& p, std::size_t r, const RingSpec& ring);
GroupSchemeData product(const GroupSchemeData& g1, const GroupSchemeData& g2);

// Columns of ideal_gens generate the ideal; the result carries the quotient
// and the projection. Throws HopfIdealViolation naming the failed condition.
SubgroupData subgroup_from_ideal(const GroupSchemeData& g, const Matrix& ideal_gens);
// Five compatibility squares of the projection plus the sub's own axioms.
VerificationReport verify_subgroup(const SubgroupData& s);

// Trace form (x, y) -> tr(left multiplication by xy) is nondegenerate. Fields only.
bool is_separable(const HopfAlgebraData& h);

// alpha(j, i) in k[G] with Delta(e_i) = sum_j e_j (x) alpha(j, i).
class MatrixCoefficients {
 public:
  explicit MatrixCoefficients(const HopfAlgebraData& h);
  std::size_t rank() const { return d_; }
  std::vector<mpq_class> at(std::size_t j, std::size_t i) const;
  // Row j * d + i holds the coordinates of alpha(j, i).
  const Matrix& table() const { return table_; }
  // e_i = sum_j eps(e_j) alpha(j, i).
  bool satisfies_counit_identity(const HopfAlgebraData& h) const;

 private:
  std::size_t d_;
  Matrix table_;
};

// Registry behind "builtin:<name>@<ring>". Names: constant-C<n>, klein,
// constant-S3, mu<n>, groupalg-C<n>, alpha<p^r> (characteristic p rings only),
// product:<a>*<b>.
GroupSchemeData builtin_group(const std::string& name, const RingSpec& ring);
// The fixed list used by the bundled suites, filtered to those defined over `ring`.
std::vector<std::string> builtin_group_names(const RingSpec& ring);

}  // namespace hopfcoh
