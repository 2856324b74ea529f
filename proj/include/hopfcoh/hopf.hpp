#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopfcoh/matrix.hpp"
#include "hopfcoh/ring.hpp"

namespace hopfcoh {

struct CheckResult {
  std::string name;
  bool passed = true;
  // First failing basis index (0-based) of the map's domain.
  std::optional<std::size_t> witness;
  std::string detail;
};

class VerificationReport {
 public:
  void add(CheckResult r) { checks_.push_back(std::move(r)); }
  // Records a matrix identity lhs == rhs; the witness is the first differing column.
  void expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs);
  void expect(const std::string& name, bool ok, std::string detail = {});
  void merge(const VerificationReport& other, const std::string& prefix = {});

  bool passed() const;
  const std::vector<CheckResult>& checks() const { return checks_; }
  const CheckResult* find(const std::string& name) const;
  std::string summary() const;

 private:
  std::vector<CheckResult> checks_;
};

struct CoalgebraData {
  RingSpec ring;
  std::size_t rank = 0;
  std::vector<std::string> basis;
  Matrix comul;   // d^2 x d
  Matrix counit;  // 1 x d
};

struct AlgebraData {
  RingSpec ring;
  std::size_t rank = 0;
  std::vector<std::string> basis;
  Matrix mul;   // d x d^2
  Matrix unit;  // d x 1
  std::optional<Matrix> augmentation;
};

// Finite free Hopf algebra by structure constants. Shapes are validated and
// the (co)commutativity flags computed on construction; the axioms are not,
// see verify_hopf.
class HopfAlgebraData {
 public:
  HopfAlgebraData() = default;
  static HopfAlgebraData make(const RingSpec& ring, std::vector<std::string> basis, Matrix mul,
                              Matrix unit, Matrix comul, Matrix counit, Matrix antipode);

  const RingSpec& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const Matrix& mul() const { return mul_; }
  const Matrix& unit() const { return unit_; }
  const Matrix& comul() const { return comul_; }
  const Matrix& counit() const { return counit_; }
  const Matrix& antipode() const { return antipode_; }
  bool commutative() const { return commutative_; }
  bool cocommutative() const { return cocommutative_; }

  CoalgebraData coalgebra() const { return {ring_, rank_, basis_, comul_, counit_}; }
  AlgebraData algebra() const { return {ring_, rank_, basis_, mul_, unit_, counit_}; }

  // Matrix of x -> b x (left) or x -> x b (right) for b given in coordinates.
  Matrix left_mult(std::span<const mpq_class> b) const;
  Matrix right_mult(std::span<const mpq_class> b) const;
  std::vector<mpq_class> product(std::span<const mpq_class> a, std::span<const mpq_class> b) const;
  std::vector<mpq_class> unit_vector() const { return unit_.col(0); }

  bool operator==(const HopfAlgebraData& o) const {
    return ring_ == o.ring_ && mul_ == o.mul_ && unit_ == o.unit_ && comul_ == o.comul_ &&
           counit_ == o.counit_ && antipode_ == o.antipode_;
  }

 private:
  RingSpec ring_;
  std::size_t rank_ = 0;
  std::vector<std::string> basis_;
  Matrix mul_, unit_, comul_, counit_, antipode_;
  bool commutative_ = false;
  bool cocommutative_ = false;
};

std::vector<std::string> default_basis(std::size_t d, const std::string& stem = "e");

VerificationReport verify_coalgebra(const CoalgebraData& c);
VerificationReport verify_algebra(const AlgebraData& a);
VerificationReport verify_hopf(const HopfAlgebraData& h);
VerificationReport antipode_properties_check(const HopfAlgebraData& h);

// m_A o (f (x) g) o Delta_C for linear maps f, g: C -> A.
Matrix convolution(const CoalgebraData& c, const AlgebraData& a, const Matrix& f, const Matrix& g);

HopfAlgebraData dual_hopf(const HopfAlgebraData& h);
CoalgebraData tensor_coalgebra(const CoalgebraData& c1, const CoalgebraData& c2);
// Componentwise Hopf structure on H1 (x) H2.
HopfAlgebraData tensor_hopf(const HopfAlgebraData& h1, const HopfAlgebraData& h2);
HopfAlgebraData base_change(const HopfAlgebraData& h, const RingSpec& target);

// id (x) swap (x) id on (k^a (x) k^b) (x) (k^a (x) k^b) -> (k^a (x) k^a) (x) (k^b (x) k^b).
Matrix middle_swap(const RingSpec& ring, std::size_t a, std::size_t b);

// Checks that f: H -> K commutes with every Hopf operation.
VerificationReport verify_hopf_morphism(const HopfAlgebraData& h, const HopfAlgebraData& k,
                                        const Matrix& f);

}  // namespace hopfcoh
