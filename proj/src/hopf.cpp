#include "hopfcoh/hopf.hpp"

#include <sstream>

#include "hopfcoh/error.hpp"
#include "hopfcoh/linalg.hpp"

namespace hopfcoh {

void VerificationReport::expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs) {
  CheckResult r;
  r.name = name;
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    r.passed = false;
    r.detail = "shape mismatch";
    add(std::move(r));
    return;
  }
  auto [i, j] = lhs.first_difference(rhs);
  if (j < lhs.cols()) {
    r.passed = false;
    r.witness = j;
    std::ostringstream os;
    os << "column " << j << " row " << i << ": " << lhs.at(i, j) << " vs " << rhs.at(i, j);
    r.detail = os.str();
  }
  add(std::move(r));
}

void VerificationReport::expect(const std::string& name, bool ok, std::string detail) {
  add({name, ok, std::nullopt, ok ? std::string{} : std::move(detail)});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (CheckResult c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

bool VerificationReport::passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << (c.passed ? "pass " : "FAIL ") << c.name;
    if (c.witness) os << " [witness " << *c.witness << "]";
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> default_basis(std::size_t d, const std::string& stem) {
  std::vector<std::string> b;
  b.reserve(d);
  for (std::size_t i = 0; i < d; ++i) b.push_back(stem + std::to_string(i));
  return b;
}

namespace {

void require_shape(const Matrix& m, std::size_t r, std::size_t c, const char* what) {
  if (m.rows() != r || m.cols() != c) {
    std::ostringstream os;
    os << what << " has shape " << m.rows() << "x" << m.cols() << ", expected " << r << "x" << c;
    fail(ErrorKind::MalformedData, os.str());
  }
}

void require_ring(const RingSpec& ring, const Matrix& m, const char* what) {
  if (m.ring() != ring) fail(ErrorKind::MalformedData, std::string(what) + " is over a different ring");
}

void check_coalgebra_shapes(const CoalgebraData& c) {
  const std::size_t d = c.rank;
  if (d == 0) fail(ErrorKind::MalformedData, "rank must be positive");
  require_shape(c.comul, d * d, d, "comultiplication");
  require_shape(c.counit, 1, d, "counit");
  require_ring(c.ring, c.comul, "comultiplication");
  require_ring(c.ring, c.counit, "counit");
}

void check_algebra_shapes(const AlgebraData& a) {
  const std::size_t d = a.rank;
  if (d == 0) fail(ErrorKind::MalformedData, "rank must be positive");
  require_shape(a.mul, d, d * d, "multiplication");
  require_shape(a.unit, d, 1, "unit");
  require_ring(a.ring, a.mul, "multiplication");
  require_ring(a.ring, a.unit, "unit");
  if (a.augmentation) {
    require_shape(*a.augmentation, 1, d, "augmentation");
    require_ring(a.ring, *a.augmentation, "augmentation");
  }
}

}  // namespace

Matrix middle_swap(const RingSpec& ring, std::size_t a, std::size_t b) {
  Matrix ia = Matrix::identity(ring, a), ib = Matrix::identity(ring, b);
  return kron(ia, swap_matrix(ring, b, a), ib);
}

HopfAlgebraData HopfAlgebraData::make(const RingSpec& ring, std::vector<std::string> basis,
                                      Matrix mul, Matrix unit, Matrix comul, Matrix counit,
                                      Matrix antipode) {
  const std::size_t d = unit.rows();
  if (basis.empty()) basis = default_basis(d);
  if (basis.size() != d) fail(ErrorKind::MalformedData, "basis label count does not match rank");
  CoalgebraData c{ring, d, basis, comul, counit};
  AlgebraData a{ring, d, basis, mul, unit, std::nullopt};
  check_coalgebra_shapes(c);
  check_algebra_shapes(a);
  require_shape(antipode, d, d, "antipode");
  require_ring(ring, antipode, "antipode");

  HopfAlgebraData h;
  h.ring_ = ring;
  h.rank_ = d;
  h.basis_ = std::move(basis);
  Matrix tau = swap_matrix(ring, d, d);
  h.commutative_ = mul * tau == mul;
  h.cocommutative_ = tau * comul == comul;
  h.mul_ = std::move(mul);
  h.unit_ = std::move(unit);
  h.comul_ = std::move(comul);
  h.counit_ = std::move(counit);
  h.antipode_ = std::move(antipode);
  return h;
}

Matrix HopfAlgebraData::left_mult(std::span<const mpq_class> b) const {
  return mul_ * kron(Matrix::column(ring_, b), Matrix::identity(ring_, rank_));
}

Matrix HopfAlgebraData::right_mult(std::span<const mpq_class> b) const {
  return mul_ * kron(Matrix::identity(ring_, rank_), Matrix::column(ring_, b));
}

std::vector<mpq_class> HopfAlgebraData::product(std::span<const mpq_class> a,
                                                std::span<const mpq_class> b) const {
  Matrix ab = kron(Matrix::column(ring_, a), Matrix::column(ring_, b));
  return (mul_ * ab).col(0);
}

VerificationReport verify_coalgebra(const CoalgebraData& c) {
  check_coalgebra_shapes(c);
  const RingSpec& k = c.ring;
  Matrix id = Matrix::identity(k, c.rank);
  VerificationReport rep;
  rep.expect_equal("coassociativity", kron(c.comul, id) * c.comul, kron(id, c.comul) * c.comul);
  rep.expect_equal("left counit", kron(c.counit, id) * c.comul, id);
  rep.expect_equal("right counit", kron(id, c.counit) * c.comul, id);
  return rep;
}

VerificationReport verify_algebra(const AlgebraData& a) {
  check_algebra_shapes(a);
  const RingSpec& k = a.ring;
  Matrix id = Matrix::identity(k, a.rank);
  VerificationReport rep;
  rep.expect_equal("associativity", a.mul * kron(a.mul, id), a.mul * kron(id, a.mul));
  rep.expect_equal("left unit", a.mul * kron(a.unit, id), id);
  rep.expect_equal("right unit", a.mul * kron(id, a.unit), id);
  if (a.augmentation) {
    const Matrix& e = *a.augmentation;
    rep.expect_equal("augmentation is multiplicative", e * a.mul, kron(e, e));
    rep.expect_equal("augmentation preserves unit", e * a.unit, Matrix::identity(k, 1));
  }
  return rep;
}

VerificationReport verify_hopf(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  Matrix id = Matrix::identity(k, d);
  VerificationReport rep;
  AlgebraData a = h.algebra();
  a.augmentation.reset();
  rep.merge(verify_algebra(a));
  rep.merge(verify_coalgebra(h.coalgebra()));

  const Matrix& m = h.mul();
  const Matrix& dl = h.comul();
  const Matrix& e = h.counit();
  const Matrix& u = h.unit();
  rep.expect_equal("comultiplication is multiplicative", dl * m,
                   kron(m, m) * middle_swap(k, d, d) * kron(dl, dl));
  rep.expect_equal("comultiplication preserves unit", dl * u, kron(u, u));
  rep.expect_equal("counit is multiplicative", e * m, kron(e, e));
  rep.expect_equal("counit preserves unit", e * u, Matrix::identity(k, 1));

  Matrix ue = u * e;
  rep.expect_equal("antipode left", m * kron(h.antipode(), id) * dl, ue);
  rep.expect_equal("antipode right", m * kron(id, h.antipode()) * dl, ue);
  return rep;
}

VerificationReport antipode_properties_check(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  const Matrix& s = h.antipode();
  Matrix tau = swap_matrix(k, d, d);
  VerificationReport rep;
  rep.expect_equal("antipode reverses products", s * h.mul(), h.mul() * tau * kron(s, s));
  rep.expect_equal("antipode fixes unit", s * h.unit(), h.unit());
  rep.expect_equal("antipode reverses coproducts", h.comul() * s, kron(s, s) * tau * h.comul());
  rep.expect_equal("antipode preserves counit", h.counit() * s, h.counit());
  rep.expect("antipode is bijective", k.is_unit(determinant(s)), "determinant is not a unit");
  if (h.cocommutative() || h.commutative())
    rep.expect_equal("antipode is an involution", s * s, Matrix::identity(k, d));
  return rep;
}

Matrix convolution(const CoalgebraData& c, const AlgebraData& a, const Matrix& f, const Matrix& g) {
  if (c.ring != a.ring || f.ring() != c.ring || g.ring() != c.ring)
    fail(ErrorKind::MalformedData, "convolution operands over different rings");
  require_shape(f, a.rank, c.rank, "left convolution factor");
  require_shape(g, a.rank, c.rank, "right convolution factor");
  return a.mul * kron(f, g) * c.comul;
}

HopfAlgebraData dual_hopf(const HopfAlgebraData& h) {
  std::vector<std::string> basis;
  for (const auto& b : h.basis()) basis.push_back(b + "*");
  return HopfAlgebraData::make(h.ring(), std::move(basis), h.comul().transpose(),
                               h.counit().transpose(), h.mul().transpose(), h.unit().transpose(),
                               h.antipode().transpose());
}

namespace {

std::vector<std::string> tensor_labels(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x + "(x)" + y);
  return out;
}

void require_same_ring(const RingSpec& a, const RingSpec& b) {
  if (a != b) fail(ErrorKind::MalformedData, "tensor factors over different rings");
}

}  // namespace

CoalgebraData tensor_coalgebra(const CoalgebraData& c1, const CoalgebraData& c2) {
  require_same_ring(c1.ring, c2.ring);
  const RingSpec& k = c1.ring;
  CoalgebraData out;
  out.ring = k;
  out.rank = c1.rank * c2.rank;
  out.basis = tensor_labels(c1.basis, c2.basis);
  out.comul = middle_swap(k, c1.rank, c2.rank).transpose() * kron(c1.comul, c2.comul);
  out.counit = kron(c1.counit, c2.counit);
  return out;
}

HopfAlgebraData tensor_hopf(const HopfAlgebraData& h1, const HopfAlgebraData& h2) {
  require_same_ring(h1.ring(), h2.ring());
  const RingSpec& k = h1.ring();
  const std::size_t a = h1.rank(), b = h2.rank();
  Matrix sw = middle_swap(k, a, b);
  // sw regroups (x1 y1)(x2 y2) -> (x1 x2)(y1 y2); it is a permutation, so its inverse is sw^T.
  Matrix mul = kron(h1.mul(), h2.mul()) * sw;
  Matrix comul = sw.transpose() * kron(h1.comul(), h2.comul());
  return HopfAlgebraData::make(k, tensor_labels(h1.basis(), h2.basis()), std::move(mul),
                               kron(h1.unit(), h2.unit()), std::move(comul),
                               kron(h1.counit(), h2.counit()), kron(h1.antipode(), h2.antipode()));
}

HopfAlgebraData base_change(const HopfAlgebraData& h, const RingSpec& target) {
  if (!has_canonical_map(h.ring(), target))
    fail(ErrorKind::UnsupportedBaseChange,
         "no canonical ring map " + h.ring().name() + " -> " + target.name());
  return HopfAlgebraData::make(target, h.basis(), h.mul().map_ring(target),
                               h.unit().map_ring(target), h.comul().map_ring(target),
                               h.counit().map_ring(target), h.antipode().map_ring(target));
}

VerificationReport verify_hopf_morphism(const HopfAlgebraData& h, const HopfAlgebraData& k,
                                        const Matrix& f) {
  require_shape(f, k.rank(), h.rank(), "morphism");
  VerificationReport rep;
  rep.expect_equal("preserves multiplication", f * h.mul(), k.mul() * kron(f, f));
  rep.expect_equal("preserves unit", f * h.unit(), k.unit());
  rep.expect_equal("preserves comultiplication", k.comul() * f, kron(f, f) * h.comul());
  rep.expect_equal("preserves counit", k.counit() * f, h.counit());
  rep.expect_equal("preserves antipode", k.antipode() * f, f * h.antipode());
  return rep;
}

}  // namespace hopfcoh
