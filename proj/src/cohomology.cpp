#include "hopfcoh/cohomology.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "hopfcoh/error.hpp"

namespace hopfcoh {

namespace {

using Entries = std::vector<std::pair<std::size_t, mpq_class>>;

Matrix id(const RingSpec& k, std::size_t n) { return Matrix::identity(k, n); }

std::size_t checked_pow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i)
    if (__builtin_mul_overflow(r, b, &r)) fail(ErrorKind::SizeLimit, "cochain rank overflows");
  return r;
}

std::size_t checked_mul(std::size_t a, std::size_t b) {
  std::size_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::SizeLimit, "cochain rank overflows");
  return r;
}

std::vector<Entries> column_entries(const Matrix& m) {
  std::vector<Entries> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m.at(i, j)) != 0) out[j].emplace_back(i, m.at(i, j));
  return out;
}

// Digits of t in base b, most significant first.
std::vector<std::size_t> digits(std::size_t t, std::size_t base, std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = t % base;
    t /= base;
  }
  return out;
}

std::size_t encode(std::span<const std::size_t> ds, std::size_t base) {
  std::size_t t = 0;
  for (std::size_t x : ds) t = t * base + x;
  return t;
}

SparseMatrix from_columns(const RingSpec& k, std::size_t rows,
                          std::vector<std::map<std::size_t, mpq_class>> cols) {
  SparseMatrix s(k, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<SparseMatrix::Entry> e;
    e.reserve(cols[j].size());
    for (auto& [r, v] : cols[j]) e.push_back({r, std::move(v)});
    s.set_column(j, std::move(e));
  }
  return s;
}

std::vector<mpq_class> canonical(const RingSpec& k, std::vector<mpq_class> v) {
  for (auto& x : v) x = k.canonical(x);
  return v;
}

bool all_zero(std::span<const mpq_class> v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

// Basis 1, b_1..b_{d-1} of an augmented algebra with the b_i spanning the
// augmentation ideal.
Matrix make_adapted_basis(const Matrix& unit, const Matrix& aug) {
  const RingSpec& k = unit.ring();
  const std::size_t d = unit.rows();
  std::optional<std::size_t> pivot;
  for (std::size_t j = 0; j < d && !pivot; ++j)
    if (k.is_unit(aug.at(0, j))) pivot = j;
  Matrix ideal;
  if (pivot) {
    const std::size_t j0 = *pivot;
    const mpq_class u_inv = k.inv(aug.at(0, j0));
    ideal = Matrix(k, d, d == 0 ? 0 : d - 1);
    std::size_t c = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == j0) continue;
      ideal.set(j, c, 1);
      ideal.set(j0, c, -aug.at(0, j) * u_inv);
      ++c;
    }
  } else if (k.kind() == RingKind::Integers) {
    ideal = kernel_basis(aug);
  } else {
    fail(ErrorKind::UnsupportedRing, "augmentation has no unit coordinate");
  }
  Matrix b = unit.hcat(ideal);
  if (b.cols() != d || !inverse(b))
    fail(ErrorKind::InternalConsistency, "unit and augmentation ideal do not span");
  return b;
}

}  // namespace

std::size_t max_cochain_rank() {
  if (const char* env = std::getenv("HOPFCOH_MAX_RANK")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

void CochainComplex::check_square_zero() const {
  for (std::size_t n = 0; n + 1 < differentials.size(); ++n)
    if (!(differentials[n + 1] * differentials[n]).is_zero())
      fail(ErrorKind::InternalConsistency,
           "differential squares to a nonzero map out of degree " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Cobar complex

CobarComplex::CobarComplex(const ComoduleData& m)
    : ring_(m.over.ring()), m_(m.rank), d_(m.over.rank()), module_(m) {
  const HopfAlgebraData& h = m.over;
  if (m.coaction.rows() != m_ * d_ || m.coaction.cols() != m_ || m.coaction.ring() != ring_)
    fail(ErrorKind::MalformedData, "coaction shape does not match the comodule");
  basis_ = make_adapted_basis(h.unit(), h.counit());
  basis_inv_ = *inverse(basis_);
  comul_ = kron(basis_inv_, basis_inv_) * h.comul() * basis_;
  mul_ = basis_inv_ * h.mul() * kron(basis_, basis_);
  coaction_ = kron(id(ring_, m_), basis_inv_) * m.coaction;
}

std::size_t CobarComplex::full_rank(std::size_t n) const { return checked_mul(m_, checked_pow(d_, n)); }
std::size_t CobarComplex::normalized_rank(std::size_t n) const {
  return checked_mul(m_, checked_pow(d_ - 1, n));
}

SparseMatrix CobarComplex::normalized_differential(std::size_t n) const {
  const std::size_t r = d_ - 1;
  const std::size_t src = normalized_rank(n), dst = normalized_rank(n + 1);
  const std::size_t rn = checked_pow(r, n), rn1 = checked_pow(r, n + 1);
  auto co = column_entries(coaction_);
  auto dl = column_entries(comul_);
  std::vector<std::map<std::size_t, mpq_class>> cols(src);
  std::vector<std::size_t> target(n + 1);
  for (std::size_t idx = 0; idx < src; ++idx) {
    const std::size_t a = idx / rn, t = idx % rn;
    auto& col = cols[idx];
    for (const auto& [row, v] : co[a]) {
      const std::size_t b = row / d_, c = row % d_;
      if (c == 0) continue;
      col[b * rn1 + (c - 1) * rn + t] += v;
    }
    auto ds = digits(t, r, n);
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class sign = (i + 1) % 2 ? -1 : 1;
      for (const auto& [row, v] : dl[ds[i] + 1]) {
        const std::size_t p = row / d_, q = row % d_;
        if (p == 0 || q == 0) continue;
        std::size_t w = 0;
        for (std::size_t s = 0; s < i; ++s) target[w++] = ds[s];
        target[w++] = p - 1;
        target[w++] = q - 1;
        for (std::size_t s = i + 1; s < n; ++s) target[w++] = ds[s];
        col[a * rn1 + encode(target, r)] += sign * v;
      }
    }
  }
  return from_columns(ring_, dst, std::move(cols));
}

SparseMatrix CobarComplex::full_differential(std::size_t n) const {
  const HopfAlgebraData& h = module_.over;
  const std::size_t src = full_rank(n), dst = full_rank(n + 1);
  const std::size_t dn = checked_pow(d_, n), dn1 = checked_pow(d_, n + 1);
  auto co = column_entries(module_.coaction);
  auto dl = column_entries(h.comul());
  auto un = column_entries(h.unit());
  std::vector<std::map<std::size_t, mpq_class>> cols(src);
  std::vector<std::size_t> target(n + 1);
  const mpq_class last_sign = (n + 1) % 2 ? -1 : 1;
  for (std::size_t idx = 0; idx < src; ++idx) {
    const std::size_t a = idx / dn, t = idx % dn;
    auto& col = cols[idx];
    for (const auto& [row, v] : co[a]) col[(row / d_) * dn1 + (row % d_) * dn + t] += v;
    auto ds = digits(t, d_, n);
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class sign = (i + 1) % 2 ? -1 : 1;
      for (const auto& [row, v] : dl[ds[i]]) {
        std::size_t w = 0;
        for (std::size_t s = 0; s < i; ++s) target[w++] = ds[s];
        target[w++] = row / d_;
        target[w++] = row % d_;
        for (std::size_t s = i + 1; s < n; ++s) target[w++] = ds[s];
        col[a * dn1 + encode(target, d_)] += sign * v;
      }
    }
    for (const auto& [c, v] : un[0]) col[a * dn1 + t * d_ + c] += last_sign * v;
  }
  return from_columns(ring_, dst, std::move(cols));
}

namespace {

void guard(std::size_t rank) {
  if (rank > max_cochain_rank())
    fail(ErrorKind::SizeLimit, "cochain rank " + std::to_string(rank) + " exceeds the limit " +
                                   std::to_string(max_cochain_rank()));
}

}  // namespace

CochainComplex CobarComplex::full(std::size_t nmax) const {
  CochainComplex c{ring_, {}, {}};
  for (std::size_t n = 0; n <= nmax; ++n) {
    guard(full_rank(n));
    c.ranks.push_back(full_rank(n));
  }
  for (std::size_t n = 0; n < nmax; ++n) c.differentials.push_back(full_differential(n));
  c.check_square_zero();
  return c;
}

CochainComplex CobarComplex::normalized(std::size_t nmax) const {
  CochainComplex c{ring_, {}, {}};
  for (std::size_t n = 0; n <= nmax; ++n) {
    guard(normalized_rank(n));
    c.ranks.push_back(normalized_rank(n));
  }
  for (std::size_t n = 0; n < nmax; ++n) c.differentials.push_back(normalized_differential(n));
  c.check_square_zero();
  return c;
}

std::vector<mpq_class> CobarComplex::embed(std::size_t n, std::span<const mpq_class> v) const {
  const std::size_t r = d_ - 1, rn = checked_pow(r, n), dn = checked_pow(d_, n);
  if (v.size() != normalized_rank(n)) fail(ErrorKind::MalformedData, "cochain length mismatch");
  std::vector<mpq_class> out(full_rank(n));
  auto cols = column_entries(basis_);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (sgn(v[idx]) == 0) continue;
    const std::size_t a = idx / rn;
    auto ds = digits(idx % rn, r, n);
    // Expand b_{j1} (x) ... (x) b_{jn} slot by slot.
    std::map<std::size_t, mpq_class> acc{{0, v[idx]}};
    for (std::size_t s = 0; s < n; ++s) {
      std::map<std::size_t, mpq_class> next;
      for (const auto& [t, c] : acc)
        for (const auto& [row, bv] : cols[ds[s] + 1]) next[t * d_ + row] += c * bv;
      acc = std::move(next);
    }
    for (const auto& [t, c] : acc) out[a * dn + t] += c;
  }
  return canonical(ring_, std::move(out));
}

std::vector<mpq_class> CobarComplex::project(std::size_t n, std::span<const mpq_class> v) const {
  const std::size_t r = d_ - 1, rn = checked_pow(r, n), dn = checked_pow(d_, n);
  if (v.size() != full_rank(n)) fail(ErrorKind::MalformedData, "cochain length mismatch");
  std::vector<mpq_class> out(normalized_rank(n));
  auto cols = column_entries(basis_inv_);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (sgn(v[idx]) == 0) continue;
    const std::size_t a = idx / dn;
    auto ds = digits(idx % dn, d_, n);
    std::map<std::size_t, mpq_class> acc{{0, v[idx]}};
    for (std::size_t s = 0; s < n; ++s) {
      std::map<std::size_t, mpq_class> next;
      for (const auto& [t, c] : acc)
        for (const auto& [row, bv] : cols[ds[s]])
          if (row != 0) next[t * r + row - 1] += c * bv;
      acc = std::move(next);
    }
    for (const auto& [t, c] : acc) out[a * rn + t] += c;
  }
  return canonical(ring_, std::move(out));
}

// ---------------------------------------------------------------------------
// Cohomology

Cohomology::Cohomology(const ComoduleData& m, std::size_t nmax, HomologyGroup::Mode mode)
    : complex_(m), cochains_(complex_.normalized(nmax + 1)) {
  const std::size_t c0 = cochains_.ranks[0];
  for (std::size_t n = 0; n <= nmax; ++n) {
    SparseMatrix in = n == 0 ? SparseMatrix(cochains_.ring, c0, 0) : cochains_.differentials[n - 1];
    groups_.push_back(HomologyGroup::compute(cochains_.differentials[n], in, mode));
  }
}

const HomologyGroup& Cohomology::group(std::size_t n) const {
  if (n >= groups_.size())
    fail(ErrorKind::DegreeOverflow, "degree " + std::to_string(n) + " beyond the computed range");
  return groups_[n];
}

std::vector<ModulePresentation> Cohomology::presentations() const {
  std::vector<ModulePresentation> out;
  for (const auto& g : groups_) out.push_back(g.presentation());
  return out;
}

CohomologyClass Cohomology::class_of(std::size_t n, std::span<const mpq_class> cocycle) const {
  const HomologyGroup& g = group(n);
  CohomologyClass c;
  c.degree = n;
  c.representative.assign(cocycle.begin(), cocycle.end());
  c.group = g.presentation();
  c.coordinates = g.coordinates(cocycle);
  return c;
}

CohomologyClass Cohomology::generator(std::size_t n, std::size_t i) const {
  const HomologyGroup& g = group(n);
  if (!g.has_representatives()) fail(ErrorKind::Usage, "cohomology computed without representatives");
  if (i >= g.representatives().cols()) fail(ErrorKind::Usage, "generator index out of range");
  return class_of(n, g.representatives().col(i));
}

CohomologyClass Cohomology::from_coordinates(std::size_t n, std::span<const mpq_class> coords) const {
  return class_of(n, group(n).lift(coords));
}

CochainComplex hochschild_complex(const ComoduleData& m, std::size_t nmax) {
  if (nmax < 1) fail(ErrorKind::Usage, "the complex needs at least one differential");
  return CobarComplex(m).full(nmax);
}

std::vector<ModulePresentation> cohomology_groups(const ComoduleData& m, std::size_t nmax) {
  return Cohomology(m, nmax, HomologyGroup::Mode::PresentationOnly).presentations();
}

CohomologyClass cup_product(const Cohomology& trivial, const CohomologyClass& x,
                            const CohomologyClass& y) {
  const CobarComplex& c = trivial.complex();
  const RingSpec& k = c.ring();
  std::vector<mpq_class> e0(c.hopf_rank(), 0);
  if (!e0.empty()) e0[0] = 1;
  if (c.module_rank() != 1 || c.adapted_coaction().col(0) != e0)
    fail(ErrorKind::Usage, "cup product needs trivial rank-1 coefficients");
  const std::size_t n = x.degree, m = y.degree;
  if (n + m > trivial.max_degree())
    fail(ErrorKind::DegreeOverflow, "product degree " + std::to_string(n + m) +
                                        " beyond the computed range " +
                                        std::to_string(trivial.max_degree()));
  const std::size_t rm = c.normalized_rank(m);
  if (x.representative.size() != c.normalized_rank(n) || y.representative.size() != rm)
    fail(ErrorKind::MalformedData, "representative length mismatch");
  std::vector<mpq_class> out(c.normalized_rank(n + m));
  for (std::size_t i = 0; i < x.representative.size(); ++i) {
    if (sgn(x.representative[i]) == 0) continue;
    for (std::size_t j = 0; j < rm; ++j)
      if (sgn(y.representative[j]) != 0) out[i * rm + j] += x.representative[i] * y.representative[j];
  }
  return trivial.class_of(n + m, canonical(k, std::move(out)));
}

// ---------------------------------------------------------------------------
// Induced modules, long exact sequences, torsion

VerificationReport acyclicity_check_induced(const ComoduleData& m, std::size_t nmax) {
  ComoduleData ind = tensor_comodule(m, regular_representation(m.over, Side::Right));
  Cohomology coh(ind, nmax, HomologyGroup::Mode::PresentationOnly);
  VerificationReport rep;
  ModulePresentation expect0{m.over.ring(), m.rank, {}};
  rep.expect("H^0 is the base module", coh.presentation(0) == expect0,
             coh.presentation(0).to_string() + " vs " + expect0.to_string());
  for (std::size_t n = 1; n <= nmax; ++n)
    rep.expect("H^" + std::to_string(n) + " vanishes", coh.presentation(n).is_zero(),
               coh.presentation(n).to_string());
  return rep;
}

namespace {

// (f (x) id_{r}) v for a module map f, with cochains indexed a * r + t.
std::vector<mpq_class> apply_module_map(const Matrix& f, std::span<const mpq_class> v, std::size_t r) {
  std::vector<mpq_class> out(f.rows() * r);
  for (std::size_t a = 0; a < f.cols(); ++a)
    for (std::size_t t = 0; t < r; ++t) {
      const mpq_class& x = v[a * r + t];
      if (sgn(x) == 0) continue;
      for (std::size_t b = 0; b < f.rows(); ++b)
        if (sgn(f.at(b, a)) != 0) out[b * r + t] += f.at(b, a) * x;
    }
  return canonical(f.ring(), std::move(out));
}

Matrix apply_module_map(const Matrix& f, const Matrix& cols, std::size_t r) {
  std::vector<std::vector<mpq_class>> out;
  for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(apply_module_map(f, cols.col(j), r));
  return Matrix::from_columns(f.ring(), f.rows() * r, out);
}

// Both spans generate the same submodule.
bool same_span(const Matrix& a, const Matrix& b) {
  auto inside = [](const Matrix& x, const Matrix& y) {
    if (x.cols() == 0) return true;
    if (y.cols() == 0) return x.is_zero();
    return solve(y, x).has_value();
  };
  return inside(a, b) && inside(b, a);
}

// Cocycles z = Z u of one complex whose image W z lies in span(B); returns Z u.
Matrix preimage_of_span(const Matrix& z, const Matrix& wz, const Matrix& b) {
  if (z.cols() == 0) return z;
  Matrix sys = b.cols() == 0 ? wz : wz.hcat(b.scaled(-1));
  Matrix ker = kernel_basis(sys);
  return z * ker.submatrix(0, 0, z.cols(), ker.cols());
}

}  // namespace

namespace {

struct LesData {
  Matrix section;  // quotient -> middle
  Matrix retract;  // middle -> sub
};

LesData les_maps(const ShortExactSequence& s) {
  const RingSpec& k = s.middle.over.ring();
  if (!(s.sub.over == s.middle.over) || !(s.quotient.over == s.middle.over))
    fail(ErrorKind::MalformedData, "sequence terms live over different Hopf algebras");
  const std::size_t d = s.middle.over.rank();
  const Matrix& i = s.inclusion;
  const Matrix& q = s.projection;
  if (i.rows() != s.middle.rank || i.cols() != s.sub.rank || q.rows() != s.quotient.rank ||
      q.cols() != s.middle.rank)
    fail(ErrorKind::MalformedData, "sequence maps have the wrong shapes");
  if (kron(i, id(k, d)) * s.sub.coaction != s.middle.coaction * i)
    fail(ErrorKind::MalformedData, "inclusion is not a comodule map");
  if (kron(q, id(k, d)) * s.middle.coaction != s.quotient.coaction * q)
    fail(ErrorKind::MalformedData, "projection is not a comodule map");
  if (!(q * i).is_zero()) fail(ErrorKind::MalformedData, "sequence is not a complex");
  auto section = solve(q, id(k, s.quotient.rank));
  if (!section) fail(ErrorKind::MalformedData, "projection is not surjective");
  auto retract_t = solve(i.transpose(), id(k, s.sub.rank));
  if (!retract_t) fail(ErrorKind::MalformedData, "inclusion is not split injective");
  Matrix ker_q = kernel_basis(q);
  if (ker_q.cols() > 0 && !solve(i, ker_q)) fail(ErrorKind::MalformedData, "sequence is not exact in the middle");
  return {*section, retract_t->transpose()};
}

// Lift of the connecting map on a single cocycle of the quotient (degree n).
std::vector<mpq_class> connecting_cochain(const LongExactSequence& les, const ShortExactSequence& s,
                                          const LesData& maps, std::size_t n,
                                          std::span<const mpq_class> z) {
  const CobarComplex& mid = les.terms[1].complex();
  const std::size_t r = mid.hopf_rank() - 1;
  auto lifted = apply_module_map(maps.section, z, checked_pow(r, n));
  auto w = les.terms[1].cochains().differentials[n].apply(lifted);
  w = canonical(mid.ring(), std::move(w));
  auto y = apply_module_map(maps.retract, w, checked_pow(r, n + 1));
  if (apply_module_map(s.inclusion, y, checked_pow(r, n + 1)) != w)
    fail(ErrorKind::InternalConsistency, "connecting cochain does not come from the submodule");
  return y;
}

}  // namespace

LongExactSequence long_exact_sequence(const ShortExactSequence& s, std::size_t nmax) {
  LesData maps = les_maps(s);
  LongExactSequence les;
  les.terms.emplace_back(s.sub, nmax);
  les.terms.emplace_back(s.middle, nmax);
  les.terms.emplace_back(s.quotient, nmax);
  const RingSpec& k = s.middle.over.ring();
  const std::size_t r = s.middle.over.rank() - 1;

  auto dense = [](const SparseMatrix& m) { return m.to_dense(); };
  auto cocycles = [&](std::size_t t, std::size_t n) {
    return kernel_basis(dense(les.terms[t].cochains().differentials[n]));
  };
  auto boundaries = [&](std::size_t t, std::size_t n) {
    const auto& c = les.terms[t].cochains();
    if (n == 0) return Matrix(k, c.ranks[0], 0);
    return span_basis(dense(c.differentials[n - 1]));
  };
  auto connecting_cols = [&](std::size_t n, const Matrix& z) {
    std::vector<std::vector<mpq_class>> cols;
    for (std::size_t j = 0; j < z.cols(); ++j) cols.push_back(connecting_cochain(les, s, maps, n, z.col(j)));
    return Matrix::from_columns(k, les.terms[0].cochains().ranks[n + 1], cols);
  };
  auto with = [](const Matrix& a, const Matrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    return a.hcat(b);
  };

  for (std::size_t n = 0; n <= nmax; ++n) {
    const std::size_t rn = checked_pow(r, n);
    const std::string deg = std::to_string(n);
    Matrix z_sub = cocycles(0, n), z_mid = cocycles(1, n), z_quo = cocycles(2, n);
    Matrix b_sub = boundaries(0, n), b_mid = boundaries(1, n), b_quo = boundaries(2, n);

    // At H^n(sub): image of the previous connecting map = kernel of i_*.
    Matrix ker_i = preimage_of_span(z_sub, apply_module_map(s.inclusion, z_sub, rn), b_mid);
    Matrix im_delta = n == 0 ? Matrix(k, z_sub.rows(), 0) : connecting_cols(n - 1, cocycles(2, n - 1));
    les.report.expect("exact at H^" + deg + " of the submodule",
                      same_span(with(ker_i, b_sub), with(im_delta, b_sub)));

    // At H^n(middle): image of i_* = kernel of q_*.
    Matrix im_i = apply_module_map(s.inclusion, z_sub, rn);
    Matrix ker_q = preimage_of_span(z_mid, apply_module_map(s.projection, z_mid, rn), b_quo);
    les.report.expect("exact at H^" + deg + " of the middle",
                      same_span(with(im_i, b_mid), with(ker_q, b_mid)));

    // At H^n(quotient): image of q_* = kernel of the connecting map.
    Matrix im_q = apply_module_map(s.projection, z_mid, rn);
    Matrix ker_delta = preimage_of_span(z_quo, connecting_cols(n, z_quo), boundaries(0, n + 1));
    les.report.expect("exact at H^" + deg + " of the quotient",
                      same_span(with(im_q, b_quo), with(ker_delta, b_quo)));
  }

  for (std::size_t n = 0; n < nmax; ++n) {
    const HomologyGroup& src = les.terms[2].group(n);
    const HomologyGroup& dst = les.terms[0].group(n + 1);
    Matrix delta(k, dst.representatives().cols(), src.representatives().cols());
    for (std::size_t j = 0; j < src.representatives().cols(); ++j) {
      auto y = connecting_cochain(les, s, maps, n, src.representatives().col(j));
      auto c = dst.coordinates(y);
      for (std::size_t i = 0; i < c.size(); ++i) delta.set(i, j, c[i]);
    }
    les.connecting.push_back(std::move(delta));
  }
  return les;
}

CohomologyClass connecting_map(const LongExactSequence& les, const ShortExactSequence& s,
                               const CohomologyClass& x) {
  LesData maps = les_maps(s);
  auto y = connecting_cochain(les, s, maps, x.degree, x.representative);
  return les.terms[0].class_of(x.degree + 1, y);
}

LongExactSequence bockstein_sequence(const ComoduleData& m, const mpz_class& n, std::size_t nmax) {
  const RingSpec& z = m.over.ring();
  if (z.kind() != RingKind::Integers) fail(ErrorKind::UnsupportedRing, "Bockstein sequences start over Z");
  if (n < 2) fail(ErrorKind::Usage, "Bockstein modulus must be at least 2");
  LongExactSequence les;
  les.terms.emplace_back(m, nmax);
  les.terms.emplace_back(m, nmax);
  les.terms.emplace_back(base_change(m, RingSpec::integers_mod(n)), nmax);
  const auto& c = les.terms[0].cochains();
  const mpq_class nq(n);
  if (les.terms[2].complex().adapted_basis() !=
      les.terms[0].complex().adapted_basis().map_ring(RingSpec::integers_mod(n)))
    fail(ErrorKind::InternalConsistency, "adapted bases differ after reduction");

  auto dense = [&](std::size_t k) { return c.differentials[k].to_dense(); };
  auto boundaries = [&](std::size_t k) {
    return k == 0 ? Matrix(z, c.ranks[0], 0) : span_basis(dense(k - 1));
  };
  auto with = [](const Matrix& a, const Matrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    return a.hcat(b);
  };
  // Integer lift of a mod-n cocycle of degree k -> (d lift) / n.
  auto beta = [&](std::size_t k, std::span<const mpq_class> v) {
    auto w = c.differentials[k].apply(v);
    for (auto& x : w) {
      if (x.get_num() % n != 0) fail(ErrorKind::InternalConsistency, "not a cocycle mod n");
      x /= nq;
    }
    return w;
  };
  auto beta_cols = [&](std::size_t k, const Matrix& lifts) {
    std::vector<std::vector<mpq_class>> cols;
    for (std::size_t j = 0; j < lifts.cols(); ++j) cols.push_back(beta(k, lifts.col(j)));
    return Matrix::from_columns(z, c.ranks[k + 1], cols);
  };
  // Integer cochains that are cocycles mod n.
  auto mod_cocycles = [&](std::size_t k) {
    Matrix dk = dense(k);
    Matrix sys = dk.hcat(Matrix::identity(z, dk.rows()).scaled(-nq));
    Matrix ker = kernel_basis(sys);
    return span_basis(ker.submatrix(0, 0, dk.cols(), ker.cols()));
  };

  for (std::size_t k = 0; k <= nmax; ++k) {
    const std::string deg = std::to_string(k);
    Matrix dk = dense(k);
    Matrix zk = kernel_basis(dk);
    Matrix bk = boundaries(k);
    Matrix n_all = Matrix::identity(z, c.ranks[k]).scaled(nq);

    // First term: kernel of multiplication by n = image of the previous Bockstein.
    Matrix ker_n = preimage_of_span(zk, zk.scaled(nq), bk);
    Matrix im_beta = k == 0 ? Matrix(z, c.ranks[0], 0) : beta_cols(k - 1, mod_cocycles(k - 1));
    les.report.expect("exact at H^" + deg + " of the first term",
                      same_span(with(ker_n, bk), with(im_beta, bk)));

    // Middle: image of n = kernel of reduction.
    Matrix ker_red = preimage_of_span(zk, zk, with(bk, n_all));
    les.report.expect("exact at H^" + deg + " of the middle term",
                      same_span(with(zk.scaled(nq), bk), with(ker_red, bk)));

    // Quotient, in integer lifts modulo n C^k: image of reduction = kernel of Bockstein.
    Matrix lifts = mod_cocycles(k);
    Matrix ker_beta = preimage_of_span(lifts, beta_cols(k, lifts), boundaries(k + 1));
    Matrix base = with(bk, n_all);
    les.report.expect("exact at H^" + deg + " of the reduction",
                      same_span(with(zk, base), with(ker_beta, base)));
  }

  for (std::size_t k = 0; k < nmax; ++k) {
    const HomologyGroup& src = les.terms[2].group(k);
    const HomologyGroup& dst = les.terms[0].group(k + 1);
    Matrix delta(z, dst.representatives().cols(), src.representatives().cols());
    for (std::size_t j = 0; j < src.representatives().cols(); ++j) {
      auto coords = dst.coordinates(beta(k, src.representatives().col(j)));
      for (std::size_t i = 0; i < coords.size(); ++i) delta.set(i, j, coords[i]);
    }
    les.connecting.push_back(std::move(delta));
  }
  return les;
}

std::optional<mpz_class> torsion_bound(const ComoduleData& m, std::size_t nmax) {
  if (m.over.ring().kind() != RingKind::Integers)
    fail(ErrorKind::UnsupportedRing, "torsion bounds are computed over Z");
  Cohomology coh(m, nmax, HomologyGroup::Mode::PresentationOnly);
  mpz_class l = 1;
  bool any = false;
  for (std::size_t n = 1; n <= nmax; ++n)
    if (auto e = torsion_exponent(coh.presentation(n))) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e->get_mpz_t());
      any = true;
    }
  if (!any) return std::nullopt;
  return l;
}

// ---------------------------------------------------------------------------
// Cross product for G-algebras

namespace {

class CrossContext {
 public:
  CrossContext(const CobarComplex& c, const GAlgebraData& a)
      : c_(c), ring_(c.ring()), m_(a.comodule.rank), d_(c.hopf_rank()) {
    if (c.module_rank() != m_ || a.mul.rows() != m_ || a.mul.cols() != m_ * m_)
      fail(ErrorKind::MalformedData, "algebra does not match the complex");
    mul_a_ = column_entries(a.mul);
    mul_h_ = column_entries(c.adapted_mul());
    coaction_ = column_entries(c.adapted_coaction());
  }

  std::vector<mpq_class> product(std::size_t n, std::span<const mpq_class> x, std::size_t m,
                                 std::span<const mpq_class> y) {
    const std::size_t r = d_ - 1;
    const std::size_t rn = checked_pow(r, n), rm = checked_pow(r, m), rnm = checked_pow(r, n + m);
    if (x.size() != m_ * rn || y.size() != m_ * rm) fail(ErrorKind::MalformedData, "cochain length mismatch");
    std::map<std::size_t, mpq_class> acc;
    for (std::size_t yi = 0; yi < y.size(); ++yi) {
      if (sgn(y[yi]) == 0) continue;
      const std::size_t b = yi / rm, ty = yi % rm;
      const auto& iter = iterated(n, b);
      for (std::size_t xi = 0; xi < x.size(); ++xi) {
        if (sgn(x[xi]) == 0) continue;
        const std::size_t a = xi / rn;
        auto xs = digits(xi % rn, r, n);
        const mpq_class xy = x[xi] * y[yi];
        for (const auto& [key, g] : iter) {
          const std::size_t cidx = key / checked_pow(d_, n);
          auto hs = digits(key % checked_pow(d_, n), d_, n);
          // Slots x_s h_s, expanded one at a time.
          std::map<std::size_t, mpq_class> slots{{0, xy * g}};
          for (std::size_t s = 0; s < n && !slots.empty(); ++s) {
            std::map<std::size_t, mpq_class> next;
            for (const auto& [t, v] : slots)
              for (const auto& [row, w] : mul_h_[(xs[s] + 1) * d_ + hs[s]]) {
                if (row == 0) continue;
                next[t * r + row - 1] += v * w;
              }
            slots = std::move(next);
          }
          for (const auto& [e, mv] : mul_a_[a * m_ + cidx])
            for (const auto& [t, v] : slots) acc[e * rnm + t * rm + ty] += mv * v;
        }
      }
    }
    std::vector<mpq_class> out(m_ * rnm);
    for (auto& [i, v] : acc) out[i] = ring_.canonical(v);
    return out;
  }

 private:
  // b -> b0 (x) b1 (x) ... (x) bn in adapted coordinates, keyed c * d^n + (h1..hn).
  const std::map<std::size_t, mpq_class>& iterated(std::size_t n, std::size_t b) {
    auto key = std::make_pair(n, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::map<std::size_t, mpq_class> out;
    if (n == 0) {
      out[b] = 1;
    } else {
      const auto& prev = iterated(n - 1, b);
      const std::size_t dp = checked_pow(d_, n - 1), dn = checked_pow(d_, n);
      for (const auto& [k, v] : prev) {
        const std::size_t c = k / dp, rest = k % dp;
        for (const auto& [row, w] : coaction_[c]) {
          const std::size_t c2 = row / d_, h = row % d_;
          out[c2 * dn + h * dp + rest] += v * w;
        }
      }
      for (auto it2 = out.begin(); it2 != out.end();)
        it2 = sgn(ring_.canonical(it2->second)) == 0 ? out.erase(it2) : std::next(it2);
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  const CobarComplex& c_;
  RingSpec ring_;
  std::size_t m_, d_;
  std::vector<Entries> mul_a_, mul_h_, coaction_;
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, mpq_class>> cache_;
};

std::vector<mpq_class> basis_vector(std::size_t n, std::size_t i) {
  std::vector<mpq_class> v(n);
  v[i] = 1;
  return v;
}

std::vector<mpq_class> add(const RingSpec& k, std::span<const mpq_class> a, std::span<const mpq_class> b,
                           const mpq_class& cb) {
  std::vector<mpq_class> out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k.canonical(out[i] + cb * b[i]);
  return out;
}

}  // namespace

std::vector<mpq_class> cross_product(const CobarComplex& c, const GAlgebraData& a, std::size_t n,
                                     std::span<const mpq_class> x, std::size_t m,
                                     std::span<const mpq_class> y) {
  CrossContext ctx(c, a);
  return ctx.product(n, x, m, y);
}

VerificationReport verify_cross_product(const CobarComplex& c, const GAlgebraData& a,
                                        std::size_t max_degree) {
  constexpr std::size_t kPairCap = 2000;
  CrossContext ctx(c, a);
  const RingSpec& k = c.ring();
  std::vector<SparseMatrix> diff;
  for (std::size_t n = 0; n < max_degree; ++n) diff.push_back(c.normalized_differential(n));
  VerificationReport rep;
  std::mt19937_64 rng(0x5eed);
  for (std::size_t total = 0; total < max_degree; ++total)
    for (std::size_t n = 0; n <= total; ++n) {
      const std::size_t m = total - n;
      const std::size_t rn = c.normalized_rank(n), rm = c.normalized_rank(m);
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      if (rn * rm <= kPairCap) {
        for (std::size_t i = 0; i < rn; ++i)
          for (std::size_t j = 0; j < rm; ++j) pairs.emplace_back(i, j);
      } else {
        std::uniform_int_distribution<std::size_t> di(0, rn - 1), dj(0, rm - 1);
        for (std::size_t s = 0; s < kPairCap; ++s) pairs.emplace_back(di(rng), dj(rng));
      }
      std::optional<std::size_t> witness;
      for (std::size_t p = 0; p < pairs.size() && !witness; ++p) {
        auto x = basis_vector(rn, pairs[p].first), y = basis_vector(rm, pairs[p].second);
        auto lhs = diff[n + m].apply(ctx.product(n, x, m, y));
        auto dx_y = ctx.product(n + 1, diff[n].apply(x), m, y);
        auto x_dy = ctx.product(n, x, m + 1, diff[m].apply(y));
        auto rhs = add(k, dx_y, x_dy, n % 2 ? -1 : 1);
        if (canonical(k, lhs) != rhs) witness = p;
      }
      CheckResult r{"cross product Leibniz rule in degrees " + std::to_string(n) + "," + std::to_string(m),
                    !witness, witness, witness ? "fails on a basis pair" : ""};
      rep.add(r);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Yoneda products on the bar resolution of the dual algebra

YonedaExt::YonedaExt(const HopfAlgebraData& h, std::size_t nmax) : ring_(h.ring()), d_(h.rank()) {
  if (!ring_.is_field()) fail(ErrorKind::UnsupportedRing, "Yoneda products are computed over fields");
  // B = H*: multiplication dual to the comultiplication, unit = counit,
  // augmentation = evaluation at 1.
  Matrix mul_b = h.comul().transpose();
  Matrix unit_b = h.counit().transpose();
  Matrix aug_b = h.unit().transpose();
  Matrix basis = make_adapted_basis(unit_b, aug_b);
  Matrix inv = *inverse(basis);
  mul_ = inv * mul_b * kron(basis, basis);
  Matrix aug = aug_b * basis;
  aug_.assign(aug.row_span(0).begin(), aug.row_span(0).end());

  // Cochains Hom_B(P_n, k) = k^{gens(n)}, coboundary f -> f o boundary.
  std::vector<SparseMatrix> delta;
  for (std::size_t n = 0; n <= nmax; ++n) {
    guard(gens(n + 1));
    Matrix dm(ring_, gens(n + 1), gens(n));
    for (std::size_t t = 0; t < gens(n + 1); ++t) {
      auto bd = resolution_boundary(n + 1, 0, t);
      for (std::size_t u = 0; u < gens(n); ++u)
        if (sgn(bd[u]) != 0) dm.set(t, u, bd[u]);  // b0 = 1 block
      for (std::size_t b0 = 1; b0 < d_; ++b0)
        for (std::size_t u = 0; u < gens(n); ++u)
          if (sgn(bd[b0 * gens(n) + u]) != 0 && sgn(aug_[b0]) != 0)
            fail(ErrorKind::InternalConsistency, "augmentation not adapted");
    }
    delta.push_back(SparseMatrix::from_dense(dm));
  }
  for (std::size_t n = 0; n <= nmax; ++n) {
    SparseMatrix in = n == 0 ? SparseMatrix(ring_, gens(0), 0) : delta[n - 1];
    groups_.push_back(HomologyGroup::compute(delta[n], in));
  }
}

std::size_t YonedaExt::gens(std::size_t n) const { return checked_pow(d_ - 1, n); }

const ModulePresentation& YonedaExt::presentation(std::size_t n) const {
  if (n >= groups_.size()) fail(ErrorKind::DegreeOverflow, "degree beyond the computed range");
  return groups_[n].presentation();
}

std::size_t YonedaExt::dimension(std::size_t n) const { return presentation(n).free_rank; }

std::vector<mpq_class> YonedaExt::resolution_boundary(std::size_t n, std::size_t b0,
                                                      std::size_t tuple) const {
  const std::size_t r = d_ - 1, gn1 = gens(n - 1);
  std::vector<mpq_class> out(d_ * gn1);
  auto ts = digits(tuple, r, n);
  // b0 t1 [t2 | ... | tn]
  {
    const std::size_t rest = encode(std::span(ts).subspan(1), r);
    for (std::size_t c = 0; c < d_; ++c) {
      const mpq_class& v = mul_.at(c, b0 * d_ + ts[0] + 1);
      if (sgn(v) != 0) out[c * gn1 + rest] += v;
    }
  }
  // (-1)^i b0 [... | t_i t_{i+1} | ...], products projected off the unit.
  std::vector<std::size_t> target(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const mpq_class sign = (i + 1) % 2 ? -1 : 1;
    for (std::size_t c = 1; c < d_; ++c) {
      const mpq_class& v = mul_.at(c, (ts[i] + 1) * d_ + ts[i + 1] + 1);
      if (sgn(v) == 0) continue;
      std::size_t w = 0;
      for (std::size_t s = 0; s < i; ++s) target[w++] = ts[s];
      target[w++] = c - 1;
      for (std::size_t s = i + 2; s < n; ++s) target[w++] = ts[s];
      out[b0 * gn1 + encode(target, r)] += sign * v;
    }
  }
  return canonical(ring_, std::move(out));
}

std::vector<mpq_class> YonedaExt::product(std::size_t n, std::size_t i, std::size_t m,
                                          std::size_t j) const {
  if (n + m > max_degree()) fail(ErrorKind::DegreeOverflow, "product degree beyond the computed range");
  auto f = groups_[n].representatives().col(i);
  auto g = groups_[m].representatives().col(j);
  // F_k : P_{n+k} -> P_k on free generators, as vectors over P_k.
  std::vector<std::vector<mpq_class>> lift(gens(n));
  for (std::size_t t = 0; t < gens(n); ++t) {
    lift[t].assign(d_, 0);
    lift[t][0] = f[t];
  }
  for (std::size_t k = 1; k <= m; ++k) {
    const std::size_t src = gens(k - 1), dst = gens(k);
    std::vector<std::vector<mpq_class>> next(gens(n + k));
    for (std::size_t t = 0; t < gens(n + k); ++t) {
      auto bd = resolution_boundary(n + k, 0, t);
      // z = F_{k-1}(bd), extended B-linearly.
      std::vector<mpq_class> z(d_ * src);
      const std::size_t g_prev = gens(n + k - 1);
      for (std::size_t b0 = 0; b0 < d_; ++b0)
        for (std::size_t u = 0; u < g_prev; ++u) {
          const mpq_class& cf = bd[b0 * g_prev + u];
          if (sgn(cf) == 0) continue;
          const auto& fu = lift[u];
          for (std::size_t c = 0; c < d_; ++c)
            for (std::size_t w = 0; w < src; ++w) {
              const mpq_class& fv = fu[c * src + w];
              if (sgn(fv) == 0) continue;
              for (std::size_t e = 0; e < d_; ++e) {
                const mpq_class& mv = mul_.at(e, b0 * d_ + c);
                if (sgn(mv) != 0) z[e * src + w] += cf * fv * mv;
              }
            }
        }
      // Contracting homotopy: c [w] -> 1 [c | w] for c off the unit.
      std::vector<mpq_class> s(d_ * dst);
      for (std::size_t c = 1; c < d_; ++c)
        for (std::size_t w = 0; w < src; ++w)
          if (sgn(z[c * src + w]) != 0) s[(c - 1) * src + w] = ring_.canonical(z[c * src + w]);
      next[t] = std::move(s);
    }
    lift = std::move(next);
  }
  std::vector<mpq_class> h(gens(n + m));
  for (std::size_t t = 0; t < gens(n + m); ++t) {
    mpq_class v = 0;
    for (std::size_t u = 0; u < gens(m); ++u) v += lift[t][u] * g[u];
    h[t] = ring_.canonical(v);
  }
  return groups_[n + m].coordinates(h);
}

// ---------------------------------------------------------------------------
// Cohomology rings

GAlgebraData trivial_galgebra(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  return {trivial_comodule(h, 1), Matrix::identity(k, 1), Matrix::identity(k, 1)};
}

GAlgebraData regular_galgebra(const HopfAlgebraData& h) {
  return {regular_representation(h, Side::Right), h.mul(), h.unit()};
}

namespace {

// Field-only incremental span membership.
class Span {
 public:
  Span(const RingSpec& k, std::size_t dim) : k_(k), dim_(dim) {}
  // Adds v when independent; returns whether it was added.
  bool add(std::span<const mpq_class> v) {
    if (all_zero(v)) return false;
    if (!cols_.empty() && rank(with(v)) == rank(current())) return false;
    cols_.emplace_back(v.begin(), v.end());
    return true;
  }
  std::size_t size() const { return cols_.size(); }

 private:
  Matrix current() const { return Matrix::from_columns(k_, dim_, cols_); }
  Matrix with(std::span<const mpq_class> v) const {
    auto c = cols_;
    c.emplace_back(v.begin(), v.end());
    return Matrix::from_columns(k_, dim_, c);
  }
  RingSpec k_;
  std::size_t dim_;
  std::vector<std::vector<mpq_class>> cols_;
};

using Product = std::function<std::vector<mpq_class>(std::size_t, std::size_t, std::size_t, std::size_t)>;

void assemble_ring(CohomologyRing& out, const RingSpec& k, const std::vector<std::size_t>& dims,
                   const std::vector<mpq_class>& unit, const Product& basis_product) {
  const std::size_t D = out.degree_cap;
  // table[n][m][i][j]
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::vector<mpq_class>> table;
  auto prod = [&](std::size_t n, std::size_t i, std::size_t m, std::size_t j) -> const std::vector<mpq_class>& {
    auto key = std::make_tuple(n, m, i, j);
    auto it = table.find(key);
    if (it == table.end()) it = table.emplace(key, basis_product(n, i, m, j)).first;
    return it->second;
  };
  auto multiply = [&](std::size_t n, std::span<const mpq_class> u, std::size_t m,
                      std::span<const mpq_class> v) {
    std::vector<mpq_class> out_v(dims[n + m]);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (sgn(u[i]) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (sgn(v[j]) == 0) continue;
        const auto& p = prod(n, i, m, j);
        for (std::size_t e = 0; e < p.size(); ++e) out_v[e] += u[i] * v[j] * p[e];
      }
    }
    return canonical(k, std::move(out_v));
  };

  // Unit acts as the identity.
  bool unit_ok = true;
  for (std::size_t n = 0; n <= D && unit_ok; ++n)
    for (std::size_t i = 0; i < dims[n]; ++i) {
      auto e = basis_vector(dims[n], i);
      if (multiply(0, unit, n, e) != canonical(k, e) || multiply(n, e, 0, unit) != canonical(k, e))
        unit_ok = false;
    }
  out.report.expect("unit class acts as the identity", unit_ok);

  out.generators.assign(D + 1, {});
  out.product_ranks.assign(D + 1, std::vector<std::size_t>(D + 1, 0));
  for (std::size_t n = 0; n <= D; ++n)
    for (std::size_t m = 0; n + m <= D; ++m) {
      std::vector<std::vector<mpq_class>> cols;
      for (std::size_t i = 0; i < dims[n]; ++i)
        for (std::size_t j = 0; j < dims[m]; ++j) cols.push_back(prod(n, i, m, j));
      out.product_ranks[n][m] = cols.empty() || dims[n + m] == 0 ? 0 : rank(Matrix::from_columns(k, dims[n + m], cols));
    }

  // Degree 0: complement of the unit.
  {
    Span s(k, dims[0]);
    s.add(unit);
    for (std::size_t i = 0; i < dims[0]; ++i) {
      auto e = basis_vector(dims[0], i);
      if (s.add(e)) out.generators[0].push_back(canonical(k, e));
    }
  }
  for (std::size_t n = 1; n <= D; ++n) {
    Span s(k, dims[n]);
    for (std::size_t p = 1; p < n; ++p)
      for (std::size_t i = 0; i < dims[p]; ++i)
        for (std::size_t j = 0; j < dims[n - p]; ++j) s.add(prod(p, i, n - p, j));
    for (const auto& g0 : out.generators[0])
      for (std::size_t j = 0; j < dims[n]; ++j) s.add(multiply(0, g0, n, basis_vector(dims[n], j)));
    for (std::size_t i = 0; i < dims[n]; ++i) {
      auto e = basis_vector(dims[n], i);
      if (s.add(e)) out.generators[n].push_back(canonical(k, e));
    }
  }

  // Monomials in positive-degree generators, per total degree.
  std::vector<std::pair<std::size_t, std::vector<mpq_class>>> gens;  // (degree, class)
  for (std::size_t n = 1; n <= D; ++n)
    for (const auto& g : out.generators[n]) gens.emplace_back(n, g);
  out.monomials.assign(D + 1, {});
  out.relations.assign(D + 1, {});
  for (std::size_t n = 1; n <= D; ++n) {
    std::vector<std::vector<std::size_t>> monos;
    std::vector<std::size_t> cur(gens.size(), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t g, std::size_t left) {
      if (g == gens.size()) {
        if (left == 0) monos.push_back(cur);
        return;
      }
      for (std::size_t e = 0; e * gens[g].first <= left; ++e) {
        cur[g] = e;
        rec(g + 1, left - e * gens[g].first);
      }
      cur[g] = 0;
    };
    rec(0, n);
    std::vector<std::vector<mpq_class>> values;
    for (const auto& mono : monos) {
      std::vector<mpq_class> v = unit;
      std::size_t deg = 0;
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t e = 0; e < mono[g]; ++e) {
          v = multiply(deg, v, gens[g].first, gens[g].second);
          deg += gens[g].first;
        }
      values.push_back(std::move(v));
    }
    out.monomials[n] = monos;
    if (!monos.empty() && dims[n] > 0) {
      Matrix ker = kernel_basis(Matrix::from_columns(k, dims[n], values));
      for (std::size_t c = 0; c < ker.cols(); ++c) out.relations[n].push_back(ker.col(c));
    } else if (!monos.empty()) {
      for (std::size_t c = 0; c < monos.size(); ++c) out.relations[n].push_back(basis_vector(monos.size(), c));
    }
  }
}

}  // namespace

CohomologyRing algebra_cohomology_ring(const GAlgebraData& a, std::size_t degree_cap,
                                       std::optional<CohomologyRing::Route> forced) {
  const RingSpec& k = a.comodule.over.ring();
  if (!k.is_field()) fail(ErrorKind::UnsupportedRing, "cohomology rings are computed over fields");
  VerificationReport axioms = verify_galgebra(a);
  if (!axioms.passed()) fail(ErrorKind::MalformedData, "not a G-algebra: " + axioms.summary());
  const std::size_t D = degree_cap;
  const std::size_t m = a.comodule.rank;

  CohomologyRing out;
  out.degree_cap = D;
  const bool trivial_coaction = a.comodule.coaction == kron(Matrix::identity(k, m), a.comodule.over.unit());

  std::optional<Cohomology> coh;
  bool use_cross = forced != CohomologyRing::Route::Yoneda;
  if (use_cross) {
    coh.emplace(a.comodule, D);
    VerificationReport chain = verify_cross_product(coh->complex(), a, D);
    out.report.merge(chain);
    if (!chain.passed()) {
      if (forced == CohomologyRing::Route::CrossProduct)
        fail(ErrorKind::TheoremViolation, "cross product is not a chain map: " + chain.summary());
      use_cross = false;
    }
  }

  if (use_cross) {
    out.route = CohomologyRing::Route::CrossProduct;
    CrossContext ctx(coh->complex(), a);
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= D; ++n) {
      out.groups.push_back(coh->presentation(n));
      dims.push_back(coh->group(n).representatives().cols());
    }
    // H^0 products against multiplication in A^G.
    const Matrix& inv0 = coh->group(0).representatives();
    bool h0_ok = true;
    for (std::size_t i = 0; i < inv0.cols(); ++i)
      for (std::size_t j = 0; j < inv0.cols(); ++j) {
        auto x = inv0.col(i), y = inv0.col(j);
        auto direct = (a.mul * kron(Matrix::column(k, x), Matrix::column(k, y))).col(0);
        if (ctx.product(0, x, 0, y) != direct) h0_ok = false;
      }
    out.report.expect("H^0 products match multiplication of invariants", h0_ok);
    auto unit = coh->class_of(0, a.unit.col(0)).coordinates;
    assemble_ring(out, k, dims, unit, [&](std::size_t n, std::size_t i, std::size_t mm, std::size_t j) {
      auto x = coh->group(n).representatives().col(i);
      auto y = coh->group(mm).representatives().col(j);
      return coh->class_of(n + mm, ctx.product(n, x, mm, y)).coordinates;
    });
    return out;
  }

  if (!trivial_coaction)
    fail(ErrorKind::TheoremViolation,
         "cross product failed its chain-map check and the Yoneda route needs trivial coaction");
  out.route = CohomologyRing::Route::Yoneda;
  YonedaExt ext(a.comodule.over, D);
  std::vector<std::size_t> dims;
  for (std::size_t n = 0; n <= D; ++n) {
    dims.push_back(ext.dimension(n) * m);
    out.groups.push_back({k, dims.back(), {}});
  }
  // H^n(G, A) = Ext^n (x) A, basis index i * m + alpha.
  std::vector<mpq_class> unit(dims[0]);
  if (ext.dimension(0) != 1) fail(ErrorKind::InternalConsistency, "Ext^0 is not one-dimensional");
  for (std::size_t al = 0; al < m; ++al) unit[al] = a.unit.at(al, 0);
  assemble_ring(out, k, dims, unit, [&](std::size_t n, std::size_t i, std::size_t mm, std::size_t j) {
    auto e = ext.product(n, i / m, mm, j / m);
    std::vector<mpq_class> res(dims[n + mm]);
    const std::size_t al = i % m, be = j % m;
    for (std::size_t c = 0; c < e.size(); ++c) {
      if (sgn(e[c]) == 0) continue;
      for (std::size_t g = 0; g < m; ++g) res[c * m + g] += e[c] * a.mul.at(g, al * m + be);
    }
    return canonical(k, std::move(res));
  });
  return out;
}

}  // namespace hopfcoh
