#include "hopfcoh/linalg.hpp"

#include <numeric>
#include <sstream>

#include "field_engine.hpp"
#include "hopfcoh/error.hpp"
#include "int_engine.hpp"

namespace hopfcoh {

using detail::CheckedI64;
using detail::Dense;
using detail::SmithOut;

namespace {

// Entries at or above this magnitude skip the int64 fast path.
const mpz_class kSmallLimit = mpz_class(1) << 40;

struct IntInput {
  Dense<mpz_class> big;
  std::optional<Dense<CheckedI64>> small;
};

IntInput make_input(Dense<mpz_class> big) {
  IntInput in;
  bool fits = true;
  for (std::size_t i = 0; i < big.rows() && fits; ++i)
    for (std::size_t j = 0; j < big.cols(); ++j)
      if (mpz_cmpabs(big(i, j).get_mpz_t(), kSmallLimit.get_mpz_t()) >= 0) {
        fits = false;
        break;
      }
  if (fits) {
    Dense<CheckedI64> s(big.rows(), big.cols());
    for (std::size_t i = 0; i < big.rows(); ++i)
      for (std::size_t j = 0; j < big.cols(); ++j) s(i, j) = CheckedI64(big(i, j).get_si());
    in.small = std::move(s);
  }
  in.big = std::move(big);
  return in;
}

Dense<mpz_class> lift_int(const Matrix& m) {
  Dense<mpz_class> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& x = m.at(i, j);
      if (x.get_den() != 1) fail(ErrorKind::UnsupportedRing, "integer engine given a fraction");
      d(i, j) = x.get_num();
    }
  return d;
}

Dense<mpz_class> lift_int(const SparseMatrix& m) {
  Dense<mpz_class> d(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) {
      if (e.value.get_den() != 1) fail(ErrorKind::UnsupportedRing, "integer engine given a fraction");
      d(e.row, j) = e.value.get_num();
    }
  return d;
}

SmithOut run_smith(Dense<mpz_class> a, unsigned track) {
  IntInput in = make_input(std::move(a));
  return detail::smith(in.big, in.small, track);
}

Matrix to_matrix(const RingSpec& ring, const Dense<mpz_class>& d) {
  Matrix m(ring, d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (sgn(d(i, j)) != 0) m.set(i, j, mpq_class(d(i, j)));
  return m;
}

// [a | n I]
Dense<mpz_class> append_modulus(const Dense<mpz_class>& a, const mpz_class& n) {
  Dense<mpz_class> out(a.rows(), a.cols() + a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    out(i, a.cols() + i) = n;
  }
  return out;
}

template <class F>
Dense<typename F::E> field_dense(const F& f, const Matrix& m) {
  Dense<typename F::E> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = f.from(m.at(i, j));
  return d;
}

template <class F>
Dense<typename F::E> field_dense(const F& f, const SparseMatrix& m) {
  Dense<typename F::E> d(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) d(e.row, j) = f.from(e.value);
  return d;
}

// Any unit u' of Z/n with u' = u mod n/g.
mpz_class unit_lift(const mpz_class& u, const mpz_class& n, const mpz_class& g) {
  mpz_class step = n / g;
  mpz_class c = u % step;
  if (c < 0) c += step;
  for (;;) {
    mpz_class h;
    mpz_gcd(h.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
    if (h == 1) return c;
    c += step;
  }
}

mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class reduce_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r = x % m;
  if (r < 0) r += m;
  return r;
}

// Lattice quotient span(K) / span(I) in Z^a via one SNF of K; returns the
// orders of the cyclic summands in SNF order (0 for free summands).
std::vector<mpz_class> lattice_quotient_orders(const Dense<mpz_class>& k, const Dense<mpz_class>& img) {
  const std::size_t a = k.rows();
  SmithOut s = run_smith(k, detail::kTrackU);
  const std::size_t r = s.rank;
  Dense<mpz_class> coords(r, img.cols());
  for (std::size_t j = 0; j < img.cols(); ++j) {
    for (std::size_t i = 0; i < a; ++i) {
      mpz_class y = 0;
      for (std::size_t t = 0; t < a; ++t)
        if (sgn(img(t, j)) != 0 && sgn((*s.u)(i, t)) != 0) y += (*s.u)(i, t) * img(t, j);
      if (i < r) {
        if (!mpz_divisible_p(y.get_mpz_t(), s.a(i, i).get_mpz_t())) {
          fail(ErrorKind::ContainmentViolation, "image generator " + std::to_string(j) +
                                                    " is not in the span of the kernel generators");
        }
        coords(i, j) = y / s.a(i, i);
      } else if (sgn(y) != 0) {
        fail(ErrorKind::ContainmentViolation, "image generator " + std::to_string(j) +
                                                  " is not in the span of the kernel generators");
      }
    }
  }
  SmithOut t = run_smith(coords, 0);
  std::vector<mpz_class> orders(r, mpz_class(0));
  for (std::size_t i = 0; i < t.rank; ++i) orders[i] = t.a(i, i);
  return orders;
}

}  // namespace

std::string ModulePresentation::to_string() const {
  std::ostringstream os;
  const std::string base = ring.kind() == RingKind::IntegersMod ? "(" + ring.name() + ")" : ring.name();
  bool first = true;
  if (free_rank > 0) {
    os << base << "^" << free_rank;
    first = false;
  }
  for (const auto& f : invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << f.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

SmithForm smith_normal_form(const Matrix& m) {
  const RingSpec& ring = m.ring();
  if (ring.kind() == RingKind::Rationals || ring.kind() == RingKind::PrimeField) {
    fail(ErrorKind::UseRowReduction, "smith_normal_form over " + ring.name() + ": use row reduction");
  }
  SmithOut s = run_smith(lift_int(m), detail::kTrackU | detail::kTrackV);
  Dense<mpz_class> u = std::move(*s.u);
  Dense<mpz_class> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < s.rank; ++i) d(i, i) = s.a(i, i);
  if (ring.kind() == RingKind::IntegersMod) {
    const mpz_class& n = ring.modulus();
    for (std::size_t i = 0; i < s.rank; ++i) {
      mpz_class g = gcd_of(d(i, i), n);
      if (g == n) {
        d(i, i) = 0;
        continue;
      }
      mpz_class unit = unit_lift(d(i, i) / g, n, g);
      mpz_class unit_inv;
      mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), n.get_mpz_t());
      for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = reduce_mod(u(i, c) * unit_inv, n);
      d(i, i) = g;
    }
  }
  return {to_matrix(ring, u), to_matrix(ring, d), to_matrix(ring, *s.v)};
}

std::vector<mpz_class> smith_diagonal(const Matrix& m) {
  if (m.ring().kind() != RingKind::Integers) {
    fail(ErrorKind::UnsupportedRing, "smith_diagonal needs Z, got " + m.ring().name());
  }
  SmithOut s = run_smith(lift_int(m), 0);
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < s.rank; ++i) out.push_back(s.a(i, i));
  return out;
}

Matrix kernel_basis(const Matrix& m) {
  const RingSpec& ring = m.ring();
  const std::size_t n = m.cols();
  if (ring.is_field()) {
    return detail::with_field(ring, [&](const auto& f) {
      auto e = detail::rref(f, field_dense(f, m));
      std::vector<char> is_pivot(n, 0);
      for (auto c : e.pivots) is_pivot[c] = 1;
      std::vector<std::vector<mpq_class>> cols;
      for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<mpq_class> v(n);
        v[c] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -f.to(e.r(i, c));
        cols.push_back(std::move(v));
      }
      return Matrix::from_columns(ring, n, cols);
    });
  }
  if (ring.kind() == RingKind::Integers) {
    SmithOut s = run_smith(lift_int(m), detail::kTrackV);
    const std::size_t k = n - s.rank;
    Dense<mpz_class> rows(k, n);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) rows(j, i) = (*s.v)(i, s.rank + j);
    Dense<mpz_class> h = detail::hermite_rows(std::move(rows));
    Matrix out(ring, n, h.rows());
    for (std::size_t j = 0; j < h.rows(); ++j)
      for (std::size_t i = 0; i < n; ++i) out.set(i, j, mpq_class(h(j, i)));
    return out;
  }
  // Z/n with n composite: x = V z, (U m V)_ii z_i = 0 mod n.
  const mpz_class& mod = ring.modulus();
  SmithOut s = run_smith(lift_int(m), detail::kTrackV);
  std::vector<std::vector<mpq_class>> cols;
  for (std::size_t j = 0; j < n; ++j) {
    mpz_class scale = j < s.rank ? mpz_class(mod / gcd_of(s.a(j, j), mod)) : mpz_class(1);
    std::vector<mpq_class> v(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = reduce_mod((*s.v)(i, j) * scale, mod);
      if (sgn(v[i]) != 0) nonzero = true;
    }
    if (nonzero) cols.push_back(std::move(v));
  }
  return Matrix::from_columns(ring, n, cols);
}

std::size_t rank(const Matrix& m) {
  const RingSpec& ring = m.ring();
  if (ring.is_field()) {
    return detail::with_field(ring, [&](const auto& f) {
      return detail::rref(f, field_dense(f, m)).pivots.size();
    });
  }
  SmithOut s = run_smith(lift_int(m), 0);
  if (ring.kind() == RingKind::Integers) return s.rank;
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (gcd_of(s.a(i, i), ring.modulus()) != ring.modulus()) ++r;
  return r;
}

mpq_class determinant(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::MalformedData, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<mpq_class> a(m.data().begin(), m.data().end());
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (sgn(a[i * n + c]) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return m.ring().canonical(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a[i * n + c]) == 0) continue;
      mpq_class f = a[i * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[i * n + j] -= f * a[c * n + j];
    }
  }
  return m.ring().canonical(det);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  const RingSpec& ring = a.ring();
  if (b.ring() != ring || b.rows() != a.rows()) fail(ErrorKind::MalformedData, "solve: shape or ring mismatch");
  const std::size_t n = a.cols(), k = b.cols();
  if (ring.is_field()) {
    return detail::with_field(ring, [&](const auto& f) -> std::optional<Matrix> {
      auto e = detail::rref(f, field_dense(f, a.hcat(b)));
      Matrix x(ring, n, k);
      for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] >= n) return std::nullopt;
        for (std::size_t j = 0; j < k; ++j) x.set(e.pivots[i], j, f.to(e.r(i, n + j)));
      }
      return x;
    });
  }
  Dense<mpz_class> la = lift_int(a);
  Dense<mpz_class> lb = lift_int(b);
  if (ring.kind() == RingKind::IntegersMod) la = append_modulus(la, ring.modulus());
  const std::size_t cols = la.cols();
  SmithOut s = run_smith(la, detail::kTrackU | detail::kTrackV);
  const std::size_t m = la.rows();
  // y = U b; z_i = y_i / d_i; x = V z
  Dense<mpz_class> z(cols, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      mpz_class y = 0;
      for (std::size_t t = 0; t < m; ++t)
        if (sgn(lb(t, j)) != 0) y += (*s.u)(i, t) * lb(t, j);
      if (i < s.rank) {
        if (!mpz_divisible_p(y.get_mpz_t(), s.a(i, i).get_mpz_t())) return std::nullopt;
        z(i, j) = y / s.a(i, i);
      } else if (sgn(y) != 0) {
        return std::nullopt;
      }
    }
  }
  Matrix x(ring, n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      mpz_class acc = 0;
      for (std::size_t t = 0; t < s.rank; ++t)
        if (sgn(z(t, j)) != 0) acc += (*s.v)(i, t) * z(t, j);
      x.set(i, j, mpq_class(acc));
    }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve(a, Matrix::identity(a.ring(), a.rows()));
  if (!x) return std::nullopt;
  if (!(*x * a).is_identity()) return std::nullopt;
  return x;
}

Matrix column_hermite_form(const Matrix& m) {
  if (m.ring().kind() != RingKind::Integers) {
    fail(ErrorKind::UnsupportedRing, "column_hermite_form needs Z");
  }
  Dense<mpz_class> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m.at(i, j).get_num();
  Dense<mpz_class> h = detail::hermite_rows(std::move(t));
  Matrix out(m.ring(), m.rows(), h.rows());
  for (std::size_t j = 0; j < h.rows(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out.set(i, j, mpq_class(h(j, i)));
  return out;
}

Matrix span_basis(const Matrix& m) {
  const RingSpec& ring = m.ring();
  if (m.cols() == 0) return m;
  if (ring.is_field()) {
    Matrix ann = kernel_basis(m.transpose());
    if (ann.cols() == 0) return Matrix::identity(ring, m.rows());
    return kernel_basis(ann.transpose());
  }
  if (ring.kind() == RingKind::Integers) return column_hermite_form(m);
  // Z/n: Hermite form of the lifted span together with n Z^rows.
  const RingSpec z = RingSpec::integers();
  Matrix lifted(z, m.rows(), m.cols() + m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) lifted.set(i, j, m.at(i, j));
    lifted.set(i, m.cols() + i, mpq_class(ring.modulus()));
  }
  Matrix h = column_hermite_form(lifted);
  std::vector<std::vector<mpq_class>> cols;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::vector<mpq_class> c(h.rows());
    bool nonzero = false;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      c[i] = ring.canonical(h.at(i, j));
      nonzero = nonzero || sgn(c[i]) != 0;
    }
    if (nonzero) cols.push_back(std::move(c));
  }
  return Matrix::from_columns(ring, m.rows(), cols);
}

ModulePresentation subquotient(std::size_t ambient_rank, const Matrix& kernel_gens,
                               const Matrix& image_gens) {
  const RingSpec& ring = kernel_gens.ring();
  if (kernel_gens.rows() != ambient_rank || image_gens.rows() != ambient_rank ||
      image_gens.ring() != ring) {
    fail(ErrorKind::MalformedData, "subquotient: generators do not live in the ambient module");
  }
  ModulePresentation p{ring, 0, {}};
  if (ring.is_field()) {
    std::size_t rk = rank(kernel_gens);
    if (rank(kernel_gens.hcat(image_gens)) != rk) {
      fail(ErrorKind::ContainmentViolation, "image is not contained in the kernel span");
    }
    p.free_rank = rk - rank(image_gens);
    return p;
  }
  Dense<mpz_class> k = lift_int(kernel_gens), img = lift_int(image_gens);
  if (ring.kind() == RingKind::IntegersMod) {
    k = append_modulus(k, ring.modulus());
    img = append_modulus(img, ring.modulus());
  }
  for (const auto& e : lattice_quotient_orders(k, img)) {
    if (e == 1) continue;
    if (sgn(e) == 0 || (ring.kind() == RingKind::IntegersMod && e == ring.modulus())) {
      ++p.free_rank;
    } else {
      p.invariant_factors.push_back(e);
    }
  }
  return p;
}

std::optional<mpz_class> torsion_exponent(const ModulePresentation& p) {
  if (p.ring.kind() != RingKind::Integers) {
    fail(ErrorKind::UnsupportedRing, "torsion_exponent needs Z, got " + p.ring.name());
  }
  if (p.invariant_factors.empty()) return std::nullopt;
  return p.invariant_factors.back();
}

std::vector<mpz_class> generator_orders(const ModulePresentation& p) {
  std::vector<mpz_class> out = p.invariant_factors;
  for (std::size_t i = 0; i < p.free_rank; ++i) out.push_back(p.ring.modulus());
  return out;
}

// ---------------------------------------------------------------------------

HomologyGroup HomologyGroup::compute(const SparseMatrix& out, const SparseMatrix& in, Mode mode) {
  const RingSpec& ring = out.ring();
  const std::size_t dim = out.cols();
  if (in.rows() != dim || in.ring() != ring) {
    fail(ErrorKind::MalformedData, "homology: incoming map does not land in the middle term");
  }
  HomologyGroup h;
  h.mode_ = mode;
  h.ring_ = ring;
  h.dim_ = dim;
  h.out_ = out;
  h.presentation_ = {ring, 0, {}};

  if (ring.is_field()) {
    h.path_ = Path::Field;
    detail::with_field(ring, [&](const auto& f) {
      auto e = detail::rref(f, field_dense(f, out));
      std::vector<char> is_pivot(dim, 0);
      for (auto c : e.pivots) is_pivot[c] = 1;
      for (std::size_t c = 0; c < dim; ++c)
        if (!is_pivot[c]) h.free_cols_.push_back(c);
      const std::size_t k = h.free_cols_.size();
      // Image in free coordinates, one row per incoming generator.
      using E = typename std::decay_t<decltype(f)>::E;
      Dense<E> y(in.cols(), k);
      std::vector<std::size_t> pos(dim, k);
      for (std::size_t q = 0; q < k; ++q) pos[h.free_cols_[q]] = q;
      for (std::size_t j = 0; j < in.cols(); ++j) {
        for (const auto& en : in.column(j)) {
          if (pos[en.row] < k) y(j, pos[en.row]) = f.from(en.value);
        }
      }
      auto ye = detail::rref(f, std::move(y));
      std::vector<char> in_image(k, 0);
      for (std::size_t i = 0; i < ye.pivots.size(); ++i) {
        h.image_pivots_.push_back(ye.pivots[i]);
        in_image[ye.pivots[i]] = 1;
        std::vector<mpq_class> row(k);
        for (std::size_t c = 0; c < k; ++c) row[c] = f.to(ye.r(i, c));
        h.image_rows_.push_back(std::move(row));
      }
      for (std::size_t q = 0; q < k; ++q)
        if (!in_image[q]) h.complement_.push_back(q);
      h.presentation_.free_rank = h.complement_.size();
      if (mode == Mode::Full) {
        h.reps_ = Matrix(ring, dim, h.complement_.size());
        for (std::size_t g = 0; g < h.complement_.size(); ++g) {
          std::size_t fc = h.free_cols_[h.complement_[g]];
          h.reps_.set(fc, g, mpq_class(1));
          for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            h.reps_.set(e.pivots[i], g, -f.to(e.r(i, fc)));
          }
        }
      }
      return 0;
    });
    return h;
  }

  if (ring.kind() == RingKind::Integers) {
    h.path_ = Path::Integers;
    if (mode == Mode::PresentationOnly) {
      // torsion(H) = torsion(coker in); free rank by rank-nullity.
      SmithOut so = run_smith(lift_int(out), 0);
      SmithOut si = run_smith(lift_int(in), 0);
      for (std::size_t i = 0; i < si.rank; ++i)
        if (si.a(i, i) != 1) h.presentation_.invariant_factors.push_back(si.a(i, i));
      h.presentation_.free_rank = dim - so.rank - si.rank;
      return h;
    }
    SmithOut so = run_smith(lift_int(out), detail::kTrackV | detail::kTrackVinv);
    const std::size_t r = so.rank, k = dim - r;
    const Dense<mpz_class>& vinv = *so.vinv;
    Dense<mpz_class> rmat(k, in.cols());
    for (std::size_t j = 0; j < in.cols(); ++j) {
      for (std::size_t i = 0; i < dim; ++i) {
        mpz_class y = 0;
        for (const auto& en : in.column(j)) y += vinv(i, en.row) * en.value.get_num();
        if (i < r) {
          if (sgn(y) != 0) {
            fail(ErrorKind::ContainmentViolation,
                 "incoming column " + std::to_string(j) + " is not a cycle of the outgoing map");
          }
        } else {
          rmat(i - r, j) = y;
        }
      }
    }
    SmithOut sr = run_smith(std::move(rmat), detail::kTrackU | detail::kTrackUinv);
    for (std::size_t i = r; i < dim; ++i) {
      std::vector<mpz_class> row(dim);
      for (std::size_t c = 0; c < dim; ++c) row[c] = vinv(i, c);
      h.kernel_coords_.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < k; ++j) {
      mpz_class order = j < sr.rank ? sr.a(j, j) : mpz_class(0);
      if (order == 1) continue;
      h.kept_.push_back(j);
      h.orders_.push_back(order);
      if (sgn(order) == 0) {
        ++h.presentation_.free_rank;
      } else {
        h.presentation_.invariant_factors.push_back(order);
      }
    }
    for (std::size_t j : h.kept_) {
      std::vector<mpz_class> row(k);
      for (std::size_t c = 0; c < k; ++c) row[c] = (*sr.u)(j, c);
      h.p_.push_back(std::move(row));
    }
    h.reps_ = Matrix(ring, dim, h.kept_.size());
    for (std::size_t g = 0; g < h.kept_.size(); ++g) {
      for (std::size_t i = 0; i < dim; ++i) {
        mpz_class acc = 0;
        for (std::size_t c = 0; c < k; ++c) {
          const mpz_class& pinv = (*sr.uinv)(c, h.kept_[g]);
          if (sgn(pinv) != 0) acc += (*so.v)(i, r + c) * pinv;
        }
        if (sgn(acc) != 0) h.reps_.set(i, g, mpq_class(acc));
      }
    }
    return h;
  }

  // Z/n, n composite.
  h.path_ = Path::IntegersMod;
  const mpz_class& n = ring.modulus();
  SmithOut so = run_smith(lift_int(out), detail::kTrackV | detail::kTrackVinv);
  const Dense<mpz_class>& vinv = *so.vinv;
  h.scale_.assign(dim, mpz_class(1));
  for (std::size_t i = 0; i < so.rank; ++i) h.scale_[i] = n / gcd_of(so.a(i, i), n);
  Dense<mpz_class> rmat(dim, in.cols() + dim);
  for (std::size_t j = 0; j < in.cols(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      mpz_class y = 0;
      for (const auto& en : in.column(j)) y += vinv(i, en.row) * en.value.get_num();
      if (!mpz_divisible_p(y.get_mpz_t(), h.scale_[i].get_mpz_t())) {
        fail(ErrorKind::ContainmentViolation,
             "incoming column " + std::to_string(j) + " is not a cycle of the outgoing map");
      }
      rmat(i, j) = y / h.scale_[i];
    }
  }
  for (std::size_t i = 0; i < dim; ++i) rmat(i, in.cols() + i) = n / h.scale_[i];
  SmithOut sr = run_smith(std::move(rmat), detail::kTrackU | detail::kTrackUinv);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<mpz_class> row(dim);
    for (std::size_t c = 0; c < dim; ++c) row[c] = vinv(i, c);
    h.kernel_coords_.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < dim; ++j) {
    mpz_class order = sr.a(j, j);
    if (order == 1) continue;
    h.kept_.push_back(j);
    h.orders_.push_back(order);
    if (order == n) {
      ++h.presentation_.free_rank;
    } else {
      h.presentation_.invariant_factors.push_back(order);
    }
  }
  for (std::size_t j : h.kept_) {
    std::vector<mpz_class> row(dim);
    for (std::size_t c = 0; c < dim; ++c) row[c] = (*sr.u)(j, c);
    h.p_.push_back(std::move(row));
  }
  if (mode == Mode::Full) {
    h.reps_ = Matrix(ring, dim, h.kept_.size());
    for (std::size_t g = 0; g < h.kept_.size(); ++g) {
      for (std::size_t i = 0; i < dim; ++i) {
        mpz_class acc = 0;
        for (std::size_t c = 0; c < dim; ++c) {
          const mpz_class& pinv = (*sr.uinv)(c, h.kept_[g]);
          if (sgn(pinv) != 0) acc += (*so.v)(i, c) * h.scale_[c] * pinv;
        }
        h.reps_.set(i, g, mpq_class(acc));
      }
    }
  }
  return h;
}

std::vector<mpq_class> HomologyGroup::coordinates(std::span<const mpq_class> cycle) const {
  if (cycle.size() != dim_) fail(ErrorKind::MalformedData, "cycle has the wrong length");
  std::vector<mpq_class> canon(cycle.size());
  for (std::size_t i = 0; i < cycle.size(); ++i) canon[i] = ring_.canonical(cycle[i]);
  for (const auto& v : out_.apply(canon)) {
    if (sgn(v) != 0) fail(ErrorKind::MalformedData, "vector is not a cycle");
  }
  if (mode_ == Mode::PresentationOnly && path_ == Path::Integers) {
    fail(ErrorKind::Usage, "homology computed without coordinate data");
  }
  if (path_ == Path::Field) {
    const std::size_t k = free_cols_.size();
    std::vector<mpq_class> z(k);
    for (std::size_t q = 0; q < k; ++q) z[q] = canon[free_cols_[q]];
    for (std::size_t i = 0; i < image_rows_.size(); ++i) {
      mpq_class c = z[image_pivots_[i]];
      if (sgn(c) == 0) continue;
      for (std::size_t q = 0; q < k; ++q) z[q] = ring_.canonical(z[q] - c * image_rows_[i][q]);
    }
    std::vector<mpq_class> outv;
    for (std::size_t q : complement_) outv.push_back(z[q]);
    return outv;
  }
  // Integer paths: z = diag(1/s) Kc x, then w = P z.
  std::vector<mpz_class> z(kernel_coords_.size());
  for (std::size_t i = 0; i < kernel_coords_.size(); ++i) {
    mpz_class acc = 0;
    for (std::size_t c = 0; c < dim_; ++c)
      if (sgn(canon[c]) != 0) acc += kernel_coords_[i][c] * canon[c].get_num();
    if (path_ == Path::IntegersMod) {
      if (!mpz_divisible_p(acc.get_mpz_t(), scale_[i].get_mpz_t())) {
        fail(ErrorKind::InternalConsistency, "cycle outside the kernel lattice");
      }
      acc /= scale_[i];
    }
    z[i] = acc;
  }
  std::vector<mpq_class> outv;
  for (std::size_t g = 0; g < p_.size(); ++g) {
    mpz_class acc = 0;
    for (std::size_t c = 0; c < z.size(); ++c)
      if (sgn(z[c]) != 0) acc += p_[g][c] * z[c];
    if (sgn(orders_[g]) != 0) acc = reduce_mod(acc, orders_[g]);
    outv.push_back(ring_.canonical(mpq_class(acc)));
  }
  return outv;
}

bool HomologyGroup::is_boundary(std::span<const mpq_class> cycle) const {
  for (const auto& c : coordinates(cycle))
    if (sgn(c) != 0) return false;
  return true;
}

std::vector<mpq_class> HomologyGroup::lift(std::span<const mpq_class> coords) const {
  if (mode_ != Mode::Full) fail(ErrorKind::Usage, "homology computed without representatives");
  if (coords.size() != reps_.cols()) fail(ErrorKind::MalformedData, "coordinate vector has the wrong length");
  std::vector<mpq_class> v(dim_);
  for (std::size_t g = 0; g < coords.size(); ++g) {
    if (sgn(coords[g]) == 0) continue;
    for (std::size_t i = 0; i < dim_; ++i) v[i] += coords[g] * reps_.at(i, g);
  }
  for (auto& x : v) x = ring_.canonical(x);
  return v;
}

}  // namespace hopfcoh
