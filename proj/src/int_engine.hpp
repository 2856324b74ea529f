#pragma once

// Dense integer elimination shared by the Z and Z/n code paths. Everything
// is templated on the entry type: CheckedI64 for the fast path, mpz_class
// once an overflow has been observed.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

namespace hopfcoh::detail {

struct Overflow {};

class CheckedI64 {
 public:
  CheckedI64() = default;
  CheckedI64(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  std::int64_t value() const { return v_; }

  friend CheckedI64 operator+(CheckedI64 a, CheckedI64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend CheckedI64 operator-(CheckedI64 a, CheckedI64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  friend CheckedI64 operator*(CheckedI64 a, CheckedI64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow{};
    return r;
  }
  CheckedI64 operator-() const {
    if (v_ == INT64_MIN) throw Overflow{};
    return -v_;
  }
  CheckedI64& operator+=(CheckedI64 b) { return *this = *this + b; }
  CheckedI64& operator-=(CheckedI64 b) { return *this = *this - b; }
  friend bool operator==(CheckedI64 a, CheckedI64 b) { return a.v_ == b.v_; }
  friend bool operator!=(CheckedI64 a, CheckedI64 b) { return a.v_ != b.v_; }
  friend bool operator<(CheckedI64 a, CheckedI64 b) { return a.v_ < b.v_; }

 private:
  std::int64_t v_ = 0;
};

// Scalar helpers, overloaded for both entry types.
inline bool is_zero(CheckedI64 a) { return a.value() == 0; }
inline bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
inline int sign_of(CheckedI64 a) { return (a.value() > 0) - (a.value() < 0); }
inline int sign_of(const mpz_class& a) { return sgn(a); }
inline bool abs_is_one(CheckedI64 a) { return a.value() == 1 || a.value() == -1; }
inline bool abs_is_one(const mpz_class& a) { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }
inline bool abs_less(CheckedI64 a, CheckedI64 b) {
  if (a.value() == INT64_MIN || b.value() == INT64_MIN) throw Overflow{};
  return std::llabs(a.value()) < std::llabs(b.value());
}
inline bool abs_less(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
inline CheckedI64 tdiv(CheckedI64 a, CheckedI64 b) {
  if (a.value() == INT64_MIN && b.value() == -1) throw Overflow{};
  return a.value() / b.value();
}
inline mpz_class tdiv(const mpz_class& a, const mpz_class& b) { return a / b; }
inline CheckedI64 fdiv(CheckedI64 a, CheckedI64 b) {
  if (a.value() == INT64_MIN && b.value() == -1) throw Overflow{};
  std::int64_t q = a.value() / b.value();
  if ((a.value() % b.value() != 0) && ((a.value() < 0) != (b.value() < 0))) --q;
  return q;
}
inline mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline bool divides(CheckedI64 a, CheckedI64 b) { return b.value() % a.value() == 0; }
inline bool divides(const mpz_class& a, const mpz_class& b) {
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}
// g = s a + t b with g >= 0.
inline void gcdext(CheckedI64 a, CheckedI64 b, CheckedI64& g, CheckedI64& s, CheckedI64& t) {
  CheckedI64 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!is_zero(r1)) {
    CheckedI64 q = tdiv(r0, r1);
    CheckedI64 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    CheckedI64 s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    CheckedI64 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (sign_of(r0) < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}
inline void gcdext(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& s,
                   mpz_class& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline mpz_class to_mpz(CheckedI64 a) { return mpz_class(static_cast<long>(a.value())); }
inline mpz_class to_mpz(const mpz_class& a) { return a; }

template <class T>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
  static Dense identity(std::size_t n) {
    Dense d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = T(1);
    return d;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  T* row(std::size_t i) { return a_.data() + i * cols_; }
  const T* row(std::size_t i) const { return a_.data() + i * cols_; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i != j) std::swap_ranges(row(i), row(i) + cols_, row(j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_dst += c * row_src, from column `from` on.
  void add_row(std::size_t dst, std::size_t src, const T& c, std::size_t from = 0) {
    T* d = row(dst);
    const T* s = row(src);
    for (std::size_t j = from; j < cols_; ++j)
      if (!is_zero(s[j])) d[j] += c * s[j];
  }
  void add_col(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t r = 0; r < rows_; ++r) {
      const T& s = (*this)(r, src);
      if (!is_zero(s)) (*this)(r, dst) += c * s;
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

template <class T>
Dense<mpz_class> widen(const Dense<T>& a) {
  Dense<mpz_class> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_mpz(a(i, j));
  return out;
}

enum Track : unsigned { kTrackU = 1, kTrackUinv = 2, kTrackV = 4, kTrackVinv = 8 };

template <class T>
struct SmithWork {
  Dense<T> a;
  std::optional<Dense<T>> u, uinv, v, vinv;
  std::size_t rank = 0;
};

template <class T>
class SmithReducer {
 public:
  SmithReducer(Dense<T> a, unsigned track) {
    w_.a = std::move(a);
    if (track & kTrackU) w_.u = Dense<T>::identity(w_.a.rows());
    if (track & kTrackUinv) w_.uinv = Dense<T>::identity(w_.a.rows());
    if (track & kTrackV) w_.v = Dense<T>::identity(w_.a.cols());
    if (track & kTrackVinv) w_.vinv = Dense<T>::identity(w_.a.cols());
  }

  SmithWork<T> run() && {
    Dense<T>& a = w_.a;
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!bring_pivot(t)) break;
      for (;;) {
        clear_column(t);
        if (fix_column_remainder(t)) continue;
        clear_row(t);
        if (fix_row_remainder(t)) continue;
        break;
      }
    }
    w_.rank = t;
    normalize_diagonal();
    return std::move(w_);
  }

 private:
  // Row operation row_i += c row_j, propagated to U and U^-1.
  void row_op(std::size_t i, std::size_t j, const T& c, std::size_t from) {
    w_.a.add_row(i, j, c, from);
    if (w_.u) w_.u->add_row(i, j, c);
    if (w_.uinv) w_.uinv->add_col(j, i, -c);
  }
  // Column operation col_i += c col_j, propagated to V and V^-1.
  void col_op_tracking(std::size_t i, std::size_t j, const T& c) {
    if (w_.v) w_.v->add_col(i, j, c);
    if (w_.vinv) w_.vinv->add_row(j, i, -c);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    w_.a.swap_rows(i, j);
    if (w_.u) w_.u->swap_rows(i, j);
    if (w_.uinv) w_.uinv->swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    w_.a.swap_cols(i, j);
    if (w_.v) w_.v->swap_cols(i, j);
    if (w_.vinv) w_.vinv->swap_rows(i, j);
  }

  bool bring_pivot(std::size_t t) {
    Dense<T>& a = w_.a;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < a.rows(); ++i) {
      const T* r = a.row(i);
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (is_zero(r[j])) continue;
        if (!found || abs_less(r[j], a(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
          if (abs_is_one(r[j])) goto done;
        }
      }
    }
  done:
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void clear_column(std::size_t t) {
    Dense<T>& a = w_.a;
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, t))) continue;
      T q = tdiv(a(i, t), a(t, t));
      if (!is_zero(q)) row_op(i, t, -q, t);
    }
  }

  bool fix_column_remainder(std::size_t t) {
    Dense<T>& a = w_.a;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, t))) continue;
      if (!found || abs_less(a(i, t), a(best, t))) {
        best = i;
        found = true;
      }
    }
    if (!found) return false;
    swap_rows(t, best);
    return true;
  }

  // The pivot column is zero outside the pivot, so a column operation only
  // touches the pivot row of A.
  void clear_row(std::size_t t) {
    Dense<T>& a = w_.a;
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (is_zero(a(t, j))) continue;
      T q = tdiv(a(t, j), a(t, t));
      if (is_zero(q)) continue;
      a(t, j) -= q * a(t, t);
      col_op_tracking(j, t, -q);
    }
  }

  bool fix_row_remainder(std::size_t t) {
    Dense<T>& a = w_.a;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (is_zero(a(t, j))) continue;
      if (!found || abs_less(a(t, j), a(t, best))) {
        best = j;
        found = true;
      }
    }
    if (!found) return false;
    swap_cols(t, best);
    return true;
  }

  // Enforce d_i | d_{i+1} and d_i > 0 with 2x2 unimodular moves on rows/cols i, j.
  void normalize_diagonal() {
    Dense<T>& a = w_.a;
    const std::size_t r = w_.rank;
    for (std::size_t i = 0; i < r; ++i) {
      if (sign_of(a(i, i)) < 0) {
        a(i, i) = -a(i, i);
        if (w_.u) w_.u->negate_row(i);
        if (w_.uinv) w_.uinv->negate_col(i);
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        T x = a(i, i), y = a(j, j);
        if (divides(x, y)) continue;
        T g, s, tt;
        gcdext(x, y, g, s, tt);
        T xg = tdiv(x, g), yg = tdiv(y, g);
        a(i, i) = g;
        a(j, j) = xg * y;
        // L = [[s, t], [-y/g, x/g]] on rows, R = [[1, -t y/g], [1, s x/g]] on columns.
        if (w_.u) mix_rows(*w_.u, i, j, s, tt, -yg, xg);
        if (w_.uinv) mix_cols(*w_.uinv, i, j, xg, yg, -tt, s);
        if (w_.v) mix_cols(*w_.v, i, j, T(1), T(1), -(tt * yg), s * xg);
        if (w_.vinv) mix_rows(*w_.vinv, i, j, s * xg, tt * yg, T(-1), T(1));
      }
    }
  }

  // rows (i, j) <- (p r_i + q r_j, x r_i + y r_j)
  static void mix_rows(Dense<T>& m, std::size_t i, std::size_t j, const T& p, const T& q,
                       const T& x, const T& y) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      T ri = m(i, c), rj = m(j, c);
      m(i, c) = p * ri + q * rj;
      m(j, c) = x * ri + y * rj;
    }
  }
  // cols (i, j) <- (p c_i + q c_j, x c_i + y c_j)
  static void mix_cols(Dense<T>& m, std::size_t i, std::size_t j, const T& p, const T& q,
                       const T& x, const T& y) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      T ci = m(r, i), cj = m(r, j);
      m(r, i) = p * ci + q * cj;
      m(r, j) = x * ci + y * cj;
    }
  }

  SmithWork<T> w_;
};

// Runs the checked 64-bit reducer and reruns in mpz on overflow.
struct SmithOut {
  Dense<mpz_class> a;  // diagonal in the leading rank x rank block
  std::optional<Dense<mpz_class>> u, uinv, v, vinv;
  std::size_t rank = 0;
  mpz_class diag(std::size_t i) const { return a(i, i); }
};

template <class T>
SmithOut widen_smith(SmithWork<T>&& w) {
  SmithOut out;
  if constexpr (std::is_same_v<T, mpz_class>) {
    out.a = std::move(w.a);
    out.u = std::move(w.u);
    out.uinv = std::move(w.uinv);
    out.v = std::move(w.v);
    out.vinv = std::move(w.vinv);
  } else {
    out.a = widen(w.a);
    if (w.u) out.u = widen(*w.u);
    if (w.uinv) out.uinv = widen(*w.uinv);
    if (w.v) out.v = widen(*w.v);
    if (w.vinv) out.vinv = widen(*w.vinv);
  }
  out.rank = w.rank;
  return out;
}

// `small` is engaged when every entry fits in int64.
SmithOut smith(const Dense<mpz_class>& big, const std::optional<Dense<CheckedI64>>& small,
               unsigned track);

// Row Hermite form: nonzero rows only, leading entries positive and strictly
// to the right of the previous row's, entries above a pivot in [0, pivot).
Dense<mpz_class> hermite_rows(Dense<mpz_class> a);

}  // namespace hopfcoh::detail
