#include "int_engine.hpp"

namespace hopfcoh::detail {

SmithOut smith(const Dense<mpz_class>& big, const std::optional<Dense<CheckedI64>>& small,
               unsigned track) {
  if (small) {
    try {
      return widen_smith(SmithReducer<CheckedI64>(*small, track).run());
    } catch (const Overflow&) {
      // Coefficient growth escaped int64; redo exactly.
    }
  }
  return widen_smith(SmithReducer<mpz_class>(big, track).run());
}

Dense<mpz_class> hermite_rows(Dense<mpz_class> a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (is_zero(a(i, c))) continue;
        if (best == m || abs_less(a(i, c), a(best, c))) best = i;
      }
      if (best == m) break;
      a.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (is_zero(a(i, c))) continue;
        mpz_class q = tdiv(a(i, c), a(r, c));
        a.add_row(i, r, -q, c);
        if (!is_zero(a(i, c))) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || is_zero(a(r, c))) continue;
    if (sign_of(a(r, c)) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (is_zero(a(i, c))) continue;
      mpz_class q = fdiv(a(i, c), a(r, c));
      if (!is_zero(q)) a.add_row(i, r, -q, c);
    }
    ++r;
  }
  Dense<mpz_class> out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
  return out;
}

}  // namespace hopfcoh::detail
