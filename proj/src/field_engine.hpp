#pragma once

// Gauss-Jordan elimination over the exact fields. F_p with p < 2^32 runs on
// uint32 residues through the dispatched row kernels; larger primes use mpz
// residues and Q uses mpq.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "hopfcoh/error.hpp"
#include "hopfcoh/kernels/modp.hpp"
#include "hopfcoh/ring.hpp"
#include "int_engine.hpp"

namespace hopfcoh::detail {

struct SmallPrimeField {
  using E = std::uint32_t;
  std::uint32_t p;

  E from(const mpq_class& x) const {
    mpz_class v = x.get_num() % mpz_class(p);
    if (v < 0) v += p;
    return static_cast<E>(v.get_ui());
  }
  mpq_class to(E x) const { return mpq_class(static_cast<unsigned long>(x)); }
  bool zero(E x) const { return x == 0; }
  E neg(E x) const { return x == 0 ? 0 : p - x; }
  E mul(E a, E b) const { return static_cast<E>(static_cast<std::uint64_t>(a) * b % p); }
  E inv(E a) const {
    // Fermat would need a prime check per call; extended Euclid does not.
    std::int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    if (t0 < 0) t0 += p;
    return static_cast<E>(t0);
  }
  void axpy(E* dst, const E* src, E c, std::size_t n) const {
    kernels::axpy_mod({dst, n}, {src, n}, c, p);
  }
  void scale(E* x, E c, std::size_t n) const { kernels::scale_mod({x, n}, c, p); }
};

struct BigPrimeField {
  using E = mpz_class;
  mpz_class p;

  E from(const mpq_class& x) const {
    mpz_class v = x.get_num() % p;
    if (v < 0) v += p;
    return v;
  }
  mpq_class to(const E& x) const { return mpq_class(x); }
  bool zero(const E& x) const { return sgn(x) == 0; }
  E neg(const E& x) const { return sgn(x) == 0 ? E(0) : E(p - x); }
  E mul(const E& a, const E& b) const { return E((a * b) % p); }
  E inv(const E& a) const {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  void axpy(E* dst, const E* src, const E& c, std::size_t n) const {
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(src[i]) != 0) dst[i] = (dst[i] + c * src[i]) % p;
  }
  void scale(E* x, const E& c, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] * c) % p;
  }
};

struct RationalField {
  using E = mpq_class;

  E from(const mpq_class& x) const { return x; }
  mpq_class to(const E& x) const { return x; }
  bool zero(const E& x) const { return sgn(x) == 0; }
  E neg(const E& x) const { return -x; }
  E mul(const E& a, const E& b) const { return a * b; }
  E inv(const E& a) const { return 1 / a; }
  void axpy(E* dst, const E* src, const E& c, std::size_t n) const {
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(src[i]) != 0) dst[i] += c * src[i];
  }
  void scale(E* x, const E& c, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) x[i] *= c;
  }
};

template <class F>
struct Echelon {
  Dense<typename F::E> r;           // reduced rows; rows past rank are zero
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form; pivot rows are scaled to 1 and cleared above and below.
template <class F>
Echelon<F> rref(const F& f, Dense<typename F::E> a) {
  using E = typename F::E;
  Echelon<F> out;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t piv = m;
    for (std::size_t i = row; i < m; ++i)
      if (!f.zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    a.swap_rows(row, piv);
    E s = f.inv(a(row, c));
    f.scale(a.row(row), s, n);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || f.zero(a(i, c))) continue;
      E factor = f.neg(a(i, c));
      f.axpy(a.row(i), a.row(row), factor, n);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.r = std::move(a);
  return out;
}

// Calls fn(field) with the engine matching a field ring.
template <class Fn>
decltype(auto) with_field(const RingSpec& ring, Fn&& fn) {
  switch (ring.kind()) {
    case RingKind::Rationals: return fn(RationalField{});
    case RingKind::PrimeField:
    case RingKind::IntegersMod:
      if (ring.kind() == RingKind::IntegersMod && !ring.is_field()) break;
      if (ring.modulus() < mpz_class("4294967296")) {
        return fn(SmallPrimeField{static_cast<std::uint32_t>(ring.modulus().get_ui())});
      }
      return fn(BigPrimeField{ring.modulus()});
    case RingKind::Integers: break;
  }
  fail(ErrorKind::UnsupportedRing, ring.name() + " is not a field");
}

}  // namespace hopfcoh::detail
