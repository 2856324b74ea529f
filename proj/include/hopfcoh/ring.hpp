#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hopfcoh {

enum class RingKind { Integers, Rationals, PrimeField, IntegersMod };

// Exact coefficient ring. Elements of every ring are carried as mpq_class;
// for Z, F_p and Z/n the denominator is always 1 after canonicalization.
class RingSpec {
 public:
  RingSpec() : kind_(RingKind::Integers) {}

  static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
  static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }
  static RingSpec prime_field(const mpz_class& p);
  static RingSpec integers_mod(const mpz_class& n);

  // "Z", "Q", "F5", "Z/4".
  static RingSpec parse(std::string_view text);
  std::string name() const;

  RingKind kind() const { return kind_; }
  const mpz_class& modulus() const { return modulus_; }
  bool has_modulus() const { return modulus_ != 0; }

  bool is_field() const;
  // Z, F_p and Z/n: entries are integers (or residues).
  bool is_integral() const { return kind_ != RingKind::Rationals; }
  // Prime p when the ring has characteristic p, 0 for Z and Q, the modulus otherwise.
  mpz_class characteristic() const { return modulus_; }

  mpq_class canonical(const mpq_class& x) const;
  mpq_class from_int(long v) const { return canonical(mpq_class(v)); }

  mpq_class add(const mpq_class& a, const mpq_class& b) const { return canonical(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return canonical(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return canonical(a * b); }
  mpq_class neg(const mpq_class& a) const { return canonical(-a); }
  bool is_unit(const mpq_class& a) const;
  mpq_class inv(const mpq_class& a) const;

  bool operator==(const RingSpec& o) const {
    return kind_ == o.kind_ && modulus_ == o.modulus_;
  }
  bool operator!=(const RingSpec& o) const { return !(*this == o); }

 private:
  RingSpec(RingKind k, const mpz_class& m) : kind_(k), modulus_(m) {}

  RingKind kind_;
  mpz_class modulus_;
};

// Deterministic Miller-Rabin; exact for every modulus below 3.3e24.
// Larger inputs are rejected by the caller.
bool is_prime_deterministic(const mpz_class& n);

// Whether a canonical ring map from -> to exists (Z -> anything,
// Z/n -> Z/m or F_m for m | n, Z -> Q, identity).
bool has_canonical_map(const RingSpec& from, const RingSpec& to);
mpq_class map_element(const RingSpec& from, const RingSpec& to, const mpq_class& x);

}  // namespace hopfcoh
