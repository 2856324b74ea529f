#include "hopfcoh/ring.hpp"

#include <array>
#include <cctype>

#include "hopfcoh/error.hpp"

namespace hopfcoh {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedData: return "malformed-data";
    case ErrorKind::UnsupportedRing: return "unsupported-ring";
    case ErrorKind::UnsupportedBaseChange: return "unsupported-base-change";
    case ErrorKind::UseRowReduction: return "use-row-reduction";
    case ErrorKind::ContainmentViolation: return "containment-violation";
    case ErrorKind::CharacteristicMismatch: return "characteristic-mismatch";
    case ErrorKind::HopfIdealViolation: return "hopf-ideal-violation";
    case ErrorKind::TheoremViolation: return "theorem-violation";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::DegreeOverflow: return "degree-overflow";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

namespace {

bool miller_rabin_round(const mpz_class& n, const mpz_class& d, unsigned s, unsigned long base) {
  mpz_class a = base;
  if (a % n == 0) return true;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_deterministic(const mpz_class& n) {
  // The first 13 prime bases are a deterministic witness set below 3.3e24.
  static const mpz_class limit("3317044064679887385961981");
  if (n >= limit) {
    fail(ErrorKind::UnsupportedRing, "modulus too large for a deterministic primality check");
  }
  if (n < 2) return false;
  static constexpr std::array<unsigned long, 13> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long b : bases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  mpz_class d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  for (unsigned long b : bases) {
    if (!miller_rabin_round(n, d, s, b)) return false;
  }
  return true;
}

RingSpec RingSpec::prime_field(const mpz_class& p) {
  if (!is_prime_deterministic(p)) {
    fail(ErrorKind::MalformedData, "prime field modulus " + p.get_str() + " is not prime");
  }
  return RingSpec(RingKind::PrimeField, p);
}

RingSpec RingSpec::integers_mod(const mpz_class& n) {
  if (n < 2) fail(ErrorKind::MalformedData, "Z/n needs n >= 2");
  return RingSpec(RingKind::IntegersMod, n);
}

RingSpec RingSpec::parse(std::string_view text) {
  auto digits = [&](std::string_view s) {
    if (s.empty()) fail(ErrorKind::Usage, "bad ring name '" + std::string(text) + "'");
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        fail(ErrorKind::Usage, "bad ring name '" + std::string(text) + "'");
      }
    }
    return mpz_class(std::string(s));
  };
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.substr(0, 2) == "Z/") return integers_mod(digits(text.substr(2)));
  if (text.size() > 1 && (text[0] == 'F')) return prime_field(digits(text.substr(1)));
  fail(ErrorKind::Usage, "bad ring name '" + std::string(text) + "'");
}

std::string RingSpec::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + modulus_.get_str();
    case RingKind::IntegersMod: return "Z/" + modulus_.get_str();
  }
  return "?";
}

bool RingSpec::is_field() const {
  switch (kind_) {
    case RingKind::Integers: return false;
    case RingKind::Rationals: return true;
    case RingKind::PrimeField: return true;
    case RingKind::IntegersMod: return is_prime_deterministic(modulus_);
  }
  return false;
}

mpq_class RingSpec::canonical(const mpq_class& x) const {
  switch (kind_) {
    case RingKind::Rationals: {
      mpq_class r = x;
      r.canonicalize();
      return r;
    }
    case RingKind::Integers:
      if (x.get_den() != 1) {
        fail(ErrorKind::MalformedData, "non-integer " + x.get_str() + " in a Z matrix");
      }
      return x;
    case RingKind::PrimeField:
    case RingKind::IntegersMod: {
      mpz_class num = x.get_num() % modulus_;
      if (num < 0) num += modulus_;
      if (x.get_den() == 1) return mpq_class(num);
      mpz_class den_inv;
      if (mpz_invert(den_inv.get_mpz_t(), x.get_den().get_mpz_t(), modulus_.get_mpz_t()) == 0) {
        fail(ErrorKind::MalformedData,
             "denominator of " + x.get_str() + " is not invertible in " + name());
      }
      mpz_class r = (num * den_inv) % modulus_;
      return mpq_class(r);
    }
  }
  return x;
}

bool RingSpec::is_unit(const mpq_class& a) const {
  switch (kind_) {
    case RingKind::Rationals: return a != 0;
    case RingKind::Integers: return a == 1 || a == -1;
    case RingKind::PrimeField:
    case RingKind::IntegersMod: {
      mpz_class g;
      mpz_class v = canonical(a).get_num();
      mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

mpq_class RingSpec::inv(const mpq_class& a) const {
  if (!is_unit(a)) fail(ErrorKind::MalformedData, a.get_str() + " is not a unit in " + name());
  switch (kind_) {
    case RingKind::Rationals: return 1 / a;
    case RingKind::Integers: return a;
    case RingKind::PrimeField:
    case RingKind::IntegersMod: {
      mpz_class v = canonical(a).get_num();
      mpz_class r;
      mpz_invert(r.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
      return mpq_class(r);
    }
  }
  return a;
}

bool has_canonical_map(const RingSpec& from, const RingSpec& to) {
  if (from == to) return true;
  switch (from.kind()) {
    case RingKind::Integers: return true;
    case RingKind::Rationals: return false;
    case RingKind::PrimeField:
      // F_p -> Z/p is the identity on residues.
      return to.has_modulus() && to.modulus() == from.modulus();
    case RingKind::IntegersMod:
      return to.has_modulus() && from.modulus() % to.modulus() == 0;
  }
  return false;
}

mpq_class map_element(const RingSpec& from, const RingSpec& to, const mpq_class& x) {
  if (!has_canonical_map(from, to)) {
    fail(ErrorKind::UnsupportedBaseChange,
         "no canonical ring map " + from.name() + " -> " + to.name());
  }
  return to.canonical(x);
}

}  // namespace hopfcoh
