#include "hopfcoh/schemes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hopfcoh/error.hpp"
#include "hopfcoh/linalg.hpp"

namespace hopfcoh {

std::size_t validate_group_table(const GroupTable& t) {
  const std::size_t n = t.size();
  if (n == 0) fail(ErrorKind::MalformedData, "group table is empty");
  for (const auto& row : t) {
    if (row.size() != n) fail(ErrorKind::MalformedData, "group table is not square");
    for (std::size_t x : row)
      if (x >= n) fail(ErrorKind::MalformedData, "group table entry out of range");
  }
  std::size_t e = n;
  for (std::size_t g = 0; g < n && e == n; ++g) {
    bool ok = true;
    for (std::size_t h = 0; h < n && ok; ++h) ok = t[g][h] == h && t[h][g] == h;
    if (ok) e = g;
  }
  if (e == n) fail(ErrorKind::MalformedData, "group table has no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) {
          std::ostringstream os;
          os << "group table is not associative at (" << a << ", " << b << ", " << c << ")";
          fail(ErrorKind::MalformedData, os.str());
        }
  for (std::size_t g = 0; g < n; ++g)
    if (std::find(t[g].begin(), t[g].end(), e) == t[g].end())
      fail(ErrorKind::MalformedData, "element " + std::to_string(g) + " has no inverse");
  return e;
}

namespace {

std::vector<std::size_t> inverses(const GroupTable& t, std::size_t e) {
  std::vector<std::size_t> inv(t.size());
  for (std::size_t g = 0; g < t.size(); ++g)
    inv[g] = static_cast<std::size_t>(std::find(t[g].begin(), t[g].end(), e) - t[g].begin());
  return inv;
}

std::vector<std::string> labels(const std::string& stem, std::size_t n) {
  return default_basis(n, stem);
}

}  // namespace

GroupTable cyclic_table(std::size_t n) {
  GroupTable t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

GroupTable direct_product_table(const GroupTable& a, const GroupTable& b) {
  const std::size_t na = a.size(), nb = b.size();
  GroupTable t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      t[x][y] = a[x / nb][y / nb] * nb + b[x % nb][y % nb];
  return t;
}

GroupTable symmetric_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupTable t(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<std::size_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), c) -
                                         perms.begin());
    }
  return t;
}

GroupSchemeData constant_group_scheme(const GroupTable& table, const RingSpec& ring,
                                      const std::string& name) {
  const std::size_t e = validate_group_table(table);
  const std::size_t d = table.size();
  auto inv = inverses(table, e);
  Matrix mul(ring, d, d * d), unit(ring, d, 1), comul(ring, d * d, d), counit(ring, 1, d),
      s(ring, d, d);
  for (std::size_t g = 0; g < d; ++g) {
    mul.set(g, g * d + g, 1);
    unit.set(g, 0, 1);
    s.set(inv[g], g, 1);
    for (std::size_t h = 0; h < d; ++h) comul.set(g * d + h, table[g][h], 1);
  }
  counit.set(0, e, 1);
  auto h = HopfAlgebraData::make(ring, labels("f", d), std::move(mul), std::move(unit),
                                 std::move(comul), std::move(counit), std::move(s));
  return {std::move(h), name, "constant(order=" + std::to_string(d) + ")"};
}

HopfAlgebraData group_algebra(const GroupTable& table, const RingSpec& ring) {
  const std::size_t e = validate_group_table(table);
  const std::size_t d = table.size();
  auto inv = inverses(table, e);
  Matrix mul(ring, d, d * d), unit(ring, d, 1), comul(ring, d * d, d), counit(ring, 1, d),
      s(ring, d, d);
  for (std::size_t g = 0; g < d; ++g) {
    for (std::size_t h = 0; h < d; ++h) mul.set(table[g][h], g * d + h, 1);
    comul.set(g * d + g, g, 1);
    counit.set(0, g, 1);
    s.set(inv[g], g, 1);
  }
  unit.set(e, 0, 1);
  return HopfAlgebraData::make(ring, labels("g", d), std::move(mul), std::move(unit),
                               std::move(comul), std::move(counit), std::move(s));
}

GroupSchemeData mu_n(std::size_t n, const RingSpec& ring) {
  if (n == 0) fail(ErrorKind::MalformedData, "mu_n needs n >= 1");
  // k[t]/(t^n - 1) on the basis t^i is the group algebra of Z/n.
  HopfAlgebraData g = group_algebra(cyclic_table(n), ring);
  auto h = HopfAlgebraData::make(ring, labels("t^", n), g.mul(), g.unit(), g.comul(), g.counit(),
                                 g.antipode());
  return {std::move(h), "mu" + std::to_string(n), "mu(n=" + std::to_string(n) + ")"};
}

GroupSchemeData alpha_pr(const mpz_class& p, std::size_t r, const RingSpec& ring) {
  if (p < 2 || !is_prime_deterministic(p)) fail(ErrorKind::MalformedData, "alpha needs a prime p");
  if (r == 0) fail(ErrorKind::MalformedData, "alpha needs r >= 1");
  if (ring.kind() == RingKind::Integers || ring.kind() == RingKind::Rationals ||
      ring.modulus() != p)
    fail(ErrorKind::CharacteristicMismatch,
         "alpha_" + p.get_str() + "^r needs a ring of characteristic " + p.get_str() + ", got " +
             ring.name());
  mpz_class big;
  mpz_pow_ui(big.get_mpz_t(), p.get_mpz_t(), r);
  if (big > 4096) fail(ErrorKind::SizeLimit, "alpha rank too large");
  const std::size_t d = big.get_ui();
  Matrix mul(ring, d, d * d), unit(ring, d, 1), comul(ring, d * d, d), counit(ring, 1, d),
      s(ring, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; i + j < d; ++j) mul.set(i + j, i * d + j, 1);
    mpz_class binom;
    for (std::size_t k = 0; k <= i; ++k) {
      mpz_bin_uiui(binom.get_mpz_t(), i, k);
      comul.set(k * d + (i - k), i, mpq_class(binom));
    }
    s.set(i, i, i % 2 == 0 ? 1 : -1);
  }
  unit.set(0, 0, 1);
  counit.set(0, 0, 1);
  auto h = HopfAlgebraData::make(ring, labels("t^", d), std::move(mul), std::move(unit),
                                 std::move(comul), std::move(counit), std::move(s));
  return {std::move(h), "alpha" + std::to_string(d),
          "alpha(p=" + p.get_str() + ",r=" + std::to_string(r) + ")"};
}

GroupSchemeData product(const GroupSchemeData& g1, const GroupSchemeData& g2) {
  if (g1.hopf.ring() != g2.hopf.ring())
    fail(ErrorKind::MalformedData, "product of group schemes over different rings");
  return {tensor_hopf(g1.hopf, g2.hopf), g1.name + "*" + g2.name,
          "product(" + g1.provenance + "," + g2.provenance + ")"};
}

namespace {

// Column span of `gens` closed under multiplication by every basis element.
Matrix saturate_ideal(const HopfAlgebraData& h, const Matrix& gens) {
  const std::size_t d = h.rank();
  Matrix basis = span_basis(gens);
  for (;;) {
    std::vector<std::vector<mpq_class>> cols;
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      auto x = basis.col(j);
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<mpq_class> e(d, 0);
        e[i] = 1;
        cols.push_back(h.product(e, x));
        if (!h.commutative()) cols.push_back(h.product(x, e));
      }
    }
    Matrix products = Matrix::from_columns(h.ring(), d, cols);
    if (basis.cols() > 0 && solve(basis, products)) return basis;
    if (basis.cols() == 0 && products.is_zero()) return basis;
    basis = span_basis(basis.hcat(products));
  }
}

void ideal_condition(const char* name, const Matrix& m) {
  if (!m.is_zero()) fail(ErrorKind::HopfIdealViolation, std::string("Hopf ideal violation: ") + name);
}

}  // namespace

SubgroupData subgroup_from_ideal(const GroupSchemeData& g, const Matrix& ideal_gens) {
  const HopfAlgebraData& h = g.hopf;
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  if (ideal_gens.rows() != d || ideal_gens.ring() != k)
    fail(ErrorKind::MalformedData, "ideal generators do not live in the coordinate algebra");
  Matrix ideal = saturate_ideal(h, ideal_gens);

  // Projection: functionals vanishing on the ideal. The quotient must be free
  // with exactly this kernel.
  Matrix proj = ideal.cols() == 0 ? Matrix::identity(k, d) : kernel_basis(ideal.transpose()).transpose();
  const std::size_t q = proj.rows();
  if (q == 0) fail(ErrorKind::HopfIdealViolation, "Hopf ideal violation: ideal is the whole algebra");
  auto section = solve(proj, Matrix::identity(k, q));
  if (!section) fail(ErrorKind::MalformedData, "quotient by the ideal is not free");
  if (ideal.cols() > 0) {
    Matrix ker = kernel_basis(proj);
    if (ker.cols() > 0 && !solve(ideal, ker))
      fail(ErrorKind::MalformedData, "quotient by the ideal is not free");
  }
  const Matrix& sec = *section;

  ideal_condition("counit does not vanish on the ideal", h.counit() * ideal);
  ideal_condition("comultiplication does not map the ideal into I(x)H + H(x)I",
                  kron(proj, proj) * h.comul() * ideal);
  ideal_condition("antipode does not preserve the ideal", proj * h.antipode() * ideal);

  Matrix mul = proj * h.mul() * kron(sec, sec);
  Matrix unit = proj * h.unit();
  Matrix comul = kron(proj, proj) * h.comul() * sec;
  Matrix counit = h.counit() * sec;
  Matrix s = proj * h.antipode() * sec;
  auto quotient = HopfAlgebraData::make(k, default_basis(q, "q"), std::move(mul), std::move(unit),
                                        std::move(comul), std::move(counit), std::move(s));
  SubgroupData out{g, proj, {std::move(quotient), g.name + "/sub", "subgroup(" + g.provenance + ")"},
                   ideal};
  VerificationReport rep = verify_subgroup(out);
  if (!rep.passed()) fail(ErrorKind::HopfIdealViolation, "quotient check failed:\n" + rep.summary());
  return out;
}

VerificationReport verify_subgroup(const SubgroupData& s) {
  VerificationReport rep;
  rep.merge(verify_hopf_morphism(s.ambient.hopf, s.sub.hopf, s.projection), "projection ");
  rep.merge(verify_hopf(s.sub.hopf), "sub ");
  rep.expect("projection is surjective",
             solve(s.projection, Matrix::identity(s.sub.hopf.ring(), s.sub.hopf.rank())).has_value());
  return rep;
}

bool is_separable(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  if (!k.is_field()) fail(ErrorKind::UnsupportedRing, "is_separable needs a field, got " + k.name());
  const std::size_t d = h.rank();
  // tr(L_{e_m}) for each basis element, then Gram(i, j) = sum_m c_{ij}^m tr(L_{e_m}).
  std::vector<mpq_class> tr(d);
  for (std::size_t m = 0; m < d; ++m) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < d; ++j) acc += h.mul().at(j, m * d + j);
    tr[m] = k.canonical(acc);
  }
  Matrix gram(k, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      mpq_class acc = 0;
      for (std::size_t m = 0; m < d; ++m) acc += h.mul().at(m, i * d + j) * tr[m];
      gram.set(i, j, acc);
    }
  return sgn(determinant(gram)) != 0;
}

MatrixCoefficients::MatrixCoefficients(const HopfAlgebraData& h)
    : d_(h.rank()), table_(h.ring(), h.rank() * h.rank(), h.rank()) {
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k) table_.set(j * d_ + i, k, h.comul().at(j * d_ + k, i));
}

std::vector<mpq_class> MatrixCoefficients::at(std::size_t j, std::size_t i) const {
  auto r = table_.row_span(j * d_ + i);
  return {r.begin(), r.end()};
}

bool MatrixCoefficients::satisfies_counit_identity(const HopfAlgebraData& h) const {
  const RingSpec& k = h.ring();
  for (std::size_t i = 0; i < d_; ++i) {
    std::vector<mpq_class> acc(d_, 0);
    for (std::size_t j = 0; j < d_; ++j) {
      const mpq_class& e = h.counit().at(0, j);
      if (sgn(e) == 0) continue;
      for (std::size_t k2 = 0; k2 < d_; ++k2) acc[k2] += e * table_.at(j * d_ + i, k2);
    }
    for (std::size_t k2 = 0; k2 < d_; ++k2)
      if (k.canonical(acc[k2]) != (k2 == i ? 1 : 0)) return false;
  }
  return true;
}

namespace {

bool parse_size(const std::string& s, std::size_t& out) {
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), ::isdigit)) return false;
  out = std::stoul(s);
  return true;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

GroupSchemeData builtin_group(const std::string& name, const RingSpec& ring) {
  std::size_t n = 0;
  if (starts_with(name, "product:")) {
    auto star = name.find('*');
    if (star == std::string::npos) fail(ErrorKind::Usage, "product:<a>*<b> expected");
    return product(builtin_group(name.substr(8, star - 8), ring),
                   builtin_group(name.substr(star + 1), ring));
  }
  if (name == "klein")
    return constant_group_scheme(direct_product_table(cyclic_table(2), cyclic_table(2)), ring, name);
  if (name == "constant-S3") return constant_group_scheme(symmetric_group_table(3), ring, name);
  if (starts_with(name, "constant-C") && parse_size(name.substr(10), n) && n > 0)
    return constant_group_scheme(cyclic_table(n), ring, name);
  if (starts_with(name, "groupalg-C") && parse_size(name.substr(10), n) && n > 0)
    return {group_algebra(cyclic_table(n), ring), name, "group-algebra(C" + std::to_string(n) + ")"};
  if (starts_with(name, "mu") && parse_size(name.substr(2), n) && n > 0) return mu_n(n, ring);
  if (starts_with(name, "alpha") && parse_size(name.substr(5), n) && n > 1) {
    // n = p^r with p the smallest prime factor.
    std::size_t p = 2;
    while (n % p != 0) ++p;
    std::size_t r = 0, m = n;
    while (m % p == 0) {
      m /= p;
      ++r;
    }
    if (m != 1) fail(ErrorKind::Usage, "alpha<n> needs a prime power n");
    return alpha_pr(mpz_class(static_cast<unsigned long>(p)), r, ring);
  }
  fail(ErrorKind::Usage, "unknown built-in group scheme '" + name + "'");
}

std::vector<std::string> builtin_group_names(const RingSpec& ring) {
  std::vector<std::string> names = {"constant-C1", "constant-C2", "constant-C3", "constant-C4",
                                    "klein",       "constant-S3", "mu2",         "mu3",
                                    "mu4",         "groupalg-C2", "groupalg-C3"};
  if (ring.has_modulus() && is_prime_deterministic(ring.modulus())) {
    const mpz_class& p = ring.modulus();
    if (p == 2) {
      names.push_back("alpha2");
      names.push_back("alpha4");
    } else if (p <= 7) {
      names.push_back("alpha" + p.get_str());
    }
  }
  return names;
}

}  // namespace hopfcoh
