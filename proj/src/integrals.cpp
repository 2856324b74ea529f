#include "hopfcoh/integrals.hpp"

#include <map>
#include <sstream>

#include "hopfcoh/error.hpp"

namespace hopfcoh {

namespace {

Matrix id(const RingSpec& k, std::size_t n) { return Matrix::identity(k, n); }

std::vector<mpq_class> unit_vec(std::size_t d, std::size_t i) {
  std::vector<mpq_class> v(d);
  v[i] = 1;
  return v;
}

// Left multiplication by x in an algebra given by its structure constants.
Matrix left_mult(const Matrix& mul, std::span<const mpq_class> x) {
  const std::size_t d = mul.rows();
  return mul * kron(Matrix::column(mul.ring(), x), id(mul.ring(), d));
}

std::string vec_string(std::span<const mpq_class> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace

Matrix left_integrals(const AlgebraData& a) {
  if (!a.augmentation) fail(ErrorKind::MalformedData, "left integrals need an augmentation");
  const RingSpec& k = a.ring;
  const std::size_t d = a.rank;
  Matrix sys;
  for (std::size_t b = 0; b < d; ++b) {
    Matrix block = left_mult(a.mul, unit_vec(d, b)) - id(k, d).scaled(a.augmentation->at(0, b));
    sys = b == 0 ? block : sys.vcat(block);
  }
  if (d == 0) return Matrix(k, 0, 0);
  return kernel_basis(sys);
}

Matrix dual_coinvariants(const HopfAlgebraData& h) {
  Matrix c = invariants(dual_hopf_module(h).comodule);
  if (c.cols() != 1)
    fail(ErrorKind::TheoremViolation,
         "coinvariants of the dual have rank " + std::to_string(c.cols()) + ", expected 1");
  return c;
}

Matrix functional_action(const HopfAlgebraData& h, std::span<const mpq_class> x) {
  return h.right_mult(x).transpose();
}

FrobeniusData frobenius_isomorphism(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  auto s_inv = inverse(h.antipode());
  if (!s_inv) fail(ErrorKind::TheoremViolation, "antipode is not invertible");
  dual_coinvariants(h);
  HopfModuleStructure st = hopf_module_structure(dual_hopf_module(h));
  FrobeniusData out{h, {}, st.rho * *s_inv, {}, {}};
  out.psi = (out.phi * h.unit()).col(0);
  VerificationReport& rep = out.report;
  auto phi_inv = inverse(out.phi);
  rep.expect("Phi is invertible", phi_inv.has_value());
  for (std::size_t b = 0; b < d; ++b) {
    auto e = unit_vec(d, b);
    rep.expect_equal("Phi is left linear for e" + std::to_string(b), out.phi * h.left_mult(e),
                     functional_action(h, e) * out.phi);
  }
  if (phi_inv) {
    out.norm = (*phi_inv * h.counit().transpose()).col(0);
    rep.expect_equal("N . psi = counit", functional_action(h, out.norm) * Matrix::column(k, out.psi),
                     h.counit().transpose());
    Matrix n = Matrix::column(k, out.norm);
    for (std::size_t b = 0; b < d; ++b) {
      auto e = unit_vec(d, b);
      rep.expect_equal("N is a left integral against e" + std::to_string(b), h.left_mult(e) * n,
                       n.scaled(h.counit().at(0, b)));
    }
  }
  if (!rep.passed()) fail(ErrorKind::TheoremViolation, "Frobenius data inconsistent:\n" + rep.summary());
  return out;
}

TraceData trace_map(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  Matrix tr(k, 1, d);
  for (std::size_t b = 0; b < d; ++b) {
    Matrix l = h.left_mult(unit_vec(d, b));
    mpq_class t = 0;
    for (std::size_t i = 0; i < d; ++i) t += l.at(i, i);
    tr.set(0, b, t);
  }
  TraceData out{h, tr, {}};
  out.report.expect_equal("trace of the unit is the rank", tr * h.unit(),
                          Matrix::from_rows(k, {{static_cast<long>(d)}}));
  out.report.expect_equal("trace is a comodule map", kron(tr, id(k, d)) * h.comul(), h.unit() * tr);
  if (!out.report.passed()) fail(ErrorKind::TheoremViolation, "trace identities fail:\n" + out.report.summary());
  return out;
}

bool TorsionCertificate::passed() const {
  for (const auto& e : evidence)
    if (!e.annihilated) return false;
  return true;
}

TorsionCertificate bounded_torsion_certificate(
    const HopfAlgebraData& g, const std::vector<std::pair<std::string, ComoduleData>>& modules,
    std::size_t nmax) {
  if (g.ring().kind() != RingKind::Integers)
    fail(ErrorKind::UnsupportedRing, "the torsion certificate is computed over Z");
  TorsionCertificate cert;
  cert.exponent = g.rank();
  cert.justification =
      "trace: tr o eta is multiplication by rank k[G] on the trivial comodule and tr is a comodule map, "
      "so rank k[G] kills H^i for i > 0; evidence = invariant factors";
  trace_map(g);  // the identities behind the justification
  for (const auto& [name, m] : modules) {
    TorsionEvidence ev{name, {}, true};
    // A Z/n comodule keeps its base ring; its groups are Z/n-modules.
    Cohomology coh(m, nmax, HomologyGroup::Mode::PresentationOnly);
    for (std::size_t i = 1; i <= nmax; ++i) {
      const ModulePresentation& p = coh.presentation(i);
      ev.groups.push_back(p);
      bool ok = true;
      if (p.free_rank > 0) {
        // Free summands over Z/q are killed exactly when q divides the exponent.
        ok = p.ring.has_modulus() && cert.exponent % p.ring.modulus() == 0;
      }
      for (const auto& f : p.invariant_factors) ok = ok && cert.exponent % f == 0;
      ev.annihilated = ev.annihilated && ok;
    }
    cert.evidence.push_back(std::move(ev));
  }
  if (!cert.passed()) {
    std::string bad;
    for (const auto& e : cert.evidence)
      if (!e.annihilated) bad += " " + e.module;
    fail(ErrorKind::TheoremViolation, "rank of k[G] does not kill the cohomology of" + bad);
  }
  return cert;
}

bool PowerSurjectivityReport::conclusive() const {
  for (const auto& h : hits)
    if (!h.exponent) return false;
  return true;
}

PowerSurjectivityReport power_surjectivity_check(const GAlgebraData& a, const GAlgebraData& b,
                                                 const Matrix& f, std::size_t e_max) {
  const ComoduleData& va = a.comodule;
  const ComoduleData& vb = b.comodule;
  if (!(va.over == vb.over)) fail(ErrorKind::MalformedData, "algebras over different group schemes");
  const RingSpec& k = va.over.ring();
  const std::size_t d = va.over.rank();
  if (f.rows() != vb.rank || f.cols() != va.rank) fail(ErrorKind::MalformedData, "map has the wrong shape");
  if (!verify_galgebra(a).passed() || !verify_galgebra(b).passed())
    fail(ErrorKind::MalformedData, "source or target is not a G-algebra");
  if (f * a.mul != b.mul * kron(f, f) || f * a.unit != b.unit ||
      kron(f, id(k, d)) * va.coaction != vb.coaction * f)
    fail(ErrorKind::MalformedData, "map is not a map of G-algebras");

  Matrix inv_a = invariants(va);
  Matrix image = f * inv_a;
  Matrix inv_b = invariants(vb);
  PowerSurjectivityReport rep;
  for (std::size_t j = 0; j < inv_b.cols(); ++j) {
    PowerHit hit{inv_b.col(j), std::nullopt, {}, {}};
    Matrix power = Matrix::column(k, hit.invariant);
    for (std::size_t e = 1; e <= e_max; ++e) {
      if (e > 1) power = b.mul * kron(power, Matrix::column(k, hit.invariant));
      std::optional<Matrix> x = image.cols() ? solve(image, power) : std::nullopt;
      if (image.cols() == 0 && power.is_zero()) x = Matrix(k, 0, 1);
      if (x) {
        hit.exponent = e;
        hit.preimage = inv_a.cols() ? (inv_a * *x).col(0) : std::vector<mpq_class>(va.rank);
        hit.witness = "t^" + std::to_string(e) + " - f" + vec_string(hit.preimage);
        break;
      }
    }
    rep.hits.push_back(std::move(hit));
  }
  return rep;
}

std::vector<std::vector<std::size_t>> monomial_basis(std::size_t m, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(m, 0);
  // Lexicographic with larger powers of earlier variables first.
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (m == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    if (i + 1 == m) {
      cur[i] = left;
      out.push_back(cur);
      cur[i] = 0;
      return;
    }
    for (std::size_t e = left + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

ComoduleData symmetric_power(const ComoduleData& v, std::size_t deg) {
  const HopfAlgebraData& h = v.over;
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank(), m = v.rank;
  if (!h.commutative()) fail(ErrorKind::MalformedData, "symmetric powers need a commutative k[G]");
  auto basis = monomial_basis(m, deg);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  Matrix coaction(k, basis.size() * d, basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    // Product of the coactions of the factors, as (exponents, element of H).
    std::map<std::vector<std::size_t>, std::vector<mpq_class>> acc;
    std::vector<mpq_class> one = h.unit().col(0);
    acc[std::vector<std::size_t>(m, 0)] = one;
    for (std::size_t var = 0; var < m; ++var)
      for (std::size_t rep = 0; rep < basis[col][var]; ++rep) {
        std::map<std::vector<std::size_t>, std::vector<mpq_class>> next;
        for (const auto& [mono, hv] : acc)
          for (std::size_t j = 0; j < m; ++j) {
            std::vector<mpq_class> c(d);
            bool any = false;
            for (std::size_t t = 0; t < d; ++t) {
              c[t] = v.coaction.at(j * d + t, var);
              any = any || sgn(c[t]) != 0;
            }
            if (!any) continue;
            auto prod = h.product(hv, c);
            auto key = mono;
            ++key[j];
            auto& slot = next[key];
            if (slot.empty()) slot.assign(d, 0);
            for (std::size_t t = 0; t < d; ++t) slot[t] = k.canonical(slot[t] + prod[t]);
          }
        acc = std::move(next);
      }
    for (const auto& [mono, hv] : acc) {
      const std::size_t row = index.at(mono);
      for (std::size_t t = 0; t < d; ++t)
        if (sgn(hv[t]) != 0) coaction.set(row * d + t, col, hv[t]);
    }
  }
  return make_comodule(h, coaction);
}

PowerReductivity power_reductivity_witness(const ComoduleData& v, const Matrix& phi, std::size_t d_max) {
  const HopfAlgebraData& h = v.over;
  const RingSpec& k = h.ring();
  if (phi.rows() != 1 || phi.cols() != v.rank) fail(ErrorKind::MalformedData, "phi must be a 1 x m row");
  if (kron(phi, id(k, h.rank())) * v.coaction != h.unit() * phi)
    fail(ErrorKind::MalformedData, "phi is not a map onto the trivial comodule");
  if (!solve(phi, id(k, 1))) fail(ErrorKind::MalformedData, "phi is not surjective");
  PowerReductivity out;
  for (std::size_t deg = 1; deg <= d_max; ++deg) {
    auto basis = monomial_basis(v.rank, deg);
    Matrix sd_phi(k, 1, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      mpq_class val = 1;
      for (std::size_t var = 0; var < v.rank; ++var)
        for (std::size_t e = 0; e < basis[i][var]; ++e) val *= phi.at(0, var);
      sd_phi.set(0, i, val);
    }
    Matrix inv = invariants(symmetric_power(v, deg));
    Matrix images = inv.cols() ? sd_phi * inv : Matrix(k, 1, 0);
    out.images.emplace_back(images.row_span(0).begin(), images.row_span(0).end());
    if (images.cols() && solve(images, id(k, 1))) {
      out.degree = deg;
      break;
    }
  }
  return out;
}

}  // namespace hopfcoh
