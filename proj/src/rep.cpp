#include "hopfcoh/rep.hpp"

#include "hopfcoh/error.hpp"

namespace hopfcoh {

namespace {

Matrix id(const RingSpec& k, std::size_t n) { return Matrix::identity(k, n); }

void require_over(const ComoduleData& v, const HopfAlgebraData& h, const char* what) {
  if (!(v.over == h)) fail(ErrorKind::MalformedData, std::string(what) + ": comodule is over a different Hopf algebra");
}

// Splits a vector of W (x) C (index w * d + j) into its C-components y_j in W.
Matrix components(std::span<const mpq_class> y, std::size_t m, std::size_t d, const RingSpec& k) {
  Matrix out(k, m, d);
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t j = 0; j < d; ++j) out.set(w, j, y[w * d + j]);
  return out;
}

// Coaction of a subspace spanned by the columns of `basis`, read off from the
// ambient coaction. Throws when the span is not closed.
Matrix induced_coaction(const Matrix& ambient_coaction, const Matrix& basis, std::size_t d,
                        const char* what) {
  const RingSpec& k = basis.ring();
  const std::size_t m = basis.rows(), r = basis.cols();
  Matrix image = ambient_coaction * basis;
  Matrix out(k, r * d, r);
  for (std::size_t c = 0; c < r; ++c) {
    Matrix parts = components(image.col(c), m, d, k);
    auto coords = solve(basis, parts);
    if (!coords) fail(ErrorKind::InternalConsistency, std::string(what) + ": span is not closed under the coaction");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) out.set(i * d + j, c, coords->at(i, j));
  }
  return out;
}

}  // namespace

ComoduleData make_comodule(const HopfAlgebraData& h, Matrix coaction) {
  const std::size_t d = h.rank();
  if (coaction.cols() == 0 && coaction.rows() != 0)
    fail(ErrorKind::MalformedData, "coaction has no columns");
  const std::size_t m = coaction.cols();
  if (coaction.rows() != m * d)
    fail(ErrorKind::MalformedData, "coaction must have rank * dim(H) rows");
  if (coaction.ring() != h.ring()) fail(ErrorKind::MalformedData, "coaction is over a different ring");
  return {h, m, std::move(coaction)};
}

VerificationReport verify_comodule(const ComoduleData& v) {
  const HopfAlgebraData& h = v.over;
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank(), m = v.rank;
  VerificationReport rep;
  if (v.coaction.rows() != m * d || v.coaction.cols() != m) {
    rep.expect("coaction shape", false, "expected (rank * d) x rank");
    return rep;
  }
  rep.expect_equal("coaction coassociativity", kron(v.coaction, id(k, d)) * v.coaction,
                   kron(id(k, m), h.comul()) * v.coaction);
  rep.expect_equal("coaction counit", kron(id(k, m), h.counit()) * v.coaction, id(k, m));
  return rep;
}

VerificationReport verify_module(const ModuleData& mod) {
  const AlgebraData& a = mod.over;
  const RingSpec& k = a.ring;
  const std::size_t d = a.rank, m = mod.rank;
  VerificationReport rep;
  if (mod.action.rows() != m || mod.action.cols() != d * m) {
    rep.expect("action shape", false, "expected rank x (d * rank)");
    return rep;
  }
  rep.expect_equal("action associativity", mod.action * kron(id(k, d), mod.action),
                   mod.action * kron(a.mul, id(k, m)));
  rep.expect_equal("action unit", mod.action * kron(a.unit, id(k, m)), id(k, m));
  return rep;
}

VerificationReport verify_galgebra(const GAlgebraData& a) {
  const ComoduleData& v = a.comodule;
  const RingSpec& k = v.over.ring();
  VerificationReport rep = verify_comodule(v);
  rep.merge(verify_algebra({k, v.rank, default_basis(v.rank), a.mul, a.unit, std::nullopt}));
  ComoduleData sq = tensor_comodule(v, v);
  rep.expect_equal("multiplication is a comodule map", v.coaction * a.mul,
                   kron(a.mul, id(k, v.over.rank())) * sq.coaction);
  rep.expect_equal("unit is invariant", v.coaction * a.unit, kron(a.unit, v.over.unit()));
  return rep;
}

VerificationReport verify_hopf_module(const HopfModuleData& hm) {
  const ComoduleData& v = hm.comodule;
  const HopfAlgebraData& h = v.over;
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank(), m = v.rank;
  VerificationReport rep = verify_comodule(v);
  if (hm.action.rows() != m || hm.action.cols() != m * d) {
    rep.expect("action shape", false, "expected rank x (rank * d)");
    return rep;
  }
  const Matrix& act = hm.action;
  rep.expect_equal("right action associativity", act * kron(act, id(k, d)),
                   act * kron(id(k, m), h.mul()));
  rep.expect_equal("right action unit", act * kron(id(k, m), h.unit()), id(k, m));
  Matrix regroup = kron(id(k, m), swap_matrix(k, d, d), id(k, d));
  rep.expect_equal("coaction is a module map", v.coaction * act,
                   kron(act, h.mul()) * regroup * kron(v.coaction, h.comul()));
  return rep;
}

ComoduleData trivial_comodule(const HopfAlgebraData& h, std::size_t m) {
  return {h, m, kron(id(h.ring(), m), h.unit())};
}

ComoduleData regular_representation(const HopfAlgebraData& h, Side side) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  if (side == Side::Right) return {h, d, h.comul()};
  return {h, d, swap_matrix(k, d, d) * kron(h.antipode(), id(k, d)) * h.comul()};
}

ComoduleData character_comodule(const HopfAlgebraData& h, std::span<const mpq_class> chi) {
  const RingSpec& k = h.ring();
  Matrix c = Matrix::column(k, chi);
  if (c.rows() != h.rank() || h.comul() * c != kron(c, c) || h.counit() * c != id(k, 1))
    fail(ErrorKind::MalformedData, "character is not grouplike");
  return {h, 1, c};
}

std::optional<std::vector<mpq_class>> sign_character(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  if (d > 16) return std::nullopt;
  Matrix one = h.unit();
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    Matrix c(k, d, 1);
    for (std::size_t i = 0; i < d; ++i) c.set(i, 0, (mask >> i) & 1 ? -1 : 1);
    if (c == one) continue;
    if (h.counit() * c == id(k, 1) && h.comul() * c == kron(c, c)) return c.col(0);
  }
  return std::nullopt;
}

ComoduleData tensor_comodule(const ComoduleData& v, const ComoduleData& w) {
  if (!(v.over == w.over)) fail(ErrorKind::MalformedData, "tensor of comodules over different Hopf algebras");
  const HopfAlgebraData& h = v.over;
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  // (v0, a, w0, b) -> (v0, w0, a, b) -> (v0, w0, ab)
  Matrix regroup = kron(id(k, v.rank), swap_matrix(k, d, w.rank), id(k, d));
  Matrix coaction = kron(id(k, v.rank * w.rank), h.mul()) * regroup * kron(v.coaction, w.coaction);
  return {h, v.rank * w.rank, std::move(coaction)};
}

ComoduleData base_change(const ComoduleData& v, const RingSpec& target) {
  return {base_change(v.over, target), v.rank, v.coaction.map_ring(target)};
}

Matrix invariants(const ComoduleData& v) {
  const RingSpec& k = v.over.ring();
  return kernel_basis(v.coaction - kron(id(k, v.rank), v.over.unit()));
}

Matrix module_invariants(const ModuleData& mod) {
  const AlgebraData& a = mod.over;
  if (!a.augmentation) fail(ErrorKind::MalformedData, "module invariants need an augmented algebra");
  const RingSpec& k = a.ring;
  const std::size_t d = a.rank, m = mod.rank;
  // Stack (L_a - aug(a) I) over all basis elements a.
  Matrix stacked(k, d * m, m);
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t x = 0; x < m; ++x) {
        mpq_class val = mod.action.at(i, e * m + x);
        if (i == x) val -= a.augmentation->at(0, e);
        stacked.set(e * m + i, x, val);
      }
  return kernel_basis(stacked);
}

ModuleData comodule_to_module(const ComoduleData& v) {
  const HopfAlgebraData dual = dual_hopf(v.over);
  const std::size_t d = v.over.rank(), m = v.rank;
  Matrix action(v.over.ring(), m, d * m);
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t x = 0; x < m; ++x) action.set(w, j * m + x, v.coaction.at(w * d + j, x));
  return {dual.algebra(), m, std::move(action)};
}

ComoduleData module_to_comodule(const ModuleData& mod, const HopfAlgebraData& h) {
  const std::size_t d = h.rank(), m = mod.rank;
  if (mod.over.rank != d) fail(ErrorKind::MalformedData, "module is not over the dual of the given Hopf algebra");
  Matrix coaction(h.ring(), m * d, m);
  for (std::size_t w = 0; w < m; ++w)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t x = 0; x < m; ++x) coaction.set(w * d + j, x, mod.action.at(w, j * m + x));
  return {h, m, std::move(coaction)};
}

Matrix subcomodule_generated(const ComoduleData& v, std::span<const mpq_class> x) {
  const RingSpec& k = v.over.ring();
  const std::size_t d = v.over.rank();
  if (x.size() != v.rank) fail(ErrorKind::MalformedData, "vector does not live in the comodule");
  Matrix basis = span_basis(components(v.coaction.apply(x), v.rank, d, k));
  // Closure and membership of x.
  induced_coaction(v.coaction, basis, d, "subcomodule_generated");
  if (!solve(basis, Matrix::column(k, x)))
    fail(ErrorKind::InternalConsistency, "subcomodule_generated: generator not in its own span");
  return basis;
}

Matrix comodule_homs(const ComoduleData& v, const ComoduleData& w) {
  if (!(v.over == w.over)) fail(ErrorKind::MalformedData, "Hom between comodules over different Hopf algebras");
  const RingSpec& k = v.over.ring();
  const std::size_t d = v.over.rank(), mv = v.rank, mw = w.rank;
  // Column (i, c) of the system is Delta_W E_ic - (E_ic (x) 1) Delta_V, flattened.
  Matrix system(k, mw * d * mv, mw * mv);
  Matrix idd = id(k, d);
  for (std::size_t i = 0; i < mw; ++i)
    for (std::size_t c = 0; c < mv; ++c) {
      Matrix e(k, mw, mv);
      e.set(i, c, 1);
      Matrix diff = w.coaction * e - kron(e, idd) * v.coaction;
      for (std::size_t r = 0; r < mw * d; ++r)
        for (std::size_t s = 0; s < mv; ++s) system.set(r * mv + s, i * mv + c, diff.at(r, s));
    }
  return kernel_basis(system);
}

HopfModuleStructure hopf_module_structure(const HopfModuleData& hm) {
  const ComoduleData& v = hm.comodule;
  const HopfAlgebraData& h = v.over;
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank(), m = v.rank;
  HopfModuleStructure out;
  out.coinvariants = invariants(v);
  const std::size_t c = out.coinvariants.cols();
  out.retraction = hm.action * kron(id(k, m), h.antipode()) * v.coaction;
  auto coords = solve(out.coinvariants, out.retraction);
  out.report.expect("retraction lands in coinvariants", coords.has_value());
  if (!coords) fail(ErrorKind::TheoremViolation, "Hopf module retraction leaves the coinvariants");
  out.report.expect_equal("retraction fixes coinvariants", out.retraction * out.coinvariants,
                          out.coinvariants);
  out.rho = hm.action * kron(out.coinvariants, id(k, d));
  out.theta = kron(*coords, id(k, d)) * v.coaction;
  out.report.expect_equal("rho theta = id", out.rho * out.theta, id(k, m));
  out.report.expect_equal("theta rho = id", out.theta * out.rho, id(k, c * d));
  if (!out.report.passed())
    fail(ErrorKind::TheoremViolation, "Hopf module structure maps are not inverse:\n" + out.report.summary());
  return out;
}

HopfModuleData dual_hopf_module(const HopfAlgebraData& h) {
  const RingSpec& k = h.ring();
  const std::size_t d = h.rank();
  // Left convolution f_a * f_b has coordinates Delta(e_w)[a, b]; its comodule
  // has Delta(f_x) = sum_{w, j} Delta(e_w)[j, x] f_w (x) e_j.
  Matrix coaction(k, d * d, d);
  for (std::size_t w = 0; w < d; ++w)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t x = 0; x < d; ++x) coaction.set(w * d + j, x, h.comul().at(j * d + x, w));
  // (f_x . e_h)(e_w) = f_x(e_w S(e_h)).
  Matrix ms = h.mul() * kron(id(k, d), h.antipode());
  Matrix action(k, d, d * d);
  for (std::size_t w = 0; w < d; ++w)
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t hh = 0; hh < d; ++hh) action.set(w, x * d + hh, ms.at(x, w * d + hh));
  return {{h, d, std::move(coaction)}, std::move(action)};
}

HopfModuleData regular_hopf_module(const HopfAlgebraData& h) {
  return {{h, h.rank(), h.comul()}, h.mul()};
}

HopfModuleData free_hopf_module(const HopfAlgebraData& h, std::size_t m) {
  const RingSpec& k = h.ring();
  return {{h, m * h.rank(), kron(id(k, m), h.comul())}, kron(id(k, m), h.mul())};
}

ComoduleData restrict(const ComoduleData& v, const SubgroupData& sub) {
  require_over(v, sub.ambient.hopf, "restrict");
  const RingSpec& k = v.over.ring();
  return {sub.sub.hopf, v.rank, kron(id(k, v.rank), sub.projection) * v.coaction};
}

ComoduleData induce(const ComoduleData& w, const SubgroupData& sub) {
  require_over(w, sub.sub.hopf, "induce");
  const HopfAlgebraData& g = sub.ambient.hopf;
  const HopfAlgebraData& hs = sub.sub.hopf;
  const RingSpec& k = g.ring();
  const std::size_t d = g.rank(), e = hs.rank(), m = w.rank;
  // H acts on k[G] by left translation: w (x) x -> w0 (x) x2 (x) w1 pi(S(x1)).
  Matrix step = kron(kron(id(k, m * e), sub.projection * g.antipode()), id(k, d)) *
                kron(w.coaction, g.comul());
  Matrix regroup = kron(id(k, m), swap_matrix(k, e * e, d));
  Matrix h_coaction = kron(id(k, m * d), hs.mul()) * regroup * step;
  Matrix inv = kernel_basis(h_coaction - kron(id(k, m * d), hs.unit()));
  Matrix g_coaction = kron(id(k, m), g.comul());
  if (inv.cols() == 0) return {g, 0, Matrix(k, 0, 0)};
  return {g, inv.cols(), induced_coaction(g_coaction, inv, d, "induce")};
}

SubgroupData trivial_subgroup(const GroupSchemeData& g) {
  const RingSpec& k = g.hopf.ring();
  HopfAlgebraData one = HopfAlgebraData::make(k, {"1"}, id(k, 1), id(k, 1), id(k, 1), id(k, 1), id(k, 1));
  return {g, g.hopf.counit(), {one, "trivial", "trivial"}, kernel_basis(g.hopf.counit())};
}

SubgroupData whole_subgroup(const GroupSchemeData& g) {
  const RingSpec& k = g.hopf.ring();
  return {g, id(k, g.hopf.rank()), g, Matrix(k, g.hopf.rank(), 0)};
}

AdjunctionResult adjunction_check(const ComoduleData& v, const ComoduleData& w, const SubgroupData& sub) {
  ComoduleData res = restrict(v, sub);
  ComoduleData ind = induce(w, sub);
  Matrix lhs = comodule_homs(res, w);
  Matrix rhs = comodule_homs(v, ind);
  const RingSpec& k = v.over.ring();
  AdjunctionResult out;
  out.restricted_side = subquotient(lhs.rows(), lhs, Matrix(k, lhs.rows(), 0));
  out.induced_side = subquotient(rhs.rows(), rhs, Matrix(k, rhs.rows(), 0));
  return out;
}

}  // namespace hopfcoh
