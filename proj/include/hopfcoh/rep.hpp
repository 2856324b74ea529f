#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hopfcoh/hopf.hpp"
#include "hopfcoh/linalg.hpp"
#include "hopfcoh/schemes.hpp"

namespace hopfcoh {

// Right comodule; column v of the coaction holds Delta_V(e_v) in the basis
// e_w (x) c_j, index w * d + j.
struct ComoduleData {
  HopfAlgebraData over;
  std::size_t rank = 0;
  Matrix coaction;  // (m d) x m
};

// Left module; column a * m + x of the action holds a . e_x.
struct ModuleData {
  AlgebraData over;
  std::size_t rank = 0;
  Matrix action;  // m x (d m)
};

struct GAlgebraData {
  ComoduleData comodule;
  Matrix mul;   // m x m^2
  Matrix unit;  // m x 1
};

// Right Hopf module; column x * d + h of the action holds e_x . e_h.
struct HopfModuleData {
  ComoduleData comodule;
  Matrix action;  // m x (m d)
};

ComoduleData make_comodule(const HopfAlgebraData& h, Matrix coaction);
VerificationReport verify_comodule(const ComoduleData& v);
VerificationReport verify_module(const ModuleData& m);
VerificationReport verify_galgebra(const GAlgebraData& a);
VerificationReport verify_hopf_module(const HopfModuleData& m);

ComoduleData trivial_comodule(const HopfAlgebraData& h, std::size_t m);
enum class Side { Left, Right };
ComoduleData regular_representation(const HopfAlgebraData& h, Side side = Side::Right);
// Rank-1 comodule v -> v (x) chi for a grouplike chi.
ComoduleData character_comodule(const HopfAlgebraData& h, std::span<const mpq_class> grouplike);
// First grouplike element other than 1 with all coordinates in {1, -1}
// (lexicographic in the sign pattern), or nothing.
std::optional<std::vector<mpq_class>> sign_character(const HopfAlgebraData& h);
// Diagonal coaction v (x) w -> v0 (x) w0 (x) v1 w1.
ComoduleData tensor_comodule(const ComoduleData& v, const ComoduleData& w);
ComoduleData base_change(const ComoduleData& v, const RingSpec& target);

// Basis of {x : Delta_V(x) = x (x) 1}; over Z a saturated kernel basis.
Matrix invariants(const ComoduleData& v);
// {x : a x = aug(a) x for all a}; needs the augmentation.
Matrix module_invariants(const ModuleData& m);

// The left dual-algebra module f . x = (id (x) f) Delta_V(x) and back.
ModuleData comodule_to_module(const ComoduleData& v);
ComoduleData module_to_comodule(const ModuleData& m, const HopfAlgebraData& h);

// Basis of the smallest subcomodule containing x. Throws InternalConsistency
// when the computed span is not closed under the coaction.
Matrix subcomodule_generated(const ComoduleData& v, std::span<const mpq_class> x);

// Comodule maps V -> W; each column is a map flattened row-major (m_W x m_V).
Matrix comodule_homs(const ComoduleData& v, const ComoduleData& w);

struct HopfModuleStructure {
  Matrix coinvariants;  // m x c
  Matrix retraction;    // m x m, x -> x0 S(x1)
  Matrix rho;           // m x (c d), c (x) h -> c h
  Matrix theta;         // (c d) x m, x -> phi(x0) (x) x1 in coinvariant coordinates
  VerificationReport report;
};
// Throws TheoremViolation when rho and theta fail to be mutually inverse.
HopfModuleStructure hopf_module_structure(const HopfModuleData& m);
// The dual H* with the comodule coming from left convolution and (f.h)(a) = f(a S(h)).
HopfModuleData dual_hopf_module(const HopfAlgebraData& h);
HopfModuleData regular_hopf_module(const HopfAlgebraData& h);
// M' (x) H with coaction id (x) Delta and action id (x) mul.
HopfModuleData free_hopf_module(const HopfAlgebraData& h, std::size_t m);

ComoduleData restrict(const ComoduleData& v, const SubgroupData& sub);
ComoduleData induce(const ComoduleData& w, const SubgroupData& sub);
// The trivial subgroup 1 -> G (projection = counit).
SubgroupData trivial_subgroup(const GroupSchemeData& g);
SubgroupData whole_subgroup(const GroupSchemeData& g);

struct AdjunctionResult {
  ModulePresentation restricted_side;  // Hom^H(res V, W)
  ModulePresentation induced_side;     // Hom^G(V, ind W)
  bool agree() const { return restricted_side == induced_side; }
};
AdjunctionResult adjunction_check(const ComoduleData& v, const ComoduleData& w, const SubgroupData& sub);

}  // namespace hopfcoh
