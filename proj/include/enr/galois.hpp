#pragma once

#include "enr/arith.hpp"
#include "enr/lattice.hpp"

namespace enr {

// One radical-flip generator as matched matrix images on the two Picard
// models.  twist[i] is set when the i-th basis curve (D1, C1..C9) maps to a
// twisted curve, i.e. the image picks up the torsion class.  on_Num acts on
// the unimodular saturation of the curve span; the saturation by half of
// C1+...+C9 is the one whose extra class pulls back into the cover's Picard
// lattice, so that is the model used.
struct GenMatrices {
  std::string name;
  CurveAction act;
  Mat on_Lp{0, 0};   // 15x15, fine basis of the cover-side saturation
  Mat on_M{0, 0};    // 10x10, curve basis (D1, C1..C9)
  Mat on_Num{0, 0};  // 10x10, fine basis of the quotient-side saturation
  std::array<int, 10> twist{};
};
std::vector<GenMatrices> generator_matrices(const Triplet &t, u64 p = 0);

// the covering map's pullback between the fine bases: 15x10, doubling the
// pairing, with D1 -> G1 and C_i -> F_i on the curve classes
Mat pullback_matrix();

// breadth-first closure of the label-permutation images
struct GroupClosure {
  std::vector<CurveAction> elements;  // identity first
  u64 order = 0;        // of the two-sided image
  u64 order_on_Lp = 0;  // of the cover-side image alone
};
GroupClosure group_closure(const std::vector<CurveAction> &gens);

// invariant sublattice: kernel of the stacked (g - 1), columns form a basis
Mat invariant_lattice(const std::vector<Mat> &gens);
// invariants of the mod-2 reductions
int mod2_invariant_dim(const std::vector<Mat> &gens);
bool is_mod2_invariant(const std::vector<Mat> &gens, const std::vector<i128> &v);

// H1(G, Z^n)[m] for a 2-power m, through (A/mA)^G / (A^G / m A^G)
QuotientStructure h1_torsion(const std::vector<Mat> &gens, i128 m);
// doubles m until the order stabilizes; the full (finite) H1
QuotientStructure h1_full(const std::vector<Mat> &gens);
// direct 1-cocycle / 1-coboundary computation over a full element list
QuotientStructure h1_cocycles(const std::vector<Mat> &elements);

// the rank-10-plus-torsion Picard model of the quotient surface
struct PicStructureReport {
  int num_invariant_rank = 0;          // want 1
  bool num_generator_is_ruling_sum = false;  // generated by [C1 + D1]
  bool lift_invariant = false;         // that class lifts to an invariant one
  bool h1_num_trivial = false;         // collapses the long exact sequence
  bool relations_hold = false;         // C_i + D_i = Ct_j + Dt_j in the model
  bool compatible_with_pullback = false;
  bool ok() const {
    return num_invariant_rank == 1 && num_generator_is_ruling_sum && lift_invariant &&
           h1_num_trivial && relations_hold && compatible_with_pullback;
  }
};
PicStructureReport verify_pic_structure(const Triplet &t, u64 p = 0);

// evidence that the splitting field is as large as possible
enum class GGVerdict { certified, refuted, inconclusive };
struct NormCheck {
  std::string name;
  Rational norm;
  bool nonsquare = false;
};
struct GaloisGeneralEvidence {
  GGVerdict verdict = GGVerdict::inconclusive;
  bool square_classes_independent = false;
  std::string dependency;              // product that is a square, when refuted
  std::vector<NormCheck> norm_checks;  // nested radicands against their subfields
  u64 subgroup_order = 0;              // reached by sampled Frobenius elements
  int primes_used = 0;
};
GaloisGeneralEvidence galois_general_certificate(const Triplet &t, int effort);

}  // namespace enr
