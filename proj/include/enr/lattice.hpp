#pragma once

#include "enr/curves.hpp"
#include "enr/matrix.hpp"

namespace enr {

// Exact integral lattice: symmetric Gram matrix plus basis labels.  Every
// lattice handled here is even (all self-intersections even).
struct IntLattice {
  std::vector<std::string> labels;
  Mat gram{0, 0};

  int rank() const { return gram.rows; }
  i128 det() const;                   // signed determinant
  i128 disc() const;                  // |det|
  bool is_even() const;
  i128 pair(const std::vector<i128> &x, const std::vector<i128> &y) const;
};

// quotient Z^n / row span, from the Smith normal form
struct QuotientStructure {
  std::vector<i128> divisors;  // elementary divisors > 1, divisibility chain
  int free_rank = 0;
  i128 order() const;          // torsion order (0 when the quotient is infinite)
  std::string str() const;     // "Z/2 + Z/4" style
};
QuotientStructure smith_quotient(const Mat &m);

// solve B^T x = target over the integers (B rows = basis vectors)
bool express_in_basis(const Mat &B, const std::vector<i128> &target, std::vector<i128> *coords);

// rank-15 sublattice spanned by the fibration classes, basis (G1,F1..F14);
// G_i = (F1+G1) - F_i for i >= 2 keeps the rank at 15
IntLattice build_L();
std::vector<i128> y_class_in_L(int ylabel);

// a finer lattice with its own integer basis, carried as doubled coordinates
// in the coarse basis (entries of basis2 are twice the rational coordinates)
struct LatticeExt {
  IntLattice coarse;
  IntLattice fine;
  Mat basis2{0, 0};  // rows: fine basis vectors, doubled coarse coordinates
  i128 index = 0;    // [fine : coarse]

  // membership of a half-integer class given by doubled coarse coordinates
  bool contains2(const std::vector<i128> &doubled) const;
  // same input, coordinates in the fine basis; throws when not a member
  std::vector<i128> fine_coords(const std::vector<i128> &doubled) const;
};

// the saturation of L: four half-integer classes adjoined, discriminant 2^9
LatticeExt build_Lprime();

// rank-10 curve lattice on the quotient surface, basis (D1,C1..C9), and its
// index-2 extension by R with 2R = C1+..+C9 or D1+C2+..+C9
enum class RCase { sumC, sumD };
struct NumXBuild {
  RCase rc;
  IntLattice M;         // disc 4
  LatticeExt ext;       // coarse = M, fine = the extension, disc 1
  i128 r_square = 0;
  bool even = false, unimodular = false;
  Inertia sig;
};
NumXBuild build_M_and_NumX(RCase rc);
std::vector<i128> x_class_in_M(int xlabel);  // numerical class, torsion dropped

// permutations of fibration classes as lattice maps; both assert linearity
// (the permutation must respect the relations G_i = h - F_i) and that the
// result preserves the Gram matrix
Mat y_perm_matrix_L(const std::array<int, kNY> &perm);
Mat x_perm_matrix_M(const std::array<int, kNX> &perm);
// rewrite an endomorphism of the coarse lattice in the fine basis; asserts
// the fine lattice is preserved
Mat to_fine_basis(const LatticeExt &E, const Mat &on_coarse);

// the nontrivial deck transformation of the double cover on Pic of the cover
struct SigmaAction {
  std::array<int, kNY> perm{};
  Mat on_L{0, 0};   // basis (G1,F1..F14)
  Mat on_Lp{0, 0};  // integer basis of the saturation
};
SigmaAction sigma_action(const Triplet &t, u64 p = 0);

struct PullbackReport {
  bool pairings_doubled = false;
  i128 h_self = 0;       // image of C1+D1 squared
  int fixed_rank = 0;    // rank of the sigma-fixed sublattice of the saturation
  bool ok() const { return pairings_doubled && h_self == 8 && fixed_rank == 10; }
};
PullbackReport pullback_check(const Triplet &t, u64 p = 0);

// no class in the (-1)-eigenlattice of sigma has self-intersection 2 mod 4
// (the condition that makes the pullback of Brauer classes injective)
bool beauville_criterion(const Mat &gram, const Mat &sigma);
bool beauville_for_surface(const Triplet &t, u64 p = 0);

}  // namespace enr
