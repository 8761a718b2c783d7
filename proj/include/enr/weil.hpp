#pragma once

#include "enr/counting.hpp"
#include "enr/galois.hpp"

namespace enr {

// Monic integer polynomial of degree 22 with all root moduli p: the
// characteristic polynomial of Frobenius on middle cohomology of the cover's
// reduction.  sign is the epsilon in p^22 psi(T) = epsilon T^22 psi(p^2/T).
struct WeilPolynomial {
  u64 p = 0;
  IntPoly psi;
  int sign = 0;

  // psi~(T) = p^{-22} psi(pT), coefficients low to high
  std::vector<Rational> normalized() const;
};

// Frobenius as an isometry of the cover's Picard lattice, fine basis.
struct FrobeniusAction {
  u64 p = 0;
  Mat matrix{0, 0};
  IntPoly cp;                    // characteristic polynomial, monic degree 15
  IntPoly known_factor() const;  // p^15 cp(T/p), a monic degree-15 factor of psi
};

// t_i = N_i - 1 - p^{2i}; four counts, or five when the extra one is wanted
// for sign disambiguation.  Enforces |t_i| <= 22 p^{2i}.
std::vector<i128> power_sums_from_counts(const std::vector<u64> &counts, u64 p);

// Label permutation of x -> x^p on the fibration classes, as a lattice
// isometry.  Throws when p divides one of the construction's denominators.
FrobeniusAction frobenius_action(const Triplet &t, u64 p);

// Newton's identities close the four leading coefficients; division by the
// known factor leaves a degree-7 cofactor whose tail is determined by the
// functional equation up to sign, and the fourth power sum usually pins the
// sign.  Candidates survive only if integral with every root modulus p
// (1e-6 relative).  A fifth power sum, when present, filters the survivors.
std::vector<WeilPolynomial> reconstruct(const std::vector<i128> &power_sums,
                                        const FrobeniusAction &known, u64 p);

// power sums of the candidate's roots, for idempotence checks and count
// regeneration
std::vector<i128> weil_power_sums(const WeilPolynomial &w, int upto);

// multiplicity-weighted count of roots of the form p * (root of unity),
// by exact trial division (cyclotomic index up to 1000)
int unit_root_count(const WeilPolynomial &w);

// squarefree class of |Delta|: lim_{T->p} psi(T)/(T-p)^rank over p^{21-rank},
// where rank must be the exact multiplicity of T = p
i128 artin_tate_disc_class(const WeilPolynomial &w, int rank);

// two unit-root bounds sharpen by one when the discriminant classes differ
int rank_bound(i128 class7, i128 class11, int bound7, int bound11);

}  // namespace enr
