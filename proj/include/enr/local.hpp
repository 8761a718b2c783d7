#pragma once

#include <optional>

#include "enr/arith.hpp"
#include "enr/surface.hpp"

namespace enr {

// One projective coordinate written as mult * sqrt(rad).
struct RadCoord {
  Rational mult{0};
  Rational rad{1};
  bool is_zero() const { return mult == Rational(0) || rad == Rational(0); }
};

// (s : t : u : x : y : z)
using RadPoint = std::array<RadCoord, 6>;

std::string radpoint_str(const RadPoint &pt);

enum class Verdict { solvable, empty, unknown };

struct PlaceReport {
  i64 place = 0;  // prime, or 0 for the real place
  Verdict verdict = Verdict::unknown;
  // weil-threshold | hensel | explicit-witness | positivity | anisotropy |
  // congruence-lemma | enumeration
  std::string certificate;
  std::string detail;
  std::array<u64, 6> fp_point{};  // mod-p witness when certificate is hensel
  bool solvable() const { return verdict == Verdict::solvable; }
};

// d < 0: the right sides of the three equations are a nonnegative quadric in
// (x,y,z) pinned against d times squares, so every coordinate vanishes.
// d > 0: exhibits (2/sqrt(d) : 2/sqrt(5d) : sqrt((a+b+c)/d) : 1 : -1 : 1) and
// checks it exactly.
bool real_points_empty(const Triplet &t, i64 d);

// Exact check that a radical point lies on the d-twist and every radicand is
// a square in Q_p (p = 0 is the real place).  x and y must be rational; the
// other coordinates appear only squared in the equations.
bool verify_explicit_point(const RadPoint &pt, const Triplet &t, i64 d, u64 p);

// Stored 2-, 3- and 5-adic witnesses for the reference coefficients
// (12,111,13), d = 1.
RadPoint stored_witness(u64 p);

// All primitive solutions of the d-twist mod p^2, each scaled so its first
// unit coordinate is 1.  Exhaustive for p <= 23; an empty list proves there
// is no Q_p point when p | d (a Q_p point scales to a primitive one).
std::vector<std::array<u64, 6>> zp2_points(const Triplet &t, i64 d, u64 p);

// The two-branch congruence argument mod p for p | d, p not 2 or 5.  Reducing
// the three quadrics mod p kills the left sides; the middle one splits into
// x = -y and x = -2y.  Each branch leaves a 2x2 system in (y^2, z^2) that is
// either nondegenerate or, when p divides the coupling constant, forced to
// the trivial solution by a quadratic nonresidue.  True means every primitive
// vector dies mod p^2.
bool congruence_certificate(const Triplet &t, u64 p);

// Canonical representatives (first unit coordinate scaled to 1) of the
// projective solutions of the d-twist mod p, found by joining the two
// variable blocks on the values of the three quadrics.  p <= 23.
std::vector<std::array<u64, 6>> modp_solutions(const Triplet &t, i64 d, u64 p);

// Smooth point of the d-twist over F_p with s, t, u all nonzero, found by
// scanning (x : y : z) for three simultaneous square residues.  Odd p not
// dividing 10d.  The (s,t,u) Jacobian block is then a unit times stu, so the
// point is smooth and lifts.
std::optional<std::array<u64, 6>> smooth_fp_point(const Triplet &t, i64 d, u64 p);

// Reproducible spread of solutions mod p^k: each one grown digit by digit
// from a mod-p class, with the branching choices drawn from the seed.  Every
// returned tuple carries a 3x3 Jacobian minor of valuation v with 2v < k, so
// an exact p-adic point agrees with it to precision k - v.  At most n tuples.
std::vector<std::array<u64, 6>> padic_samples(const Triplet &t, i64 d, u64 p, int k, int n,
                                              u64 seed);

// Digit-by-digit exhaustive lift search.  Explores primitive solution classes
// mod p^k; a node with a 3x3 Jacobian minor of valuation v <= (k-1)/2
// certifies an exact p-adic solution (Newton from that precision), and a
// frontier that dies out with no caps hit proves emptiness.  p <= 23.
struct DigitSearch {
  Verdict verdict = Verdict::unknown;
  std::array<u64, 6> point{};  // residues mod p^level when solvable
  int level = 0;
  int minor_valuation = 0;
  bool exhaustive = false;  // empty verdicts only: every branch was explored
};
DigitSearch digit_search(const Triplet &t, i64 d, u64 p, int effort = 1);

// Does the 3x6 Jacobian of the twist have rank 3 at this F_p point?
bool fp_point_smooth(const Triplet &t, i64 d, u64 p, const std::array<u64, 6> &pt);

// Strategy ladder for the d-twist over Q_p (p = 0 is the real place):
// positivity / anisotropy of the diagonal quadric / the congruence argument
// for p | d / Weil threshold for good p >= 23 / smooth-point search plus
// Hensel / exhaustive digit-by-digit search to a precision that certifies a
// lift or exhausts every branch.  effort scales the search caps.
PlaceReport qp_points(const Triplet &t, i64 d, u64 p, int effort = 1);

struct Conditions14 {
  bool c1 = false;  // 5 a nonresidue at every odd prime dividing 5a+5b+c
  bool c2 = false;  // 10 a nonresidue at every odd prime dividing 20a+5b+2c
  bool c3 = false;  // a x^2 + b y^2 + c z^2 + u^2 anisotropic over Q_3
  bool c4 = false;  // -bc a nonresidue mod 5
  // the congruence argument never consults 2 or 5, so those factors of the
  // linear forms are skipped and noted here instead of failing the test
  bool even_support = false;
  bool five_support = false;
  bool all() const { return c1 && c2 && c3 && c4; }
};

Conditions14 conditions_1_to_4(const Triplet &t);

struct AdelicReport {
  bool yes = false;
  std::vector<PlaceReport> places;  // real, every p < 22, every bad prime
};

// Solvability of the untwisted surface at the real place, all p < 22, and all
// bad primes; everywhere else good reduction plus the Weil threshold applies.
AdelicReport adelic_nonempty(const Triplet &t, int effort = 1);

}  // namespace enr
