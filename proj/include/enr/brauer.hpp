#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enr/local.hpp"
#include "enr/surface.hpp"

namespace enr {

// Quotient of the covering family by the sign involution on (s, t, u): a
// degree-4 del Pezzo surface in P^4 with coordinates (s : t : x : y : z),
//   x y = s^2 - 5 z^2,   (x + y)(x + 2 y) = s^2 - 5 t^2.
// It does not depend on the coefficients; only the cover does.  Both right
// sides are norms from Q(sqrt 5), so the quaternion class (5, (x+y)/x) has
// four representatives that agree wherever defined, with denominators
// cleared by squares: (x+y)x, (x+y)y, (x+2y)x, (x+2y)y.

// One evaluation of the class: a point modulo p^precision (zeroed for a real
// point), the representative whose residue decided the symbol, and the local
// invariant in halves.
struct InvariantSample {
  i64 place = 0;
  std::array<u64, 5> point{};
  int precision = 0;
  std::string representative;
  int inv2 = 0;
};

// Both quotient equations vanish at w mod p^k?
bool dp4_on_surface_mod(const std::array<u64, 5> &w, u64 p, int k);

// Symbol (5, rep)_p at a point known mod p^k.  A representative with nonzero
// residue pins the symbol of the exact value: the valuation m < k is read off
// the residue and the unit part is known mod p^(k-m), which is all the symbol
// consults (5 is 1 mod 4, so at p = 2 only the parity of m enters).
// Representatives vanishing mod p^k are skipped; when all four vanish there
// is no verdict at this precision.
std::optional<InvariantSample> dp4_local_invariant(const std::array<u64, 5> &w, u64 p, int k);

// The real place: the first argument of the symbol is positive, so the
// invariant is 0 at every real point.  Any (x, y) with a nonzero
// representative extends to a real point, s^2 - 5 z^2 being indefinite.
InvariantSample dp4_real_invariant(const Rational &x, const Rational &y);

// Seeded spread of points of the quotient mod p^k (p <= 23), grown digit by
// digit to precision k+3.  A 2x2 Jacobian minor of valuation v <= 3 with
// 2v < k+3 certifies an exact p-adic point agreeing mod p^k, and that
// reduction is what is emitted.  At most n, distinct.
std::vector<std::array<u64, 5>> dp4_samples(u64 p, int k, int n, u64 seed);

struct PlaceInvariants {
  i64 place = 0;
  std::vector<InvariantSample> samples;
  bool constant = false;
  int inv2 = 0;  // the common value when constant
};

// The invariant of a fixed quaternion class is locally constant, so a spread
// of samples per place should agree; the scan records the constants and
// whether their sum of halves is odd, which pairs every adelic point
// nontrivially against the class.
struct ObstructionScan {
  std::vector<PlaceInvariants> places;
  bool constant_per_place = false;
  int total2 = 0;          // sum of the per-place constants, in halves
  bool obstructs = false;  // constant everywhere with an odd total
};
ObstructionScan dp4_obstruction_scan(const std::vector<i64> &places, int samples_per_place,
                                     u64 seed = 1);

// The quotient map restricted to a radical point of the cover: forget u.
std::array<RadCoord, 5> forget_u(const RadPoint &pt);

// Exact check that a radical point lies on the quotient and every radicand is
// a square in Q_p (p = 0 is the real place).  x and y must be rational; the
// other coordinates appear only squared.
bool dp4_verify_point(const std::array<RadCoord, 5> &pt, u64 p);

// The class pulled back along the quotient map, evaluated on the untwisted
// cover.  Pushing certified 5-adic cover points through the map must land on
// invariant 1/2; combined with the scan this leaves no adelic point of the
// cover orthogonal to the pulled-back class.
struct CoverObstruction {
  bool witness_on_quotient = false;  // the stored 3-adic witness drops onto the quotient
  ObstructionScan scan;              // the class sampled at {real, 2, 3, 5, 7}
  int cover_samples = 0;             // 5-adic cover points pushed through the map
  bool cover_all_half = false;       // each lands on invariant 1/2
  bool functorial = false;           // evaluation upstairs matches the image value
  bool obstructs = false;
};
CoverObstruction pullback_obstruction(const Triplet &t, int samples = 8, u64 seed = 1);

// Case split over nonzero squarefree d, by the reason the d-twist should have
// no adelic points surviving its Brauer pairing:
//   0: some prime away from {2, 5} divides d   (congruence argument mod p^2)
//   1: d < 0                                   (real positivity)
//   2: d = 2 or 5                              (anisotropy over Q_3)
//   3: d = 10                                  (no 5-adic point)
//   4: d = 1                                   (pulled-back quaternion class)
int twist_branch(i64 d);

struct BranchReport {
  int branch = 0;
  std::string description;
  std::string certificate;
  bool closed = false;
};

// Every twist falls in exactly one branch, so if all five close, no twisted
// cover keeps an adelic point orthogonal to its Brauer group.
struct EtaleBrauerReport {
  Conditions14 conditions;
  std::array<BranchReport, 5> branches;
  CoverObstruction pullback;
  bool empty = false;  // all branches closed
};
EtaleBrauerReport etale_brauer_empty(const Triplet &t, int effort = 1);

// One node of the deduction graph: a statement, whether it is established
// for this triplet, and the ids of the facts it relies on.
struct Fact {
  std::string id;
  std::string statement;
  bool established = false;
  std::vector<std::string> uses;
};

// The two headline verdicts, each anchored in the graph.  alg_brauer is
// "nonempty" only when the adelic points and the Galois certificate both
// stand, and is withheld otherwise; the transcendental statement stays
// conditional, since the 2-torsion of the transcendental quotient is decided
// upstairs and never claimed here.
struct PartitionReport {
  std::vector<Fact> facts;
  std::string etale_brauer;  // "empty" or "not-established"
  std::string alg_brauer;    // "nonempty" or "withheld"
  bool beauville_injective = false;
  bool acyclic = false;  // every edge points to an earlier fact
  const Fact *find(const std::string &id) const;
};
PartitionReport brauer_partition_report(const Triplet &t, int effort = 1);

}  // namespace enr
