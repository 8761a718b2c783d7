#pragma once

#include "enr/gf.hpp"
#include "enr/surface.hpp"

namespace enr {

struct CountRecord {
  u64 p = 0;
  unsigned k = 0;
  u64 q = 0;          // p^k
  u64 a = 0, b = 0, c = 0, d = 0;  // residues mod p
  u64 N = 0;
  bool good = false;  // smoothness product nonzero mod p

  // Hard bound: the base is P^2 (q^2+q+1 points) and each of s,t,u
  // contributes at most 2 values, so N <= 8(q^2+q+1) always.  For smooth
  // reductions the 22 Frobenius eigenvalues have modulus q, giving
  // N <= 1+q^2+22q <= 2(q^2+q+1) once q >= 20; the same bound is verified
  // exhaustively over all good residue classes for q < 20 in the test suite.
  void validate() const;
};

// Residues of (a,b,c,d) mod p; the count depends on nothing else.
struct ResidueClass {
  u64 p = 0;
  u64 a = 0, b = 0, c = 0, d = 1;

  bool good() const;  // all smoothness factors nonzero mod p
};

// Character-sum count over F_q, q = p^k odd, p != 5, d a unit mod p.
//
// Derivation: on d*Q_i = Qt_i every point has (x,y,z) != (0,0,0) — otherwise
// d s^2 = 0, 5 d t^2 = d s^2 - (x+y)(x+2y) = 0 and d u^2 = 0 force the zero
// vector.  Fixing an affine representative of (x:y:z) uses up the projective
// scaling entirely, so the fiber over a base point is the set of exact
// solutions of d s^2 = A, d t^2 = B, d u^2 = C with
//   A = xy + 5z^2,  B = (A - (x+y)(x+2y))/5,  C = a x^2 + b y^2 + c z^2,
// (B from subtracting the first two equations), each contributing
// 1 + chi(*/d) solutions where chi is the quadratic character, chi(0) = 0.
// Switching the representative scales A,B,C by a square, so the sum over the
// charts z=1, (y=1,z=0), (1,0,0) is representative-independent.
CountRecord count_fibered_class(const ResidueClass &r, unsigned k, int threads = 1);

CountRecord count_fibered(const TwistedSurface &s, u64 p, unsigned k, int threads = 1);

// Oracle: exhaustive walk of P^5(F_q) representatives, q <= 49.
CountRecord count_naive(const TwistedSurface &s, u64 p, unsigned k);

// Binary cache of count records, one file per directory+prime.
class CountCache {
 public:
  // dir may be empty: cache disabled (all lookups miss, stores dropped).
  CountCache(std::string dir, u64 p);
  std::optional<u64> lookup(const ResidueClass &r, unsigned k) const;
  void store(const ResidueClass &r, unsigned k, u64 N);
  u64 hits() const { return hits_; }
  u64 misses() const { return misses_; }

 private:
  std::string path_;
  u64 p_;
  mutable u64 hits_ = 0, misses_ = 0;
  std::vector<std::pair<std::array<u64, 5>, u64>> mem_;  // (a,b,c,d,k) -> N
  void load();
};

// N_1..N_4 over F_{p^i} for the untwisted surface; p good, odd, != 5.
std::array<u64, 4> counts_for_weil(const Triplet &t, u64 p,
                                   const std::string &cache_dir = "",
                                   int threads = 1);

}  // namespace enr
