#pragma once

#include <set>

#include "enr/matrix.hpp"

namespace enr {

// Coefficient triplet (a,b,c) of the third quadric.  Valid when positive,
// 2a != b, and the smoothness product (below) is nonzero.  Coefficients are
// capped at 10^7 so each product factor fits in 63 bits.
struct Triplet {
  i64 a = 0, b = 0, c = 0;

  bool valid() const;
  void require_valid() const { ENR_CHECK(valid(), "invalid triplet"); }
  std::string str() const {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
  }
};

// Parse "a,b,c" or "a,b,c,d"; d defaults to 1.
std::pair<Triplet, i64> parse_triplet(const std::string &s);

// The eight factors whose product controls smoothness:
// a, b, c, 5a+5b+c, 20a+5b+2c, 4a^2+b^2, c^2-100ab, c^2+5bc+10ac+25ab.
std::array<i128, 8> smoothness_factors(const Triplet &t);

// Exact product of the eight factors (can exceed 128 bits).
BigInt smoothness_product(const Triplet &t);

// {2,5} together with the prime support of the smoothness product.
std::vector<i128> bad_primes(const Triplet &t);

// Intersection of three quadrics in P^5(s,t,u,x,y,z), each of the split shape
// d*Q_i(s,t,u) = Qt_i(x,y,z).  Gram matrices are doubled: Q(v) = v^T M v / 2,
// so off-diagonal entries are the mixed coefficients and diagonals are twice
// the square coefficients (always even, valid in every characteristic).
struct TwistedSurface {
  Triplet t;
  i64 d = 1;
  std::array<Mat, 3> Q;   // left side, variables (s,t,u), scaled by d
  std::array<Mat, 3> Qt;  // right side, variables (x,y,z)

  // 6x6 doubled Gram of d*Q_i - Qt_i on (s,t,u,x,y,z).
  Mat full_gram(int i) const;
};

TwistedSurface family(const Triplet &t);
TwistedSurface twist(const TwistedSurface &s, i64 d);

// Evaluate a doubled-Gram quadric at an integer point.
i128 eval_quadric(const Mat &gram, const std::vector<i128> &v);

// Coefficients of the surface reduced mod p (p odd, != 5, not dividing d).
struct SurfaceModP {
  u64 p;
  u64 a, b, c, d;  // residues
  bool good;       // no smoothness factor vanishes mod p
};
SurfaceModP reduce_mod_p(const TwistedSurface &s, u64 p);

// Points of P^5(F_p) on the surface where the Jacobian drops rank.
// Exhaustive enumeration; p <= 13.
std::vector<std::array<u64, 6>> singular_points_mod_p(const TwistedSurface &s, u64 p);

}  // namespace enr
