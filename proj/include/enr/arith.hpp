#pragma once

#include <array>
#include <optional>
#include <utility>

#include "enr/util.hpp"

namespace enr {

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m);  // gcd(a,m) = 1

bool is_prime(u64 n);

struct Factorization {
  std::vector<std::pair<i128, int>> pe;  // prime^exponent, primes increasing
  int sign = 1;                          // sign of the original value
};

// n != 0. Exact: every listed prime passed a primality test.
Factorization factor(i128 n);

bool is_squarefree(i128 n);
i128 squarefree_part(i128 n);  // largest squarefree divisor with matching sign

// Primes p <= n, cached incrementally.
const std::vector<u64> &primes_upto(u64 n);

// (a|p) for odd prime p: 0 if p | a.
int legendre(i128 a, u64 p);

// Jacobi symbol, n odd positive.
int jacobi(i128 a, i128 n);

// Square root mod odd prime p of a quadratic residue a (0 <= a < p).
u64 sqrt_mod_p(u64 a, u64 p);

// Valuation of v at p; v != 0.
int padic_val(i128 v, u64 p);
int padic_val(const Rational &r, u64 p);

// Is r a square in Q_p (p = 0 means the real place)?  r = 0 counts as one.
bool is_qp_square(const Rational &r, u64 p);

// Hilbert symbol (a,b)_p for nonzero rationals; p = 0 is the real place.
int hilbert_symbol(const Rational &a, const Rational &b, u64 p);

// Diagonal quaternary form <d0,d1,d2,d3> over Q_p: no nontrivial zero?
// Rank-4 criterion: anisotropic iff det is a square and the Hasse invariant
// is -(-1,-1)_p.
bool quadform4_anisotropic(const std::array<i128, 4> &diag, u64 p);

}  // namespace enr
