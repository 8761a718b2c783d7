#pragma once

#include "enr/arith.hpp"

namespace enr {

// F_{p^k}, k <= 4, polynomial basis mod the lexicographically smallest monic
// irreducible of degree k.  Descriptors are cached and referenced by pointer,
// so elements of the same field share one descriptor.
struct FieldDesc {
  u64 p = 0;
  unsigned k = 1;
  std::array<u64, 4> mod{};  // x^k = -(mod[k-1] x^{k-1} + ... + mod[0])

  u128 q() const {
    u128 r = 1;
    for (unsigned i = 0; i < k; ++i) r *= p;
    return r;
  }
  static const FieldDesc *get(u64 p, unsigned k);
};

struct Fq {
  const FieldDesc *F = nullptr;
  std::array<u64, 4> c{};  // coefficients, index = power of the generator

  Fq() = default;
  explicit Fq(const FieldDesc *f) : F(f) {}
  Fq(const FieldDesc *f, i128 n) : F(f) {
    i128 r = n % i128(f->p);
    if (r < 0) r += f->p;
    c[0] = u64(r);
  }

  bool is_zero() const {
    for (unsigned i = 0; i < F->k; ++i)
      if (c[i]) return false;
    return true;
  }
  friend bool operator==(const Fq &a, const Fq &b) {
    return a.F == b.F && a.c == b.c;
  }
  friend bool operator!=(const Fq &a, const Fq &b) { return !(a == b); }

  friend Fq operator+(const Fq &a, const Fq &b) {
    ENR_CHECK(a.F == b.F, "field mismatch");
    Fq r(a.F);
    for (unsigned i = 0; i < a.F->k; ++i) {
      u64 s = a.c[i] + b.c[i];
      r.c[i] = s >= a.F->p ? s - a.F->p : s;
    }
    return r;
  }
  friend Fq operator-(const Fq &a, const Fq &b) {
    ENR_CHECK(a.F == b.F, "field mismatch");
    Fq r(a.F);
    for (unsigned i = 0; i < a.F->k; ++i)
      r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + a.F->p - b.c[i];
    return r;
  }
  Fq operator-() const {
    Fq r(F);
    for (unsigned i = 0; i < F->k; ++i) r.c[i] = c[i] ? F->p - c[i] : 0;
    return r;
  }
  friend Fq operator*(const Fq &a, const Fq &b);

  Fq pow(u128 e) const;
  Fq inv() const;
  Fq frobenius() const { return pow(F->p); }  // x -> x^p
  bool is_square() const;
  // Deterministic square root: of the two roots, the one whose coefficient
  // tuple (c0,..,c_{k-1}) is lexicographically smaller.
  Fq sqrt() const;

  u64 packed() const {
    u64 m = 0;
    for (unsigned i = F->k; i-- > 0;) m = m * F->p + c[i];
    return m;
  }
  std::string str() const;
};

Fq fq_from_packed(const FieldDesc *F, u64 m);

// Zech-logarithm tables for fast character sums; q = p^k <= 2^20, p odd.
// Elements are logs base a fixed generator g: an i32 in [0, q-1), or -1 for 0.
struct GFLog {
  u64 p;
  unsigned k;
  u32 q, qm1;
  std::vector<i32> zech;   // zech[i] = log(1 + g^i), -1 when 1 + g^i = 0
  std::vector<i32> logt;   // packed element -> log
  std::vector<u32> expt;   // log -> packed element
  std::array<i32, 4> log_small{};  // logs of 1,2,3,4 image... (filled on build)

  i32 mul(i32 la, i32 lb) const {
    if (la < 0 || lb < 0) return -1;
    i32 r = la + lb;
    return r >= i32(qm1) ? r - i32(qm1) : r;
  }
  i32 sq(i32 la) const {
    if (la < 0) return -1;
    i32 r = la * 2;
    return r >= i32(qm1) ? r - i32(qm1) : r;
  }
  i32 add(i32 la, i32 lb) const {
    if (la < 0) return lb;
    if (lb < 0) return la;
    i32 d = lb - la;
    if (d < 0) d += qm1;
    i32 z = zech[d];
    if (z < 0) return -1;
    i32 r = la + z;
    return r >= i32(qm1) ? r - i32(qm1) : r;
  }
  i32 neg(i32 la) const {  // log(-g^la); -1 = g^{(q-1)/2}
    if (la < 0) return -1;
    i32 r = la + i32(qm1 / 2);
    return r >= i32(qm1) ? r - i32(qm1) : r;
  }
  int chi(i32 la) const { return la < 0 ? 0 : (la & 1 ? -1 : 1); }
  i32 log_of_int(i64 n) const {
    i64 r = n % i64(p);
    if (r < 0) r += p;
    return logt[size_t(r)];
  }

  static GFLog build(u64 p, unsigned k);
};

}  // namespace enr
