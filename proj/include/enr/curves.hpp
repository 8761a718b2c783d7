#pragma once

#include "enr/gf.hpp"
#include "enr/surface.hpp"

namespace enr {

// The 28 genus-1 fibration classes on the K3 side and the 36 curve labels on
// the quotient side.  Indexing is fixed everywhere: Y side F1..F14 = 0..13,
// G1..G14 = 14..27; X side C1..C9 = 0..8, Ct1..Ct9 = 9..17, D1..D9 = 18..26,
// Dt1..Dt9 = 27..35 (t = tilde).
inline constexpr int kNY = 28;
inline constexpr int kNX = 36;
std::string y_label(int idx);
std::string x_label(int idx);
int x_to_y_class(int xidx);  // C_i, Ct_i -> F_i; D_i, Dt_i -> G_i

// Values in F_{p^4} of the generators of the field over which all 28
// fibrations split.  The tower is: ten square roots of rationals
//   i, sqrt2, sqrt5, sqrt a, sqrt c, s6 = sqrt(c^2-100ab),
//   gamma = sqrt(-(c^2+5bc+10ac+25ab)), th0 = sqrt(4a^2+b^2),
//   d1 = sqrt(a+b+c/5), d2 = sqrt(a+b/4+c/10),
// one fourth root r4 = (ab)^{1/4}, and six square roots of irrationals
//   wp = sqrt(-2+2*sqrt2),      qp = sqrt(-c-10*sqrt(ab)),
//   th1p = sqrt(20a^2-10ab-2bc+(10a+2c)*th0), th2p = sqrt(-5a-5b/2-5th0/2),
//   xi1p = sqrt(20a+10b+3c+20*d1*d2),  xi2p = sqrt(4a+2b+2c/5+4*d1*d2).
// Every radicand lies in F_{p^2}, so everything embeds in F_{p^4}; roots are
// chosen by the deterministic rule in Fq::sqrt.  The negative-branch partners
// are never independent choices:
//   wm*wp = 2i, qm*qp = s6, th1m*th1p = 4a*gamma, th2m*th2p = 5*sqrt(ab),
//   xi1m*xi1p = s6, xi2m*xi2p = 2*gamma/5.
struct SymbolValues {
  const FieldDesc *F = nullptr;
  u64 p = 0;
  u64 a = 0, b = 0, c = 0;  // residues mod p

  std::array<Fq, 10> base;  // i, r2, r5, ra, rc, s6, gamma, th0, d1, d2
  Fq r4;
  std::array<Fq, 6> comp;  // wp, qp, th1p, th2p, xi1p, xi2p

  Fq rab() const { return r4 * r4; }
  Fq rb() const { return rab() * base[3].inv(); }
  Fq wm() const;    // sqrt(-2-2*sqrt2)
  Fq qm() const;    // sqrt(-c+10*sqrt(ab))
  Fq th1m() const;  // partner of th1p
  Fq th2m() const;
  Fq xi1m() const;
  Fq xi2m() const;
  Fq partner(int k) const;  // k-th companion's negative branch
  Fq num(i64 n) const { return Fq(F, n); }
};

// Deterministic embedding.  Throws when p is unusable: p in {2,5}, a radicand
// or a needed denominator (2a, 5a+c, b +- th0, ...) vanishes mod p.
SymbolValues embed_symbols(const Triplet &t, u64 p);

// A curve's defining plane V(l1, l2) in P^5, coordinates (s,t,u,x,y,z).
struct CurvePlane {
  std::array<Fq, 6> l1{}, l2{};
};

// Defining planes from the symbol values; pure formulas, so evaluating them
// on conjugated symbols yields the conjugated planes.
std::array<CurvePlane, kNY> y_planes(const SymbolValues &S);
std::array<CurvePlane, kNX> x_planes(const SymbolValues &S);

// Classification engine.  Construction runs a full self-check: every listed
// plane has rank 2, lies on exactly one member of the quadric net, the 14 net
// points are pairwise distinct, and every plane classifies to its own label.
struct CurveSystem {
  SymbolValues S;
  std::array<std::array<Fq, 36>, 3> gram;    // doubled Grams of the net basis
  std::array<CurvePlane, kNY> yref;
  std::array<CurvePlane, kNX> xref;
  std::array<std::array<Fq, 3>, 14> net;     // net point of the pair (F_j, G_j)
  std::array<std::array<u64, 12>, kNX> xkey; // canonical plane keys

  explicit CurveSystem(const SymbolValues &sym);

  // Y class of an arbitrary plane lying on the surface's quadric net:
  // net-point lookup picks the fibration pair, then the ruling test
  // (dimension of the intersection with the F_j reference plane) picks the
  // half: planes of the same ruling meet in a line, opposite rulings in a
  // plane.
  int classify(const CurvePlane &P) const;
  // exact match against the 36 listed planes (projective equality)
  int match_x(const CurvePlane &P) const;
};

// Label permutations induced by a symbol map S -> moved (same field).
// Asserts Y/X compatibility: the image of an X plane classifies to the image
// of its Y class.
struct CurveAction {
  std::array<int, kNY> y{};
  std::array<int, kNX> x{};
};
CurveAction action_from(const CurveSystem &C, const SymbolValues &moved);

// The 17 canonical sign generators in tower order: 0..9 flip one of the ten
// base radicals, 10 sends r4 -> i*r4, 11..16 flip one companion root.  Each
// fixes every other generator; derived values move accordingly.
inline constexpr int kNumGen = 17;
std::string generator_name(int g);
SymbolValues apply_generator(const SymbolValues &S, int g);
std::array<CurveAction, kNumGen> generator_actions(const CurveSystem &C);

// x -> x^p on the embedded values (a valid symbol map; asserted).
SymbolValues frobenius_symbols(const SymbolValues &S);
CurveAction frobenius_action_on_curves(const CurveSystem &C);

// The sign group of the tower, packed in 18 bits: bits 0..9 base flips,
// bits 10..11 the power f in r4 -> i^f r4, bits 12..17 companion flips.
// Nonabelian: i-conjugation inverts f, and a companion pulled through a
// root-swapping element picks up the sign of the pair's product symbol.
inline constexpr u32 kSignGroupOrder = u32(1) << 18;
u32 compose_codes(u32 g, u32 h);  // code of v -> g(h(v))
SymbolValues apply_code(const SymbolValues &S, u32 code);
u32 decompose_symbols(const SymbolValues &base, const SymbolValues &img);

// The geometric involution (s,t,u) -> (-s,-t,-u) acting on fibration classes.
std::array<int, kNY> involution_y(const CurveSystem &C);

// Embedding with automatic prime choice: smallest good prime >= 7 for which
// embed_symbols succeeds and the self-check passes (skips degenerate p).
CurveSystem make_curve_system(const Triplet &t, u64 p = 0);

}  // namespace enr
