#include "enr/curves.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace enr {

namespace {

using Row = std::array<Fq, 6>;

Row mk(Fq cs, Fq ct, Fq cu, Fq cx, Fq cy, Fq cz) {
  return Row{cs, ct, cu, cx, cy, cz};
}

// reduced row echelon form in place, returns rank
int rref(std::vector<std::vector<Fq>> &m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  for (size_t col = 0; col < cols && size_t(rank) < rows; ++col) {
    size_t piv = rows;
    for (size_t r = size_t(rank); r < rows; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[size_t(rank)], m[piv]);
    Fq s = m[size_t(rank)][col].inv();
    for (size_t j = col; j < cols; ++j) m[size_t(rank)][j] = m[size_t(rank)][j] * s;
    for (size_t r = 0; r < rows; ++r) {
      if (int(r) == rank || m[r][col].is_zero()) continue;
      Fq f = m[r][col];
      for (size_t j = col; j < cols; ++j) m[r][j] = m[r][j] - f * m[size_t(rank)][j];
    }
    ++rank;
  }
  return rank;
}

int rank_of(std::vector<std::vector<Fq>> m) { return rref(m); }

// basis of the right kernel
std::vector<std::vector<Fq>> kernel(std::vector<std::vector<Fq>> m, const FieldDesc *F) {
  size_t cols = m.empty() ? 0 : m[0].size();
  int rank = rref(m);
  std::vector<int> pivcol;
  std::vector<bool> ispiv(cols, false);
  for (int r = 0; r < rank; ++r) {
    size_t c = 0;
    while (c < cols && m[size_t(r)][c].is_zero()) ++c;
    pivcol.push_back(int(c));
    ispiv[c] = true;
  }
  std::vector<std::vector<Fq>> ker;
  for (size_t j = 0; j < cols; ++j) {
    if (ispiv[j]) continue;
    std::vector<Fq> v(cols, Fq(F));
    v[j] = Fq(F, 1);
    for (int r = 0; r < rank; ++r) v[size_t(pivcol[size_t(r)])] = -m[size_t(r)][j];
    ker.push_back(std::move(v));
  }
  return ker;
}

std::vector<std::vector<Fq>> plane_rows(const CurvePlane &P) {
  return {std::vector<Fq>(P.l1.begin(), P.l1.end()),
          std::vector<Fq>(P.l2.begin(), P.l2.end())};
}

// companion relations: which tower coordinates flip the pair, and the sign of
// the pair's product symbol under a group element
bool inner_flip(u32 code, int k) {
  auto bit = [&](int j) { return (code >> j) & 1u; };
  switch (k) {
    case 0: return bit(1);                  // w: inner sqrt2
    case 1: return ((code >> 10) & 3u) & 1; // q: inner sqrt(ab), flips iff f odd
    case 2: return bit(7);                  // th1: inner th0
    case 3: return bit(7);                  // th2: inner th0
    default: return bit(8) ^ bit(9);        // xi1, xi2: inner d1*d2
  }
}
bool product_sign(u32 code, int k) {
  auto bit = [&](int j) { return (code >> j) & 1u; };
  switch (k) {
    case 0: return bit(0);                  // w+ w- = 2i
    case 1: return bit(5);                  // q+ q- = s6
    case 2: return bit(6);                  // th1+ th1- = 4a gamma
    case 3: return ((code >> 10) & 3u) & 1; // th2+ th2- = 5 sqrt(ab)
    case 4: return bit(5);                  // xi1+ xi1- = s6
    default: return bit(6);                 // xi2+ xi2- = 2 gamma / 5
  }
}

const char *kGenName[kNumGen] = {"i",  "r2", "r5",   "ra",   "rc",   "s6",
                                 "gamma", "th0", "d1", "d2", "r4", "wp",
                                 "qp", "th1p", "th2p", "xi1p", "xi2p"};

struct Block {
  Row l1C, l1T;  // first form, plain and tilde variant
  Row vC, vD;    // second form, C-side and D-side variant
};

std::array<Block, 9> nine_blocks(const SymbolValues &S) {
  const FieldDesc *F = S.F;
  Fq z(F), one(F, 1);
  auto n = [&](i128 v) { return Fq(F, v); };
  i128 a = S.a, b = S.b, c = S.c;
  Fq i = S.base[0], r2 = S.base[1], r5 = S.base[2], ra = S.base[3], rc = S.base[4];
  Fq s6 = S.base[5], ga = S.base[6], th0 = S.base[7];
  Fq rb = S.rb(), r4 = S.r4;
  Fq wp = S.comp[0], qp = S.comp[1], th1p = S.comp[2], th2p = S.comp[3];
  Fq wm = S.wm(), qm = S.qm(), th1m = S.th1m(), th2m = S.th2m();
  Fq inv2a = n(2 * a).inv();

  std::array<Block, 9> B;
  B[0] = {mk(one, -r5, z, z, z, z), mk(one, r5, z, z, z, z),
          mk(z, z, z, one, n(2), z), mk(z, z, z, one, one, z)};
  B[1] = {mk(wp, -r5, z, z, z, z), mk(wp, r5, z, z, z, z),
          mk(z, z, z, one, r2, r5 * (one - r2)), mk(z, z, z, one, r2, -(r5 * (one - r2)))};
  B[2] = {mk(wm, -r5, z, z, z, z), mk(wm, r5, z, z, z, z),
          mk(z, z, z, one, -r2, r5 * (one + r2)), mk(z, z, z, one, -r2, -(r5 * (one + r2)))};
  B[3] = {mk(rc, z, -r5, z, z, z), mk(rc, z, r5, z, z, z),
          mk(z, z, z, n(10 * a), -(n(c) + s6), z), mk(z, z, z, n(10 * a), -(n(c) - s6), z)};
  B[4] = {mk(i * r2 * r4, z, -one, z, z, z), mk(i * r2 * r4, z, one, z, z, z),
          mk(z, z, z, ra, rb, qp), mk(z, z, z, ra, rb, -qp)};
  B[5] = {mk(r2 * r4, z, one, z, z, z), mk(r2 * r4, z, -one, z, z, z),
          mk(z, z, z, ra, -rb, qm), mk(z, z, z, ra, -rb, -qm)};
  B[6] = {mk(z, rc, -one, z, z, z), mk(z, rc, one, z, z, z),
          mk(z, z, z, n(5 * a + c), n(c) + ga, z), mk(z, z, z, n(5 * a + c), n(c) - ga, z)};
  Fq m8p = (n(2 * a + b) + th0) * (n(b) + th0).inv();
  Fq m8m = (n(2 * a + b) - th0) * (n(b) - th0).inv();
  B[7] = {mk(z, th2p, -one, z, z, z), mk(z, th2p, one, z, z, z),
          mk(z, z, z, one, m8p, -(th1p * inv2a)), mk(z, z, z, one, m8p, th1p * inv2a)};
  B[8] = {mk(z, th2m, -one, z, z, z), mk(z, th2m, one, z, z, z),
          mk(z, z, z, one, m8m, -(th1m * inv2a)), mk(z, z, z, one, m8m, th1m * inv2a)};
  return B;
}

}  // namespace

std::string y_label(int idx) {
  ENR_CHECK(idx >= 0 && idx < kNY, "bad Y index");
  return idx < 14 ? "F" + std::to_string(idx + 1) : "G" + std::to_string(idx - 13);
}

std::string x_label(int idx) {
  ENR_CHECK(idx >= 0 && idx < kNX, "bad X index");
  static const char *pre[4] = {"C", "Ct", "D", "Dt"};
  return std::string(pre[idx / 9]) + std::to_string(idx % 9 + 1);
}

int x_to_y_class(int xidx) {
  ENR_CHECK(xidx >= 0 && xidx < kNX, "bad X index");
  return xidx < 18 ? xidx % 9 : 14 + xidx % 9;
}

Fq SymbolValues::wm() const { return num(2) * base[0] * comp[0].inv(); }
Fq SymbolValues::qm() const { return base[5] * comp[1].inv(); }
Fq SymbolValues::th1m() const { return num(i64(4 * a)) * base[6] * comp[2].inv(); }
Fq SymbolValues::th2m() const { return num(5) * rab() * comp[3].inv(); }
Fq SymbolValues::xi1m() const { return base[5] * comp[4].inv(); }
Fq SymbolValues::xi2m() const { return num(2) * base[6] * (num(5) * comp[5]).inv(); }
Fq SymbolValues::partner(int k) const {
  switch (k) {
    case 0: return wm();
    case 1: return qm();
    case 2: return th1m();
    case 3: return th2m();
    case 4: return xi1m();
    default: return xi2m();
  }
}

SymbolValues embed_symbols(const Triplet &t, u64 p) {
  t.require_valid();
  ENR_CHECK(p > 2 && p != 5 && is_prime(p), "prime must be odd, not 5");
  const FieldDesc *F = FieldDesc::get(p, 4);
  SymbolValues S;
  S.F = F;
  S.p = p;
  S.a = u64(((t.a % i64(p)) + i64(p)) % i64(p));
  S.b = u64(((t.b % i64(p)) + i64(p)) % i64(p));
  S.c = u64(((t.c % i64(p)) + i64(p)) % i64(p));
  i128 a = S.a, b = S.b, c = S.c;
  auto n = [&](i128 v) { return Fq(F, v); };
  auto root = [&](Fq v, const char *what) {
    ENR_CHECK(!v.is_zero(), std::string("degenerate radicand: ") + what);
    return v.sqrt();
  };

  ENR_CHECK(a != 0 && b != 0 && c != 0, "coefficient vanishes mod p");
  ENR_CHECK((5 * a + c) % p != 0, "5a+c vanishes mod p");

  S.base[0] = root(n(-1), "i");
  S.base[1] = root(n(2), "sqrt2");
  S.base[2] = root(n(5), "sqrt5");
  S.base[3] = root(n(a), "sqrtA");
  S.base[4] = root(n(c), "sqrtC");
  S.base[5] = root(n(c * c - 100 * a * b), "s6");
  S.base[6] = root(n(-(c * c + 5 * b * c + 10 * a * c + 25 * a * b)), "gamma");
  S.base[7] = root(n(4 * a * a + b * b), "theta0");
  Fq inv5 = n(5).inv(), inv20 = n(20).inv();
  S.base[8] = root(n(5 * a + 5 * b + c) * inv5, "delta1");
  S.base[9] = root(n(20 * a + 5 * b + 2 * c) * inv20, "delta2");
  S.r4 = root(root(n(a * b), "ab"), "r4");

  Fq th0 = S.base[7], d1 = S.base[8], d2 = S.base[9];
  S.comp[0] = root(n(-2) + n(2) * S.base[1], "wPlus");
  S.comp[1] = root(n(-c) - n(10) * S.rab(), "qPlus");
  S.comp[2] = root(n(20 * a * a - 10 * a * b - 2 * b * c) + n(10 * a + 2 * c) * th0, "theta1Plus");
  Fq h5 = n(5) * n(2).inv();
  S.comp[3] = root(n(-5 * a) - h5 * n(b) - h5 * th0, "theta2Plus");
  S.comp[4] = root(n(20 * a + 10 * b + 3 * c) + n(20) * d1 * d2, "xi1Plus");
  S.comp[5] = root(n(4 * a + 2 * b) + n(2) * inv5 * n(c) + n(4) * d1 * d2, "xi2Plus");

  // partner branches must satisfy the product relations exactly
  ENR_CHECK(S.wm() * S.wm() == n(-2) - n(2) * S.base[1], "w branch relation");
  ENR_CHECK(S.qm() * S.qm() == n(-c) + n(10) * S.rab(), "q branch relation");
  ENR_CHECK(S.th1m() * S.th1m() ==
                n(20 * a * a - 10 * a * b - 2 * b * c) - n(10 * a + 2 * c) * th0,
            "theta1 branch relation");
  ENR_CHECK(S.th2m() * S.th2m() == n(-5 * a) - h5 * n(b) + h5 * th0, "theta2 branch relation");
  ENR_CHECK(S.xi1m() * S.xi1m() == n(20 * a + 10 * b + 3 * c) - n(20) * d1 * d2,
            "xi1 branch relation");
  ENR_CHECK(S.xi2m() * S.xi2m() == n(4 * a + 2 * b) + n(2) * inv5 * n(c) - n(4) * d1 * d2,
            "xi2 branch relation");
  ENR_CHECK(S.rb() * S.rb() == n(b), "sqrtB relation");
  return S;
}

std::array<CurvePlane, kNY> y_planes(const SymbolValues &S) {
  const FieldDesc *F = S.F;
  Fq z(F), one(F, 1);
  auto n = [&](i128 v) { return Fq(F, v); };
  Fq i = S.base[0], r5 = S.base[2], ra = S.base[3], rc = S.base[4];
  Fq d1 = S.base[8], d2 = S.base[9];
  Fq rb = S.rb();
  Fq xi1p = S.comp[4], xi2p = S.comp[5], xi1m = S.xi1m(), xi2m = S.xi2m();

  auto B = nine_blocks(S);
  std::array<CurvePlane, kNY> Y;
  for (int j = 0; j < 9; ++j) {
    Y[size_t(j)] = {B[size_t(j)].l1C, B[size_t(j)].vC};
    Y[size_t(14 + j)] = {B[size_t(j)].l1C, B[size_t(j)].vD};
  }
  // the ten fibrations with no curve label on the quotient side
  Y[9] = {mk(one, z, z, z, z, -r5), mk(z, z, z, one, z, z)};
  Y[23] = {mk(one, z, z, z, z, -r5), mk(z, z, z, z, one, z)};
  Y[10] = {mk(z, z, one, z, z, -rc), mk(z, z, z, ra, i * rb, z)};
  Y[24] = {mk(z, z, one, z, z, -rc), mk(z, z, z, ra, -(i * rb), z)};
  Y[11] = {mk(z, one, z, z, z, -one), mk(z, z, z, one, one - i, z)};
  Y[25] = {mk(z, one, z, z, z, -one), mk(z, z, z, one, one + i, z)};
  Y[12] = {mk(xi2p, -xi1p, z, z, z, z),
           mk(z, z, -one, d1 + n(2) * d2, n(2) * d1 + n(2) * d2, z)};
  Y[26] = {mk(xi2p, -xi1p, z, z, z, z),
           mk(z, z, one, d1 + n(2) * d2, n(2) * d1 + n(2) * d2, z)};
  Y[13] = {mk(xi2m, -xi1m, z, z, z, z),
           mk(z, z, -one, d1 - n(2) * d2, n(2) * d1 - n(2) * d2, z)};
  Y[27] = {mk(xi2m, -xi1m, z, z, z, z),
           mk(z, z, one, d1 - n(2) * d2, n(2) * d1 - n(2) * d2, z)};
  return Y;
}

std::array<CurvePlane, kNX> x_planes(const SymbolValues &S) {
  auto B = nine_blocks(S);
  std::array<CurvePlane, kNX> X;
  for (int j = 0; j < 9; ++j) {
    const Block &b = B[size_t(j)];
    X[size_t(j)] = {b.l1C, b.vC};        // C_i
    X[size_t(9 + j)] = {b.l1T, b.vD};    // C-tilde_i
    X[size_t(18 + j)] = {b.l1C, b.vD};   // D_i
    X[size_t(27 + j)] = {b.l1T, b.vC};   // D-tilde_i
  }
  return X;
}

namespace {

std::array<u64, 12> plane_key_of(const CurvePlane &P) {
  auto rows = plane_rows(P);
  int rk = rref(rows);
  ENR_CHECK(rk == 2, "plane forms are dependent");
  std::array<u64, 12> key{};
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 6; ++j) key[size_t(6 * r + j)] = rows[size_t(r)][size_t(j)].packed();
  return key;
}

}  // namespace

CurveSystem::CurveSystem(const SymbolValues &sym) : S(sym) {
  const FieldDesc *F = S.F;
  auto n = [&](i128 v) { return Fq(F, v); };
  i128 a = S.a, b = S.b, c = S.c;

  // doubled Grams of the three quadrics cutting the surface, coordinates
  // (s,t,u,x,y,z)
  for (auto &g : gram) g.fill(Fq(F));
  auto set = [&](int q, int r, int cc, i128 v) {
    gram[size_t(q)][size_t(6 * r + cc)] = n(v);
    gram[size_t(q)][size_t(6 * cc + r)] = n(v);
  };
  set(0, 0, 0, 2), set(0, 3, 4, -1), set(0, 5, 5, -10);
  set(1, 0, 0, 2), set(1, 1, 1, -10), set(1, 3, 3, -2), set(1, 3, 4, -3), set(1, 4, 4, -4);
  set(2, 2, 2, 2), set(2, 3, 3, -2 * a), set(2, 4, 4, -2 * b), set(2, 5, 5, -2 * c);

  yref = y_planes(S);
  xref = x_planes(S);
  for (int j = 0; j < kNX; ++j) xkey[size_t(j)] = plane_key_of(xref[size_t(j)]);
  for (int j = 0; j < kNX; ++j)
    for (int k = j + 1; k < kNX; ++k)
      ENR_CHECK(xkey[size_t(j)] != xkey[size_t(k)], "listed planes collide");

  // net point of each fibration pair, from the F-side representative
  auto net_of = [&](const CurvePlane &P) {
    auto span = kernel(plane_rows(P), F);
    ENR_CHECK(span.size() == 4, "plane span defect");
    std::vector<std::vector<Fq>> cond;
    for (size_t r = 0; r < 4; ++r)
      for (size_t s = r; s < 4; ++s) {
        std::vector<Fq> row(3, Fq(F));
        for (int q = 0; q < 3; ++q) {
          Fq acc(F);
          for (int u = 0; u < 6; ++u)
            for (int v = 0; v < 6; ++v)
              acc = acc + span[r][size_t(u)] * gram[size_t(q)][size_t(6 * u + v)] *
                              span[s][size_t(v)];
          row[size_t(q)] = acc;
        }
        cond.push_back(std::move(row));
      }
    auto lam = kernel(cond, F);
    ENR_CHECK(lam.size() == 1, "plane does not lie on exactly one net member");
    size_t lead = 0;
    while (lam[0][lead].is_zero()) ++lead;
    Fq s = lam[0][lead].inv();
    return std::array<Fq, 3>{lam[0][0] * s, lam[0][1] * s, lam[0][2] * s};
  };
  for (int j = 0; j < 14; ++j) {
    net[size_t(j)] = net_of(yref[size_t(j)]);
    ENR_CHECK(net_of(yref[size_t(14 + j)]) == net[size_t(j)], "pair on different net members");
  }
  for (int j = 0; j < 14; ++j)
    for (int k = j + 1; k < 14; ++k)
      ENR_CHECK(net[size_t(j)] != net[size_t(k)], "net points collide");

  // each net member is a rank-4 quadric whose vertex line lies on both planes
  for (int j = 0; j < 14; ++j) {
    std::vector<std::vector<Fq>> G(6, std::vector<Fq>(6, Fq(F)));
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v)
        for (int q = 0; q < 3; ++q)
          G[size_t(u)][size_t(v)] =
              G[size_t(u)][size_t(v)] + net[size_t(j)][size_t(q)] * gram[size_t(q)][size_t(6 * u + v)];
    auto rad = kernel(G, F);
    ENR_CHECK(rad.size() == 2, "net member is not a rank-4 cone");
    for (auto &w : rad)
      for (int side : {j, 14 + j}) {
        const CurvePlane &P = yref[size_t(side)];
        Fq a1(F), a2(F);
        for (int u = 0; u < 6; ++u) {
          a1 = a1 + P.l1[size_t(u)] * w[size_t(u)];
          a2 = a2 + P.l2[size_t(u)] * w[size_t(u)];
        }
        ENR_CHECK(a1.is_zero() && a2.is_zero(), "vertex line escapes the plane");
      }
  }

  // every listed plane must classify to its own label
  for (int l = 0; l < kNY; ++l)
    ENR_CHECK(classify(yref[size_t(l)]) == l, "fibration self-classification failed");
  for (int j = 0; j < kNX; ++j)
    ENR_CHECK(classify(xref[size_t(j)]) == x_to_y_class(j),
              "curve plane classifies off its fibration");
}

int CurveSystem::classify(const CurvePlane &P) const {
  const FieldDesc *F = S.F;
  auto span = kernel(plane_rows(P), F);
  ENR_CHECK(span.size() == 4, "plane span defect");
  std::vector<std::vector<Fq>> cond;
  for (size_t r = 0; r < 4; ++r)
    for (size_t s = r; s < 4; ++s) {
      std::vector<Fq> row(3, Fq(F));
      for (int q = 0; q < 3; ++q) {
        Fq acc(F);
        for (int u = 0; u < 6; ++u)
          for (int v = 0; v < 6; ++v)
            acc = acc + span[r][size_t(u)] * gram[size_t(q)][size_t(6 * u + v)] * span[s][size_t(v)];
        row[size_t(q)] = acc;
      }
      cond.push_back(std::move(row));
    }
  auto lam = kernel(cond, F);
  ENR_CHECK(lam.size() == 1, "plane is not on the quadric net");
  size_t lead = 0;
  while (lam[0][lead].is_zero()) ++lead;
  Fq sc = lam[0][lead].inv();
  std::array<Fq, 3> pt{lam[0][0] * sc, lam[0][1] * sc, lam[0][2] * sc};

  int j = -1;
  for (int k = 0; k < 14; ++k)
    if (net[size_t(k)] == pt) {
      j = k;
      break;
    }
  ENR_CHECK(j >= 0, "net point matches no fibration");

  // ruling test against the F-side representative: planes of the same ruling
  // meet exactly in the cone's vertex line, opposite rulings meet in a plane
  std::vector<std::vector<Fq>> stack = plane_rows(P);
  auto ref = plane_rows(yref[size_t(j)]);
  stack.insert(stack.end(), ref.begin(), ref.end());
  int rk = rank_of(std::move(stack));
  if (rk == 2 || rk == 4) return j;
  ENR_CHECK(rk == 3, "plane meets the reference in unexpected dimension");
  return 14 + j;
}

int CurveSystem::match_x(const CurvePlane &P) const {
  auto key = plane_key_of(P);
  for (int j = 0; j < kNX; ++j)
    if (xkey[size_t(j)] == key) return j;
  ENR_CHECK(false, "plane is not on the curve list");
  return -1;
}

CurveAction action_from(const CurveSystem &C, const SymbolValues &moved) {
  ENR_CHECK(C.S.F == moved.F, "field mismatch");
  CurveAction A;
  auto yp = y_planes(moved);
  auto xp = x_planes(moved);
  std::array<bool, kNY> hity{};
  std::array<bool, kNX> hitx{};
  for (int l = 0; l < kNY; ++l) {
    A.y[size_t(l)] = C.classify(yp[size_t(l)]);
    ENR_CHECK(!hity[size_t(A.y[size_t(l)])], "Y action not a bijection");
    hity[size_t(A.y[size_t(l)])] = true;
  }
  for (int j = 0; j < kNX; ++j) {
    A.x[size_t(j)] = C.match_x(xp[size_t(j)]);
    ENR_CHECK(!hitx[size_t(A.x[size_t(j)])], "X action not a bijection");
    hitx[size_t(A.x[size_t(j)])] = true;
  }
  for (int j = 0; j < kNX; ++j)
    ENR_CHECK(x_to_y_class(A.x[size_t(j)]) == A.y[size_t(x_to_y_class(j))],
              "curve action is incompatible with the double cover");
  return A;
}

std::string generator_name(int g) {
  ENR_CHECK(g >= 0 && g < kNumGen, "bad generator index");
  return kGenName[g];
}

SymbolValues apply_code(const SymbolValues &S, u32 code) {
  ENR_CHECK(code < kSignGroupOrder, "bad group code");
  SymbolValues R = S;
  for (int j = 0; j < 10; ++j)
    if ((code >> j) & 1u) R.base[size_t(j)] = -R.base[size_t(j)];
  u32 f = (code >> 10) & 3u;
  for (u32 s = 0; s < f; ++s) R.r4 = R.r4 * S.base[0];
  for (int k = 0; k < 6; ++k) {
    Fq v = inner_flip(code, k) ? S.partner(k) : S.comp[size_t(k)];
    if ((code >> (12 + k)) & 1u) v = -v;
    R.comp[size_t(k)] = v;
  }
  return R;
}

SymbolValues apply_generator(const SymbolValues &S, int g) {
  ENR_CHECK(g >= 0 && g < kNumGen, "bad generator index");
  u32 code = g < 10 ? (u32(1) << g) : (g == 10 ? (u32(1) << 10) : (u32(1) << (g + 1)));
  return apply_code(S, code);
}

u32 compose_codes(u32 g, u32 h) {
  ENR_CHECK(g < kSignGroupOrder && h < kSignGroupOrder, "bad group code");
  u32 base = (g ^ h) & 0x3ffu;
  u32 fg = (g >> 10) & 3u, fh = (h >> 10) & 3u;
  u32 f = (g & 1u) ? (fg + 4 - fh) & 3u : (fg + fh) & 3u;
  u32 r = base | (f << 10);
  for (int k = 0; k < 6; ++k) {
    u32 bit = ((g >> (12 + k)) ^ (h >> (12 + k))) & 1u;
    if (inner_flip(h, k) && product_sign(g, k)) bit ^= 1u;
    r |= bit << (12 + k);
  }
  return r;
}

u32 decompose_symbols(const SymbolValues &base, const SymbolValues &img) {
  ENR_CHECK(base.F == img.F, "field mismatch");
  u32 code = 0;
  for (int j = 0; j < 10; ++j) {
    if (img.base[size_t(j)] == base.base[size_t(j)]) continue;
    ENR_CHECK(img.base[size_t(j)] == -base.base[size_t(j)], "image is not a sign map");
    code |= u32(1) << j;
  }
  Fq r = base.r4;
  u32 f = 0;
  while (f < 4 && img.r4 != r) {
    r = r * base.base[0];
    ++f;
  }
  ENR_CHECK(f < 4, "fourth root image is not an i-power multiple");
  code |= f << 10;
  for (int k = 0; k < 6; ++k) {
    Fq expect = inner_flip(code, k) ? base.partner(k) : base.comp[size_t(k)];
    ENR_CHECK(!(expect == -expect), "branch pair is ambiguous");
    if (img.comp[size_t(k)] == expect) continue;
    ENR_CHECK(img.comp[size_t(k)] == -expect, "branch image escapes the pair");
    code |= u32(1) << (12 + k);
  }
  return code;
}

std::array<CurveAction, kNumGen> generator_actions(const CurveSystem &C) {
  std::array<CurveAction, kNumGen> A;
  for (int g = 0; g < kNumGen; ++g) A[size_t(g)] = action_from(C, apply_generator(C.S, g));
  return A;
}

SymbolValues frobenius_symbols(const SymbolValues &S) {
  SymbolValues R = S;
  for (auto &v : R.base) v = v.frobenius();
  R.r4 = R.r4.frobenius();
  for (auto &v : R.comp) v = v.frobenius();
  // must remain a sign map of the tower
  (void)decompose_symbols(S, R);
  return R;
}

CurveAction frobenius_action_on_curves(const CurveSystem &C) {
  return action_from(C, frobenius_symbols(C.S));
}

std::array<int, kNY> involution_y(const CurveSystem &C) {
  std::array<int, kNY> perm{};
  std::array<bool, kNY> hit{};
  for (int l = 0; l < kNY; ++l) {
    CurvePlane P = C.yref[size_t(l)];
    for (int j = 0; j < 3; ++j) {
      P.l1[size_t(j)] = -P.l1[size_t(j)];
      P.l2[size_t(j)] = -P.l2[size_t(j)];
    }
    perm[size_t(l)] = C.classify(P);
    ENR_CHECK(!hit[size_t(perm[size_t(l)])], "involution is not a bijection");
    hit[size_t(perm[size_t(l)])] = true;
  }
  return perm;
}

CurveSystem make_curve_system(const Triplet &t, u64 p) {
  if (p) return CurveSystem(embed_symbols(t, p));
  auto bad = bad_primes(t);
  std::string last = "no prime tried";
  for (u64 q = 7; q < 1500; ++q) {
    if (!is_prime(q)) continue;
    if (std::find(bad.begin(), bad.end(), i128(q)) != bad.end()) continue;
    try {
      return CurveSystem(embed_symbols(t, q));
    } catch (const std::logic_error &e) {
      last = e.what();
    }
  }
  ENR_CHECK(false, std::string("no usable prime for the curve system: ") + last);
  throw;  // unreachable
}

}  // namespace enr
