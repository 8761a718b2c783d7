#include "enr/lattice.hpp"

#include <algorithm>

namespace enr {

i128 IntLattice::det() const { return det_bareiss(gram); }
i128 IntLattice::disc() const { return abs128(det()); }

bool IntLattice::is_even() const {
  for (int i = 0; i < gram.rows; ++i)
    if (gram.at(i, i) % 2 != 0) return false;
  return true;
}

i128 IntLattice::pair(const std::vector<i128> &x, const std::vector<i128> &y) const {
  ENR_CHECK(int(x.size()) == rank() && int(y.size()) == rank(), "pairing shape");
  i128 s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (!x[size_t(i)]) continue;
    for (int j = 0; j < rank(); ++j)
      if (y[size_t(j)])
        s = add_ck(s, mul_ck(x[size_t(i)], mul_ck(gram.at(i, j), y[size_t(j)])));
  }
  return s;
}

i128 QuotientStructure::order() const {
  if (free_rank > 0) return 0;
  i128 o = 1;
  for (i128 d : divisors) o = mul_ck(o, d);
  return o;
}

std::string QuotientStructure::str() const {
  if (divisors.empty() && free_rank == 0) return "0";
  std::string s;
  for (i128 d : divisors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + to_string(d);
  }
  if (free_rank > 0) {
    if (!s.empty()) s += " + ";
    s += free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  }
  return s;
}

QuotientStructure smith_quotient(const Mat &m) {
  SNFResult s = snf(m);
  QuotientStructure q;
  for (int i = 0; i < s.rank; ++i)
    if (s.D.at(i, i) > 1) q.divisors.push_back(s.D.at(i, i));
  q.free_rank = m.cols - s.rank;
  return q;
}

bool express_in_basis(const Mat &B, const std::vector<i128> &target, std::vector<i128> *coords) {
  Mat A = B.transposed();  // columns are the basis vectors
  ENR_CHECK(int(target.size()) == A.rows, "express shape");
  SNFResult s = snf(A);
  std::vector<i128> y = s.U.apply(target);
  std::vector<i128> w(size_t(A.cols), 0);
  for (int i = 0; i < A.rows; ++i) {
    if (i < s.rank) {
      i128 d = s.D.at(i, i);
      if (y[size_t(i)] % d != 0) return false;
      w[size_t(i)] = y[size_t(i)] / d;
    } else if (y[size_t(i)] != 0) {
      return false;
    }
  }
  if (coords) *coords = s.V.apply(w);
  return true;
}

namespace {

Mat gram_L() {
  // basis (G1, F1..F14); index i >= 1 holds F_i
  Mat g(15, 15);
  for (int i = 1; i <= 14; ++i)
    for (int j = 1; j <= 14; ++j) g.at(i, j) = (i == j) ? 0 : 2;
  g.at(0, 1) = g.at(1, 0) = 4;
  for (int j = 2; j <= 14; ++j) g.at(0, j) = g.at(j, 0) = 2;
  return g;
}

Mat gram_M() {
  // basis (D1, C1..C9); the two rulings through a common point meet twice
  Mat g(10, 10);
  for (int i = 1; i <= 9; ++i)
    for (int j = 1; j <= 9; ++j) g.at(i, j) = (i == j) ? 0 : 1;
  g.at(0, 1) = g.at(1, 0) = 2;
  for (int j = 2; j <= 9; ++j) g.at(0, j) = g.at(j, 0) = 1;
  return g;
}

// adjoin half-integer classes (given as doubled coordinate rows) to a lattice
LatticeExt extend_by_halves(const IntLattice &coarse, const std::vector<std::vector<i128>> &doubled,
                            i128 want_index) {
  int n = coarse.rank();
  Mat stack(n + int(doubled.size()), n);
  for (int i = 0; i < n; ++i) stack.at(i, i) = 2;
  for (size_t k = 0; k < doubled.size(); ++k) {
    ENR_CHECK(int(doubled[k].size()) == n, "half-class shape");
    for (int j = 0; j < n; ++j) stack.at(n + int(k), j) = doubled[k][j];
  }
  // rows of H: triangular basis of the doubled lattice
  Mat H = hnf(stack);
  LatticeExt E;
  E.coarse = coarse;
  E.basis2 = Mat(n, n);
  i128 db = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) E.basis2.at(i, j) = H.at(i, j);
    ENR_CHECK(H.at(i, i) > 0, "extension basis is not full rank");
    db = mul_ck(db, H.at(i, i));
  }
  Mat g4 = E.basis2 * coarse.gram * E.basis2.transposed();
  E.fine.gram = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ENR_CHECK(g4.at(i, j) % 4 == 0, "pairing not integral on the extension");
      E.fine.gram.at(i, j) = g4.at(i, j) / 4;
    }
  for (int i = 0; i < n; ++i) E.fine.labels.push_back("b" + std::to_string(i + 1));
  ENR_CHECK(E.fine.is_even(), "extension is not even");
  i128 two_n = i128(1) << n;
  ENR_CHECK(two_n % db == 0, "extension index");
  E.index = two_n / db;
  ENR_CHECK(E.index == want_index, "extension index");
  // discriminants drop by the square of the index
  ENR_CHECK(coarse.disc() == mul_ck(E.fine.disc(), mul_ck(E.index, E.index)),
            "discriminant/index mismatch");
  return E;
}

}  // namespace

bool LatticeExt::contains2(const std::vector<i128> &doubled) const {
  return express_in_basis(basis2, doubled, nullptr);
}

std::vector<i128> LatticeExt::fine_coords(const std::vector<i128> &doubled) const {
  std::vector<i128> c;
  ENR_CHECK(express_in_basis(basis2, doubled, &c), "class is not in the lattice");
  return c;
}

IntLattice build_L() {
  IntLattice L;
  L.labels.push_back("G1");
  for (int i = 1; i <= 14; ++i) L.labels.push_back("F" + std::to_string(i));
  L.gram = gram_L();
  ENR_CHECK(L.is_even() && L.det() != 0, "fibration lattice degenerate");
  return L;
}

std::vector<i128> y_class_in_L(int ylabel) {
  ENR_CHECK(ylabel >= 0 && ylabel < kNY, "label range");
  std::vector<i128> v(15, 0);
  if (ylabel < 14) {
    v[size_t(ylabel + 1)] = 1;  // F_i sits at index i
    return v;
  }
  int j = ylabel - 13;
  if (j == 1) {
    v[0] = 1;
    return v;
  }
  v[0] = 1;  // G_j = (F1 + G1) - F_j for j >= 2
  v[1] = 1;
  v[size_t(j)] = -1;
  return v;
}

LatticeExt build_Lprime() {
  // doubled coordinates of the four adjoined classes (halves of sums of
  // pairwise disjoint fiber components)
  static const int idx[4][7] = {
      {1, 2, 3, 10, 12, -1, -1},
      {0, 1, 4, 5, 6, 10, 11},
      {1, 4, 7, 13, 14, -1, -1},
      {0, 1, 7, 8, 9, 11, 12},
  };
  std::vector<std::vector<i128>> halves;
  for (auto &row : idx) {
    std::vector<i128> v(15, 0);
    for (int k : row)
      if (k >= 0) v[size_t(k)] = 1;
    halves.push_back(std::move(v));
  }
  return extend_by_halves(build_L(), halves, 16);
}

NumXBuild build_M_and_NumX(RCase rc) {
  NumXBuild out;
  out.rc = rc;
  out.M.labels.push_back("D1");
  for (int i = 1; i <= 9; ++i) out.M.labels.push_back("C" + std::to_string(i));
  out.M.gram = gram_M();
  ENR_CHECK(out.M.is_even() && out.M.det() != 0, "curve lattice degenerate");
  std::vector<i128> dR(10, 1);
  dR[rc == RCase::sumC ? 0 : 1] = 0;  // 2R omits D1 (sumC) or C1 (sumD)
  out.ext = extend_by_halves(out.M, {dR}, 2);
  out.r_square = out.M.pair(dR, dR) / 4;
  out.even = out.ext.fine.is_even();
  out.unimodular = out.ext.fine.disc() == 1;
  out.sig = inertia(out.ext.fine.gram);
  return out;
}

std::vector<i128> x_class_in_M(int xlabel) {
  ENR_CHECK(xlabel >= 0 && xlabel < kNX, "label range");
  std::vector<i128> v(10, 0);
  int i = xlabel % 9 + 1;
  if (xlabel < 18) {
    v[size_t(i)] = 1;  // C_i and its twist agree numerically
    return v;
  }
  if (i == 1) {
    v[0] = 1;
    return v;
  }
  v[0] = 1;  // D_j = (C1 + D1) - C_j for j >= 2
  v[1] = 1;
  v[size_t(i)] = -1;
  return v;
}

namespace {

// permutation of labels -> matrix in the given class model; the permutation
// must act linearly (it has to respect the relations among the classes)
Mat perm_matrix(int nlab, int rank, const std::vector<int> &perm,
                const std::vector<int> &basis_labels,
                std::vector<i128> (*cls)(int), const Mat &gram) {
  Mat m(rank, rank);
  for (int j = 0; j < rank; ++j) {
    std::vector<i128> img = cls(perm[size_t(basis_labels[size_t(j)])]);
    for (int i = 0; i < rank; ++i) m.at(i, j) = img[size_t(i)];
  }
  for (int l = 0; l < nlab; ++l)
    ENR_CHECK(m.apply(cls(l)) == cls(perm[size_t(l)]), "curve permutation is not linear");
  ENR_CHECK(m.transposed() * gram * m == gram, "permutation breaks the pairing");
  return m;
}

}  // namespace

Mat y_perm_matrix_L(const std::array<int, kNY> &perm) {
  std::vector<int> basis{14};  // G1, then F1..F14
  for (int i = 0; i < 14; ++i) basis.push_back(i);
  return perm_matrix(kNY, 15, std::vector<int>(perm.begin(), perm.end()), basis, y_class_in_L,
                     gram_L());
}

Mat x_perm_matrix_M(const std::array<int, kNX> &perm) {
  std::vector<int> basis{18};  // D1, then C1..C9
  for (int i = 0; i < 9; ++i) basis.push_back(i);
  return perm_matrix(kNX, 10, std::vector<int>(perm.begin(), perm.end()), basis, x_class_in_M,
                     gram_M());
}

Mat to_fine_basis(const LatticeExt &E, const Mat &on_coarse) {
  int n = E.fine.rank();
  ENR_CHECK(on_coarse.rows == E.coarse.rank() && on_coarse.cols == on_coarse.rows,
            "endomorphism shape");
  Mat out(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<i128> bj(size_t(n), 0);
    for (int k = 0; k < n; ++k) bj[size_t(k)] = E.basis2.at(j, k);
    std::vector<i128> img = on_coarse.apply(bj);
    std::vector<i128> c;
    ENR_CHECK(express_in_basis(E.basis2, img, &c), "image leaves the fine lattice");
    for (int i = 0; i < n; ++i) out.at(i, j) = c[size_t(i)];
  }
  return out;
}

SigmaAction sigma_action(const Triplet &t, u64 p) {
  CurveSystem C = make_curve_system(t, p);
  SigmaAction s;
  s.perm = involution_y(C);
  s.on_L = y_perm_matrix_L(s.perm);
  LatticeExt E = build_Lprime();
  s.on_Lp = to_fine_basis(E, s.on_L);
  ENR_CHECK(s.on_Lp * s.on_Lp == Mat::identity(15), "deck transformation must square to one");
  ENR_CHECK(s.on_Lp.transposed() * E.fine.gram * s.on_Lp == E.fine.gram,
            "deck transformation breaks the pairing");
  return s;
}

PullbackReport pullback_check(const Triplet &t, u64 p) {
  IntLattice L = build_L();
  Mat gm = gram_M();
  PullbackReport r;
  // D1 -> G1, C_i -> F_i lands on the same index layout in both bases
  r.pairings_doubled = true;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      if (L.gram.at(i, j) != 2 * gm.at(i, j)) r.pairings_doubled = false;
  std::vector<i128> h(15, 0);
  h[0] = h[1] = 1;  // image of C1 + D1
  r.h_self = L.pair(h, h);
  SigmaAction s = sigma_action(t, p);
  r.fixed_rank = kernel_basis(s.on_Lp - Mat::identity(15)).cols;
  return r;
}

bool beauville_criterion(const Mat &gram, const Mat &sigma) {
  int n = gram.rows;
  ENR_CHECK(sigma * sigma == Mat::identity(n), "involution squared");
  ENR_CHECK(sigma.transposed() * gram * sigma == gram, "involution breaks the pairing");
  Mat K = kernel_basis(sigma + Mat::identity(n));
  int r = K.cols;
  ENR_CHECK(r <= 24, "eigenlattice too large to enumerate");
  Mat ga = K.transposed() * gram * K;
  // no class of the (-1)-eigenlattice may have self-intersection 2 mod 4;
  // squares are constant on classes mod 2 because the lattice is even
  for (u64 mask = 1; mask < (u64(1) << r); ++mask) {
    i128 q = 0;
    for (int i = 0; i < r; ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = 0; j < r; ++j)
        if (mask >> j & 1) q += ga.at(i, j);
    }
    if (((q % 4) + 4) % 4 == 2) return false;
  }
  return true;
}

bool beauville_for_surface(const Triplet &t, u64 p) {
  LatticeExt E = build_Lprime();
  SigmaAction s = sigma_action(t, p);
  return beauville_criterion(E.fine.gram, s.on_Lp);
}

}  // namespace enr
