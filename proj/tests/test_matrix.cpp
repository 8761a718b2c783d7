#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "enr/matrix.hpp"
#include "enr/poly.hpp"

using namespace enr;

namespace {
Mat random_small(std::mt19937_64 &rng, int r, int c, int lo, int hi) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = i128(lo + i64(rng() % u64(hi - lo + 1)));
  return m;
}

i128 det_cofactor(const Mat &m) {
  int n = m.rows;
  if (n == 1) return m.a[0];
  i128 s = 0;
  for (int j = 0; j < n; ++j) {
    Mat sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c)
        if (c != j) sub.at(r - 1, cc++) = m.a[size_t(r) * size_t(n) + size_t(c)];
    }
    i128 term = m.a[size_t(j)] * det_cofactor(sub);
    s += (j % 2 == 0) ? term : -term;
  }
  return s;
}
}  // namespace

TEST_CASE("Bareiss determinant vs cofactor expansion") {
  auto rng = seeded_rng(10);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + int(rng() % 5);
    Mat m = random_small(rng, n, n, -6, 6);
    CHECK(det_bareiss(m) == det_cofactor(m));
  }
  Mat id(3, 3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
  CHECK(det_bareiss(id) == 1);
}

TEST_CASE("HNF: U*A = H, U unimodular, H in echelon form with reduced entries") {
  auto rng = seeded_rng(11);
  for (int it = 0; it < 30; ++it) {
    int r = 2 + int(rng() % 4), c = 2 + int(rng() % 4);
    Mat a = random_small(rng, r, c, -9, 9);
    Mat u;
    Mat h = hnf(a, &u);
    CHECK(u * a == h);
    i128 du = det_bareiss(u);
    CHECK((du == 1 || du == -1));
    // pivots positive, entries above them reduced
    int prev = -1;
    for (int i = 0; i < h.rows; ++i) {
      int j = 0;
      while (j < h.cols && h.at(i, j) == 0) ++j;
      if (j == h.cols) continue;
      CHECK(j > prev);
      prev = j;
      CHECK(h.at(i, j) > 0);
      for (int i2 = 0; i2 < i; ++i2) {
        CHECK(h.at(i2, j) >= 0);
        CHECK(h.at(i2, j) < h.at(i, j));
      }
    }
  }
}

TEST_CASE("SNF: U*A*V = D, divisibility chain, known elementary divisors") {
  auto rng = seeded_rng(12);
  for (int it = 0; it < 30; ++it) {
    int r = 2 + int(rng() % 4), c = 2 + int(rng() % 4);
    Mat a = random_small(rng, r, c, -9, 9);
    auto s = snf(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK((det_bareiss(s.U) == 1 || det_bareiss(s.U) == -1));
    CHECK((det_bareiss(s.V) == 1 || det_bareiss(s.V) == -1));
    for (int i = 0; i + 1 < std::min(r, c); ++i) {
      i128 d0 = s.D.at(i, i), d1 = s.D.at(i + 1, i + 1);
      CHECK(d0 >= 0);
      if (d0 != 0) CHECK(d1 % d0 == 0);
      if (d0 == 0) CHECK(d1 == 0);
    }
  }
  // index-4 sublattice of Z^2 with cyclic quotient Z/2 x Z/2
  Mat m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 2;
  auto s = snf(m);
  CHECK(s.D.at(0, 0) == 2);
  CHECK(s.D.at(1, 1) == 2);
  // and one with quotient Z/4
  Mat m2(2, 2);
  m2.at(0, 0) = 1;
  m2.at(0, 1) = 1;
  m2.at(1, 1) = 4;
  auto s2 = snf(m2);
  CHECK(s2.D.at(0, 0) == 1);
  CHECK(s2.D.at(1, 1) == 4);
}

TEST_CASE("kernel_basis spans the nullspace") {
  auto rng = seeded_rng(13);
  for (int it = 0; it < 30; ++it) {
    int r = 1 + int(rng() % 3), c = r + 1 + int(rng() % 3);
    Mat a = random_small(rng, r, c, -4, 4);
    Mat ker = kernel_basis(a);
    auto s = snf(a);
    CHECK(ker.cols == c - s.rank);
    Mat prod = a * ker;
    for (i128 x : prod.a) CHECK(x == 0);
    // kernel columns extend to a basis of Z^c, so their SNF is all ones
    if (ker.cols > 0) {
      auto sk = snf(ker);
      for (int i = 0; i < ker.cols; ++i) CHECK(sk.D.at(i, i) == 1);
    }
  }
}

TEST_CASE("charpoly on companion and permutation matrices") {
  // companion matrix of x^3 - 2x - 5
  Mat comp(3, 3);
  comp.at(0, 2) = 5;
  comp.at(1, 0) = 1;
  comp.at(1, 2) = 2;
  comp.at(2, 1) = 1;
  auto cp = charpoly(comp);
  IntPoly want;
  want.c = {-5, -2, 0, 1};
  CHECK(cp == want);

  // 4-cycle permutation: x^4 - 1
  Mat perm(4, 4);
  perm.at(0, 1) = 1;
  perm.at(1, 2) = 1;
  perm.at(2, 3) = 1;
  perm.at(3, 0) = 1;
  auto pp = charpoly(perm);
  IntPoly w2;
  w2.c = {-1, 0, 0, 0, 1};
  CHECK(pp == w2);

  // charpoly evaluated at the matrix is zero (Cayley-Hamilton, small check)
  auto rng = seeded_rng(14);
  Mat m = random_small(rng, 3, 3, -3, 3);
  auto f = charpoly(m);
  Mat acc(3, 3);  // f(m)
  Mat pw(3, 3);
  for (int i = 0; i < 3; ++i) pw.at(i, i) = 1;
  for (size_t d = 0; d < f.c.size(); ++d) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc.at(i, j) += f.c[d] * pw.at(i, j);
    pw = pw * m;
  }
  for (i128 x : acc.a) CHECK(x == 0);
}

TEST_CASE("inertia of diagonal and hyperbolic forms") {
  Mat d(3, 3);
  d.at(0, 0) = 2;
  d.at(1, 1) = -7;
  d.at(2, 2) = 0;
  auto in = inertia(d);
  CHECK(in.pos == 1);
  CHECK(in.neg == 1);
  CHECK(in.zero == 1);

  // hyperbolic plane: signature (1,1)
  Mat h(2, 2);
  h.at(0, 1) = 1;
  h.at(1, 0) = 1;
  auto ih = inertia(h);
  CHECK(ih.pos == 1);
  CHECK(ih.neg == 1);
  CHECK(ih.zero == 0);

  // congruence invariance: S^T A S has the same inertia for unimodular S
  auto rng = seeded_rng(15);
  for (int it = 0; it < 20; ++it) {
    int n = 2 + int(rng() % 3);
    Mat a = random_small(rng, n, n, -4, 4);
    Mat sym(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sym.at(i, j) = a.at(i, j) + a.at(j, i);
    Mat s(n, n);
    for (int i = 0; i < n; ++i) s.at(i, i) = 1;
    // a few random unimodular shears
    for (int k = 0; k < 6; ++k) {
      int i = int(rng() % u64(n)), j = int(rng() % u64(n));
      if (i == j) continue;
      i128 t = i128(rng() % 5) - 2;
      for (int col = 0; col < n; ++col) s.at(i, col) += t * s.at(j, col);
    }
    Mat c = s.transposed() * sym * s;
    auto i1 = inertia(sym), i2 = inertia(c);
    CHECK(i1.pos == i2.pos);
    CHECK(i1.neg == i2.neg);
    CHECK(i1.zero == i2.zero);
  }
}

TEST_CASE("cyclotomic polynomials") {
  IntPoly f12;
  f12.c = {1, 0, -1, 0, 1};
  CHECK(cyclotomic(12) == f12);
  IntPoly f1;
  f1.c = {-1, 1};
  CHECK(cyclotomic(1) == f1);
  IntPoly f8;
  f8.c = {1, 0, 0, 0, 1};
  CHECK(cyclotomic(8) == f8);
  // product over divisors of 20 gives x^20 - 1
  IntPoly prod;
  prod.c = {1};
  for (int d : {1, 2, 4, 5, 10, 20}) prod = prod * cyclotomic(d);
  IntPoly want;
  want.c.assign(21, 0);
  want.c[0] = -1;
  want.c[20] = 1;
  CHECK(prod == want);
  // degree is Euler phi
  CHECK(cyclotomic(105).deg() == 48);
}

TEST_CASE("divide_exact succeeds exactly on multiples") {
  IntPoly a;
  a.c = {-1, 0, 0, 0, 0, 0, 1};  // x^6 - 1
  IntPoly b;
  b.c = {-1, 1};  // x - 1
  auto q = divide_exact(a, b);
  REQUIRE(q.has_value());
  CHECK((*q * b) == a);
  IntPoly c;
  c.c = {1, 1};  // x + 1 divides
  CHECK(divide_exact(a, c).has_value());
  IntPoly d;
  d.c = {2, 1};  // x + 2 does not
  CHECK(!divide_exact(a, d).has_value());
  IntPoly e;
  e.c = {-2, 2};  // 2x - 2: quotient not integral at the top coefficient
  CHECK(!divide_exact(b, e).has_value());
}

TEST_CASE("complex_roots finds all roots of a split cubic") {
  IntPoly f;
  // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
  f.c = {-6, 11, -6, 1};
  auto roots = complex_roots(f);
  REQUIRE(roots.size() == 3);
  std::vector<double> re;
  for (auto &z : roots) {
    CHECK(std::abs(z.imag()) < 1e-9);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(re[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(re[2] == doctest::Approx(3.0).epsilon(1e-9));
  // roots of x^2 + 1 on the unit circle
  IntPoly g;
  g.c = {1, 0, 1};
  auto rg = complex_roots(g);
  REQUIRE(rg.size() == 2);
  for (auto &z : rg) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
}

TEST_CASE("IntPoly eval, reversal, sign scaling") {
  IntPoly f;
  f.c = {1, 2, 3};  // 3x^2 + 2x + 1
  CHECK(f.eval(i128(2)) == 17);
  CHECK(f.eval(Rational(1, 2)) == Rational(1) + Rational(1) + Rational(3, 4));
  auto r = f.reversed();
  CHECK(r.c == std::vector<i128>{3, 2, 1});
  auto s = scale_arg_sign(f, -1);
  CHECK(s.eval(i128(-2)) == 17);
}

TEST_CASE("mod-p affine systems: particular solutions and kernels") {
  auto rng = seeded_rng(15);
  const u64 p = 13;
  auto matvec = [&](const std::vector<std::vector<u64>> &A, const std::vector<u64> &x) {
    std::vector<u64> r(A.size(), 0);
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = 0; j < x.size(); ++j) r[i] = (r[i] + A[i][j] * x[j]) % p;
    return r;
  };
  for (int it = 0; it < 50; ++it) {
    size_t m = 1 + rng() % 4, n = 1 + rng() % 6;
    std::vector<std::vector<u64>> A(m, std::vector<u64>(n));
    for (auto &row : A)
      for (auto &e : row) e = rng() % p;
    std::vector<u64> x(n);
    for (auto &e : x) e = rng() % p;
    auto b = matvec(A, x);
    auto sol = fp_solve(A, b, p);
    REQUIRE(sol.has_value());
    CHECK(matvec(A, sol->particular) == b);
    // each kernel vector solves the homogeneous system, and shifting the
    // particular solution by all of them still solves the affine one
    std::vector<u64> zero(m, 0);
    std::vector<u64> shifted = sol->particular;
    for (const auto &kv : sol->kernel) {
      CHECK(matvec(A, kv) == zero);
      for (size_t j = 0; j < n; ++j) shifted[j] = (shifted[j] + kv[j]) % p;
    }
    CHECK(matvec(A, shifted) == b);
  }
  std::vector<std::vector<u64>> A{{1, 2}, {2, 4}};
  CHECK(!fp_solve(A, {1, 3}, p).has_value());
  auto s = fp_solve(A, {1, 2}, p);
  REQUIRE(s.has_value());
  CHECK(s->kernel.size() == 1);
}
