#pragma once

#include "enr/poly.hpp"
#include "enr/util.hpp"

namespace enr {

// Dense integer matrix, row major.  Everything here is exact; checked i128
// throws on overflow rather than wrapping.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<i128> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), 0) {}
  i128 &at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
  const i128 &at(int i, int j) const {
    return a[size_t(i) * size_t(cols) + size_t(j)];
  }
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  friend Mat operator*(const Mat &x, const Mat &y) {
    ENR_CHECK(x.cols == y.rows, "matmul shape");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        i128 v = x.at(i, k);
        if (!v) continue;
        for (int j = 0; j < y.cols; ++j)
          if (y.at(k, j)) r.at(i, j) = add_ck(r.at(i, j), mul_ck(v, y.at(k, j)));
      }
    return r;
  }
  friend Mat operator+(const Mat &x, const Mat &y) {
    ENR_CHECK(x.rows == y.rows && x.cols == y.cols, "matadd shape");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = add_ck(r.a[i], y.a[i]);
    return r;
  }
  friend Mat operator-(const Mat &x, const Mat &y) {
    ENR_CHECK(x.rows == y.rows && x.cols == y.cols, "matsub shape");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = sub_ck(r.a[i], y.a[i]);
    return r;
  }
  friend bool operator==(const Mat &x, const Mat &y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  Mat transposed() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  std::vector<i128> apply(const std::vector<i128> &v) const {
    ENR_CHECK(int(v.size()) == cols, "apply shape");
    std::vector<i128> r(size_t(rows), 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j)) r[size_t(i)] = add_ck(r[size_t(i)], mul_ck(at(i, j), v[size_t(j)]));
    return r;
  }
};

// Affine system A x = b over F_p: one particular solution plus a kernel
// basis, or nothing when the system is inconsistent.  Entries reduced mod p.
struct FpAffine {
  std::vector<u64> particular;
  std::vector<std::vector<u64>> kernel;
};
std::optional<FpAffine> fp_solve(std::vector<std::vector<u64>> A, std::vector<u64> b, u64 p);

// Fraction-free Gaussian elimination.
i128 det_bareiss(Mat m);

// Row Hermite normal form.  Returns H (same shape, rows reduced upward) and,
// if U is non-null, a unimodular U with U * A = H.
Mat hnf(const Mat &A, Mat *U = nullptr);

struct SNFResult {
  Mat D;     // diagonal, d1 | d2 | ..., non-negative
  Mat U, V;  // unimodular, U*A*V = D
  int rank = 0;
};
SNFResult snf(const Mat &A);

// Basis for { x : A x = 0 } as columns.
Mat kernel_basis(const Mat &A);

// Characteristic polynomial det(T*I - A) by Faddeev–LeVerrier, exact.
IntPoly charpoly(const Mat &A);

// Signature (n_plus, n_minus, n_zero) of a symmetric integer matrix by
// rational congruence diagonalization.
struct Inertia {
  int pos = 0, neg = 0, zero = 0;
};
Inertia inertia(const Mat &sym);

}  // namespace enr
