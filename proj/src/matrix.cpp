#include "enr/matrix.hpp"

#include "enr/arith.hpp"

namespace enr {

std::optional<FpAffine> fp_solve(std::vector<std::vector<u64>> A, std::vector<u64> b, u64 p) {
  size_t m = A.size(), n = m ? A[0].size() : 0;
  ENR_CHECK(b.size() == m, "fp_solve shape");
  std::vector<int> pivot_of_col(n, -1);
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < m; ++col) {
    size_t sel = rank;
    while (sel < m && A[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(A[sel], A[rank]);
    std::swap(b[sel], b[rank]);
    u64 iv = powmod(A[rank][col], p - 2, p);
    for (size_t j = 0; j < n; ++j) A[rank][j] = mulmod(A[rank][j], iv, p);
    b[rank] = mulmod(b[rank], iv, p);
    for (size_t r = 0; r < m; ++r) {
      if (r == rank || A[r][col] == 0) continue;
      u64 f = A[r][col];
      for (size_t j = 0; j < n; ++j) A[r][j] = (A[r][j] + p - mulmod(f, A[rank][j], p)) % p;
      b[r] = (b[r] + p - mulmod(f, b[rank], p)) % p;
    }
    pivot_of_col[col] = int(rank);
    ++rank;
  }
  for (size_t r = rank; r < m; ++r)
    if (b[r]) return std::nullopt;
  FpAffine s;
  s.particular.assign(n, 0);
  for (size_t col = 0; col < n; ++col)
    if (pivot_of_col[col] >= 0) s.particular[col] = b[size_t(pivot_of_col[col])];
  for (size_t fc = 0; fc < n; ++fc) {
    if (pivot_of_col[fc] >= 0) continue;
    std::vector<u64> k(n, 0);
    k[fc] = 1;
    for (size_t col = 0; col < n; ++col)
      if (pivot_of_col[col] >= 0) k[col] = (p - A[size_t(pivot_of_col[col])][fc]) % p;
    s.kernel.push_back(std::move(k));
  }
  return s;
}

i128 det_bareiss(Mat m) {
  ENR_CHECK(m.rows == m.cols, "det of a non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        i128 t = sub_ck(mul_ck(m.at(i, j), m.at(k, k)),
                        mul_ck(m.at(i, k), m.at(k, j)));
        ENR_CHECK(t % prev == 0, "bareiss divisibility");
        m.at(i, j) = t / prev;
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

namespace {

void row_axpy(Mat &m, int dst, int src, i128 f) {
  if (!f) return;
  for (int j = 0; j < m.cols; ++j)
    m.at(dst, j) = add_ck(m.at(dst, j), mul_ck(f, m.at(src, j)));
}
void row_swap(Mat &m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
void row_neg(Mat &m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}
void col_axpy(Mat &m, int dst, int src, i128 f) {
  if (!f) return;
  for (int i = 0; i < m.rows; ++i)
    m.at(i, dst) = add_ck(m.at(i, dst), mul_ck(f, m.at(i, src)));
}
void col_swap(Mat &m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}
void col_neg(Mat &m, int j) {
  for (int r = 0; r < m.rows; ++r) m.at(r, j) = -m.at(r, j);
}

}  // namespace

Mat hnf(const Mat &A, Mat *U) {
  Mat H = A;
  Mat T = Mat::identity(A.rows);
  int r = 0;  // current pivot row
  for (int c = 0; c < H.cols && r < H.rows; ++c) {
    // reduce column c below r to a single entry via Euclid on rows
    for (;;) {
      int piv = -1;
      i128 best = 0;
      for (int i = r; i < H.rows; ++i) {
        i128 v = abs128(H.at(i, c));
        if (v != 0 && (piv < 0 || v < best)) {
          piv = i;
          best = v;
        }
      }
      if (piv < 0) break;
      row_swap(H, r, piv);
      row_swap(T, r, piv);
      if (H.at(r, c) < 0) {
        row_neg(H, r);
        row_neg(T, r);
      }
      bool clean = true;
      for (int i = r + 1; i < H.rows; ++i) {
        i128 q = H.at(i, c) / H.at(r, c);
        // floor division so remainders stay in [0, pivot)
        if (H.at(i, c) % H.at(r, c) < 0) q -= 1;
        if (q) {
          row_axpy(H, i, r, -q);
          row_axpy(T, i, r, -q);
        }
        if (H.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H.at(r, c) != 0) {
      // reduce entries above the pivot into [0, pivot)
      for (int i = 0; i < r; ++i) {
        i128 q = H.at(i, c) / H.at(r, c);
        if (H.at(i, c) % H.at(r, c) < 0) q -= 1;
        if (q) {
          row_axpy(H, i, r, -q);
          row_axpy(T, i, r, -q);
        }
      }
      ++r;
    }
  }
  if (U) *U = T;
  return H;
}

SNFResult snf(const Mat &A) {
  SNFResult R;
  R.D = A;
  R.U = Mat::identity(A.rows);
  R.V = Mat::identity(A.cols);
  Mat &D = R.D, &U = R.U, &V = R.V;
  int n = std::min(A.rows, A.cols);
  int t = 0;
  for (; t < n; ++t) {
    // find smallest nonzero entry in the remaining block
    int pi = -1, pj = -1;
    i128 best = 0;
    for (int i = t; i < D.rows; ++i)
      for (int j = t; j < D.cols; ++j) {
        i128 v = abs128(D.at(i, j));
        if (v != 0 && (pi < 0 || v < best)) {
          pi = i;
          pj = j;
          best = v;
        }
      }
    if (pi < 0) break;
    row_swap(D, t, pi);
    row_swap(U, t, pi);
    col_swap(D, t, pj);
    col_swap(V, t, pj);
    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < D.rows; ++i) {
        if (D.at(i, t) == 0) continue;
        i128 q = D.at(i, t) / D.at(t, t);
        row_axpy(D, i, t, -q);
        row_axpy(U, i, t, -q);
        if (D.at(i, t) != 0) {
          row_swap(D, t, i);
          row_swap(U, t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < D.cols; ++j) {
        if (D.at(t, j) == 0) continue;
        i128 q = D.at(t, j) / D.at(t, t);
        col_axpy(D, j, t, -q);
        col_axpy(V, j, t, -q);
        if (D.at(t, j) != 0) {
          col_swap(D, t, j);
          col_swap(V, t, j);
          dirty = true;
        }
      }
      if (!dirty) {
        bool rowz = true, colz = true;
        for (int i = t + 1; i < D.rows; ++i) rowz &= (D.at(i, t) == 0);
        for (int j = t + 1; j < D.cols; ++j) colz &= (D.at(t, j) == 0);
        if (rowz && colz) break;
      }
    }
    // divisibility: pivot must divide every remaining entry
    for (;;) {
      bool fixed = true;
      for (int i = t + 1; i < D.rows && fixed; ++i)
        for (int j = t + 1; j < D.cols && fixed; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            row_axpy(D, t, i, 1);
            row_axpy(U, t, i, 1);
            fixed = false;
          }
      if (fixed) break;
      // re-clear the row that just got dirtied
      for (;;) {
        bool dirty = false;
        for (int j = t + 1; j < D.cols; ++j) {
          if (D.at(t, j) == 0) continue;
          i128 q = D.at(t, j) / D.at(t, t);
          col_axpy(D, j, t, -q);
          col_axpy(V, j, t, -q);
          if (D.at(t, j) != 0) {
            col_swap(D, t, j);
            col_swap(V, t, j);
            dirty = true;
          }
        }
        for (int i = t + 1; i < D.rows; ++i) {
          if (D.at(i, t) == 0) continue;
          i128 q = D.at(i, t) / D.at(t, t);
          row_axpy(D, i, t, -q);
          row_axpy(U, i, t, -q);
          if (D.at(i, t) != 0) {
            row_swap(D, t, i);
            row_swap(U, t, i);
            dirty = true;
          }
        }
        if (!dirty) break;
      }
    }
    if (D.at(t, t) < 0) {
      row_neg(D, t);
      row_neg(U, t);
    }
  }
  R.rank = t;
  return R;
}

Mat kernel_basis(const Mat &A) {
  SNFResult s = snf(A);
  int free = A.cols - s.rank;
  Mat K(A.cols, free);
  for (int j = 0; j < free; ++j)
    for (int i = 0; i < A.cols; ++i) K.at(i, j) = s.V.at(i, s.rank + j);
  return K;
}

IntPoly charpoly(const Mat &A) {
  ENR_CHECK(A.rows == A.cols, "charpoly of non-square");
  int n = A.rows;
  std::vector<i128> c(size_t(n) + 1, 0);
  c[size_t(n)] = 1;
  Mat M = Mat::identity(n);
  for (int k = 1; k <= n; ++k) {
    Mat AM = A * M;
    i128 tr = 0;
    for (int i = 0; i < n; ++i) tr = add_ck(tr, AM.at(i, i));
    ENR_CHECK(tr % k == 0, "faddeev-leverrier divisibility");
    i128 ck = -tr / k;
    c[size_t(n - k)] = ck;
    M = AM;
    for (int i = 0; i < n; ++i) M.at(i, i) = add_ck(M.at(i, i), ck);
  }
  return IntPoly(std::move(c));
}

Inertia inertia(const Mat &sym) {
  ENR_CHECK(sym.rows == sym.cols, "inertia of non-square");
  int n = sym.rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ENR_CHECK(sym.at(i, j) == sym.at(j, i), "inertia: matrix not symmetric");
  std::vector<std::vector<Rational>> m;
  m.assign(size_t(n), std::vector<Rational>(size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[size_t(i)][size_t(j)] = Rational(sym.at(i, j));
  Inertia out;
  for (int i = 0; i < n; ++i) {
    if (m[size_t(i)][size_t(i)].num == 0) {
      int jd = -1, jo = -1;
      for (int j = i + 1; j < n; ++j) {
        if (m[size_t(j)][size_t(j)].num != 0 && jd < 0) jd = j;
        if (m[size_t(i)][size_t(j)].num != 0 && jo < 0) jo = j;
      }
      if (jd >= 0) {
        std::swap(m[size_t(i)], m[size_t(jd)]);
        for (int r = 0; r < n; ++r)
          std::swap(m[size_t(r)][size_t(i)], m[size_t(r)][size_t(jd)]);
      } else if (jo >= 0) {
        // symmetric shear brings 2*m[i][jo] onto the diagonal
        for (int cidx = 0; cidx < n; ++cidx)
          m[size_t(i)][size_t(cidx)] =
              m[size_t(i)][size_t(cidx)] + m[size_t(jo)][size_t(cidx)];
        for (int r = 0; r < n; ++r)
          m[size_t(r)][size_t(i)] = m[size_t(r)][size_t(i)] + m[size_t(r)][size_t(jo)];
      } else {
        ++out.zero;
        continue;
      }
    }
    Rational piv = m[size_t(i)][size_t(i)];
    if (piv.num > 0)
      ++out.pos;
    else
      ++out.neg;
    for (int j = i + 1; j < n; ++j) {
      Rational f = m[size_t(j)][size_t(i)] / piv;
      if (f.num == 0) continue;
      for (int cidx = 0; cidx < n; ++cidx)
        m[size_t(j)][size_t(cidx)] =
            m[size_t(j)][size_t(cidx)] - f * m[size_t(i)][size_t(cidx)];
      for (int r = 0; r < n; ++r)
        m[size_t(r)][size_t(j)] = m[size_t(r)][size_t(j)] - f * m[size_t(r)][size_t(i)];
    }
  }
  ENR_CHECK(out.pos + out.neg + out.zero == n, "inertia count");
  return out;
}

}  // namespace enr
