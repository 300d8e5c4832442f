#pragma once

#include <gmpxx.h>

#include <vector>

#include "clifftwist/errors.hpp"

namespace clifftwist {

// Dense integer matrix over GMP, row-major.
struct ZMat {
  int rows = 0, cols = 0;
  std::vector<mpz_class> a;

  ZMat() = default;
  ZMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  mpz_class& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const mpz_class& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static ZMat identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  ZMat operator*(const ZMat& o) const {
    require(cols == o.rows, errc::bad_input, "matrix shape mismatch");
    ZMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const mpz_class& v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Smith normal form d = u * m * v with u, v unimodular; uinv, vinv are the
// tracked inverses.  Diagonal entries are nonnegative and each divides the next.
struct SmithForm {
  ZMat d, u, v, uinv, vinv;
  int rank = 0;

  mpz_class diag(int i) const {
    if (i < d.rows && i < d.cols) return d(i, i);
    return 0;
  }
};

inline SmithForm smith_normal_form(const ZMat& m) {
  SmithForm s;
  s.d = m;
  int rows = m.rows, cols = m.cols;
  s.u = ZMat::identity(rows);
  s.uinv = ZMat::identity(rows);
  s.v = ZMat::identity(cols);
  s.vinv = ZMat::identity(cols);
  ZMat& d = s.d;

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(d(i, c), d(j, c));
    for (int c = 0; c < rows; ++c) std::swap(s.u(i, c), s.u(j, c));
    for (int r = 0; r < rows; ++r) std::swap(s.uinv(r, i), s.uinv(r, j));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(d(r, i), d(r, j));
    for (int r = 0; r < cols; ++r) std::swap(s.v(r, i), s.v(r, j));
    for (int c = 0; c < cols; ++c) std::swap(s.vinv(i, c), s.vinv(j, c));
  };
  // row i += q * row j
  auto add_row = [&](int i, int j, const mpz_class& q) {
    if (q == 0) return;
    for (int c = 0; c < cols; ++c) d(i, c) += q * d(j, c);
    for (int c = 0; c < rows; ++c) s.u(i, c) += q * s.u(j, c);
    for (int r = 0; r < rows; ++r) s.uinv(r, j) -= q * s.uinv(r, i);
  };
  // col i += q * col j
  auto add_col = [&](int i, int j, const mpz_class& q) {
    if (q == 0) return;
    for (int r = 0; r < rows; ++r) d(r, i) += q * d(r, j);
    for (int r = 0; r < cols; ++r) s.v(r, i) += q * s.v(r, j);
    for (int c = 0; c < cols; ++c) s.vinv(j, c) -= q * s.vinv(i, c);
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < cols; ++c) d(i, c) = -d(i, c);
    for (int c = 0; c < rows; ++c) s.u(i, c) = -s.u(i, c);
    for (int r = 0; r < rows; ++r) s.uinv(r, i) = -s.uinv(r, i);
  };

  int t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the remaining block as pivot
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (d(i, j) != 0) {
          if (pi < 0 || cmp(abs(d(i, j)), abs(d(pi, pj))) < 0) {
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      if (d(t, t) < 0) negate_row(t);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // leftover remainders are strictly smaller than the pivot; re-pivot
        int bi = t, bj = t;
        for (int i = t; i < rows; ++i)
          for (int j = t; j < cols; ++j)
            if (d(i, j) != 0 && cmp(abs(d(i, j)), abs(d(bi, bj))) < 0) {
              bi = i;
              bj = j;
            }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // pivot must divide the rest of the block for the divisibility chain
      int fi = -1;
      for (int i = t + 1; i < rows && fi < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            fi = i;
            break;
          }
      if (fi < 0) break;
      add_row(t, fi, 1);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

// Particular solution of m * x = b over the integers, if one exists.
inline bool solve_integer(const SmithForm& s, const std::vector<mpz_class>& b,
                          std::vector<mpz_class>& x) {
  int rows = s.d.rows, cols = s.d.cols;
  require(static_cast<int>(b.size()) == rows, errc::bad_input, "rhs length mismatch");
  std::vector<mpz_class> y(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) y[i] += s.u(i, j) * b[j];
  std::vector<mpz_class> z(cols);
  for (int i = 0; i < rows; ++i) {
    mpz_class di = s.diag(i);
    if (di == 0) {
      if (y[i] != 0) return false;
    } else if (i < cols) {
      if (y[i] % di != 0) return false;
      z[i] = y[i] / di;
    }
  }
  x.assign(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] += s.v(i, j) * z[j];
  return true;
}

}  // namespace clifftwist
