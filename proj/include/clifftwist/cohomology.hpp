#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "clifftwist/group.hpp"
#include "clifftwist/snf.hpp"

namespace clifftwist {

// Normalized bar complex of Q with coefficients Z/N written additively
// (exponents of a fixed primitive N-th root of unity).  Cochains vanish when
// any argument is the identity, so C^k has (|Q|-1)^k coordinates indexed by
// tuples of nonidentity elements.  Differentials over Z:
//   (d1 e)(q1,q2)    = e(q1) - e(q1 q2) + e(q2)
//   (d2 b)(q1,q2,q3) = b(q2,q3) - b(q1 q2,q3) + b(q1,q2 q3) - b(q1,q2)
// and d2 * d1 = 0 exactly.
// Only d1 and its Smith form are stored: everything the analysis needs
// (trivializer, class order) reduces to d1-solving.  The second differential
// has (|Q|-1)^3 rows and is materialized on demand via d2_matrix.
struct CochainComplex {
  GroupTable q;
  long modulus = 1;
  int n1 = 0, n2 = 0, n3 = 0;
  ZMat d1;
  SmithForm snf_d1;

  int c1_index(int a) const { return a - 1; }
  int c2_index(int a, int b) const { return (a - 1) * (q.n - 1) + (b - 1); }
  int c3_index(int a, int b, int c) const {
    return ((a - 1) * (q.n - 1) + (b - 1)) * (q.n - 1) + (c - 1);
  }
};

inline CochainComplex build_cochain_complex(const GroupTable& q, long modulus) {
  require(modulus >= 1, errc::bad_input, "modulus must be positive");
  CochainComplex cx;
  cx.q = q;
  cx.modulus = modulus;
  int m = q.n - 1;
  cx.n1 = m;
  cx.n2 = m * m;
  cx.n3 = m * m * m;
  cx.d1 = ZMat(cx.n2, cx.n1);
  for (int a = 1; a < q.n; ++a)
    for (int b = 1; b < q.n; ++b) {
      int row = cx.c2_index(a, b);
      cx.d1(row, cx.c1_index(a)) += 1;
      cx.d1(row, cx.c1_index(b)) += 1;
      int ab = q.op(a, b);
      if (ab != 0) cx.d1(row, cx.c1_index(ab)) -= 1;
    }
  cx.snf_d1 = smith_normal_form(cx.d1);
  return cx;
}

// Dense second differential, built on demand; verifies d2 * d1 = 0 exactly
// over Z before returning (cheap: d2 has at most four nonzeros per row).
inline ZMat d2_matrix(const CochainComplex& cx) {
  ZMat d2(cx.n3, cx.n2);
  for (int a = 1; a < cx.q.n; ++a)
    for (int b = 1; b < cx.q.n; ++b)
      for (int c = 1; c < cx.q.n; ++c) {
        int row = cx.c3_index(a, b, c);
        d2(row, cx.c2_index(b, c)) += 1;
        d2(row, cx.c2_index(a, b)) -= 1;
        int ab = cx.q.op(a, b), bc = cx.q.op(b, c);
        if (ab != 0) d2(row, cx.c2_index(ab, c)) -= 1;
        if (bc != 0) d2(row, cx.c2_index(a, bc)) += 1;
      }
  ZMat z = d2 * cx.d1;
  for (const mpz_class& v : z.a)
    require(v == 0, errc::internal_inconsistency, "d2 * d1 is nonzero");
  return d2;
}

// Flatten a full |Q| x |Q| exponent table into normalized C^2 coordinates.
inline std::vector<long> cocycle_vector(const CochainComplex& cx,
                                        const std::vector<std::vector<int>>& exps) {
  require(static_cast<int>(exps.size()) == cx.q.n, errc::bad_input, "table size mismatch");
  std::vector<long> v(cx.n2, 0);
  for (int a = 0; a < cx.q.n; ++a) {
    require(static_cast<int>(exps[a].size()) == cx.q.n, errc::bad_input, "table size mismatch");
    for (int b = 0; b < cx.q.n; ++b) {
      long e = ((exps[a][b] % cx.modulus) + cx.modulus) % cx.modulus;
      if (a == 0 || b == 0)
        require(e == 0, errc::bad_input, "cocycle is not normalized");
      else
        v[cx.c2_index(a, b)] = e;
    }
  }
  return v;
}

// (d2 v) == 0 mod N, checked by direct triple iteration; cochains vanish when
// an argument is the identity, so those terms drop out.
inline bool is_cocycle(const CochainComplex& cx, const std::vector<long>& v) {
  if (static_cast<int>(v.size()) != cx.n2) return false;
  auto at = [&](int a, int b) -> long {
    return (a == 0 || b == 0) ? 0 : v[cx.c2_index(a, b)];
  };
  for (int a = 1; a < cx.q.n; ++a)
    for (int b = 1; b < cx.q.n; ++b)
      for (int c = 1; c < cx.q.n; ++c) {
        int ab = cx.q.op(a, b), bc = cx.q.op(b, c);
        long s = at(b, c) - at(ab, c) + at(a, bc) - at(a, b);
        if (((s % cx.modulus) + cx.modulus) % cx.modulus != 0) return false;
      }
  return true;
}

namespace detail {

inline long norm_mod(const mpz_class& x, long n) {
  mpz_class r = x % n;
  long v = r.get_si();
  if (v < 0) v += n;
  return v;
}

}  // namespace detail

// Particular solution e of (d1 e) == target mod N, or nullopt with a certified
// obstruction: via the Smith form d1 = Uinv D Vinv^-1 the system splits into the
// scalar congruences D_ii y_i == (U target)_i mod N, each decidable by a gcd
// divisibility test.  Returned as a full |Q|-vector with e[identity] = 0.
inline std::optional<std::vector<long>> solve_coboundary(const CochainComplex& cx,
                                                         const std::vector<long>& target) {
  require(static_cast<int>(target.size()) == cx.n2, errc::bad_input, "target length mismatch");
  require(is_cocycle(cx, target), errc::not_a_cocycle, "target fails the cocycle identity");
  long n = cx.modulus;
  const SmithForm& s = cx.snf_d1;
  std::vector<long> y(cx.n2);
  for (int i = 0; i < cx.n2; ++i) {
    mpz_class acc = 0;
    for (int j = 0; j < cx.n2; ++j)
      if (s.u(i, j) != 0) acc += s.u(i, j) * target[j];
    y[i] = detail::norm_mod(acc, n);
  }
  std::vector<long> z(cx.n1, 0);
  for (int i = 0; i < cx.n2; ++i) {
    long di = (i < cx.n1) ? detail::norm_mod(s.diag(i), n) : 0;
    if (di == 0) {
      if (y[i] % n != 0) return std::nullopt;
      continue;
    }
    long g = std::gcd(di, n);
    if (y[i] % g != 0) return std::nullopt;
    // di/g is invertible mod n/g
    long nn = n / g, dd = di / g, yy = (y[i] / g) % nn;
    long inv = 1;
    for (long e = 1; e < nn; ++e)
      if ((dd * e) % nn == 1) {
        inv = e;
        break;
      }
    if (i < cx.n1) z[i] = (yy * inv) % nn;
  }
  std::vector<long> e(cx.q.n, 0);
  for (int i = 0; i < cx.n1; ++i) {
    mpz_class acc = 0;
    for (int j = 0; j < cx.n1; ++j)
      if (s.v(i, j) != 0) acc += s.v(i, j) * z[j];
    e[i + 1] = detail::norm_mod(acc, n);
  }
  // exact verification of the solution
  for (int a = 1; a < cx.q.n; ++a)
    for (int b = 1; b < cx.q.n; ++b) {
      int ab = cx.q.op(a, b);
      long lhs = (e[a] + e[b] - e[ab]) % n;
      if (lhs < 0) lhs += n;
      require(lhs == target[cx.c2_index(a, b)] % n, errc::internal_inconsistency,
              "coboundary solution fails verification");
    }
  return e;
}

inline bool class_equal(const CochainComplex& cx, const std::vector<long>& a,
                        const std::vector<long>& b) {
  require(a.size() == b.size() && static_cast<int>(a.size()) == cx.n2, errc::modulus_mismatch,
          "cocycles live on different complexes");
  std::vector<long> diff(cx.n2);
  for (int i = 0; i < cx.n2; ++i) {
    diff[i] = (a[i] - b[i]) % cx.modulus;
    if (diff[i] < 0) diff[i] += cx.modulus;
  }
  return solve_coboundary(cx, diff).has_value();
}

// Order of the class [v] in H^2: the least k dividing N with k*v a coboundary.
inline long class_order(const CochainComplex& cx, const std::vector<long>& v) {
  require(is_cocycle(cx, v), errc::not_a_cocycle, "input fails the cocycle identity");
  for (long k = 1; k <= cx.modulus; ++k) {
    if (cx.modulus % k != 0) continue;
    std::vector<long> kv(cx.n2);
    for (int i = 0; i < cx.n2; ++i) kv[i] = (v[i] * k) % cx.modulus;
    if (solve_coboundary(cx, kv).has_value()) return k;
  }
  fail(errc::internal_inconsistency, "N * v must be a coboundary");
}

// Elementary divisors (> 1) of H^2(Q, Z/N).  Cocycles mod N pull back to the
// lattice Z = {x : d2 x == 0 mod N} = V2 * diag(N / gcd(D2_ii, N)) * Z^{n2};
// coboundaries span L = im[d1 | N*I].  H^2 = Z / L is read off the Smith form
// of W with Z * W = L, i.e. W = diag(...)^-1 * V2inv * [d1 | N*I].
inline std::vector<long> h2_elementary_divisors(const CochainComplex& cx) {
  if (cx.n2 == 0) return {};
  long n = cx.modulus;
  SmithForm s2 = smith_normal_form(d2_matrix(cx));
  std::vector<mpz_class> m(cx.n2);
  for (int i = 0; i < cx.n2; ++i) {
    mpz_class di = s2.diag(i) % n;
    mpz_class g = gcd(mpz_class(abs(di)), mpz_class(n));
    m[i] = n / g;
  }
  ZMat lb(cx.n2, cx.n1 + cx.n2);
  for (int i = 0; i < cx.n2; ++i) {
    for (int j = 0; j < cx.n1; ++j) lb(i, j) = cx.d1(i, j);
    lb(i, cx.n1 + i) = n;
  }
  ZMat t = s2.vinv * lb;
  for (int i = 0; i < cx.n2; ++i)
    for (int j = 0; j < t.cols; ++j) {
      require(t(i, j) % m[i] == 0, errc::internal_inconsistency,
              "coboundary lattice escapes the cocycle lattice");
      t(i, j) /= m[i];
    }
  SmithForm st = smith_normal_form(t);
  std::vector<long> out;
  for (int i = 0; i < cx.n2; ++i) {
    mpz_class d = st.diag(i);
    require(d != 0, errc::internal_inconsistency, "cocycle lattice has infinite quotient");
    if (d > 1) out.push_back(d.get_si());
  }
  return out;
}

inline long h2_order(const CochainComplex& cx) {
  long o = 1;
  for (long d : h2_elementary_divisors(cx)) o *= d;
  return o;
}

}  // namespace clifftwist
