#pragma once

#include <vector>

#include "clifftwist/cocycle.hpp"
#include "clifftwist/irreps.hpp"

namespace clifftwist {

// Finite central extension E = Q x_alpha Z/N attached to an exponent cocycle:
// pairs (q, k) with (q1,k1)(q2,k2) = (q1 q2, exps[q1][q2] + k1 + k2 mod N).
// Projective alpha-representations of Q are ordinary representations of E
// whose central character sends (0,1) to the primitive root omega_N.
struct CentralExtension {
  long modulus = 1;
  GroupTable quotient;     // copy of the base Q
  GroupTable total;
  std::vector<int> proj;   // total index -> Q index
  std::vector<int> klift;  // total index -> exponent coordinate

  int index(int q, long k) const {
    long n = modulus;
    return static_cast<int>(q * n + (((k % n) + n) % n));
  }
  int center(long k) const { return index(0, k); }
};

inline CentralExtension central_extension(const GroupTable& q, const ObstructionCocycle& oc) {
  require(static_cast<int>(oc.exps.size()) == q.n, errc::bad_input,
          "cocycle table does not match the quotient");
  long n = oc.modulus;
  int en = static_cast<int>(q.n * n);
  CentralExtension ext;
  ext.modulus = n;
  ext.quotient = q;
  ext.proj.resize(en);
  ext.klift.resize(en);
  std::vector<int> mul(static_cast<std::size_t>(en) * en);
  for (int e = 0; e < en; ++e) {
    ext.proj[e] = static_cast<int>(e / n);
    ext.klift[e] = static_cast<int>(e % n);
  }
  for (int e1 = 0; e1 < en; ++e1)
    for (int e2 = 0; e2 < en; ++e2) {
      int q1 = ext.proj[e1], q2 = ext.proj[e2];
      long k = oc.exps[q1][q2] + ext.klift[e1] + ext.klift[e2];
      mul[static_cast<std::size_t>(e1) * en + e2] = ext.index(q.op(q1, q2), k);
    }
  ext.total = make_group_table("E_alpha", en, std::move(mul));
  for (int e1 = 0; e1 < en; ++e1)
    for (int e2 = 0; e2 < en; ++e2)
      require(ext.proj[ext.total.op(e1, e2)] == q.op(ext.proj[e1], ext.proj[e2]),
              errc::internal_inconsistency, "projection to Q is not a homomorphism");
  for (long k = 0; k < n; ++k)
    for (int e = 0; e < en; ++e)
      require(ext.total.op(ext.center(k), e) == ext.total.op(e, ext.center(k)),
              errc::internal_inconsistency, "kernel coordinate is not central");
  return ext;
}

// q is alpha-regular when alpha(q,h) = alpha(h,q) for the whole centralizer of
// q; regularity is constant on conjugacy classes, and the number of regular
// classes counts the inequivalent alpha-projective irreducibles.
inline int alpha_regular_class_count(const GroupTable& q, const ObstructionCocycle& oc) {
  ConjClasses cc = conjugacy_classes(q);
  int count = 0;
  for (int c = 0; c < cc.nclasses; ++c) {
    int verdict = -1;
    for (int x : cc.members[c]) {
      bool regular = true;
      for (int h = 0; h < q.n; ++h) {
        if (q.op(x, h) != q.op(h, x)) continue;
        if ((oc.exps[x][h] - oc.exps[h][x]) % oc.modulus != 0) regular = false;
      }
      if (verdict < 0) verdict = regular ? 1 : 0;
      require(verdict == (regular ? 1 : 0), errc::internal_inconsistency,
              "alpha-regularity varies inside a conjugacy class");
    }
    count += verdict;
  }
  return count;
}

// All alpha-projective irreducibles of Q, as the omega_N-sector of Irr(E).
struct TwistedIrrSet {
  CentralExtension ext;
  IrrTable table;             // full table of E; reps filled on the sector only
  std::vector<int> selected;  // sector char indices, canonical table order
};

inline std::vector<int> twisted_dims(const TwistedIrrSet& ts) {
  std::vector<int> dims;
  for (int t : ts.selected) dims.push_back(ts.table.chars[t].dim);
  return dims;
}

// Projective model P(q) = F(q, 0) of one sector member: satisfies
// P(q1) P(q2) = omega^exps[q1][q2] P(q1 q2).
inline std::vector<Mat> projective_model(const TwistedIrrSet& ts, int sel,
                                         const Tolerances& tol = {}) {
  const UnitaryRep& f = ts.table.reps[ts.selected[sel]];
  require(f.dim > 0, errc::bad_input, "sector representation was not materialized");
  const GroupTable& q = ts.ext.quotient;
  std::vector<Mat> p(q.n);
  for (int x = 0; x < q.n; ++x) p[x] = f.mats[ts.ext.index(x, 0)];
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2) {
      cplx w = root_of_unity(ts.ext.klift[ts.ext.total.op(ts.ext.index(q1, 0), ts.ext.index(q2, 0))],
                             ts.ext.modulus);
      require(frob_dist(p[q1] * p[q2], w * p[q.op(q1, q2)]) <= tol.rep * 10 * q.n,
              errc::tolerance_exceeded, "projective relation fails");
    }
  return p;
}

inline TwistedIrrSet twisted_irreps(const GroupTable& q, const ObstructionCocycle& oc,
                                    std::uint64_t seed, const Tolerances& tol = {},
                                    bool with_mats = false) {
  TwistedIrrSet ts;
  ts.ext = central_extension(q, oc);
  ts.table = character_table(ts.ext.total, seed, tol);
  long n = ts.ext.modulus;
  cplx omega = root_of_unity(1, n);
  int zclass = ts.table.classes.class_of[ts.ext.center(1)];
  for (std::size_t t = 0; t < ts.table.chars.size(); ++t) {
    const Character& ch = ts.table.chars[t];
    if (std::abs(ch.values[zclass] - omega * static_cast<double>(ch.dim)) <= tol.chr * ch.dim)
      ts.selected.push_back(static_cast<int>(t));
  }
  long dimsq = 0;
  for (int t : ts.selected) dimsq += static_cast<long>(ts.table.chars[t].dim) * ts.table.chars[t].dim;
  require(dimsq == q.n, errc::internal_inconsistency,
          "sector dimensions do not account for the quotient order");
  if (with_mats) unitary_irreps(ts.ext.total, ts.table, derive_seed(seed, 0x7157EDULL, 0), tol,
                               ts.selected);
  return ts;
}

}  // namespace clifftwist
