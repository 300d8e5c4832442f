#pragma once

#include <vector>

#include "clifftwist/characters.hpp"

namespace clifftwist {

namespace detail {

// left-regular action: (R(s) B)[x] = B[s^-1 x]
inline Mat regular_apply(const GroupTable& g, int s, const Mat& b) {
  Mat out(b.rows(), b.cols());
  int si = g.inverse(s);
  for (int x = 0; x < g.n; ++x) out.row(x) = b.row(g.op(si, x));
  return out;
}

inline void validate_rep(const GroupTable& g, const UnitaryRep& rep, const Character& ch,
                         const ConjClasses& cc, const Tolerances& tol) {
  require(static_cast<int>(rep.mats.size()) == g.n, errc::internal_inconsistency,
          "representation misses elements");
  for (int s = 0; s < g.n; ++s)
    require(unitarity_residual(rep.mats[s]) <= tol.rep, errc::tolerance_exceeded,
            "matrix is not unitary within tolerance");
  for (int s = 0; s < g.n; ++s)
    for (int t = 0; t < g.n; ++t)
      require(frob_dist(rep.mats[s] * rep.mats[t], rep.mats[g.op(s, t)]) <= tol.rep,
              errc::tolerance_exceeded, "homomorphism residual exceeds tolerance");
  for (int c = 0; c < cc.nclasses; ++c) {
    cplx tr = rep.mats[cc.reps[c]].trace();
    require(std::abs(tr - ch.values[c]) <= tol.chr, errc::tolerance_exceeded,
            "trace disagrees with the character");
  }
}

}  // namespace detail

// Unitary models for the characters listed in `which` (all when empty), built
// inside the left-regular representation.  For dim d > 1: project a seeded
// random block with the central idempotent of the character, orthonormalize to
// a basis of the d^2-dimensional isotypic component, then cut one irreducible
// block as an eigenspace of a random averaged commutant operator.  The cut
// eigenvalue must be separated with multiplicity exactly d; failures retry
// with derived seeds and finally raise ProjectionRankMismatch.
inline void unitary_irreps(const GroupTable& g, IrrTable& table, std::uint64_t seed,
                           const Tolerances& tol = {}, std::vector<int> which = {}) {
  const ConjClasses& cc = table.classes;
  int k = static_cast<int>(table.chars.size());
  require(k == cc.nclasses, errc::bad_input, "character table is incomplete");
  if (table.reps.empty()) table.reps.resize(k);
  if (which.empty()) {
    which.resize(k);
    for (int i = 0; i < k; ++i) which[i] = i;
  }
  for (int t : which) {
    const Character& ch = table.chars[t];
    int d = ch.dim;
    UnitaryRep rep;
    rep.dim = d;
    if (d == 1) {
      rep.mats.resize(g.n);
      for (int s = 0; s < g.n; ++s)
        rep.mats[s] = Mat::Constant(1, 1, ch.values[cc.class_of[s]]);
      detail::validate_rep(g, rep, ch, cc, tol);
      table.reps[t] = std::move(rep);
      continue;
    }
    // central idempotent of chi in the regular representation:
    // E[x][y] = (d/|G|) * conj(chi(x y^-1))
    Mat e(g.n, g.n);
    double w = static_cast<double>(d) / g.n;
    for (int x = 0; x < g.n; ++x)
      for (int y = 0; y < g.n; ++y)
        e(x, y) = w * std::conj(ch.values[cc.class_of[g.op(x, g.inverse(y))]]);
    int d2 = d * d;
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      Rng rng(derive_seed(seed, 0x12E950ULL + static_cast<std::uint64_t>(t), attempt));
      Mat b0 = e * rng.gaussian_matrix(g.n, d2);
      Eigen::ColPivHouseholderQR<Mat> qr(b0);
      qr.setThreshold(1e-8);
      if (qr.rank() != d2) continue;
      Mat b = qr.householderQ() * Mat::Identity(g.n, d2);
      if ((e * b - b).norm() > 1e-8 * std::sqrt(static_cast<double>(d2))) continue;
      // random commutant element: average U(s) Y U(s)^H over the group
      Mat y0 = rng.gaussian_matrix(d2, d2);
      Mat y = (y0 + y0.adjoint()) * 0.5;
      Mat h = Mat::Zero(d2, d2);
      for (int s = 0; s < g.n; ++s) {
        Mat us = b.adjoint() * detail::regular_apply(g, s, b);
        h += us * y * us.adjoint();
      }
      h /= static_cast<double>(g.n);
      h = (h + h.adjoint()) * 0.5;
      Eigen::SelfAdjointEigenSolver<Mat> es(h);
      if (es.info() != Eigen::Success) continue;
      Eigen::VectorXd ev = es.eigenvalues();
      double lscale = std::max(std::abs(ev(0)), std::abs(ev(d2 - 1))) + 1.0;
      // lowest eigenvalue cluster must have size exactly d
      if (ev(d - 1) - ev(0) > 1e-7 * lscale) continue;
      if (ev(d) - ev(d - 1) < 1e-5 * lscale) continue;
      Mat bd = b * es.eigenvectors().leftCols(d);
      Eigen::HouseholderQR<Mat> rq(bd);
      bd = rq.householderQ() * Mat::Identity(g.n, d);
      rep.mats.resize(g.n);
      for (int s = 0; s < g.n; ++s) rep.mats[s] = bd.adjoint() * detail::regular_apply(g, s, bd);
      try {
        detail::validate_rep(g, rep, ch, cc, tol);
      } catch (const Error&) {
        continue;
      }
      done = true;
    }
    require(done, errc::projection_rank_mismatch,
            "failed to cut an irreducible block for a character of " + g.name);
    table.reps[t] = std::move(rep);
  }
}

}  // namespace clifftwist
