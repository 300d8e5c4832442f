#pragma once

#include <vector>

#include "clifftwist/twisted.hpp"

namespace clifftwist {

// Multiplicity space Hom_A(tau, E|_A) of a G-irrep E over one orbit character,
// carried as a Frobenius-orthonormal basis of d_E x d_tau intertwiners plus
// the alpha-projective action of Q_tau: q sends f to E(sigma(q)) f M_q^*, and
// action[q1] action[q2] = omega^exps[q1][q2] action[q1 q2] on the basis.
struct MultiplicitySpace {
  int m = 0;
  std::vector<Mat> basis;   // each d_E x d_tau
  std::vector<Mat> action;  // per q in Q_tau, m x m unitary
};

inline MultiplicitySpace multiplicity_space(const StabilizerContext& ctx,
                                            const IntertwinerFamily& fam,
                                            const ObstructionCocycle& oc, const UnitaryRep& tau,
                                            const UnitaryRep& big, std::uint64_t seed,
                                            const Tolerances& tol = {}) {
  const GroupTable& a = ctx.qd.normal.sub;
  const GroupTable& q = ctx.qd.quotient;
  int de = big.dim, dt = tau.dim;
  int n = de * dt;
  auto a_in_g = [&](int i) { return ctx.stab.embed[ctx.qd.normal.embed[i]]; };
  Mat p = Mat::Zero(n, n);
  for (int i = 0; i < a.n; ++i) p += kron(tau.mats[i].conjugate(), big.mats[a_in_g(i)]);
  p /= static_cast<double>(a.n);
  require(frob_dist(p, p.adjoint()) <= tol.chr && frob_dist(p * p, p) <= tol.chr * n,
          errc::internal_inconsistency, "multiplicity projector is not a projection");
  double tr = p.trace().real();
  MultiplicitySpace ms;
  ms.m = static_cast<int>(iround(tr));
  require(std::abs(tr - ms.m) <= tol.chr * n && std::abs(p.trace().imag()) <= tol.chr * n,
          errc::internal_inconsistency, "projector rank is not integral");
  if (ms.m == 0) return ms;

  Mat basisflat;
  bool ok = false;
  for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
    Rng rng(derive_seed(seed, 0x3B415ULL, attempt));
    Mat px = p * rng.gaussian_matrix(n, ms.m);
    Eigen::ColPivHouseholderQR<Mat> qr(px);
    qr.setThreshold(1e-8);
    if (qr.rank() != ms.m) continue;
    basisflat = qr.householderQ() * Mat::Identity(n, ms.m);
    ok = true;
  }
  require(ok, errc::degenerate_split, "could not draw a basis of the multiplicity space");
  for (int k = 0; k < ms.m; ++k) {
    Mat f = Eigen::Map<const Mat>(basisflat.col(k).data(), de, dt);
    for (int i = 0; i < a.n; ++i)
      require(frob_dist(big.mats[a_in_g(i)] * f, f * tau.mats[i]) <= tol.rep * 100 * a.n,
              errc::internal_inconsistency, "basis vector fails to intertwine");
    ms.basis.push_back(f);
  }

  ms.action.resize(q.n);
  for (int qq = 0; qq < q.n; ++qq) {
    int sig = ctx.stab.embed[ctx.qd.section[qq]];
    Mat act(ms.m, ms.m);
    for (int j = 0; j < ms.m; ++j) {
      Mat y = big.mats[sig] * ms.basis[j] * fam.ms[qq].adjoint();
      Eigen::Map<const Mat> vy(y.data(), n, 1);
      act.col(j) = basisflat.adjoint() * vy;
      // closure: the image must stay inside the span
      Mat resid = y;
      for (int i = 0; i < ms.m; ++i) resid -= act(i, j) * ms.basis[i];
      require(resid.norm() <= tol.rep * 100 * n, errc::stabilizer_violation,
              "stabilizer action leaves the multiplicity space");
    }
    require(unitarity_residual(act) <= 1e-8, errc::tolerance_exceeded,
            "multiplicity action is not unitary");
    ms.action[qq] = act;
  }
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2) {
      cplx w = root_of_unity(oc.exps[q1][q2], oc.modulus);
      require(frob_dist(ms.action[q1] * ms.action[q2], w * ms.action[q.op(q1, q2)]) <= 1e-8 * q.n,
              errc::tolerance_exceeded, "multiplicity action is not alpha-projective");
    }
  return ms;
}

// Position inside ts.selected of the unique sector member whose character
// matches the multiplicity action, compared at the canonical lifts (q, 0).
inline int match_twisted(const TwistedIrrSet& ts, const MultiplicitySpace& ms, double tol = 1e-6) {
  const GroupTable& q = ts.ext.quotient;
  require(ms.m > 0, errc::bad_input, "empty multiplicity space has no twisted label");
  int found = -1;
  for (std::size_t s = 0; s < ts.selected.size(); ++s) {
    const Character& ch = ts.table.chars[ts.selected[s]];
    if (ch.dim != ms.m) continue;
    double dist = 0;
    for (int x = 0; x < q.n; ++x) {
      int cls = ts.table.classes.class_of[ts.ext.index(x, 0)];
      dist = std::max(dist, std::abs(ms.action[x].trace() - ch.values[cls]));
    }
    if (dist <= tol) {
      require(found < 0, errc::ambiguous_match, "two sector members match the action");
      found = static_cast<int>(s);
    }
  }
  require(found >= 0, errc::no_matching_character, "no sector member matches the action");
  return found;
}

// Genuine representation of the stabilizer on V_tau (x) V_F built from one
// sector member F: W(h) = (M_q tau(a)) (x) F(q, 0) for h = sigma(q) a.  The
// omega factors of the two tensor legs cancel.
inline UnitaryRep twisted_point_rep(const StabilizerContext& ctx, const IntertwinerFamily& fam,
                                    const UnitaryRep& tau, const TwistedIrrSet& ts, int sel,
                                    const Tolerances& tol = {}) {
  const GroupTable& h = ctx.qd.parent;
  const UnitaryRep& f = ts.table.reps[ts.selected[sel]];
  require(f.dim > 0, errc::bad_input, "sector representation was not materialized");
  UnitaryRep w;
  w.dim = tau.dim * f.dim;
  w.mats.resize(h.n);
  for (int x = 0; x < h.n; ++x) {
    int qq = ctx.qd.proj[x];
    int ai = ctx.qd.normal.index_of(h.op(h.inverse(ctx.qd.sigma(qq)), x));
    w.mats[x] = kron(fam.ms[qq] * tau.mats[ai], f.mats[ts.ext.index(qq, 0)]);
  }
  for (int x = 0; x < h.n; ++x) {
    require(unitarity_residual(w.mats[x]) <= tol.rep * 10 * w.dim, errc::tolerance_exceeded,
            "point representation is not unitary");
    for (int y = 0; y < h.n; ++y)
      require(frob_dist(w.mats[x] * w.mats[y], w.mats[h.op(x, y)]) <= tol.rep * 10 * h.n,
              errc::tolerance_exceeded, "point representation is not a homomorphism");
  }
  return w;
}

// Induction from a subgroup along canonical minimal coset representatives:
// block (i,j) of Ind(g) is W(r_i^-1 g r_j) when that element lands in H.
inline UnitaryRep induce_rep(const GroupTable& g, const SubgroupEmbedding& h, const UnitaryRep& w,
                             const Tolerances& tol = {}) {
  require(static_cast<int>(w.mats.size()) == h.sub.n, errc::bad_input,
          "representation does not live on the subgroup");
  require(g.n % h.sub.n == 0, errc::coset_decomposition_error, "subgroup order must divide");
  int r = g.n / h.sub.n;
  std::vector<int> coset_of(g.n, -1), reps;
  for (int x = 0; x < g.n; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);  // minimal element: ascending scan
    for (int i = 0; i < h.sub.n; ++i) {
      int y = g.op(x, h.embed[i]);
      require(coset_of[y] < 0, errc::coset_decomposition_error, "cosets are not disjoint");
      coset_of[y] = c;
    }
  }
  require(static_cast<int>(reps.size()) == r, errc::coset_decomposition_error,
          "wrong number of cosets");
  UnitaryRep ind;
  ind.dim = r * w.dim;
  ind.mats.resize(g.n);
  for (int x = 0; x < g.n; ++x) {
    Mat m = Mat::Zero(ind.dim, ind.dim);
    for (int j = 0; j < r; ++j) {
      int y = g.op(x, reps[j]);
      int i = coset_of[y];
      int inside = g.op(g.inverse(reps[i]), y);
      require(h.contains(inside), errc::coset_decomposition_error,
              "coset transport left the subgroup");
      m.block(i * w.dim, j * w.dim, w.dim, w.dim) = w.mats[h.index_of(inside)];
    }
    ind.mats[x] = m;
  }
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      require(frob_dist(ind.mats[x] * ind.mats[y], ind.mats[g.op(x, y)]) <= tol.rep * 10 * g.n,
              errc::tolerance_exceeded, "induced representation is not a homomorphism");
  return ind;
}

}  // namespace clifftwist
