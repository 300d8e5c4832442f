#pragma once

#include <vector>

#include "clifftwist/characters.hpp"
#include "clifftwist/group.hpp"

namespace clifftwist {

// Unitary intertwiners M_q with rho(psi_q(a)) = M_q^-1 rho(a) M_q, one per
// element of the stabilizer quotient.  Each is produced by group-averaging a
// seeded random matrix, normalized to unitarity through Schur's lemma, then
// det-normalized by the d-th root of det^-1 whose argument lies in [0, 2pi/d).
// M_1 is the identity; for dim 1 every M_q is 1.  Different seeds or sections
// change M_q only by d-th roots of unity, moving the obstruction cocycle by a
// coboundary.
struct IntertwinerFamily {
  std::vector<Mat> ms;  // indexed by Q_tau
};

inline IntertwinerFamily intertwiners(const QuotientData& qd, const UnitaryRep& rho,
                                      std::uint64_t seed, const Tolerances& tol = {}) {
  const GroupTable& a = qd.normal.sub;
  require(static_cast<int>(rho.mats.size()) == a.n, errc::bad_input,
          "representation does not live on the normal subgroup");
  int d = rho.dim;
  IntertwinerFamily fam;
  fam.ms.resize(qd.quotient.n);
  fam.ms[0] = Mat::Identity(d, d);
  for (int q = 1; q < qd.quotient.n; ++q) {
    if (d == 1) {
      // a 1-dim character is fixed by its stabilizer, so M_q = 1 works
      for (int i = 0; i < a.n; ++i)
        require(std::abs(rho.mats[qd.psi[q][i]](0, 0) - rho.mats[i](0, 0)) <= tol.rep,
                errc::schur_violation, "character not fixed by the stabilizer");
      fam.ms[q] = Mat::Identity(1, 1);
      continue;
    }
    Mat m;
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      Rng rng(derive_seed(seed, 0x1A7E12ULL + static_cast<std::uint64_t>(q), attempt));
      Mat x = rng.gaussian_matrix(d, d);
      // T = sum_a rho(a) X rho(psi_q(a))^-1 satisfies rho(a) T = T rho(psi_q(a))
      Mat t = Mat::Zero(d, d);
      for (int i = 0; i < a.n; ++i) t += rho.mats[i] * x * rho.mats[qd.psi[q][i]].adjoint();
      Mat s = t.adjoint() * t;
      cplx c = s.trace() / static_cast<double>(d);
      if (std::abs(c) < 1e-8 * a.n) continue;  // unlucky draw averaged to zero
      require((s - c * Mat::Identity(d, d)).norm() <= tol.rep * a.n * std::abs(c) * d,
              errc::schur_violation, "averaged intertwiner is not unitary up to scale");
      require(std::abs(c.imag()) <= tol.rep * std::abs(c) * a.n, errc::schur_violation,
              "T*T has a nonreal scale");
      m = t / std::sqrt(c.real());
      done = true;
    }
    require(done, errc::zero_intertwiner, "all seeded draws averaged to zero");
    // det-normalize into the canonical argument window
    cplx det = m.determinant();
    require(std::abs(std::abs(det) - 1.0) <= 1e-8, errc::internal_inconsistency,
            "unitary matrix with |det| != 1");
    double step = 2.0 * kPi / d;
    double raw = -std::arg(det) / d;
    double arg = raw - std::floor(raw / step) * step;
    m *= cplx(std::cos(arg), std::sin(arg));
    require(std::abs(m.determinant() - cplx(1, 0)) <= 1e-7, errc::internal_inconsistency,
            "det normalization failed");
    for (int i = 0; i < a.n; ++i)
      require(frob_dist(rho.mats[qd.psi[q][i]], m.adjoint() * rho.mats[i] * m) <=
                  tol.rep * a.n,
              errc::tolerance_exceeded, "intertwiner relation fails");
    fam.ms[q] = std::move(m);
  }
  return fam;
}

}  // namespace clifftwist
