#pragma once

#include <vector>

#include "clifftwist/group.hpp"
#include "clifftwist/intertwiner.hpp"

namespace clifftwist {

// Obstruction 2-cocycle of (rho, Q_tau) in exponent form: alpha(q1,q2) =
// exp(2 pi i exps[q1][q2] / modulus), where the scalar
//   alpha(q1,q2) = rho(chi(q1,q2)) M_{q2}^-1 M_{q1}^-1 M_{q1 q2}
// is snapped onto mu_N for N = dim(rho) * exp(A) * exp(Q).  The class in
// H^2(Q, mu_N) is independent of every choice made along the way; the
// representative itself moves by coboundaries.
struct ObstructionCocycle {
  long modulus = 1;
  std::vector<std::vector<int>> exps;
  std::uint64_t seed = 0;       // provenance: intertwiner seed
  std::vector<int> section;     // provenance: parent indices used for sigma
};

inline ObstructionCocycle obstruction_cocycle(const QuotientData& qd, const FactorSet& fs,
                                              const IntertwinerFamily& fam, const UnitaryRep& rho,
                                              const Tolerances& tol = {}) {
  const GroupTable& q = qd.quotient;
  int d = rho.dim;
  ObstructionCocycle oc;
  oc.modulus = static_cast<long>(d) * qd.normal.sub.exponent() * q.exponent();
  oc.section = qd.section;
  oc.exps.assign(q.n, std::vector<int>(q.n, 0));
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2) {
      Mat p = rho.mats[fs.chi[q1][q2]] * fam.ms[q2].adjoint() * fam.ms[q1].adjoint() *
              fam.ms[q.op(q1, q2)];
      cplx s = p.trace() / static_cast<double>(d);
      require((p - s * Mat::Identity(d, d)).norm() <= tol.rep * 10 * d, errc::non_scalar_value,
              "obstruction value is not scalar");
      oc.exps[q1][q2] = static_cast<int>(snap_to_root_of_unity(s, oc.modulus, tol.snap));
    }
  for (int q1 = 0; q1 < q.n; ++q1)
    require(oc.exps[0][q1] == 0 && oc.exps[q1][0] == 0, errc::internal_inconsistency,
            "obstruction cocycle is not normalized");
  // exact cocycle identity on the snapped exponents
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2)
      for (int q3 = 0; q3 < q.n; ++q3) {
        long lhs = oc.exps[q1][q.op(q2, q3)] + oc.exps[q2][q3];
        long rhs = oc.exps[q.op(q1, q2)][q3] + oc.exps[q1][q2];
        require((lhs - rhs) % oc.modulus == 0, errc::cocycle_violation,
                "snapped obstruction fails the cocycle identity");
      }
  return oc;
}

// Extension of rho to the stabilizer along a trivializing cochain eps:
// rho~(g) = M_{pi(g)} * exp(2 pi i eps[pi(g)] / N) * rho(sigma(pi(g))^-1 g).
// Demands d1(eps) == exps mod N; the result restricts to rho on A verbatim.
inline UnitaryRep extend_rep_with_trivializer(const QuotientData& qd, const IntertwinerFamily& fam,
                                              const UnitaryRep& rho, const ObstructionCocycle& oc,
                                              const std::vector<long>& eps,
                                              const Tolerances& tol = {}) {
  const GroupTable& g = qd.parent;
  const GroupTable& q = qd.quotient;
  require(static_cast<int>(eps.size()) == q.n, errc::bad_input, "trivializer length mismatch");
  require(eps[0] % oc.modulus == 0, errc::bad_input, "trivializer must be normalized");
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2) {
      long lhs = eps[q1] + eps[q2] - eps[q.op(q1, q2)] - oc.exps[q1][q2];
      require(lhs % oc.modulus == 0, errc::not_trivialized,
              "cochain does not trivialize the obstruction");
    }
  UnitaryRep out;
  out.dim = rho.dim;
  out.mats.resize(g.n);
  for (int x = 0; x < g.n; ++x) {
    int qi = qd.proj[x];
    int ai = qd.normal.index_of(g.op(g.inverse(qd.sigma(qi)), x));
    if (qi == 0) {
      out.mats[x] = rho.mats[ai];  // restriction to A is rho verbatim
    } else {
      out.mats[x] =
          fam.ms[qi] * root_of_unity(eps[qi] % oc.modulus, oc.modulus) * rho.mats[ai];
    }
  }
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      require(frob_dist(out.mats[x] * out.mats[y], out.mats[g.op(x, y)]) <= tol.rep * g.n,
              errc::tolerance_exceeded, "extension is not a homomorphism");
  return out;
}

}  // namespace clifftwist
