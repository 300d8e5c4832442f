#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "clifftwist/cohomology.hpp"
#include "clifftwist/conj_action.hpp"
#include "clifftwist/decomposition.hpp"

namespace clifftwist {

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  bool twisted_mats = true;  // materialize sector representations
  bool extensions = true;    // build extended representations for trivial classes
};

// One orbit of Irr(A) under G: stabilizer data, obstruction class, trivializer
// and extension when the class vanishes, and the twisted dual of Q_tau.
struct OrbitAnalysis {
  std::vector<int> chars;
  int rep_char = 0;
  StabilizerContext ctx;
  FactorSet fs;
  IntertwinerFamily fam;
  ObstructionCocycle oc;
  CochainComplex cx;
  std::vector<long> v;
  long cls_order = 1;
  std::optional<std::vector<long>> trivializer;
  std::optional<UnitaryRep> extension;
  TwistedIrrSet twisted;

  bool trivial_class() const { return trivializer.has_value(); }
};

struct GroupAnalysis {
  QuotientData qd;
  IrrTable irrA;
  IrrTable irrG;
  ConjAction act;
  std::vector<OrbitAnalysis> orbits;
};

inline GroupAnalysis analyze_group(const GroupTable& g, const std::vector<int>& normalGens,
                                   const AnalyzeOptions& opt = {}) {
  GroupAnalysis ga;
  ga.qd = quotient_with_section(g, normalGens);
  ga.irrA = character_table(ga.qd.normal.sub, derive_seed(opt.seed, 0xA57ULL, 0), opt.tol);
  ga.irrG = character_table(g, derive_seed(opt.seed, 0xB16ULL, 0), opt.tol);
  ga.act = conjugation_action(ga.qd, ga.irrA, opt.tol);
  for (std::size_t o = 0; o < ga.act.orbits.size(); ++o) {
    OrbitAnalysis oa;
    oa.chars = ga.act.orbits[o];
    oa.rep_char = ga.act.orbit_reps[o];
    oa.ctx = stabilizer_context(ga.qd, ga.act, static_cast<int>(o));
    unitary_irreps(ga.qd.normal.sub, ga.irrA, derive_seed(opt.seed, 0x1A0ULL, oa.rep_char),
                   opt.tol, {oa.rep_char});
    const UnitaryRep& tau = ga.irrA.reps[oa.rep_char];
    oa.fs = factor_set(oa.ctx.qd);
    oa.fam = intertwiners(oa.ctx.qd, tau, derive_seed(opt.seed, 0x2B1ULL, o), opt.tol);
    oa.oc = obstruction_cocycle(oa.ctx.qd, oa.fs, oa.fam, tau, opt.tol);
    oa.cx = build_cochain_complex(oa.ctx.qd.quotient, oa.oc.modulus);
    oa.v = cocycle_vector(oa.cx, oa.oc.exps);
    oa.cls_order = class_order(oa.cx, oa.v);
    oa.trivializer = solve_coboundary(oa.cx, oa.v);
    if (oa.trivializer.has_value() && opt.extensions)
      oa.extension =
          extend_rep_with_trivializer(oa.ctx.qd, oa.fam, tau, oa.oc, *oa.trivializer, opt.tol);
    oa.twisted = twisted_irreps(oa.ctx.qd.quotient, oa.oc, derive_seed(opt.seed, 0x714ULL, o),
                                opt.tol, opt.twisted_mats);
    ga.orbits.push_back(std::move(oa));
  }
  return ga;
}

// One line of the correspondence: a G-irreducible, its unique orbit, the
// matched sector member, and the multiplicity m with dim E = |orbit| d_tau m.
struct CorrespondenceRow {
  int irr_g = 0;
  int orbit = 0;
  int twisted = 0;  // position inside orbits[orbit].twisted.selected
  int mult = 0;
};

struct PointDecomposition {
  std::vector<CorrespondenceRow> rows;  // one per G-irreducible, in table order
};

// Realize the correspondence Irr(G) <-> pairs (orbit, sector member).  Each
// G-irreducible lives over exactly one orbit; its multiplicity space matches a
// unique sector member; the assignment is a bijection.  Materializes irrG.reps.
inline PointDecomposition decompose_at_point(GroupAnalysis& ga, std::uint64_t seed,
                                             const Tolerances& tol = {}) {
  const GroupTable& g = ga.qd.parent;
  unitary_irreps(g, ga.irrG, derive_seed(seed, 0xDECULL, 0), tol);
  int nG = static_cast<int>(ga.irrG.chars.size());
  PointDecomposition out;
  std::vector<std::vector<int>> hits(ga.orbits.size());
  for (std::size_t o = 0; o < ga.orbits.size(); ++o)
    hits[o].assign(ga.orbits[o].twisted.selected.size(), 0);

  for (int t = 0; t < nG; ++t) {
    Character resA = restrict_character(ga.irrG.chars[t], ga.irrG.classes, ga.qd.normal,
                                        ga.irrA.classes);
    // exclusivity: inner products with orbit representatives, exactly one nonzero
    int home = -1, mult = 0;
    for (std::size_t o = 0; o < ga.orbits.size(); ++o) {
      double inner = char_inner(ga.irrA.classes, resA, ga.irrA.chars[ga.orbits[o].rep_char]);
      int m = static_cast<int>(iround(inner));
      require(std::abs(inner - m) <= tol.chr * 10, errc::internal_inconsistency,
              "orbit multiplicity is not integral");
      if (m == 0) continue;
      require(home < 0, errc::internal_inconsistency, "irreducible lies over two orbits");
      home = static_cast<int>(o);
      mult = m;
    }
    require(home >= 0, errc::internal_inconsistency, "irreducible lies over no orbit");
    const OrbitAnalysis& oa = ga.orbits[home];

    // restriction to A is m times the sum over the orbit
    for (int c = 0; c < ga.irrA.classes.nclasses; ++c) {
      cplx sum = 0;
      for (int ch : oa.chars) sum += ga.irrA.chars[ch].values[c];
      require(std::abs(resA.values[c] - static_cast<double>(mult) * sum) <= tol.chr * 10,
              errc::internal_inconsistency, "restriction is not isotypic over the orbit");
    }

    MultiplicitySpace ms =
        multiplicity_space(oa.ctx, oa.fam, oa.oc, ga.irrA.reps[oa.rep_char], ga.irrG.reps[t],
                           derive_seed(seed, 0x3D1ULL, t), tol);
    require(ms.m == mult, errc::internal_inconsistency,
            "projector rank disagrees with the character inner product");
    int sel = match_twisted(oa.twisted, ms);
    hits[home][sel] += 1;

    long dimE = iround(ga.irrG.chars[t].values[0].real());
    require(dimE == static_cast<long>(oa.chars.size()) *
                        ga.irrA.chars[oa.rep_char].dim * mult,
            errc::internal_inconsistency, "dimension bookkeeping fails");
    out.rows.push_back({t, home, sel, mult});
  }
  for (std::size_t o = 0; o < ga.orbits.size(); ++o)
    for (std::size_t s = 0; s < hits[o].size(); ++s)
      require(hits[o][s] == 1, errc::internal_inconsistency,
              "correspondence is not a bijection");
  return out;
}

// Other direction of the correspondence: tensor point representation of the
// stabilizer for one sector member, induced up to G.
inline UnitaryRep induced_model(const GroupAnalysis& ga, int orbit, int sel,
                                const Tolerances& tol = {}) {
  const OrbitAnalysis& oa = ga.orbits[orbit];
  UnitaryRep w = twisted_point_rep(oa.ctx, oa.fam, ga.irrA.reps[oa.rep_char], oa.twisted, sel, tol);
  return induce_rep(ga.qd.parent, oa.ctx.stab, w, tol);
}

// Index of the G-irreducible with the same character as the given model.
inline int match_irr_g(const GroupAnalysis& ga, const UnitaryRep& rep, double tol = 1e-6) {
  int found = -1;
  for (std::size_t t = 0; t < ga.irrG.chars.size(); ++t) {
    if (ga.irrG.chars[t].dim != rep.dim) continue;
    double dist = 0;
    for (int c = 0; c < ga.irrG.classes.nclasses; ++c)
      dist = std::max(dist, std::abs(rep.mats[ga.irrG.classes.reps[c]].trace() -
                                     ga.irrG.chars[t].values[c]));
    if (dist <= tol) {
      require(found < 0, errc::ambiguous_match, "model matches two irreducibles");
      found = static_cast<int>(t);
    }
  }
  require(found >= 0, errc::no_matching_character, "model matches no irreducible");
  return found;
}

}  // namespace clifftwist
