#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "clifftwist/catalog.hpp"
#include "clifftwist/cocycle.hpp"
#include "clifftwist/cohomology.hpp"
#include "clifftwist/conj_action.hpp"
#include "clifftwist/irreps.hpp"

// Shared end-to-end fixture: catalog group, conjugation orbits, stabilizer of
// one character of A, intertwiners, obstruction cocycle and its cochain class.
namespace pipeline {

using namespace clifftwist;

inline int normal_index(const CatalogEntry& e, const std::string& label) {
  for (std::size_t i = 0; i < e.normals.size(); ++i)
    if (e.normals[i].label == label) return static_cast<int>(i);
  fail(errc::bad_input, "no designated normal labelled " + label);
}

struct ObsCtx {
  QuotientData qd;
  IrrTable irrA;
  ConjAction act;
  StabilizerContext ctx;
  UnitaryRep rho;
  FactorSet fs;
  IntertwinerFamily fam;
  ObstructionCocycle oc;
  CochainComplex cx;
  std::vector<long> v;
};

inline ObsCtx make(const char* gname, const std::string& label, int charIdx,
                   std::uint64_t seed = 7) {
  const CatalogEntry& e = catalog_entry(gname);
  ObsCtx s;
  s.qd = quotient_with_section(e.pg.table, e.normals[normal_index(e, label)].gens);
  s.irrA = character_table(s.qd.normal.sub, 0);
  s.act = conjugation_action(s.qd, s.irrA);
  s.ctx = stabilizer_context(s.qd, s.act, s.act.orbit_of[charIdx]);
  unitary_irreps(s.qd.normal.sub, s.irrA, 1, {}, {charIdx});
  s.rho = s.irrA.reps[charIdx];
  s.fs = factor_set(s.ctx.qd);
  s.fam = intertwiners(s.ctx.qd, s.rho, seed);
  s.oc = obstruction_cocycle(s.ctx.qd, s.fs, s.fam, s.rho);
  s.cx = build_cochain_complex(s.ctx.qd.quotient, s.oc.modulus);
  s.v = cocycle_vector(s.cx, s.oc.exps);
  return s;
}

// Does any irreducible character of the stabilizer restrict to exactly tau?
// Classical criterion for extendability, used as the independent oracle.
inline bool character_extends(const ObsCtx& s, int charIdx, std::uint64_t seed) {
  IrrTable stabTable = character_table(s.ctx.stab.sub, seed);
  const Character& tau = s.irrA.chars[charIdx];
  for (const Character& ch : stabTable.chars) {
    if (ch.dim != tau.dim) continue;
    Character res = restrict_character(ch, stabTable.classes, s.ctx.qd.normal, s.irrA.classes);
    double dist = 0;
    for (std::size_t c = 0; c < res.values.size(); ++c)
      dist = std::max(dist, std::abs(res.values[c] - tau.values[c]));
    if (dist < 1e-8) return true;
  }
  return false;
}

}  // namespace pipeline
