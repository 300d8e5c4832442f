#pragma once

#include <map>
#include <set>
#include <vector>

#include "clifftwist/characters.hpp"
#include "clifftwist/group.hpp"

namespace clifftwist {

// Left action of G on Irr(A) by (g.chi)(a) = chi(g^-1 a g), recorded as a
// permutation of the character list per group element, with orbits and the
// stabilizers G_[tau] >= A.  Characters are matched by value within snap
// tolerance; a failed match raises NoMatchingCharacter.
struct ConjAction {
  std::vector<std::vector<int>> perm_by_g;   // [g][charIdx] -> charIdx
  std::vector<std::vector<int>> orbits;      // ascending char indices
  std::vector<int> orbit_of;
  std::vector<int> orbit_reps;               // minimal char index per orbit
  std::vector<std::vector<int>> stab_elems;  // per orbit: G-indices of G_[tau]
};

namespace detail {

inline std::vector<long long> char_key(const Character& ch) {
  std::vector<long long> key{ch.dim};
  for (const cplx& v : ch.values) {
    key.push_back(iround(v.real() * 1e6));
    key.push_back(iround(v.imag() * 1e6));
  }
  return key;
}

inline int match_character(const std::vector<Character>& chars,
                           const std::map<std::vector<long long>, int>& index,
                           const Character& probe, double tol) {
  auto it = index.find(char_key(probe));
  if (it != index.end()) return it->second;
  // grid-boundary fallback: direct comparison within tolerance
  int found = -1;
  for (std::size_t t = 0; t < chars.size(); ++t) {
    if (chars[t].dim != probe.dim) continue;
    double dist = 0;
    for (std::size_t c = 0; c < probe.values.size(); ++c)
      dist = std::max(dist, std::abs(chars[t].values[c] - probe.values[c]));
    if (dist <= tol) {
      require(found < 0, errc::ambiguous_match, "two characters match the conjugate");
      found = static_cast<int>(t);
    }
  }
  require(found >= 0, errc::no_matching_character, "conjugated character matches no entry");
  return found;
}

}  // namespace detail

inline ConjAction conjugation_action(const QuotientData& qd, const IrrTable& irrA,
                                     const Tolerances& tol = {}) {
  const GroupTable& g = qd.parent;
  const SubgroupEmbedding& a = qd.normal;
  const ConjClasses& cc = irrA.classes;
  int nchars = static_cast<int>(irrA.chars.size());
  std::map<std::vector<long long>, int> index;
  for (int t = 0; t < nchars; ++t) index[detail::char_key(irrA.chars[t])] = t;

  ConjAction act;
  act.perm_by_g.assign(g.n, std::vector<int>(nchars));
  for (int s = 0; s < g.n; ++s) {
    for (int t = 0; t < nchars; ++t) {
      Character probe;
      probe.dim = irrA.chars[t].dim;
      probe.values.resize(cc.nclasses);
      for (int c = 0; c < cc.nclasses; ++c) {
        int conj = g.conj(a.embed[cc.reps[c]], s);
        probe.values[c] = irrA.chars[t].values[cc.class_of[a.index_of(conj)]];
      }
      act.perm_by_g[s][t] = detail::match_character(irrA.chars, index, probe, tol.snap);
    }
    // elements of A act trivially
    if (a.contains(s))
      for (int t = 0; t < nchars; ++t)
        require(act.perm_by_g[s][t] == t, errc::internal_inconsistency,
                "normal subgroup acts nontrivially on its own characters");
  }
  // action property on seeded random pairs
  Rng rng(0xAC710Full);
  for (int trial = 0; trial < 100; ++trial) {
    int x = rng.below(g.n), y = rng.below(g.n);
    for (int t = 0; t < nchars; ++t)
      require(act.perm_by_g[g.op(x, y)][t] == act.perm_by_g[x][act.perm_by_g[y][t]],
              errc::internal_inconsistency, "conjugation action fails composition");
  }
  act.orbit_of.assign(nchars, -1);
  for (int t = 0; t < nchars; ++t) {
    if (act.orbit_of[t] >= 0) continue;
    std::set<int> orb;
    for (int s = 0; s < g.n; ++s) orb.insert(act.perm_by_g[s][t]);
    int id = static_cast<int>(act.orbits.size());
    act.orbits.emplace_back(orb.begin(), orb.end());
    for (int u : act.orbits.back()) act.orbit_of[u] = id;
    act.orbit_reps.push_back(*orb.begin());
  }
  for (std::size_t o = 0; o < act.orbits.size(); ++o) {
    int rep = act.orbit_reps[o];
    std::vector<int> stab;
    for (int s = 0; s < g.n; ++s)
      if (act.perm_by_g[s][rep] == rep) stab.push_back(s);
    // dims constant on the orbit; |orbit| * |stab| = |G|
    for (int u : act.orbits[o])
      require(irrA.chars[u].dim == irrA.chars[rep].dim, errc::internal_inconsistency,
              "character degree varies along an orbit");
    require(act.orbits[o].size() * stab.size() == static_cast<std::size_t>(g.n),
            errc::internal_inconsistency, "orbit-stabilizer count fails");
    for (int i = 0; i < a.sub.n; ++i)
      require(act.perm_by_g[a.embed[i]][rep] == rep, errc::internal_inconsistency,
              "normal subgroup escapes a stabilizer");
    act.stab_elems.push_back(std::move(stab));
  }
  return act;
}

// Stabilizer of one orbit as a group in its own right, with A normal inside it.
// The A-subtable inside the stabilizer coincides with qd.normal.sub because
// both are indexed by ascending parent element.
struct StabilizerContext {
  SubgroupEmbedding stab;  // G_[tau] inside G
  QuotientData qd;         // A normal in G_[tau] with quotient Q_[tau]
};

inline StabilizerContext stabilizer_context(const QuotientData& qdG, const ConjAction& act,
                                            int orbit) {
  StabilizerContext ctx;
  ctx.stab = subgroup_from_elements(qdG.parent, act.stab_elems[orbit], "G_tau");
  std::vector<int> agens;
  for (int i = 0; i < qdG.normal.sub.n; ++i) agens.push_back(ctx.stab.index_of(qdG.normal.embed[i]));
  ctx.qd = quotient_with_section(ctx.stab.sub, agens, "A", "Q_tau");
  require(ctx.qd.normal.sub.n == qdG.normal.sub.n, errc::internal_inconsistency,
          "stabilizer does not contain all of A");
  // index alignment: A inside the stabilizer is A inside G, ascending both ways
  for (int i = 0; i < qdG.normal.sub.n; ++i) {
    require(ctx.stab.embed[ctx.qd.normal.embed[i]] == qdG.normal.embed[i],
            errc::internal_inconsistency, "A-indexing differs inside the stabilizer");
    for (int j = 0; j < qdG.normal.sub.n; ++j)
      require(ctx.qd.normal.sub.op(i, j) == qdG.normal.sub.op(i, j), errc::internal_inconsistency,
              "A-table differs inside the stabilizer");
  }
  return ctx;
}

}  // namespace clifftwist
