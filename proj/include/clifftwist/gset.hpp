#pragma once

#include <utility>
#include <vector>

#include "clifftwist/analysis.hpp"

namespace clifftwist {

// Finite left G-set given by its action table.
struct GSet {
  int n = 0;
  std::vector<std::vector<int>> act;  // [g][x] -> g.x
};

inline GSet make_gset(const GroupTable& g, std::vector<std::vector<int>> act) {
  GSet x;
  require(!act.empty() && static_cast<int>(act.size()) == g.n, errc::bad_input,
          "action table must have one row per group element");
  x.n = static_cast<int>(act[0].size());
  x.act = std::move(act);
  for (int s = 0; s < g.n; ++s) {
    require(static_cast<int>(x.act[s].size()) == x.n, errc::bad_input, "ragged action table");
    require(is_permutation(x.act[s]), errc::bad_input, "group element does not permute the set");
  }
  for (int p = 0; p < x.n; ++p) require(x.act[0][p] == p, errc::bad_input, "identity must fix the set");
  for (int s = 0; s < g.n; ++s)
    for (int t = 0; t < g.n; ++t)
      for (int p = 0; p < x.n; ++p)
        require(x.act[s][x.act[t][p]] == x.act[g.op(s, t)][p], errc::bad_input,
                "action is not compatible with the product");
  return x;
}

inline GSet fixed_points(const GroupTable& g, int k) {
  std::vector<std::vector<int>> act(g.n);
  for (int s = 0; s < g.n; ++s)
    for (int p = 0; p < k; ++p) act[s].push_back(p);
  return make_gset(g, std::move(act));
}

// Left cosets of H, labelled 0..r-1 in order of their minimal elements.
inline GSet coset_gset(const GroupTable& g, const SubgroupEmbedding& h) {
  require(g.n % h.sub.n == 0, errc::bad_input, "subgroup order must divide");
  std::vector<int> coset_of(g.n, -1), reps;
  for (int x = 0; x < g.n; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int i = 0; i < h.sub.n; ++i) coset_of[g.op(x, h.embed[i])] = c;
  }
  std::vector<std::vector<int>> act(g.n, std::vector<int>(reps.size()));
  for (int s = 0; s < g.n; ++s)
    for (std::size_t c = 0; c < reps.size(); ++c) act[s][c] = coset_of[g.op(s, reps[c])];
  return make_gset(g, std::move(act));
}

inline GSet disjoint_union(const GroupTable& g, const GSet& a, const GSet& b) {
  std::vector<std::vector<int>> act(g.n);
  for (int s = 0; s < g.n; ++s) {
    act[s] = a.act[s];
    for (int p = 0; p < b.n; ++p) act[s].push_back(a.n + b.act[s][p]);
  }
  return make_gset(g, std::move(act));
}

// Equivariant bundle surrogate: fiber dimensions per point plus unitary
// transitions u[g][x]: fiber(x) -> fiber(g.x), subject to the cocycle
// condition u(g, h.x) u(h, x) = u(gh, x).
struct EquivariantBundle {
  std::vector<int> fiber_dim;
  std::vector<std::vector<Mat>> trans;  // [g][x]
};

inline void validate_bundle(const GroupTable& g, const GSet& x, const EquivariantBundle& e,
                            const Tolerances& tol = {}) {
  require(static_cast<int>(e.fiber_dim.size()) == x.n &&
              static_cast<int>(e.trans.size()) == g.n,
          errc::bad_input, "bundle shape mismatch");
  for (int s = 0; s < g.n; ++s) {
    require(static_cast<int>(e.trans[s].size()) == x.n, errc::bad_input, "bundle shape mismatch");
    for (int p = 0; p < x.n; ++p) {
      const Mat& u = e.trans[s][p];
      require(u.rows() == e.fiber_dim[x.act[s][p]] && u.cols() == e.fiber_dim[p],
              errc::bad_input, "transition dimensions mismatch");
      require(unitarity_residual(u) <= tol.rep * 10 * std::max(1, e.fiber_dim[p]),
              errc::tolerance_exceeded, "transition is not unitary");
    }
  }
  for (int p = 0; p < x.n; ++p)
    require(frob_dist(e.trans[0][p], Mat::Identity(e.fiber_dim[p], e.fiber_dim[p])) <=
                tol.rep * 10,
            errc::bad_input, "identity transition must be trivial");
  for (int s = 0; s < g.n; ++s)
    for (int t = 0; t < g.n; ++t)
      for (int p = 0; p < x.n; ++p)
        require(frob_dist(e.trans[s][x.act[t][p]] * e.trans[t][p], e.trans[g.op(s, t)][p]) <=
                    tol.rep * 10 * g.n,
                errc::tolerance_exceeded, "transition cocycle condition fails");
}

inline EquivariantBundle constant_bundle(const GroupTable& g, const GSet& x,
                                         const UnitaryRep& rep) {
  EquivariantBundle e;
  e.fiber_dim.assign(x.n, rep.dim);
  e.trans.assign(g.n, std::vector<Mat>(x.n));
  for (int s = 0; s < g.n; ++s)
    for (int p = 0; p < x.n; ++p) e.trans[s][p] = rep.mats[s];
  validate_bundle(g, x, e);
  return e;
}

// Bundle over G/H induced from a representation of H: the fiber at the coset
// of r_c carries w, transitions transport along w(r_{g.c}^-1 g r_c).
inline EquivariantBundle induced_bundle(const GroupTable& g, const SubgroupEmbedding& h,
                                        const UnitaryRep& w) {
  GSet x = coset_gset(g, h);
  // minimal coset representatives: scan descending so the smallest label wins
  std::vector<int> rep_of(x.n, -1);
  for (int el = g.n - 1; el >= 0; --el) rep_of[x.act[el][0]] = el;  // descending, keeps minimum
  EquivariantBundle e;
  e.fiber_dim.assign(x.n, w.dim);
  e.trans.assign(g.n, std::vector<Mat>(x.n));
  for (int s = 0; s < g.n; ++s)
    for (int c = 0; c < x.n; ++c) {
      int inside = g.op(g.inverse(rep_of[x.act[s][c]]), g.op(s, rep_of[c]));
      require(h.contains(inside), errc::coset_decomposition_error,
              "transport left the subgroup");
      e.trans[s][c] = w.mats[h.index_of(inside)];
    }
  validate_bundle(g, x, e);
  return e;
}

struct GMap {
  std::vector<int> to;  // x index -> y index
};

inline void validate_gmap(const GroupTable& g, const GSet& x, const GSet& y, const GMap& f) {
  require(static_cast<int>(f.to.size()) == x.n, errc::bad_input, "map length mismatch");
  for (int p = 0; p < x.n; ++p)
    require(f.to[p] >= 0 && f.to[p] < y.n, errc::bad_input, "map target out of range");
  for (int s = 0; s < g.n; ++s)
    for (int p = 0; p < x.n; ++p)
      require(f.to[x.act[s][p]] == y.act[s][f.to[p]], errc::bad_input, "map is not equivariant");
}

inline EquivariantBundle pullback_bundle(const GroupTable& g, const GSet& x, const GSet& y,
                                         const GMap& f, const EquivariantBundle& e) {
  validate_gmap(g, x, y, f);
  EquivariantBundle out;
  out.fiber_dim.resize(x.n);
  for (int p = 0; p < x.n; ++p) out.fiber_dim[p] = e.fiber_dim[f.to[p]];
  out.trans.assign(g.n, std::vector<Mat>(x.n));
  for (int s = 0; s < g.n; ++s)
    for (int p = 0; p < x.n; ++p) out.trans[s][p] = e.trans[s][f.to[p]];
  validate_bundle(g, x, out);
  return out;
}

// One G-orbit of the set reduced to the point case over its stabilizer H:
// components follow the H-orbits of Irr(A); ranks count the constituents of
// the fiber representation in each component, generators count Irr(H) there.
struct GSetOrbitReport {
  std::vector<int> points;
  int base = 0;
  int stab_order = 0;
  std::vector<std::vector<int>> comp_chars;  // A-character indices per component
  std::vector<int> generators;               // # Irr(H) over the component
  std::vector<int> ranks;                    // fiber multiplicities in the component
};

struct GSetDecomposition {
  IrrTable irrA;
  std::vector<GSetOrbitReport> orbits;
};

inline GSetDecomposition decompose_gset(const GroupTable& g, const QuotientData& qd,
                                        const GSet& x, const EquivariantBundle& e,
                                        std::uint64_t seed, const Tolerances& tol = {}) {
  validate_bundle(g, x, e, tol);
  // A must act trivially, equivalently sit inside every stabilizer
  for (int i = 0; i < qd.normal.sub.n; ++i)
    for (int p = 0; p < x.n; ++p)
      require(x.act[qd.normal.embed[i]][p] == p, errc::stabilizer_violation,
              "A does not act trivially on the set");
  GSetDecomposition out;
  out.irrA = character_table(qd.normal.sub, derive_seed(seed, 0xA57ULL, 0), tol);

  std::vector<int> orbit_of(x.n, -1);
  for (int p = 0; p < x.n; ++p) {
    if (orbit_of[p] >= 0) continue;
    GSetOrbitReport rep;
    rep.base = p;
    int id = static_cast<int>(out.orbits.size());
    std::vector<int> stab;
    for (int s = 0; s < g.n; ++s) {
      if (orbit_of[x.act[s][p]] < 0) {
        orbit_of[x.act[s][p]] = id;
        rep.points.push_back(x.act[s][p]);
      }
      if (x.act[s][p] == p) stab.push_back(s);
    }
    std::sort(rep.points.begin(), rep.points.end());
    SubgroupEmbedding h = subgroup_from_elements(g, stab, "H");
    rep.stab_order = h.sub.n;

    // A normal inside H, aligned with the ambient indexing as in the point case
    std::vector<int> agens;
    for (int i = 0; i < qd.normal.sub.n; ++i) agens.push_back(h.index_of(qd.normal.embed[i]));
    QuotientData qdH = quotient_with_section(h.sub, agens, "A", "H/A");
    require(qdH.normal.sub.n == qd.normal.sub.n, errc::stabilizer_violation,
            "stabilizer does not contain all of A");
    for (int i = 0; i < qd.normal.sub.n; ++i)
      require(h.embed[qdH.normal.embed[i]] == qd.normal.embed[i], errc::internal_inconsistency,
              "A-indexing differs inside the stabilizer");

    // fiber representation of H at the base point
    UnitaryRep w;
    w.dim = e.fiber_dim[p];
    for (int i = 0; i < h.sub.n; ++i) w.mats.push_back(e.trans[h.embed[i]][p]);
    for (int i = 0; i < h.sub.n; ++i)
      for (int j = 0; j < h.sub.n; ++j)
        require(frob_dist(w.mats[i] * w.mats[j], w.mats[h.sub.op(i, j)]) <= tol.rep * 10 * h.sub.n,
                errc::tolerance_exceeded, "fiber representation is not a homomorphism");

    ConjAction actH = conjugation_action(qdH, out.irrA, tol);
    IrrTable irrH = character_table(h.sub, derive_seed(seed, 0x6E7ULL, id), tol);
    Character chw;
    chw.dim = w.dim;
    for (int c = 0; c < irrH.classes.nclasses; ++c)
      chw.values.push_back(w.mats[irrH.classes.reps[c]].trace());
    for (std::size_t o = 0; o < actH.orbits.size(); ++o) {
      rep.comp_chars.push_back(actH.orbits[o]);
      int gensCount = 0, rank = 0;
      for (std::size_t t = 0; t < irrH.chars.size(); ++t) {
        Character res = restrict_character(irrH.chars[t], irrH.classes, qdH.normal, out.irrA.classes);
        double inner =
            char_inner(out.irrA.classes, res, out.irrA.chars[actH.orbit_reps[o]]);
        if (iround(inner) == 0) continue;
        ++gensCount;
        double mw = char_inner(irrH.classes, chw, irrH.chars[t]);
        int mi = static_cast<int>(iround(mw));
        require(std::abs(mw - mi) <= tol.chr * 10, errc::internal_inconsistency,
                "fiber multiplicity is not integral");
        rank += mi;
      }
      rep.generators.push_back(gensCount);
      rep.ranks.push_back(rank);
    }
    out.orbits.push_back(std::move(rep));
  }
  return out;
}

}  // namespace clifftwist
