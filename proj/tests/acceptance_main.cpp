// Acceptance gate: one pass/fail line per criterion, nonzero exit on any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "clifftwist/gset.hpp"
#include "clifftwist/report_json.hpp"

using namespace clifftwist;

namespace {

int g_failures = 0;

struct Checker {
  std::ostringstream why;
  void check(bool ok, const std::string& msg) {
    if (!ok) why << (why.str().empty() ? "" : "; ") << msg;
  }
};

void run(int id, const char* label, double budget,
         const std::function<void(Checker&)>& body) {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && secs > budget) {
    std::ostringstream o;
    o << "runtime " << secs << "s over budget " << budget << "s";
    c.check(false, o.str());
  }
  bool pass = c.why.str().empty();
  if (!pass) ++g_failures;
  std::printf("%s criterion %d (%s) [%.2fs]%s%s\n", pass ? "PASS" : "FAIL", id, label, secs,
              pass ? "" : " - ", c.why.str().c_str());
  std::fflush(stdout);
}

// orbit index whose representative takes the given value on element `el` of A
int orbit_with_value(const GroupAnalysis& ga, int el, cplx want) {
  int sub = ga.qd.normal.index_of(el);
  for (std::size_t o = 0; o < ga.act.orbits.size(); ++o) {
    cplx v = ga.irrA.chars[ga.act.orbit_reps[o]].values[ga.irrA.classes.class_of[sub]];
    if (std::abs(v - want) < 1e-9) return static_cast<int>(o);
  }
  return -1;
}

const CorrespondenceRow* row_for(const PointDecomposition& pd, int irrg) {
  for (const CorrespondenceRow& r : pd.rows)
    if (r.irr_g == irrg) return &r;
  return nullptr;
}

// classical oracle: does some character of the stabilizer restrict to exactly tau?
bool character_extension_exists(const StabilizerContext& ctx, const IrrTable& irrA, int rep,
                                std::uint64_t seed) {
  IrrTable st = character_table(ctx.stab.sub, seed);
  const Character& tau = irrA.chars[rep];
  for (const Character& ch : st.chars) {
    if (ch.dim != tau.dim) continue;
    Character res = restrict_character(ch, st.classes, ctx.qd.normal, irrA.classes);
    double d = 0;
    for (std::size_t c = 0; c < res.values.size(); ++c)
      d = std::max(d, std::abs(res.values[c] - tau.values[c]));
    if (d < 1e-8) return true;
  }
  return false;
}

struct OrbitCase {
  std::string name;
  QuotientData qd;
  IrrTable irrA;
  ConjAction act;
  int orbit = 0;
};

// every (group, designated normal, orbit) in the shipped catalog
std::vector<OrbitCase> catalog_orbit_cases() {
  std::vector<OrbitCase> out;
  for (const CatalogEntry& e : shipped_catalog())
    for (const CatalogEntry::Normal& n : e.normals) {
      QuotientData qd = quotient_with_section(e.pg.table, n.gens);
      IrrTable irrA = character_table(qd.normal.sub, derive_seed(0, 0xA57ULL, 0));
      ConjAction act = conjugation_action(qd, irrA);
      for (std::size_t o = 0; o < act.orbits.size(); ++o) {
        OrbitCase oc;
        oc.name = e.name + ":" + n.label + ":orbit" + std::to_string(o);
        oc.qd = qd;
        oc.irrA = irrA;
        oc.act = act;
        oc.orbit = static_cast<int>(o);
        out.push_back(std::move(oc));
      }
    }
  return out;
}

GroupTable product_table(const std::string& name, const std::vector<GroupTable>& parts) {
  int n = 1;
  for (const GroupTable& p : parts) n *= p.n;
  auto split = [&](int x) {
    std::vector<int> c(parts.size());
    for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i) {
      c[i] = x % parts[i].n;
      x /= parts[i].n;
    }
    return c;
  };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<int> a = split(x), b = split(y);
      int z = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) z = z * parts[i].n + parts[i].op(a[i], b[i]);
      mul[static_cast<std::size_t>(x) * n + y] = z;
    }
  return make_group_table(name, n, std::move(mul));
}

void criterion1(Checker& c) {
  const CatalogEntry& e = catalog_entry("D8");
  GroupAnalysis ga = analyze_group(e.pg.table, resolve_normal_gens(e, "r"));
  PointDecomposition pd = decompose_at_point(ga, 0);
  c.check(ga.orbits.size() == 3, "expected three orbits");
  if (ga.orbits.size() != 3) return;
  int triv = -1;
  for (std::size_t o = 0; o < ga.act.orbits.size(); ++o) {
    bool allone = true;
    for (const cplx& v : ga.irrA.chars[ga.act.orbit_reps[o]].values)
      allone = allone && std::abs(v - cplx(1, 0)) < 1e-9;
    if (allone) triv = static_cast<int>(o);
  }
  int faithful = orbit_with_value(ga, 1, cplx(0, 1));
  if (faithful < 0) faithful = orbit_with_value(ga, 1, cplx(0, -1));
  int half = orbit_with_value(ga, 1, cplx(-1, 0));
  c.check(triv >= 0 && faithful >= 0 && half >= 0, "orbit identification failed");
  if (c.why.str().size()) return;
  c.check(ga.act.orbits[triv].size() == 1, "trivial-character orbit must be a singleton");
  c.check(ga.act.orbits[faithful].size() == 2, "faithful pair must form one orbit of size 2");
  c.check(ga.act.orbits[half].size() == 1, "order-2 character orbit must be a singleton");
  const StabilizerContext& ctx = ga.orbits[faithful].ctx;
  c.check(ctx.stab.sub.n == 4, "stabilizer of the faithful character must have order 4");
  bool cyclic = false;
  for (int x = 0; x < ctx.stab.sub.n; ++x) cyclic = cyclic || ctx.stab.sub.order_of(x) == 4;
  c.check(cyclic, "stabilizer must be cyclic of order 4");
  c.check(ctx.stab.embed == ga.qd.normal.embed, "stabilizer must equal the normal subgroup");
  c.check(ga.orbits[triv].twisted.selected.size() == 2, "rank over the trivial orbit must be 2");
  c.check(ga.orbits[faithful].twisted.selected.size() == 1, "rank over the pair must be 1");
  c.check(ga.orbits[half].twisted.selected.size() == 2, "rank over the order-2 orbit must be 2");
  int nu = -1;
  for (std::size_t t = 0; t < ga.irrG.chars.size(); ++t)
    if (ga.irrG.chars[t].dim == 2) nu = static_cast<int>(t);
  c.check(nu >= 0, "no 2-dim irreducible found");
  const CorrespondenceRow* row = nu >= 0 ? row_for(pd, nu) : nullptr;
  c.check(row && row->orbit == faithful, "2-dim irreducible must map to the size-2 orbit");
  c.check(pd.rows.size() == 5, "five correspondence rows expected");
}

void criterion2(Checker& c) {
  const CatalogEntry& e = catalog_entry("D8");
  GroupAnalysis ga = analyze_group(e.pg.table, resolve_normal_gens(e, "r2"));
  PointDecomposition pd = decompose_at_point(ga, 0);
  c.check(ga.orbits.size() == 2, "expected two orbits");
  if (ga.orbits.size() != 2) return;
  int r2 = e.pg.table.op(1, 1);
  int triv = orbit_with_value(ga, r2, 1.0);
  int faithful = orbit_with_value(ga, r2, -1.0);
  c.check(triv >= 0 && faithful >= 0, "orbit identification failed");
  if (c.why.str().size()) return;
  c.check(ga.orbits[triv].twisted.selected.size() == 4, "rank over the restriction-trivial orbit must be 4");
  c.check(ga.orbits[faithful].twisted.selected.size() == 1, "rank over the faithful orbit must be 1");
  c.check(ga.orbits[triv].trivial_class(), "trivial orbit class must vanish");
  c.check(!ga.orbits[faithful].trivial_class(), "faithful orbit class must be nontrivial");
  c.check(ga.orbits[faithful].cls_order == 2, "faithful orbit class must have order 2");
  std::vector<int> dims = twisted_dims(ga.orbits[faithful].twisted);
  c.check(dims == std::vector<int>{2}, "unique twisted irreducible of dim 2 expected");
  // the four 1-dim extensions over the trivial orbit carry all four linear characters
  std::set<int> hit;
  for (int s = 0; s < 4; ++s) {
    UnitaryRep ext = induced_model(ga, triv, s);
    c.check(ext.dim == 1, "extension over the trivial orbit must stay 1-dim");
    int idx = match_irr_g(ga, ext);
    c.check(idx >= 0, "extension character not found in Irr(G)");
    if (idx >= 0) hit.insert(idx);
  }
  std::set<int> linear;
  for (std::size_t t = 0; t < ga.irrG.chars.size(); ++t)
    if (ga.irrG.chars[t].dim == 1) linear.insert(static_cast<int>(t));
  c.check(linear.size() == 4, "D8 must have four linear characters");
  c.check(hit == linear, "extensions must realize exactly the four linear characters");
  int nu = -1;
  for (std::size_t t = 0; t < ga.irrG.chars.size(); ++t)
    if (ga.irrG.chars[t].dim == 2) nu = static_cast<int>(t);
  const CorrespondenceRow* row = nu >= 0 ? row_for(pd, nu) : nullptr;
  c.check(row && row->orbit == faithful && row->twisted == 0,
          "2-dim irreducible must match the unique twisted irreducible");
  UnitaryRep model = induced_model(ga, faithful, 0);
  c.check(match_irr_g(ga, model) == nu, "twisted model must induce back to the 2-dim irreducible");
}

void criterion3(Checker& c) {
  const CatalogEntry& e = catalog_entry("D8");
  GroupAnalysis ga = analyze_group(e.pg.table, resolve_normal_gens(e, "r"));
  int faithful = orbit_with_value(ga, 1, cplx(0, 1));
  if (faithful < 0) faithful = orbit_with_value(ga, 1, cplx(0, -1));
  c.check(faithful >= 0, "faithful orbit not found");
  if (faithful < 0) return;
  // canonical coset representatives are {identity, first reflection}
  int firstOut = -1;
  for (int x = 0; x < e.pg.table.n && firstOut < 0; ++x)
    if (!ga.orbits[faithful].ctx.stab.contains(x)) firstOut = x;
  c.check(firstOut == 2, "coset representatives must be the identity and the first reflection");
  UnitaryRep ind = induced_model(ga, faithful, 0);
  c.check(ind.dim == 2, "induced module must have dim 2");
  if (ind.dim != 2) return;
  Mat va(2, 2), vb(2, 2);
  va << cplx(0, 1), 0, 0, cplx(0, -1);
  vb << 0, 1, 1, 0;
  c.check(frob_dist(ind.mats[1], va) <= 1e-8, "matrix at the rotation must be diag(i, -i)");
  c.check(frob_dist(ind.mats[2], vb) <= 1e-8, "matrix at the reflection must be antidiag(1, 1)");
  int nu = -1;
  for (std::size_t t = 0; t < ga.irrG.chars.size(); ++t)
    if (ga.irrG.chars[t].dim == 2) nu = static_cast<int>(t);
  double worst = 0;
  for (int cl = 0; cl < ga.irrG.classes.nclasses; ++cl)
    worst = std::max(worst, std::abs(ind.mats[ga.irrG.classes.reps[cl]].trace() -
                                     ga.irrG.chars[nu].values[cl]));
  c.check(worst <= 1e-8, "character distance to the 2-dim irreducible exceeds 1e-8");
}

void criterion4(Checker& c) {
  std::vector<OrbitCase> cases = catalog_orbit_cases();
  int n = 0;
  for (const OrbitCase& oc : cases) {
    StabilizerContext ctx = stabilizer_context(oc.qd, oc.act, oc.orbit);
    int rep = oc.act.orbit_reps[oc.orbit];
    IrrTable irrA = oc.irrA;
    unitary_irreps(oc.qd.normal.sub, irrA, 1, {}, {rep});
    const UnitaryRep& rho = irrA.reps[rep];
    FactorSet fs = factor_set(ctx.qd);
    IntertwinerFamily fam = intertwiners(ctx.qd, rho, 7);
    ObstructionCocycle ob = obstruction_cocycle(ctx.qd, fs, fam, rho);
    CochainComplex cx = build_cochain_complex(ctx.qd.quotient, ob.modulus);
    std::vector<long> v = cocycle_vector(cx, ob.exps);
    bool trivial = solve_coboundary(cx, v).has_value();
    bool extends = character_extension_exists(ctx, irrA, rep, derive_seed(3, 0xEC7ULL, n));
    c.check(trivial == extends, oc.name + ": class triviality disagrees with character search");
    ++n;
  }
  c.check(n >= 50, "catalog sweep looks too small");
}

void criterion5(Checker& c) {
  std::vector<OrbitCase> cases = catalog_orbit_cases();
  int idx = 0;
  for (const OrbitCase& oc : cases) {
    StabilizerContext ctx = stabilizer_context(oc.qd, oc.act, oc.orbit);
    int rep = oc.act.orbit_reps[oc.orbit];
    IrrTable irrA = oc.irrA;
    unitary_irreps(oc.qd.normal.sub, irrA, 1, {}, {rep});
    const UnitaryRep& rho = irrA.reps[rep];
    FactorSet fs0 = factor_set(ctx.qd);
    IntertwinerFamily fam0 = intertwiners(ctx.qd, rho, 7);
    ObstructionCocycle ob0 = obstruction_cocycle(ctx.qd, fs0, fam0, rho);
    CochainComplex cx = build_cochain_complex(ctx.qd.quotient, ob0.modulus);
    std::vector<long> v0 = cocycle_vector(cx, ob0.exps);
    std::vector<int> dims0 = twisted_dims(twisted_irreps(ctx.qd.quotient, ob0,
                                                         derive_seed(5, 0x7D0ULL, idx)));
    std::sort(dims0.begin(), dims0.end());
    for (int k = 0; k < 20; ++k) {
      QuotientData qd2 = with_random_section(ctx.qd, derive_seed(11, idx, k));
      FactorSet fs2 = factor_set(qd2);
      IntertwinerFamily fam2 = intertwiners(qd2, rho, derive_seed(13, idx, k));
      ObstructionCocycle ob2 = obstruction_cocycle(qd2, fs2, fam2, rho);
      if (ob2.modulus != ob0.modulus) {
        c.check(false, oc.name + ": modulus changed under rerun");
        break;
      }
      std::vector<long> v2 = cocycle_vector(cx, ob2.exps);
      if (!class_equal(cx, v0, v2)) {
        c.check(false, oc.name + ": cohomology class moved under rerun " + std::to_string(k));
        break;
      }
      std::vector<int> dims2 = twisted_dims(twisted_irreps(ctx.qd.quotient, ob2,
                                                           derive_seed(17, idx, k)));
      std::sort(dims2.begin(), dims2.end());
      if (dims2 != dims0) {
        c.check(false, oc.name + ": twisted dimension multiset changed under rerun");
        break;
      }
    }
    ++idx;
  }
}

void criterion6(Checker& c) {
  for (const CatalogEntry& e : shipped_catalog())
    for (const CatalogEntry::Normal& n : e.normals) {
      DecompositionReport rep = build_report(e.name, n.label, 0);
      std::string tag = e.name + ":" + n.label;
      for (const CheckResult& ck : rep.checks) {
        c.check(ck.pass, tag + ": check " + ck.name + " failed");
        if (ck.name == "induct_back_roundtrip")
          c.check(ck.residual <= 1e-8, tag + ": round-trip character distance exceeds 1e-8");
      }
      long long sum = 0;
      for (const ReportRow& row : rep.correspondence) sum += 1LL * row.dim * row.dim;
      c.check(sum == rep.group_order, tag + ": dimension sum is not |G|");
    }
}

void criterion7(Checker& c) {
  std::vector<OrbitCase> cases = catalog_orbit_cases();
  for (const OrbitCase& oc : cases) {
    StabilizerContext ctx = stabilizer_context(oc.qd, oc.act, oc.orbit);
    int rep = oc.act.orbit_reps[oc.orbit];
    IrrTable irrA = oc.irrA;
    unitary_irreps(oc.qd.normal.sub, irrA, 1, {}, {rep});
    FactorSet fs = factor_set(ctx.qd);
    IntertwinerFamily fam = intertwiners(ctx.qd, irrA.reps[rep], 7);
    ObstructionCocycle ob = obstruction_cocycle(ctx.qd, fs, fam, irrA.reps[rep]);
    const GroupTable& q = ctx.qd.quotient;
    long N = ob.modulus;
    bool exact = true;
    for (int a = 0; a < q.n && exact; ++a)
      for (int b = 0; b < q.n && exact; ++b)
        for (int d = 0; d < q.n && exact; ++d) {
          long lhs = ob.exps[b][d] + ob.exps[a][q.op(b, d)] - ob.exps[q.op(a, b)][d] -
                     ob.exps[a][b];
          exact = ((lhs % N) + N) % N == 0;
        }
    c.check(exact, oc.name + ": snapped cocycle identity fails on some triple");
    CochainComplex cx = build_cochain_complex(q, N);
    std::vector<long> v = cocycle_vector(cx, ob.exps);
    c.check(is_cocycle(cx, v), oc.name + ": cochain image is not a cocycle");
    if (std::optional<std::vector<long>> eps = solve_coboundary(cx, v)) {
      bool good = true;
      for (int a = 0; a < q.n && good; ++a)
        for (int b = 0; b < q.n && good; ++b) {
          long lhs = (*eps)[a] + (*eps)[b] - (*eps)[q.op(a, b)] - ob.exps[a][b];
          good = ((lhs % N) + N) % N == 0;
        }
      c.check(good, oc.name + ": coboundary solution does not verify exactly");
    }
    ZMat prod = d2_matrix(cx) * cx.d1;
    bool zero = true;
    for (const mpz_class& z : prod.a) zero = zero && z % N == 0;
    c.check(zero, oc.name + ": d2 after d1 is nonzero");
  }
}

void criterion8(Checker& c) {
  double worstHom = 0, worstUnit = 0, worstOrtho = 0, worstProj = 0;
  for (const CatalogEntry& e : shipped_catalog()) {
    const GroupTable& g = e.pg.table;
    IrrTable t = character_table(g, derive_seed(9, 0xACCULL, 0));
    for (std::size_t i = 0; i < t.chars.size(); ++i)
      for (std::size_t j = 0; j < t.chars.size(); ++j)
        worstOrtho = std::max(worstOrtho, std::abs(char_inner(t.classes, t.chars[i], t.chars[j]) -
                                                   (i == j ? 1.0 : 0.0)));
    unitary_irreps(g, t, derive_seed(9, 0xACCULL, 1));
    for (const UnitaryRep& rep : t.reps) {
      for (int s = 0; s < g.n; ++s)
        worstUnit = std::max(worstUnit, unitarity_residual(rep.mats[s]));
      for (int s = 0; s < g.n; ++s)
        for (int u = 0; u < g.n; ++u)
          worstHom = std::max(worstHom, frob_dist(rep.mats[s] * rep.mats[u], rep.mats[g.op(s, u)]));
    }
  }
  struct P {
    const char* g;
    const char* label;
  };
  for (const P& p : {P{"D8", "r2"}, P{"Q8", "center"}, P{"S4", "V4"}, P{"D12", "r3"},
                     P{"Heis27", "center"}}) {
    const CatalogEntry& e = catalog_entry(p.g);
    GroupAnalysis ga = analyze_group(e.pg.table, resolve_normal_gens(e, p.label));
    PointDecomposition pd = decompose_at_point(ga, 23);
    for (const CorrespondenceRow& row : pd.rows) {
      const OrbitAnalysis& oa = ga.orbits[row.orbit];
      MultiplicitySpace ms =
          multiplicity_space(oa.ctx, oa.fam, oa.oc, ga.irrA.reps[oa.rep_char],
                             ga.irrG.reps[row.irr_g], derive_seed(21, row.irr_g, row.orbit));
      const GroupTable& q = oa.ctx.qd.quotient;
      for (int a = 0; a < q.n; ++a)
        for (int b = 0; b < q.n; ++b)
          worstProj = std::max(
              worstProj,
              frob_dist(ms.action[a] * ms.action[b],
                        root_of_unity(oa.oc.exps[a][b], oa.oc.modulus) * ms.action[q.op(a, b)]));
    }
    for (const OrbitAnalysis& oa : ga.orbits)
      if (oa.extension)
        for (int s = 0; s < oa.ctx.stab.sub.n; ++s)
          for (int u = 0; u < oa.ctx.stab.sub.n; ++u)
            worstHom = std::max(worstHom,
                                frob_dist(oa.extension->mats[s] * oa.extension->mats[u],
                                          oa.extension->mats[oa.ctx.stab.sub.op(s, u)]));
  }
  std::ostringstream o;
  o << "hom " << worstHom << ", unit " << worstUnit << ", ortho " << worstOrtho << ", proj "
    << worstProj;
  c.check(worstHom < 1e-9, "homomorphism residual too large: " + o.str());
  c.check(worstUnit < 1e-9, "unitarity residual too large: " + o.str());
  c.check(worstOrtho < 1e-8, "orthogonality residual too large: " + o.str());
  c.check(worstProj < 1e-8, "projective action residual too large: " + o.str());
}

void criterion9(Checker& c) {
  const CatalogEntry& d8 = catalog_entry("D8");
  const CatalogEntry& q8 = catalog_entry("Q8");
  const CatalogEntry& z4 = catalog_entry("Z4");
  int r2 = d8.pg.table.op(1, 1);
  int zc = q8.pg.table.n == 8 ? resolve_normal_gens(q8, "center")[0] : -1;

  auto t0 = std::chrono::steady_clock::now();
  GroupTable g64 = product_table("D8xQ8", {d8.pg.table, q8.pg.table});
  std::vector<int> a64 = {r2 * 8 + 0, zc};  // (r^2, 1) and (1, -1), central of order 4
  DecompositionReport rep64 = build_report_for("D8xQ8", "center4", g64, a64, 0);
  double t64 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.check(rep64.group_order == 64, "order-64 group expected");
  c.check(rep64.all_pass(), "order-64 report has failing checks");
  c.check(t64 < 10.0, "order-64 pipeline exceeded 10s");

  auto t1 = std::chrono::steady_clock::now();
  GroupTable g256 = product_table("D8xD8xZ4", {d8.pg.table, d8.pg.table, z4.pg.table});
  std::vector<int> a256 = {(r2 * 8 + 0) * 4 + 0, (0 * 8 + r2) * 4 + 0, 2};
  DecompositionReport rep256 = build_report_for("D8xD8xZ4", "center8", g256, a256, 0);
  double t256 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  c.check(rep256.group_order == 256, "order-256 group expected");
  c.check(rep256.normal_order == 8, "order-8 normal expected");
  c.check(rep256.all_pass(), "order-256 report has failing checks");
  c.check(t256 < 120.0, "order-256 pipeline exceeded 120s");
}

}  // namespace

int main() {
  run(1, "dihedral rotation-normal golden", 1.0, criterion1);
  run(2, "dihedral center-normal golden", 1.0, criterion2);
  run(3, "induction golden", 0, criterion3);
  run(4, "extendability cross-validation", 30.0, criterion4);
  run(5, "section and seed independence", 0, criterion5);
  run(6, "counting identities", 0, criterion6);
  run(7, "exactness suite", 0, criterion7);
  run(8, "numerical residual suite", 0, criterion8);
  run(9, "scale", 0, criterion9);
  if (g_failures) {
    std::printf("%d criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
