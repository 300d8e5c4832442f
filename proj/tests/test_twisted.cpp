#include <gtest/gtest.h>

#include <optional>
#include <set>
#include <vector>

#include "clifftwist/twisted.hpp"
#include "pipeline.hpp"

using namespace clifftwist;
using pipeline::ObsCtx;

namespace {

ObstructionCocycle zero_cocycle(int qn, long modulus) {
  ObstructionCocycle oc;
  oc.modulus = modulus;
  oc.exps.assign(qn, std::vector<int>(qn, 0));
  return oc;
}

std::vector<int> greedy_generators(const GroupTable& g) {
  std::vector<int> gens;
  std::vector<int> closure{0};
  while (static_cast<int>(closure.size()) < g.n) {
    std::set<int> have(closure.begin(), closure.end());
    for (int x = 0; x < g.n; ++x)
      if (!have.count(x)) {
        gens.push_back(x);
        break;
      }
    closure = subgroup_closure(g, gens);
  }
  return gens;
}

std::optional<std::vector<int>> extend_hom(const GroupTable& a, const GroupTable& b,
                                           const std::vector<int>& gens,
                                           const std::vector<int>& imgs) {
  std::vector<int> f(a.n, -1);
  f[0] = 0;
  std::vector<int> queue{0};
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int y = a.op(x, gens[i]);
      int fy = b.op(f[x], imgs[i]);
      if (f[y] < 0) {
        f[y] = fy;
        queue.push_back(y);
      } else if (f[y] != fy) {
        return std::nullopt;
      }
    }
  }
  std::vector<int> seen(b.n, 0);
  for (int x = 0; x < a.n; ++x) {
    if (f[x] < 0 || seen[f[x]]) return std::nullopt;
    seen[f[x]] = 1;
  }
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (f[a.op(x, y)] != b.op(f[x], f[y])) return std::nullopt;
  return f;
}

// Brute isomorphism search for small tables, pruned by element orders.
std::optional<std::vector<int>> find_isomorphism(const GroupTable& a, const GroupTable& b) {
  if (a.n != b.n) return std::nullopt;
  std::multiset<int> oa, ob;
  for (int x = 0; x < a.n; ++x) {
    oa.insert(a.order_of(x));
    ob.insert(b.order_of(x));
  }
  if (oa != ob) return std::nullopt;
  std::vector<int> gens = greedy_generators(a);
  std::vector<int> imgs(gens.size(), -1);
  std::optional<std::vector<int>> out;
  auto rec = [&](auto&& self, std::size_t idx) -> bool {
    if (idx == gens.size()) {
      out = extend_hom(a, b, gens, imgs);
      return out.has_value();
    }
    for (int cand = 0; cand < b.n; ++cand) {
      if (b.order_of(cand) != a.order_of(gens[idx])) continue;
      imgs[idx] = cand;
      if (self(self, idx + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST(Twisted, TrivialCocycleReproducesOrdinaryIrreps) {
  const GroupTable& s3 = catalog_entry("S3").pg.table;
  TwistedIrrSet ts = twisted_irreps(s3, zero_cocycle(6, 6), 3, {}, true);
  ASSERT_EQ(ts.ext.total.n, 36);
  EXPECT_EQ(twisted_dims(ts), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(alpha_regular_class_count(s3, zero_cocycle(6, 6)), 3);
  // sector characters at (q, 0) match ordinary S3 characters
  IrrTable plain = character_table(s3, 0);
  for (std::size_t i = 0; i < ts.selected.size(); ++i) {
    std::vector<Mat> p = projective_model(ts, static_cast<int>(i));
    int hits = 0;
    for (const Character& ch : plain.chars) {
      double dist = 0;
      for (int x = 0; x < s3.n; ++x)
        dist = std::max(dist, std::abs(p[x].trace() - ch.values[plain.classes.class_of[x]]));
      if (dist < 1e-8) ++hits;
    }
    EXPECT_EQ(hits, 1);
  }
}

TEST(Twisted, NonsplitZ2GivesTwoFaithfulLinear) {
  // exps = [[0,0],[0,1]] mod 2 builds Z4 over Z2; the omega sector picks the
  // two faithful characters.
  const GroupTable& z2 = catalog_entry("Z2").pg.table;
  ObstructionCocycle oc = zero_cocycle(2, 2);
  oc.exps[1][1] = 1;
  TwistedIrrSet ts = twisted_irreps(z2, oc, 5, {}, true);
  ASSERT_EQ(ts.ext.total.n, 4);
  EXPECT_EQ(ts.ext.total.order_of(ts.ext.index(1, 0)), 4);  // nonsplit
  EXPECT_EQ(twisted_dims(ts), (std::vector<int>{1, 1}));
  EXPECT_EQ(alpha_regular_class_count(z2, oc), 2);
  std::vector<Mat> p = projective_model(ts, 0);
  EXPECT_LT(std::abs(p[1](0, 0) * p[1](0, 0) + cplx(-1, 0) * root_of_unity(1, 2)), 1e-9);
}

TEST(Twisted, CarryCocyclesOnCyclicGroupsStayLinear) {
  // every 2-cocycle on a cyclic group is symmetric, so all twisted irreducibles
  // are one-dimensional regardless of the class
  for (int m : {2, 3, 4, 6}) {
    const GroupTable& zm = catalog_entry(("Z" + std::to_string(m)).c_str()).pg.table;
    long n = 2 * m;
    for (long c : {0L, 1L, static_cast<long>(m)}) {
      ObstructionCocycle oc = zero_cocycle(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) oc.exps[i][j] = static_cast<int>((c * ((i + j) / m)) % n);
      TwistedIrrSet ts = twisted_irreps(zm, oc, 9);
      EXPECT_EQ(static_cast<int>(ts.selected.size()), m) << m << " c=" << c;
      EXPECT_EQ(twisted_dims(ts), std::vector<int>(m, 1));
      EXPECT_EQ(alpha_regular_class_count(zm, oc), m);
    }
  }
}

TEST(Twisted, HeisenbergSectorIsOneCube) {
  // nondegenerate commutator pairing on Z3 x Z3: the only alpha-regular class
  // is the identity and the sector is a single 3-dimensional representation
  ObsCtx s = pipeline::make("Heis27", "center", 1);
  TwistedIrrSet ts = twisted_irreps(s.ctx.qd.quotient, s.oc, 5, {}, true);
  ASSERT_EQ(ts.ext.total.n, 81);
  EXPECT_EQ(twisted_dims(ts), (std::vector<int>{3}));
  EXPECT_EQ(alpha_regular_class_count(s.ctx.qd.quotient, s.oc), 1);
  std::vector<Mat> p = projective_model(ts, 0);
  // the projective model is genuinely nonabelian
  double maxcomm = 0;
  for (int x = 0; x < 9; ++x)
    for (int y = 0; y < 9; ++y) maxcomm = std::max(maxcomm, frob_dist(p[x] * p[y], p[y] * p[x]));
  EXPECT_GT(maxcomm, 0.5);
}

TEST(Twisted, PushforwardExtensionsOfKleinAreIsomorphic) {
  // equal mod-4 classes: the order-16 extensions built from the D8 and Q8
  // center obstructions are isomorphic groups, while the zero class gives an
  // abelian group that matches neither
  ObsCtx d8 = pipeline::make("D8", "r2", 1);
  ObsCtx q8 = pipeline::make("Q8", "center", 1);
  CentralExtension e1 = central_extension(d8.ctx.qd.quotient, d8.oc);
  CentralExtension e2 = central_extension(q8.ctx.qd.quotient, q8.oc);
  ASSERT_EQ(e1.total.n, 16);
  ASSERT_EQ(e2.total.n, 16);
  EXPECT_TRUE(find_isomorphism(e1.total, e2.total).has_value());
  CentralExtension flat = central_extension(d8.ctx.qd.quotient, zero_cocycle(4, 4));
  EXPECT_FALSE(find_isomorphism(e1.total, flat.total).has_value());
  EXPECT_FALSE(find_isomorphism(e2.total, flat.total).has_value());
}

TEST(Twisted, SectorCountsMatchRegularClasses) {
  struct Case {
    const char* g;
    const char* label;
    int charIdx;
  };
  for (const Case& c : {Case{"D8", "r2", 1}, Case{"Q8", "center", 1}, Case{"S4", "A4", 3},
                        Case{"S4", "V4", 1}, Case{"D12", "r3", 1}}) {
    ObsCtx s = pipeline::make(c.g, c.label, c.charIdx);
    TwistedIrrSet ts = twisted_irreps(s.ctx.qd.quotient, s.oc, 11);
    EXPECT_EQ(static_cast<int>(ts.selected.size()),
              alpha_regular_class_count(s.ctx.qd.quotient, s.oc))
        << c.g << "/" << c.label;
    long dimsq = 0;
    for (int d : twisted_dims(ts)) dimsq += static_cast<long>(d) * d;
    EXPECT_EQ(dimsq, s.ctx.qd.quotient.n);
  }
}

TEST(Twisted, TrivialQuotientSingleton) {
  const GroupTable& z1 = catalog_entry("Z1").pg.table;
  TwistedIrrSet ts = twisted_irreps(z1, zero_cocycle(1, 4), 2);
  EXPECT_EQ(twisted_dims(ts), (std::vector<int>{1}));
  EXPECT_EQ(alpha_regular_class_count(z1, zero_cocycle(1, 4)), 1);
}

TEST(Twisted, SeedIndependentSector) {
  ObsCtx s = pipeline::make("D8", "r2", 1);
  TwistedIrrSet t1 = twisted_irreps(s.ctx.qd.quotient, s.oc, 3);
  TwistedIrrSet t2 = twisted_irreps(s.ctx.qd.quotient, s.oc, 40000);
  ASSERT_EQ(t1.selected, t2.selected);
  for (int t : t1.selected)
    for (int c = 0; c < t1.table.classes.nclasses; ++c)
      EXPECT_LT(std::abs(t1.table.chars[t].values[c] - t2.table.chars[t].values[c]), 1e-8);
  // central character is omega^k on the whole kernel for sector members
  long n = t1.ext.modulus;
  for (int t : t1.selected)
    for (long k = 0; k < n; ++k) {
      cplx expect = root_of_unity(k, n) * static_cast<double>(t1.table.chars[t].dim);
      cplx got = t1.table.chars[t].values[t1.table.classes.class_of[t1.ext.center(k)]];
      EXPECT_LT(std::abs(got - expect), 1e-8);
    }
}
