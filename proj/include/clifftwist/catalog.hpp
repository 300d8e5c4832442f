#pragma once

#include <string>
#include <vector>

#include "clifftwist/group.hpp"

namespace clifftwist {

// A catalog group together with its designated normal subgroups, each given by
// generator indices into the breadth-first element order.
struct CatalogEntry {
  std::string name;
  PermGroup pg;
  struct Normal {
    std::string label;
    std::vector<int> gens;
  };
  std::vector<Normal> normals;
};

inline int index_of_perm(const PermGroup& pg, const Perm& p) {
  for (std::size_t i = 0; i < pg.elements.size(); ++i)
    if (pg.elements[i] == p) return static_cast<int>(i);
  fail(errc::internal_inconsistency, "permutation not found in group");
}

namespace catalog_detail {

inline Perm cycle_shift(int n, int k) {
  Perm p(n);
  for (int x = 0; x < n; ++x) p[x] = (x + k) % n;
  return p;
}

inline Perm negate_mod(int n) {
  Perm p(n);
  for (int x = 0; x < n; ++x) p[x] = (n - x) % n;
  return p;
}

inline CatalogEntry cyclic(int n) {
  CatalogEntry e;
  e.name = "Z" + std::to_string(n);
  if (n == 1) {
    e.pg = group_from_permutations(e.name, {});
    e.normals.push_back({"trivial", {}});
    return e;
  }
  e.pg = group_from_permutations(e.name, {cycle_shift(n, 1)});
  if (n == 4 || n == 6 || n == 8) {
    for (int k = 2; k < n; ++k)
      if (n % k == 0) e.normals.push_back({std::to_string(k), {index_of_perm(e.pg, cycle_shift(n, k))}});
  } else {
    e.normals.push_back({"full", {1}});
  }
  return e;
}

inline CatalogEntry dihedral(int npoly) {
  CatalogEntry e;
  e.name = "D" + std::to_string(2 * npoly);
  e.pg = group_from_permutations(e.name, {cycle_shift(npoly, 1), negate_mod(npoly)});
  int r = 1;  // rotation generator index
  if (npoly == 4) {
    int r2 = e.pg.table.op(r, r);
    int s = 2;
    e.normals.push_back({"r", {r}});
    e.normals.push_back({"r2", {r2}});
    e.normals.push_back({"r2_s", {r2, s}});
  } else if (npoly == 6) {
    int r2 = e.pg.table.op(r, r);
    int r3 = e.pg.table.op(r2, r);
    e.normals.push_back({"r", {r}});
    e.normals.push_back({"r2", {r2}});
    e.normals.push_back({"r3", {r3}});
  }
  return e;
}

inline CatalogEntry quaternion8() {
  // Left translations on the labels 1,-1,i,-i,j,-j,k,-k.
  Perm li = {2, 3, 1, 0, 6, 7, 5, 4};
  Perm lj = {4, 5, 7, 6, 1, 0, 2, 3};
  CatalogEntry e;
  e.name = "Q8";
  e.pg = group_from_permutations(e.name, {li, lj});
  int m1 = e.pg.table.op(1, 1);  // the central element -1
  e.normals.push_back({"i", {1}});
  e.normals.push_back({"center", {m1}});
  return e;
}

inline CatalogEntry symmetric3() {
  CatalogEntry e;
  e.name = "S3";
  e.pg = group_from_permutations(e.name, {{1, 0, 2}, {1, 2, 0}});
  e.normals.push_back({"A3", {index_of_perm(e.pg, {1, 2, 0})}});
  return e;
}

inline CatalogEntry symmetric4() {
  CatalogEntry e;
  e.name = "S4";
  e.pg = group_from_permutations(e.name, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  int v1 = index_of_perm(e.pg, {1, 0, 3, 2});
  int v2 = index_of_perm(e.pg, {2, 3, 0, 1});
  int c3 = index_of_perm(e.pg, {1, 2, 0, 3});
  e.normals.push_back({"V4", {v1, v2}});
  e.normals.push_back({"A4", {c3, v1}});
  return e;
}

inline CatalogEntry alternating4() {
  CatalogEntry e;
  e.name = "A4";
  e.pg = group_from_permutations(e.name, {{1, 2, 0, 3}, {1, 0, 3, 2}});
  int v1 = index_of_perm(e.pg, {1, 0, 3, 2});
  int v2 = index_of_perm(e.pg, {2, 3, 0, 1});
  e.normals.push_back({"V4", {v1, v2}});
  return e;
}

inline CatalogEntry heisenberg27() {
  // Triples (a,b,c) over Z/3 with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'),
  // acting on themselves by left translation; index = 9a + 3b + c.
  auto idx = [](int a, int b, int c) { return 9 * a + 3 * b + c; };
  auto left = [&](int a, int b, int c) {
    Perm p(27);
    for (int a2 = 0; a2 < 3; ++a2)
      for (int b2 = 0; b2 < 3; ++b2)
        for (int c2 = 0; c2 < 3; ++c2)
          p[idx(a2, b2, c2)] = idx((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
    return p;
  };
  CatalogEntry e;
  e.name = "Heis27";
  e.pg = group_from_permutations(e.name, {left(1, 0, 0), left(0, 1, 0)});
  e.normals.push_back({"center", {index_of_perm(e.pg, left(0, 0, 1))}});
  return e;
}

}  // namespace catalog_detail

inline const std::vector<CatalogEntry>& shipped_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    using namespace catalog_detail;
    std::vector<CatalogEntry> v;
    for (int n = 1; n <= 8; ++n) v.push_back(cyclic(n));
    v.push_back(dihedral(4));
    v.push_back(dihedral(6));
    v.push_back(quaternion8());
    v.push_back(symmetric3());
    v.push_back(symmetric4());
    v.push_back(alternating4());
    v.push_back(heisenberg27());
    return v;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : shipped_catalog())
    if (e.name == name) return e;
  fail(errc::bad_input, "unknown catalog group " + name);
}

}  // namespace clifftwist
