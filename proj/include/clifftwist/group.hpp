#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "clifftwist/numeric.hpp"
#include "clifftwist/perm.hpp"

namespace clifftwist {

// Finite group as a validated multiplication table.  Element 0 is the identity.
// Validation: identity row/column, Latin square, two-sided inverses, and
// associativity (exhaustive for order <= 256, else 10*n^2 seeded random triples).
struct GroupTable {
  std::string name;
  int n = 1;
  std::vector<int> mul;  // row-major n*n
  std::vector<int> inv;

  int op(int a, int b) const { return mul[static_cast<std::size_t>(a) * n + b]; }
  int inverse(int a) const { return inv[a]; }
  // g^-1 * a * g, the right conjugate of a by g
  int conj(int a, int g) const { return op(op(inv[g], a), g); }

  int order_of(int g) const {
    int k = 1, x = g;
    while (x != 0) {
      x = op(x, g);
      ++k;
    }
    return k;
  }

  int exponent() const {
    long long e = 1;
    for (int g = 0; g < n; ++g) e = std::lcm(e, static_cast<long long>(order_of(g)));
    return static_cast<int>(e);
  }

  bool is_abelian() const {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (op(a, b) != op(b, a)) return false;
    return true;
  }
};

inline GroupTable make_group_table(std::string name, int n, std::vector<int> mul) {
  require(n >= 1, errc::bad_input, "group order must be positive");
  require(static_cast<int>(mul.size()) == n * n, errc::bad_input, "table size mismatch");
  GroupTable g;
  g.name = std::move(name);
  g.n = n;
  g.mul = std::move(mul);
  for (int v : g.mul) require(v >= 0 && v < n, errc::bad_input, "table entry out of range");
  for (int a = 0; a < n; ++a) {
    require(g.op(0, a) == a && g.op(a, 0) == a, errc::bad_input, "element 0 is not an identity");
  }
  // Latin square: every row and column is a permutation.
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = g.op(a, b);
      require(!seen[v], errc::bad_input, "duplicate entry in row " + std::to_string(a));
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = g.op(b, a);
      require(!seen[v], errc::bad_input, "duplicate entry in column " + std::to_string(a));
      seen[v] = 1;
    }
  }
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.op(a, b) == 0) {
        require(g.op(b, a) == 0, errc::bad_input, "one-sided inverse at " + std::to_string(a));
        g.inv[a] = b;
        break;
      }
    }
    require(g.inv[a] >= 0, errc::bad_input, "missing inverse");
  }
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          require(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)), errc::bad_input,
                  "associativity fails");
  } else {
    Rng rng(0x41530c1a7eULL + static_cast<std::uint64_t>(n));
    for (long long t = 0; t < 10LL * n * n; ++t) {
      int a = rng.below(n), b = rng.below(n), c = rng.below(n);
      require(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)), errc::bad_input,
              "associativity fails on sampled triple");
    }
  }
  return g;
}

// Group generated by permutations, with the breadth-first element order used
// throughout: index 0 is the identity, then products parent*generator in
// discovery order.  Generator i gets index i+1 when the generators are
// distinct, non-identity and independent.
struct PermGroup {
  GroupTable table;
  std::vector<Perm> elements;
};

inline PermGroup group_from_permutations(std::string name, const std::vector<Perm>& gens,
                                         int order_cap = 2000) {
  if (gens.empty()) {
    PermGroup pg;
    pg.table = make_group_table(std::move(name), 1, {0});
    pg.elements = {Perm{}};
    return pg;
  }
  std::size_t deg = gens.front().size();
  for (const Perm& p : gens) {
    require(p.size() == deg, errc::invalid_permutation, "generators act on different point sets");
    require(is_permutation(p), errc::invalid_permutation, "generator is not a permutation");
  }
  std::vector<Perm> elems{perm_identity(static_cast<int>(deg))};
  std::map<Perm, int> index{{elems[0], 0}};
  std::queue<int> work;
  work.push(0);
  while (!work.empty()) {
    int i = work.front();
    work.pop();
    for (const Perm& g : gens) {
      Perm p = perm_compose(elems[i], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(p));
        require(static_cast<int>(elems.size()) <= order_cap, errc::order_cap_exceeded,
                "closure exceeds cap " + std::to_string(order_cap));
        work.push(static_cast<int>(elems.size()) - 1);
      }
    }
  }
  int n = static_cast<int>(elems.size());
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mul[static_cast<std::size_t>(a) * n + b] = index.at(perm_compose(elems[a], elems[b]));
  PermGroup pg;
  pg.table = make_group_table(std::move(name), n, std::move(mul));
  pg.elements = std::move(elems);
  return pg;
}

// Subgroup closure of `gens` inside `g`, returned as ascending parent indices.
inline std::vector<int> subgroup_closure(const GroupTable& g, const std::vector<int>& gens) {
  std::vector<char> in(g.n, 0);
  in[0] = 1;
  std::vector<int> work{0};
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int s : gens) {
      require(s >= 0 && s < g.n, errc::bad_input, "generator index out of range");
      int y = g.op(x, s);
      if (!in[y]) {
        in[y] = 1;
        work.push_back(y);
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < g.n; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

// A subgroup with its own table; embed[i] is the parent index of sub element i.
// embed is ascending, so identical element sets always yield identical tables.
struct SubgroupEmbedding {
  GroupTable sub;
  std::vector<int> embed;
  std::vector<int> to_sub;  // parent index -> sub index or -1

  int index_of(int parent_elem) const {
    int i = to_sub[parent_elem];
    require(i >= 0, errc::coset_decomposition_error, "element lies outside the subgroup");
    return i;
  }
  bool contains(int parent_elem) const { return to_sub[parent_elem] >= 0; }
};

inline SubgroupEmbedding subgroup_from_elements(const GroupTable& g, std::vector<int> elems,
                                                const std::string& name) {
  std::sort(elems.begin(), elems.end());
  SubgroupEmbedding se;
  se.embed = std::move(elems);
  se.to_sub.assign(g.n, -1);
  int m = static_cast<int>(se.embed.size());
  for (int i = 0; i < m; ++i) se.to_sub[se.embed[i]] = i;
  require(!se.embed.empty() && se.embed[0] == 0, errc::bad_input, "subgroup misses the identity");
  std::vector<int> mul(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = g.op(se.embed[i], se.embed[j]);
      require(se.to_sub[p] >= 0, errc::bad_input, "element set is not closed");
      mul[static_cast<std::size_t>(i) * m + j] = se.to_sub[p];
    }
  se.sub = make_group_table(name, m, std::move(mul));
  return se;
}

inline SubgroupEmbedding subgroup_generated(const GroupTable& g, const std::vector<int>& gens,
                                            const std::string& name) {
  return subgroup_from_elements(g, subgroup_closure(g, gens), name);
}

// Normal subgroup A of G with quotient Q, projection, section and the
// conjugation maps psi[q] : A -> A, a |-> sigma(q)^-1 a sigma(q).
// Cosets are labelled in order of their minimal parent element, so Q and its
// labels do not depend on the section; the default section takes that minimal
// element (hence section[0] = 0).
struct QuotientData {
  GroupTable parent;
  SubgroupEmbedding normal;
  GroupTable quotient;
  std::vector<int> proj;                  // parent index -> quotient index
  std::vector<int> section;               // quotient index -> parent index
  std::vector<std::vector<int>> psi;      // psi[q][a] in sub indices

  int sigma(int q) const { return section[q]; }
};

namespace detail {

inline std::vector<std::vector<int>> psi_from_section(const GroupTable& g,
                                                      const SubgroupEmbedding& a,
                                                      const std::vector<int>& section) {
  std::vector<std::vector<int>> psi(section.size(), std::vector<int>(a.sub.n));
  for (std::size_t q = 0; q < section.size(); ++q) {
    int s = section[q];
    for (int i = 0; i < a.sub.n; ++i) {
      int image = g.op(g.op(g.inverse(s), a.embed[i]), s);
      require(a.contains(image), errc::not_normal, "conjugation leaves the subgroup");
      psi[q][i] = a.index_of(image);
    }
  }
  return psi;
}

}  // namespace detail

inline QuotientData quotient_with_section(const GroupTable& g, const std::vector<int>& normalGens,
                                          const std::string& subName = "A",
                                          const std::string& quotName = "Q") {
  QuotientData qd;
  qd.parent = g;
  qd.normal = subgroup_generated(g, normalGens, subName);
  const SubgroupEmbedding& a = qd.normal;
  for (int x = 0; x < g.n; ++x)
    for (int i = 0; i < a.sub.n; ++i)
      require(a.contains(g.conj(a.embed[i], x)), errc::not_normal,
              "subgroup is not normal in " + g.name);
  // Cosets xA, labelled by discovery over ascending x.
  qd.proj.assign(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    if (qd.proj[x] >= 0) continue;
    int label = static_cast<int>(qd.section.size());
    qd.section.push_back(x);
    for (int i = 0; i < a.sub.n; ++i) qd.proj[g.op(x, a.embed[i])] = label;
  }
  int m = static_cast<int>(qd.section.size());
  std::vector<int> qmul(static_cast<std::size_t>(m) * m);
  for (int q1 = 0; q1 < m; ++q1)
    for (int q2 = 0; q2 < m; ++q2)
      qmul[static_cast<std::size_t>(q1) * m + q2] = qd.proj[g.op(qd.section[q1], qd.section[q2])];
  qd.quotient = make_group_table(quotName, m, std::move(qmul));
  // proj must be a homomorphism with kernel exactly A.
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      require(qd.proj[g.op(x, y)] == qd.quotient.op(qd.proj[x], qd.proj[y]),
              errc::internal_inconsistency, "projection is not a homomorphism");
  for (int x = 0; x < g.n; ++x)
    require((qd.proj[x] == 0) == a.contains(x), errc::internal_inconsistency,
            "kernel differs from the subgroup");
  qd.psi = detail::psi_from_section(g, a, qd.section);
  return qd;
}

// Same quotient with a caller-chosen section (used by independence tests).
inline QuotientData with_section(const QuotientData& qd, std::vector<int> section) {
  require(section.size() == qd.section.size(), errc::bad_input, "section length mismatch");
  require(section[0] == 0, errc::bad_input, "section must fix the identity coset");
  for (std::size_t q = 0; q < section.size(); ++q)
    require(qd.proj[section[q]] == static_cast<int>(q), errc::bad_input,
            "section element lies in the wrong coset");
  QuotientData out = qd;
  out.section = std::move(section);
  out.psi = detail::psi_from_section(out.parent, out.normal, out.section);
  return out;
}

inline QuotientData with_random_section(const QuotientData& qd, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x53454354ULL));
  std::vector<std::vector<int>> cosets(qd.quotient.n);
  for (int x = 0; x < qd.parent.n; ++x) cosets[qd.proj[x]].push_back(x);
  std::vector<int> section(qd.quotient.n);
  section[0] = 0;
  for (int q = 1; q < qd.quotient.n; ++q)
    section[q] = cosets[q][rng.below(static_cast<int>(cosets[q].size()))];
  return with_section(qd, std::move(section));
}

// Factor set chi(q1,q2) = sigma(q1 q2)^-1 sigma(q1) sigma(q2), as A-indices.
// Satisfies the twisted cocycle identity
//   chi(q1 q2, q3) * psi_{q3}(chi(q1, q2)) = chi(q1, q2 q3) * chi(q2, q3)
// and is normalized: chi(1,q) = chi(q,1) = identity.
struct FactorSet {
  std::vector<std::vector<int>> chi;
};

inline FactorSet factor_set(const QuotientData& qd) {
  const GroupTable& g = qd.parent;
  const GroupTable& q = qd.quotient;
  FactorSet fs;
  fs.chi.assign(q.n, std::vector<int>(q.n));
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2) {
      int prod = g.op(qd.sigma(q1), qd.sigma(q2));
      int val = g.op(g.inverse(qd.sigma(q.op(q1, q2))), prod);
      require(qd.normal.contains(val), errc::internal_inconsistency,
              "factor set value escapes the subgroup");
      fs.chi[q1][q2] = qd.normal.index_of(val);
    }
  for (int q1 = 0; q1 < q.n; ++q1) {
    require(fs.chi[0][q1] == 0 && fs.chi[q1][0] == 0, errc::internal_inconsistency,
            "factor set is not normalized");
  }
  const GroupTable& a = qd.normal.sub;
  for (int q1 = 0; q1 < q.n; ++q1)
    for (int q2 = 0; q2 < q.n; ++q2)
      for (int q3 = 0; q3 < q.n; ++q3) {
        int lhs = a.op(fs.chi[q.op(q1, q2)][q3], qd.psi[q3][fs.chi[q1][q2]]);
        int rhs = a.op(fs.chi[q1][q.op(q2, q3)], fs.chi[q2][q3]);
        require(lhs == rhs, errc::cocycle_violation, "factor set fails the cocycle identity");
      }
  return fs;
}

// Reconstruction of G on pairs (q,a) with product
//   (q1,a1)(q2,a2) = (q1 q2, chi(q1,q2) psi_{q2}(a1) a2),
// together with the mutually inverse index maps to and from the parent.
struct SemidirectProduct {
  GroupTable product;             // on pair indices q * |A| + a
  std::vector<int> to_parent;     // pair index -> parent index
  std::vector<int> from_parent;   // parent index -> pair index

  int pair_index(int q, int a, int nA) const { return q * nA + a; }
};

inline SemidirectProduct semidirect_reconstruct(const QuotientData& qd, const FactorSet& fs) {
  const GroupTable& a = qd.normal.sub;
  const GroupTable& q = qd.quotient;
  const GroupTable& g = qd.parent;
  int nA = a.n, nQ = q.n, n = nA * nQ;
  require(n == g.n, errc::internal_inconsistency, "pair count differs from the parent order");
  auto pair = [nA](int qi, int ai) { return qi * nA + ai; };
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  for (int q1 = 0; q1 < nQ; ++q1)
    for (int a1 = 0; a1 < nA; ++a1)
      for (int q2 = 0; q2 < nQ; ++q2)
        for (int a2 = 0; a2 < nA; ++a2) {
          int av = a.op(a.op(fs.chi[q1][q2], qd.psi[q2][a1]), a2);
          mul[static_cast<std::size_t>(pair(q1, a1)) * n + pair(q2, a2)] =
              pair(q.op(q1, q2), av);
        }
  SemidirectProduct sp;
  sp.product = make_group_table(g.name + "_reconstructed", n, std::move(mul));
  sp.to_parent.assign(n, -1);
  sp.from_parent.assign(n, -1);
  for (int qi = 0; qi < nQ; ++qi)
    for (int ai = 0; ai < nA; ++ai)
      sp.to_parent[pair(qi, ai)] = g.op(qd.sigma(qi), qd.normal.embed[ai]);
  for (int x = 0; x < n; ++x) {
    int qi = qd.proj[x];
    int ai = qd.normal.index_of(g.op(g.inverse(qd.sigma(qi)), x));
    sp.from_parent[x] = pair(qi, ai);
  }
  for (int x = 0; x < n; ++x) {
    require(sp.to_parent[sp.from_parent[x]] == x && sp.from_parent[sp.to_parent[x]] == x,
            errc::internal_inconsistency, "reconstruction maps are not mutually inverse");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      require(sp.to_parent[sp.product.op(x, y)] == g.op(sp.to_parent[x], sp.to_parent[y]),
              errc::internal_inconsistency, "reconstruction is not an isomorphism");
  return sp;
}

// Direct product on pair indices (i,j) -> i*|H| + j; used to assemble larger
// benchmark groups out of catalog pieces.
inline GroupTable direct_product(const GroupTable& g, const GroupTable& h,
                                 const std::string& name) {
  int n = g.n * h.n;
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  auto pair = [&](int i, int j) { return i * h.n + j; };
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < h.n; ++b)
      for (int c = 0; c < g.n; ++c)
        for (int d = 0; d < h.n; ++d)
          mul[static_cast<std::size_t>(pair(a, b)) * n + pair(c, d)] =
              pair(g.op(a, c), h.op(b, d));
  return make_group_table(name, n, std::move(mul));
}

}  // namespace clifftwist
