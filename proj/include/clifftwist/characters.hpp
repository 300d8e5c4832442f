#pragma once

#include <algorithm>
#include <vector>

#include "clifftwist/group.hpp"
#include "clifftwist/numeric.hpp"

namespace clifftwist {

// Conjugacy classes in canonical order: ascending (size, minimal element).
// The identity class is always index 0.
struct ConjClasses {
  int nclasses = 0;
  std::vector<int> class_of;
  std::vector<std::vector<int>> members;  // ascending within each class
  std::vector<int> reps;                  // minimal member
  std::vector<int> sizes;
};

inline ConjClasses conjugacy_classes(const GroupTable& g) {
  ConjClasses cc;
  cc.class_of.assign(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    if (cc.class_of[x] != -1) continue;
    std::vector<int> cls;
    for (int s = 0; s < g.n; ++s) {
      int y = g.conj(x, s);
      if (cc.class_of[y] == -1) {
        cc.class_of[y] = -2;  // mark, renumber after sorting
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    cc.members.push_back(std::move(cls));
  }
  std::vector<int> order(cc.members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cc.members[a].size() != cc.members[b].size())
      return cc.members[a].size() < cc.members[b].size();
    return cc.members[a][0] < cc.members[b][0];
  });
  std::vector<std::vector<int>> sorted;
  sorted.reserve(order.size());
  for (int i : order) sorted.push_back(std::move(cc.members[i]));
  cc.members = std::move(sorted);
  cc.nclasses = static_cast<int>(cc.members.size());
  for (int c = 0; c < cc.nclasses; ++c) {
    cc.reps.push_back(cc.members[c][0]);
    cc.sizes.push_back(static_cast<int>(cc.members[c].size()));
    for (int y : cc.members[c]) cc.class_of[y] = c;
  }
  return cc;
}

// Class function given by its value on each class, plus the degree.
struct Character {
  int dim = 0;
  std::vector<cplx> values;
};

// Unitary matrix model of an irreducible character, indexed by group element.
struct UnitaryRep {
  int dim = 0;
  std::vector<Mat> mats;
};

struct IrrTable {
  ConjClasses classes;
  std::vector<Character> chars;
  std::vector<UnitaryRep> reps;  // parallel to chars once materialized
};

inline double char_inner(const ConjClasses& cc, const Character& a, const Character& b) {
  long long n = 0;
  cplx acc = 0;
  for (int c = 0; c < cc.nclasses; ++c) {
    acc += static_cast<double>(cc.sizes[c]) * a.values[c] * std::conj(b.values[c]);
    n += cc.sizes[c];
  }
  double val = acc.real() / static_cast<double>(n);
  require(std::abs(acc.imag()) <= 1e-8 * static_cast<double>(n), errc::tolerance_exceeded,
          "character inner product has an imaginary part");
  return val;
}

namespace detail {

// Canonical character order: ascending dim, then descending lexicographic on
// rounded (re, im) pairs over the classes.  Puts the trivial character first.
inline bool char_less(const Character& a, const Character& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  for (std::size_t c = 0; c < a.values.size(); ++c) {
    long long ra = iround(a.values[c].real() * 1e6), rb = iround(b.values[c].real() * 1e6);
    if (ra != rb) return ra > rb;
    long long ia = iround(a.values[c].imag() * 1e6), ib = iround(b.values[c].imag() * 1e6);
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace detail

// Character table by simultaneous diagonalization of the class-sum algebra:
// the matrices (M_i)_{j,l} = #{(x,y) in C_i x C_j : xy = rep_l} commute, and a
// seeded random real combination separates their common eigenvectors.  Each
// eigenvector yields omega_t(i) = |C_i| chi_t(i) / d_t, from which degrees and
// characters follow.  Retries with derived seeds on eigenvalue collisions
// before raising DegenerateSplit.
inline IrrTable character_table(const GroupTable& g, std::uint64_t seed,
                                const Tolerances& tol = {}) {
  IrrTable table;
  table.classes = conjugacy_classes(g);
  const ConjClasses& cc = table.classes;
  int k = cc.nclasses;
  std::vector<Eigen::MatrixXd> cm(k, Eigen::MatrixXd::Zero(k, k));
  for (int l = 0; l < k; ++l) {
    int rep = cc.reps[l];
    for (int x = 0; x < g.n; ++x) {
      int i = cc.class_of[x];
      int j = cc.class_of[g.op(g.inverse(x), rep)];
      cm[i](j, l) += 1.0;
    }
  }
  double scale = 0;
  for (int i = 0; i < k; ++i) scale = std::max(scale, cm[i].norm());
  scale += 1.0;

  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(derive_seed(seed, 0xC4A17AB1EULL, attempt));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) m += rng.uniform_pm1() * cm[i];
    Eigen::ComplexEigenSolver<Mat> es(m.cast<cplx>());
    if (es.info() != Eigen::Success) continue;
    Eigen::VectorXcd ev = es.eigenvalues();
    double sep = 1e300;
    for (int s = 0; s < k; ++s)
      for (int t = s + 1; t < k; ++t) sep = std::min(sep, std::abs(ev(s) - ev(t)));
    if (k > 1 && sep < 1e-6 * scale) continue;

    bool ok = true;
    std::vector<Character> chars(k);
    long long dimsq = 0;
    for (int t = 0; t < k && ok; ++t) {
      Eigen::VectorXcd v = es.eigenvectors().col(t);
      double vn = v.squaredNorm();
      std::vector<cplx> omega(k);
      for (int i = 0; i < k; ++i) {
        Eigen::VectorXcd mv = cm[i].cast<cplx>() * v;
        omega[i] = v.dot(mv) / vn;  // least-squares eigenvalue of the common eigenvector
        if ((mv - omega[i] * v).norm() > 1e-7 * scale * std::sqrt(vn)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      double inv = 0;
      for (int i = 0; i < k; ++i) inv += std::norm(omega[i]) / cc.sizes[i];
      double dflt = std::sqrt(static_cast<double>(g.n) / inv);
      int d = static_cast<int>(iround(dflt));
      if (d < 1 || std::abs(dflt - d) > 1e-8) {
        ok = false;
        break;
      }
      dimsq += static_cast<long long>(d) * d;
      chars[t].dim = d;
      chars[t].values.resize(k);
      for (int i = 0; i < k; ++i)
        chars[t].values[i] = static_cast<double>(d) * omega[i] / static_cast<double>(cc.sizes[i]);
    }
    if (!ok || dimsq != g.n) continue;
    // first and second orthogonality within the character tolerance
    for (int s = 0; s < k && ok; ++s)
      for (int t = 0; t < k; ++t) {
        cplx acc = 0;
        for (int c = 0; c < k; ++c)
          acc += static_cast<double>(cc.sizes[c]) * chars[s].values[c] *
                 std::conj(chars[t].values[c]);
        acc /= static_cast<double>(g.n);
        if (std::abs(acc - (s == t ? 1.0 : 0.0)) > tol.chr) {
          ok = false;
          break;
        }
      }
    for (int c1 = 0; c1 < k && ok; ++c1)
      for (int c2 = 0; c2 < k; ++c2) {
        cplx acc = 0;
        for (int t = 0; t < k; ++t) acc += chars[t].values[c1] * std::conj(chars[t].values[c2]);
        cplx expect = (c1 == c2) ? cplx(static_cast<double>(g.n) / cc.sizes[c1], 0) : cplx(0, 0);
        if (std::abs(acc - expect) > tol.chr * static_cast<double>(g.n) / cc.sizes[c1]) {
          ok = false;
          break;
        }
      }
    if (!ok) continue;
    std::sort(chars.begin(), chars.end(), detail::char_less);
    table.chars = std::move(chars);
    return table;
  }
  fail(errc::degenerate_split, "class algebra eigenvalues failed to separate for " + g.name);
}

// Restriction of a character along a subgroup embedding.
inline Character restrict_character(const Character& ch, const ConjClasses& parentClasses,
                                    const SubgroupEmbedding& sub, const ConjClasses& subClasses) {
  Character out;
  out.dim = ch.dim;
  out.values.resize(subClasses.nclasses);
  for (int c = 0; c < subClasses.nclasses; ++c)
    out.values[c] = ch.values[parentClasses.class_of[sub.embed[subClasses.reps[c]]]];
  return out;
}

}  // namespace clifftwist
