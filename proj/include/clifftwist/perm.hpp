#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "clifftwist/errors.hpp"

namespace clifftwist {

// Permutation of {0..n-1} in one-line notation: p[x] is the image of x.
using Perm = std::vector<int>;

inline bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// (p*q)(x) = p(q(x))
inline Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
  return r;
}

}  // namespace clifftwist
