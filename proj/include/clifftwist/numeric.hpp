#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>

#include "clifftwist/errors.hpp"

namespace clifftwist {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Default tolerances: rep residuals, character comparisons, root-of-unity snapping.
struct Tolerances {
  double rep = 1e-9;
  double chr = 1e-8;
  double snap = 1e-6;
};

// Deterministic splitmix64 stream.  All randomness in the library flows through
// this so identical seeds give bitwise-identical runs on one platform.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}

  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1,1]
  double uniform_pm1() { return 2.0 * uniform() - 1.0; }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  // standard complex gaussian via Box-Muller
  cplx gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

  Mat gaussian_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
    return m;
  }
};

// Child-stream derivation; tag/idx separate independent uses of one base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t idx = 0) {
  Rng r(base ^ (tag * 0xd1342543de82ef95ULL) ^ (idx * 0xaf251af3b0f025b5ULL));
  r.next();
  return r.next();
}

inline double frob_dist(const Mat& a, const Mat& b) { return (a - b).norm(); }

// Kronecker product, blocks a(i,j) * b; with column-stacked vectorization,
// kron(b.transpose(), a) * vec(x) = vec(a * x * b).
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double unitarity_residual(const Mat& m) {
  return (m * m.adjoint() - Mat::Identity(m.rows(), m.cols())).norm();
}

inline cplx root_of_unity(long k, long n) {
  double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

// Nearest exponent k with z ~ exp(2*pi*i*k/n); throws SnapFailure beyond tol.
inline long snap_to_root_of_unity(cplx z, long n, double tol) {
  require(std::abs(std::abs(z) - 1.0) <= tol, errc::snap_failure, "value is not on the unit circle");
  double ang = std::arg(z);
  double raw = ang * static_cast<double>(n) / (2.0 * kPi);
  long k = std::lround(raw);
  k %= n;
  if (k < 0) k += n;
  double dist = std::abs(z - root_of_unity(k, n));
  require(dist <= tol, errc::snap_failure, "value is not within tolerance of a root of unity");
  return k;
}

inline long long iround(double x) { return std::llround(x); }

}  // namespace clifftwist
