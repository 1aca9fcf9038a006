#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "thermoqi/bell.hpp"
#include "thermoqi/dipolar.hpp"
#include "thermoqi/qmat.hpp"

namespace testsupport {

/// Calls fn(u, v) on an n x n grid over [lo, hi]^2, endpoints included.
template <typename Fn>
void for_grid(int n, double lo, double hi, Fn&& fn) {
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      fn(lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1));
    }
  }
}

inline thermoqi::qmat::ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return thermoqi::qmat::ComplexMatrix(m);
}

inline thermoqi::qmat::ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  const auto a = random_matrix(rng, n, n);
  return thermoqi::qmat::ComplexMatrix(Eigen::MatrixXcd(0.5 * (a.eigen() + a.eigen().adjoint())));
}

/// Random point of the probability simplex, renormalized so the weights sum
/// to one within a few ulps.
inline thermoqi::BellWeights random_weights(std::mt19937_64& rng) {
  std::exponential_distribution<double> e;
  std::array<double, 4> p{};
  double sum = 0.0;
  for (double& x : p) sum += (x = e(rng));
  for (double& x : p) x /= sum;
  return thermoqi::BellWeights(p);
}

}  // namespace testsupport
