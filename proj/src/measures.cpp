#include "thermoqi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace thermoqi::measures {
namespace {

ChshResult make_chsh(double m) {
  const double value = 2.0 * std::sqrt(std::max(0.0, m));
  return {value, value > 2.0 + kChshBoundaryTol};
}

}  // namespace

ChshResult chsh_max_general(const CorrelationMatrix& c) {
  Eigen::Matrix3d cm;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double x = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!std::isfinite(x) || std::abs(x) > 1.0 + 1e-12) {
        throw std::invalid_argument("correlation matrix entries must lie in [-1, 1]");
      }
      cm(i, j) = x;
    }
  }
  const Eigen::Matrix3d u = cm.transpose() * cm;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(u, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = solver.eigenvalues();  // ascending
  return make_chsh(ev(1) + ev(2));
}

ChshResult chsh_max(const dipolar::CouplingParams& p) {
  const dipolar::CorrelationTriple c = dipolar::correlations(p);
  const double s1 = c.c1 * c.c1, s2 = c.c2 * c.c2, s3 = c.c3 * c.c3;
  return make_chsh(std::max({s1 + s2, s1 + s3, s2 + s3}));
}

NegativityResult negativity(const qmat::ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("negativity needs a 4x4 density matrix");
  qmat::require_density(rho);
  const qmat::EigenSystem es = qmat::hermitian_eig(qmat::partial_transpose_A(rho));

  NegativityResult out{};
  double trace_norm = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    out.pt_eigenvalues[k] = es.eigenvalues[k];
    trace_norm += std::abs(es.eigenvalues[k]);
  }
  out.value = std::max(0.0, (trace_norm - 1.0) / 2.0);
  return out;
}

double negativity_bell_diagonal(const BellWeights& weights) {
  return std::max(0.0, weights.dominant_weight() - 0.5);
}

}  // namespace thermoqi::measures
