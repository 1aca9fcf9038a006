#include "thermoqi/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermoqi::teleport {
namespace {

using qmat::Complex;
using qmat::ComplexMatrix;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
GaussRule gauss_legendre(int n) {
  GaussRule rule;
  const auto un = static_cast<unsigned>(n);
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(un, x);
      const double pm1 = std::legendre(un - 1, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(un, x);
    const double pm1 = std::legendre(un - 1, x);
    dp = n * (x * p - pm1) / (x * x - 1.0);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

ComplexMatrix bell_diagonal_state(const BellWeights& weights) {
  ComplexMatrix rho(4, 4);
  for (BellLabel label : kBellLabels) {
    rho = rho + Complex(weights[label]) * qmat::bell_state(label).projector();
  }
  return rho;
}

}  // namespace

BlochAngles::BlochAngles(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw std::invalid_argument("Bloch angles must be finite");
  double t = wrap_angle(theta);
  if (t > std::numbers::pi) {
    t = kTwoPi - t;
    phi += std::numbers::pi;
  }
  theta_ = t;
  phi_ = wrap_angle(phi);
}

std::array<double, 3> BlochAngles::direction() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

qmat::StateVector BlochAngles::state() const { return qmat::bloch_to_state(theta_, phi_); }

ComplexMatrix BlochAngles::density() const { return state().projector(); }

ComplexMatrix pauli_conjugation(int mu, const BlochAngles& input) {
  const ComplexMatrix sigma = qmat::pauli(mu);
  return sigma * input.density() * sigma;
}

std::array<double, 4> correction_probabilities(const BellWeights& weights, BellLabel k0) {
  const ComplexMatrix channel = bell_diagonal_state(weights);
  const ComplexMatrix k0_projector = qmat::bell_state(k0).projector();
  const ComplexMatrix id = qmat::pauli(0);
  std::array<double, 4> q{};
  for (int mu = 0; mu < 4; ++mu) {
    const ComplexMatrix rotate = qmat::kron(qmat::pauli(mu), id);
    const ComplexMatrix k_mu = rotate * k0_projector * rotate;
    q[static_cast<std::size_t>(mu)] = (k_mu * channel).trace().real();
  }
  return q;
}

ComplexMatrix channel_output(const BellWeights& weights, BellLabel k0, const BlochAngles& input) {
  const std::array<double, 4> q = correction_probabilities(weights, k0);
  ComplexMatrix out(2, 2);
  for (int mu = 0; mu < 4; ++mu) {
    out = out + Complex(q[static_cast<std::size_t>(mu)]) * pauli_conjugation(mu, input);
  }
  return out;
}

std::array<double, 3> bloch_vector(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw std::invalid_argument("Bloch vector needs a 2x2 operator");
  std::array<double, 3> n{};
  for (int j = 0; j < 3; ++j) n[static_cast<std::size_t>(j)] = (rho * qmat::pauli(j + 1)).trace().real();
  return n;
}

double fidelity_pointwise(const BlochAngles& input, const ComplexMatrix& output) {
  if (output.rows() != 2 || output.cols() != 2) throw std::invalid_argument("teleported state must be 2x2");
  qmat::require_density(output);
  const qmat::StateVector state = input.state();
  const Eigen::VectorXcd& psi = state.eigen();
  const double f = psi.dot(output.eigen() * psi).real();
  return std::clamp(f, 0.0, 1.0);
}

double average_fidelity(const BellWeights& weights, BellLabel k0) { return (1.0 + 2.0 * weights[k0]) / 3.0; }

double average_fidelity_quadrature(const BellWeights& weights, BellLabel k0, int order) {
  if (order < 2) {
    throw std::invalid_argument("quadrature order " + std::to_string(order) +
                                " cannot integrate a quadratic on the sphere; need >= 2");
  }
  const GaussRule polar = gauss_legendre(order);
  const int azimuths = 2 * order;
  const std::array<double, 4> q = correction_probabilities(weights, k0);

  double sum = 0.0;
  for (std::size_t i = 0; i < polar.nodes.size(); ++i) {
    const double theta = std::acos(polar.nodes[i]);
    for (int k = 0; k < azimuths; ++k) {
      const BlochAngles input(theta, kTwoPi * k / azimuths);
      ComplexMatrix out(2, 2);
      for (int mu = 0; mu < 4; ++mu) {
        out = out + Complex(q[static_cast<std::size_t>(mu)]) * pauli_conjugation(mu, input);
      }
      sum += polar.weights[i] * fidelity_pointwise(input, out);
    }
  }
  // Polar weights integrate to 2 and each azimuth carries 1/azimuths.
  return sum / (2.0 * azimuths);
}

FidelityReport best_fidelity(const BellWeights& weights) {
  FidelityReport report{};
  report.best_label = BellLabel::PhiPlus;
  for (BellLabel label : kBellLabels) {
    report.per_label[index(label)] = average_fidelity(weights, label);
    if (report.per_label[index(label)] > report.per_label[index(report.best_label)]) report.best_label = label;
  }
  report.best = report.per_label[index(report.best_label)];
  report.above_classical = report.best > kClassicalFidelity;
  return report;
}

double minimum_fidelity(int d) {
  if (d < 2) throw std::invalid_argument("bipartite teleportation needs d >= 2, got " + std::to_string(d));
  return 2.0 / (1.0 + d);
}

}  // namespace thermoqi::teleport
