#pragma once

// Standard teleportation through a Bell-diagonal two-qubit state used as a
// noisy channel. The Bell measurement outcome K_0 = |k0><k0| fixes the
// correction frame; K_mu = (sigma_mu x I) K_0 (sigma_mu x I), and the output is
// rho_out = sum_mu Tr(K_mu rho) sigma_mu rho_in sigma_mu.

#include <array>

#include "thermoqi/bell.hpp"
#include "thermoqi/qmat.hpp"

namespace thermoqi::teleport {

/// Classical fidelity bound for qubits, 2 / (1 + 2).
inline constexpr double kClassicalFidelity = 2.0 / 3.0;

/// Point on the Bloch sphere with theta in [0, pi] and phi in [0, 2 pi).
class BlochAngles {
 public:
  /// Reduces arbitrary angles to the canonical ranges; the represented state
  /// is unchanged up to a global phase.
  BlochAngles(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  /// (sin t cos p, sin t sin p, cos t)
  std::array<double, 3> direction() const;
  qmat::StateVector state() const;
  qmat::ComplexMatrix density() const;

 private:
  double theta_;
  double phi_;
};

struct FidelityReport {
  std::array<double, 4> per_label;  // indexed by BellLabel
  double best;
  BellLabel best_label;
  bool above_classical;  // best > 2/3

  double fidelity_of(BellLabel label) const { return per_label[index(label)]; }
};

/// sigma_mu rho_in sigma_mu.
qmat::ComplexMatrix pauli_conjugation(int mu, const BlochAngles& input);

/// Probabilities q_mu = Tr(K_mu rho) of each Pauli correction, mu = 0..3.
std::array<double, 4> correction_probabilities(const BellWeights& weights, BellLabel k0);

/// Teleported single-qubit state.
qmat::ComplexMatrix channel_output(const BellWeights& weights, BellLabel k0, const BlochAngles& input);

/// (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z) of a single-qubit operator.
std::array<double, 3> bloch_vector(const qmat::ComplexMatrix& rho);

/// <psi_in| rho_out |psi_in>. Throws std::invalid_argument if output is not a
/// 2x2 density matrix.
double fidelity_pointwise(const BlochAngles& input, const qmat::ComplexMatrix& output);

/// Sphere-averaged fidelity, (1 + 2 p_k0) / 3.
double average_fidelity(const BellWeights& weights, BellLabel k0);

/// Sphere average of the pointwise fidelity by a product rule: `order`
/// Gauss-Legendre nodes in cos(theta) times 2*order equally spaced azimuths.
/// Exact for polynomials of degree 2*order - 1 in the Bloch components; the
/// integrand is quadratic, so order >= 2 is required.
double average_fidelity_quadrature(const BellWeights& weights, BellLabel k0, int order = 2);

/// Best average fidelity over all four measurement frames.
FidelityReport best_fidelity(const BellWeights& weights);

/// Best fidelity achievable classically for a d-level system, 2 / (1 + d).
double minimum_fidelity(int d);

}  // namespace thermoqi::teleport
