#pragma once

// Two spin-1/2 particles coupled by an anisotropic dipolar interaction,
// H = -(1/3) S1 . T . S2 with T = diag(Delta - 3 eps, Delta + 3 eps, -2 Delta),
// in thermal equilibrium. Everything is parameterized by the dimensionless
// ratios u = Delta / k_B T and v = eps / k_B T; energies are in units of k_B T.

#include <array>

#include "thermoqi/bell.hpp"
#include "thermoqi/qmat.hpp"

namespace thermoqi::dipolar {

/// Largest |u| or |v| accepted.
inline constexpr double kCouplingLimit = 2000.0;

class CouplingParams {
 public:
  /// Throws std::invalid_argument for non-finite values or |u|, |v| > 2000.
  CouplingParams(double u, double v);

  double u() const { return u_; }
  double v() const { return v_; }

 private:
  double u_;
  double v_;
};

struct SpectralData {
  std::array<double, 4> energy;  // indexed by BellLabel
  BellWeights weights;
  double log_partition;  // log Z

  double energy_of(BellLabel label) const { return energy[index(label)]; }
};

struct CorrelationTriple {
  double c1;
  double c2;
  double c3;
};

struct FanoDecomposition {
  std::array<double, 3> r;  // <sigma_j x I>
  std::array<double, 3> s;  // <I x sigma_j>
  std::array<std::array<double, 3>, 3> correlation;  // <sigma_i x sigma_j>
};

/// The closed 4x4 matrix form of H.
qmat::ComplexMatrix hamiltonian_matrix(const CouplingParams& p);

/// H assembled from the coupling tensor contracted with spin operators
/// S = sigma / 2. Agrees with hamiltonian_matrix to rounding.
qmat::ComplexMatrix hamiltonian_from_tensor(const CouplingParams& p);

/// Bell-labelled energies E(PhiPlus) = (u + 3v)/6, E(PhiMinus) = (u - 3v)/6,
/// E(PsiPlus) = -u/3, E(PsiMinus) = 0, and their Boltzmann weights.
SpectralData spectrum(const CouplingParams& p);

/// Closed-form thermal density matrix. Only rho11, rho22, rho23 and rho14 are
/// independent:
///
///   [ rho11   0      0      rho14 ]
///   [ 0       rho22  rho23  0     ]
///   [ 0       rho23  rho22  0     ]
///   [ rho14   0      0      rho11 ]
qmat::ComplexMatrix thermal_state(const CouplingParams& p);

/// Diagonal spin-spin correlations c_i = <sigma_i x sigma_i> of the thermal
/// state, from the closed hyperbolic-function forms.
CorrelationTriple correlations(const CouplingParams& p);

/// Bell weights implied by a correlation triple (Bell-diagonal states only).
std::array<double, 4> weights_from_correlations(const CorrelationTriple& c);

/// Local Bloch vectors and correlation matrix of a two-qubit density matrix.
FanoDecomposition fano_marginals(const qmat::ComplexMatrix& rho);

}  // namespace thermoqi::dipolar
