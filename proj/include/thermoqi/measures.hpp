#pragma once

#include <array>

#include "thermoqi/bell.hpp"
#include "thermoqi/dipolar.hpp"
#include "thermoqi/qmat.hpp"

namespace thermoqi::measures {

/// Margin above the local bound before a CHSH value counts as a violation.
inline constexpr double kChshBoundaryTol = 1e-12;

using CorrelationMatrix = std::array<std::array<double, 3>, 3>;

struct ChshResult {
  double value;    // max |<B_CHSH>| over measurement settings, in [0, 2 sqrt 2]
  bool violating;  // value > 2 + kChshBoundaryTol
};

struct NegativityResult {
  double value;                        // (||rho^TA||_1 - 1) / 2, in [0, 1/2]
  std::array<double, 4> pt_eigenvalues;  // ascending
};

/// Horodecki criterion for a general correlation matrix C: the maximal CHSH
/// value is 2 sqrt(u1 + u2) with u1, u2 the two largest eigenvalues of C^T C.
ChshResult chsh_max_general(const CorrelationMatrix& c);

/// Closed form for the thermal state: 2 sqrt(max{c1^2+c2^2, c1^2+c3^2, c2^2+c3^2}).
ChshResult chsh_max(const dipolar::CouplingParams& p);

/// Negativity from the spectrum of the partial transpose. Throws
/// std::invalid_argument if rho is not a two-qubit density matrix.
NegativityResult negativity(const qmat::ComplexMatrix& rho);

/// Bell-diagonal closed form: every eigenvalue of rho^TA is 1/2 - p_alpha, so
/// N = max(0, max p - 1/2).
double negativity_bell_diagonal(const BellWeights& weights);

/// Presentation scale on which a maximally entangled state reads 1.
constexpr double normalized_negativity(double negativity) { return 2.0 * negativity; }

}  // namespace thermoqi::measures
