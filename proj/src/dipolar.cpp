#include "thermoqi/dipolar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace thermoqi::dipolar {
namespace {

using qmat::Complex;
using qmat::ComplexMatrix;

double log_cosh(double t) {
  const double a = std::abs(t);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// log|sinh t|; -inf at t = 0.
double log_abs_sinh(double t) {
  const double a = std::abs(t);
  return a + std::log(-std::expm1(-2.0 * a)) - std::numbers::ln2;
}

double signum(double t) { return (t > 0.0) - (t < 0.0); }

// The four independent thermal-state elements, evaluated with every
// exponential shifted by a common offset so that nothing overflows.
struct ThermalElements {
  double rho11;
  double rho22;
  double rho23;
  double rho14;
};

ThermalElements thermal_elements(const CouplingParams& p) {
  const double x = p.u() / 6.0;
  const double y = p.v() / 2.0;

  // e^{x} cosh x, e^{x} sinh x, e^{-x} cosh y, e^{-x} sinh y, in log form.
  const double log_a = x + log_cosh(x);
  const double log_b = x + log_abs_sinh(x);
  const double log_c = -x + log_cosh(y);
  const double log_d = -x + log_abs_sinh(y);

  const double shift = std::max(log_a, log_c);
  const double a = std::exp(log_a - shift);
  const double b = signum(x) * std::exp(log_b - shift);
  const double c = std::exp(log_c - shift);
  const double d = signum(y) * std::exp(log_d - shift);
  const double z = 2.0 * a + 2.0 * c;

  return {c / z, a / z, b / z, -d / z};
}

}  // namespace

CouplingParams::CouplingParams(double u, double v) : u_(u), v_(v) {
  if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > kCouplingLimit ||
      std::abs(v) > kCouplingLimit) {
    std::ostringstream msg;
    msg << "coupling ratios must be finite with magnitude <= " << kCouplingLimit << ", got (" << u << ", "
        << v << ")";
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix hamiltonian_matrix(const CouplingParams& p) {
  const double u = p.u();
  const double v = p.v();
  // clang-format off
  return (1.0 / 6.0) * ComplexMatrix::from_rows(4, 4, {
      u,       0.0, 0.0, 3.0 * v,
      0.0,     -u,  -u,  0.0,
      0.0,     -u,  -u,  0.0,
      3.0 * v, 0.0, 0.0, u});
  // clang-format on
}

ComplexMatrix hamiltonian_from_tensor(const CouplingParams& p) {
  const std::array<double, 3> tensor = {p.u() - 3.0 * p.v(), p.u() + 3.0 * p.v(), -2.0 * p.u()};
  ComplexMatrix h(4, 4);
  for (int i = 0; i < 3; ++i) {
    const ComplexMatrix spin = 0.5 * qmat::pauli(i + 1);
    h = h + Complex(-tensor[static_cast<std::size_t>(i)] / 3.0) * qmat::kron(spin, spin);
  }
  return h;
}

SpectralData spectrum(const CouplingParams& p) {
  std::array<double, 4> energy{};
  energy[index(BellLabel::PhiPlus)] = (p.u() + 3.0 * p.v()) / 6.0;
  energy[index(BellLabel::PhiMinus)] = (p.u() - 3.0 * p.v()) / 6.0;
  energy[index(BellLabel::PsiPlus)] = -p.u() / 3.0;
  energy[index(BellLabel::PsiMinus)] = 0.0;

  const double lowest = *std::min_element(energy.begin(), energy.end());
  std::array<double, 4> w{};
  double z = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    w[k] = std::exp(-(energy[k] - lowest));
    z += w[k];
  }
  for (double& x : w) x /= z;
  return {energy, BellWeights(w), std::log(z) - lowest};
}

ComplexMatrix thermal_state(const CouplingParams& p) {
  const ThermalElements e = thermal_elements(p);
  // clang-format off
  return ComplexMatrix::from_rows(4, 4, {
      e.rho11, 0.0,     0.0,     e.rho14,
      0.0,     e.rho22, e.rho23, 0.0,
      0.0,     e.rho23, e.rho22, 0.0,
      e.rho14, 0.0,     0.0,     e.rho11});
  // clang-format on
}

CorrelationTriple correlations(const CouplingParams& p) {
  const ThermalElements e = thermal_elements(p);
  return {2.0 * (e.rho23 + e.rho14), 2.0 * (e.rho23 - e.rho14), 2.0 * (e.rho11 - e.rho22)};
}

std::array<double, 4> weights_from_correlations(const CorrelationTriple& c) {
  std::array<double, 4> w{};
  w[index(BellLabel::PhiPlus)] = (1.0 + c.c1 - c.c2 + c.c3) / 4.0;
  w[index(BellLabel::PhiMinus)] = (1.0 - c.c1 + c.c2 + c.c3) / 4.0;
  w[index(BellLabel::PsiPlus)] = (1.0 + c.c1 + c.c2 - c.c3) / 4.0;
  w[index(BellLabel::PsiMinus)] = (1.0 - c.c1 - c.c2 - c.c3) / 4.0;
  return w;
}

FanoDecomposition fano_marginals(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("Fano form needs a 4x4 density matrix");
  qmat::require_density(rho);
  const ComplexMatrix id = qmat::pauli(0);
  auto expectation = [&](const ComplexMatrix& op) { return (rho * op).trace().real(); };

  FanoDecomposition out{};
  for (int i = 0; i < 3; ++i) {
    const ComplexMatrix si = qmat::pauli(i + 1);
    const auto ii = static_cast<std::size_t>(i);
    out.r[ii] = expectation(qmat::kron(si, id));
    out.s[ii] = expectation(qmat::kron(id, si));
    for (int j = 0; j < 3; ++j) {
      out.correlation[ii][static_cast<std::size_t>(j)] = expectation(qmat::kron(si, qmat::pauli(j + 1)));
    }
  }
  return out;
}

}  // namespace thermoqi::dipolar
