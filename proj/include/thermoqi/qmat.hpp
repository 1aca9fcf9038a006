#pragma once

// Dense complex linear algebra for single- and two-qubit operators.
//
// Two-qubit operators use the computational basis |00>, |01>, |10>, |11>
// with qubit A as the first tensor factor.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "thermoqi/bell.hpp"

namespace thermoqi::qmat {

using Complex = std::complex<double>;

/// Tolerance on caller-supplied Hermitian input (max |m - m^dagger| entry).
inline constexpr double kInputHermitianTol = 1e-10;

/// Thrown when an operator that must be Hermitian is not; carries the
/// measured asymmetry.
class NotHermitianError : public std::invalid_argument {
 public:
  explicit NotHermitianError(double asymmetry);
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

/// Dense complex matrix whose entries are all finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws std::invalid_argument on an empty shape or a non-finite entry.
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<Complex>& d);
  /// Row-major construction; entries.size() must equal rows * cols.
  static ComplexMatrix from_rows(std::size_t rows, std::size_t cols,
                                 const std::vector<Complex>& entries);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const { return rows() == cols(); }

  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& eigen() const { return m_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// Largest entry of |m - m^dagger|.
  double hermiticity_defect() const;
  bool is_hermitian(double tol) const { return is_square() && hermiticity_defect() <= tol; }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

/// Largest entrywise modulus of a - b. Shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Normalized pure state.
class StateVector {
 public:
  /// Throws std::invalid_argument unless the squared norm is 1 within 1e-12.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(a_.size()); }
  Complex operator[](std::size_t i) const { return a_(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXcd& eigen() const { return a_; }

  /// <this|other>
  Complex inner(const StateVector& other) const;
  /// |this><this|
  ComplexMatrix projector() const;

 private:
  Eigen::VectorXcd a_;
};

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  std::vector<StateVector> eigenvectors;

  /// V diag(lambda) V^dagger
  ComplexMatrix reconstruct() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
ComplexMatrix pauli(int index);

StateVector bell_state(BellLabel label);

/// Transpose on the first tensor factor of a 2x2 bipartite operator:
/// <ab|rho^TA|cd> = <cb|rho|ad>.
ComplexMatrix partial_transpose_A(const ComplexMatrix& rho);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; eigenvectors
/// of (near-)degenerate eigenvalues are phase-fixed and ordered
/// lexicographically so the output is deterministic.
EigenSystem hermitian_eig(const ComplexMatrix& m, double tol = kInputHermitianTol);

/// Sum of absolute eigenvalues.
double trace_norm_hermitian(const ComplexMatrix& m);

/// exp(-h) / Tr exp(-h) for a dimensionless Hermitian h.
ComplexMatrix gibbs(const ComplexMatrix& h);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
StateVector bloch_to_state(double theta, double phi);

/// Throws std::invalid_argument unless rho is Hermitian, has unit trace and no
/// eigenvalue below -tol.
void require_density(const ComplexMatrix& rho, double tol = kInputHermitianTol);

}  // namespace thermoqi::qmat
