#include "thermoqi/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace thermoqi::qmat {
namespace {

std::string describe_asymmetry(double asymmetry) {
  std::ostringstream msg;
  msg << "matrix is not Hermitian (max |m - m^dagger| = " << asymmetry << ")";
  return msg.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw std::invalid_argument("Hermitian operator must be square");
  const double defect = m.hermiticity_defect();
  if (!(defect <= tol)) throw NotHermitianError(defect);
}

// Rotate the global phase so the first non-negligible amplitude is real and
// positive.
Eigen::VectorXcd fix_phase(Eigen::VectorXcd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-8) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(mag, 0.0);
      break;
    }
  }
  return v;
}

bool lexicographically_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  constexpr double kGrain = 1e9;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ar = std::round(a(i).real() * kGrain), br = std::round(b(i).real() * kGrain);
    if (ar != br) return ar < br;
    const double ai = std::round(a(i).imag() * kGrain), bi = std::round(b(i).imag() * kGrain);
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace

NotHermitianError::NotHermitianError(double asymmetry)
    : std::invalid_argument(describe_asymmetry(asymmetry)), asymmetry_(asymmetry) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                           static_cast<Eigen::Index>(cols))) {}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw std::invalid_argument("empty matrix");
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      if (!std::isfinite(m_(i, j).real()) || !std::isfinite(m_(i, j).imag())) {
        throw std::invalid_argument("matrix entry is not finite");
      }
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix(Eigen::MatrixXcd::Identity(k, k));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(d.data(), static_cast<Eigen::Index>(d.size()));
  return ComplexMatrix(Eigen::MatrixXcd(v.asDiagonal()));
}

ComplexMatrix ComplexMatrix::from_rows(std::size_t rows, std::size_t cols,
                                       const std::vector<Complex>& entries) {
  if (entries.size() != rows * cols) {
    throw std::invalid_argument("entry count does not match rows * cols");
  }
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries[i * cols + j];
    }
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(Eigen::MatrixXcd(m_.adjoint())); }

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square matrix");
  return m_.trace();
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw std::invalid_argument("Hermiticity of a non-square matrix");
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ + b.m_));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ - b.m_));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(Eigen::MatrixXcd(s * a.m_)); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : a_(std::move(amplitudes)) {
  if (a_.size() == 0) throw std::invalid_argument("empty state vector");
  const double norm2 = a_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state vector is not normalized (|psi|^2 = " << norm2 << ")";
    throw std::invalid_argument(msg.str());
  }
}

Complex StateVector::inner(const StateVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("state dimension mismatch");
  return a_.dot(other.a_);  // conjugates the left operand
}

ComplexMatrix StateVector::projector() const { return ComplexMatrix(Eigen::MatrixXcd(a_ * a_.adjoint())); }

ComplexMatrix EigenSystem::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  Eigen::MatrixXcd v(n, n);
  for (Eigen::Index k = 0; k < n; ++k) v.col(k) = eigenvectors[static_cast<std::size_t>(k)].eigen();
  Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(eigenvalues.data(), n);
  return ComplexMatrix(Eigen::MatrixXcd(v * lambda.cast<Complex>().asDiagonal() * v.adjoint()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto ar = a.eigen().rows(), ac = a.eigen().cols();
  const auto br = b.eigen().rows(), bc = b.eigen().cols();
  Eigen::MatrixXcd out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a.eigen()(i, j) * b.eigen();
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix pauli(int index) {
  const Complex i(0.0, 1.0);
  switch (index) {
    case 0:
      return ComplexMatrix::from_rows(2, 2, {1.0, 0.0, 0.0, 1.0});
    case 1:
      return ComplexMatrix::from_rows(2, 2, {0.0, 1.0, 1.0, 0.0});
    case 2:
      return ComplexMatrix::from_rows(2, 2, {0.0, -i, i, 0.0});
    case 3:
      return ComplexMatrix::from_rows(2, 2, {1.0, 0.0, 0.0, -1.0});
    default:
      throw std::out_of_range("Pauli index must be in 0..3, got " + std::to_string(index));
  }
}

StateVector bell_state(BellLabel label) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  switch (label) {
    case BellLabel::PhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case BellLabel::PhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case BellLabel::PsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case BellLabel::PsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return StateVector(std::move(v));
}

ComplexMatrix partial_transpose_A(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("partial transpose needs a 4x4 two-qubit operator");
  }
  Eigen::MatrixXcd out(4, 4);
  // index = 2 * (qubit A) + (qubit B)
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          out(2 * a + b, 2 * c + d) = rho.eigen()(2 * c + b, 2 * a + d);
        }
      }
    }
  }
  return ComplexMatrix(std::move(out));
}

EigenSystem hermitian_eig(const ComplexMatrix& m, double tol) {
  require_hermitian(m, tol);
  const Eigen::MatrixXcd sym = 0.5 * (m.eigen() + m.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");

  const auto n = static_cast<std::size_t>(sym.rows());
  struct Pair {
    double value;
    Eigen::VectorXcd vector;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    pairs.push_back({solver.eigenvalues()(kk), fix_phase(solver.eigenvectors().col(kk).normalized())});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });

  // Runs of degenerate eigenvalues are ordered by their eigenvectors.
  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && pairs[end].value - pairs[end - 1].value <= 1e-12 * scale) ++end;
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(start),
                     pairs.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const Pair& a, const Pair& b) { return lexicographically_less(a.vector, b.vector); });
    start = end;
  }

  EigenSystem out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (auto& p : pairs) {
    out.eigenvalues.push_back(p.value);
    out.eigenvectors.emplace_back(std::move(p.vector));
  }
  return out;
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  const EigenSystem es = hermitian_eig(m);
  return std::accumulate(es.eigenvalues.begin(), es.eigenvalues.end(), 0.0,
                         [](double acc, double x) { return acc + std::abs(x); });
}

ComplexMatrix gibbs(const ComplexMatrix& h) {
  const EigenSystem es = hermitian_eig(h);
  const double lowest = es.eigenvalues.front();
  EigenSystem boltzmann = es;
  double z = 0.0;
  for (double& e : boltzmann.eigenvalues) {
    e = std::exp(-(e - lowest));
    z += e;
  }
  for (double& e : boltzmann.eigenvalues) e /= z;
  const Eigen::MatrixXcd rho = boltzmann.reconstruct().eigen();
  return ComplexMatrix(Eigen::MatrixXcd(0.5 * (rho + rho.adjoint())));
}

StateVector bloch_to_state(double theta, double phi) {
  Eigen::VectorXcd v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(1.0, phi) * std::sin(theta / 2.0);
  // cos^2 + sin^2 can round a few ulps away from 1.
  return StateVector(v / v.norm());
}

void require_density(const ComplexMatrix& rho, double tol) {
  require_hermitian(rho, tol);
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    std::ostringstream msg;
    msg << "density matrix must have unit trace, got " << tr;
    throw std::invalid_argument(msg.str());
  }
  const EigenSystem es = hermitian_eig(rho, tol);
  if (es.eigenvalues.front() < -tol) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << es.eigenvalues.front();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace thermoqi::qmat
