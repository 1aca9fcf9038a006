#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "thermoqi/dipolar.hpp"
#include "thermoqi/measures.hpp"

using namespace thermoqi;
using namespace thermoqi::measures;
using dipolar::CouplingParams;
using qmat::Complex;
using qmat::ComplexMatrix;

namespace {

// From tests/oracle/frozen_values.py: numpy eigensolve of C^T C and of the
// partial transpose of scipy's Gibbs state at (3, 1).
constexpr double kChsh31 = 1.3070647024048123;
constexpr double kNegativity31 = 0.034446645388523045;

CorrelationMatrix diag(double a, double b, double c) { return {{{a, 0, 0}, {0, b, 0}, {0, 0, c}}}; }

// Generic symmetric-eigensolve-free oracle: M = max over pairs of squared
// singular values, obtained here by brute-force maximization of
// |C a|^2 + |C a'|^2 over orthonormal pairs (a, a') on a fine sphere grid.
double brute_force_m(const CorrelationMatrix& c) {
  double best = 0.0;
  const int n = 60;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      const double t = std::numbers::pi * i / n, p = std::numbers::pi * j / n;
      const double a[3] = {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
      // The best partner a' is the top eigenvector of C^T C restricted to a-perp;
      // sample it on the great circle orthogonal to a.
      double e1[3], e2[3];
      const double helper[3] = {std::abs(a[0]) < 0.9 ? 1.0 : 0.0, std::abs(a[0]) < 0.9 ? 0.0 : 1.0, 0.0};
      e1[0] = a[1] * helper[2] - a[2] * helper[1];
      e1[1] = a[2] * helper[0] - a[0] * helper[2];
      e1[2] = a[0] * helper[1] - a[1] * helper[0];
      const double norm = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
      for (double& x : e1) x /= norm;
      e2[0] = a[1] * e1[2] - a[2] * e1[1];
      e2[1] = a[2] * e1[0] - a[0] * e1[2];
      e2[2] = a[0] * e1[1] - a[1] * e1[0];
      auto sq = [&](const double* x) {
        double s = 0.0;
        for (int r = 0; r < 3; ++r) {
          double y = 0.0;
          for (int k = 0; k < 3; ++k) y += c[r][k] * x[k];
          s += y * y;
        }
        return s;
      };
      for (int k = 0; k < 90; ++k) {
        const double g = std::numbers::pi * k / 90;
        const double b[3] = {std::cos(g) * e1[0] + std::sin(g) * e2[0], std::cos(g) * e1[1] + std::sin(g) * e2[1],
                             std::cos(g) * e1[2] + std::sin(g) * e2[2]};
        best = std::max(best, sq(a) + sq(b));
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("chsh_max_general") {
  const ChshResult zero = chsh_max_general(diag(0, 0, 0));
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.violating);

  const ChshResult bell = chsh_max_general(diag(1, 1, -1));
  CHECK(bell.value == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-15));
  CHECK(bell.violating);

  const auto c31 = dipolar::correlations(CouplingParams(3, 1));
  const ChshResult thermal = chsh_max_general(diag(c31.c1, c31.c2, c31.c3));
  CHECK(thermal.value == doctest::Approx(kChsh31).epsilon(1e-12));
  CHECK_FALSE(thermal.violating);

  SUBCASE("exactly at the local bound is not a violation") {
    CHECK_FALSE(chsh_max_general(diag(0, 0, 1)).violating);
    CHECK(chsh_max_general(diag(0, 0, 1)).value == 2.0);
  }
  SUBCASE("non-diagonal correlations against brute-force maximization") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      CorrelationMatrix c{};
      for (auto& row : c) {
        for (double& x : row) x = entry(rng);
      }
      const double fast = chsh_max_general(c).value;
      const double brute = 2.0 * std::sqrt(brute_force_m(c));
      CHECK(brute <= fast + 1e-12);
      CHECK(brute == doctest::Approx(fast).epsilon(2e-3));
    }
  }
  CHECK_THROWS_AS(chsh_max_general(diag(1.5, 0, 0)), std::invalid_argument);
}

TEST_CASE("chsh_max closed form") {
  CHECK(chsh_max(CouplingParams(0, 0)).value == 0.0);
  CHECK(chsh_max(CouplingParams(30, 0)).value == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-3));
  CHECK(chsh_max(CouplingParams(30, 0)).violating);
  CHECK(chsh_max(CouplingParams(3, 1)).value == doctest::Approx(kChsh31).epsilon(1e-12));

  testsupport::for_grid(41, -10.0, 10.0, [](double u, double v) {
    const CouplingParams p(u, v);
    const auto c = dipolar::correlations(p);
    const ChshResult closed = chsh_max(p);
    CHECK(std::abs(closed.value - chsh_max_general(diag(c.c1, c.c2, c.c3)).value) < 1e-12);
    CHECK(closed.value >= 0.0);
    CHECK(closed.value <= 2.0 * std::numbers::sqrt2 + 1e-12);
  });
}

TEST_CASE("negativity from the partial transpose") {
  const NegativityResult mixed = negativity(Complex(0.25) * ComplexMatrix::identity(4));
  CHECK(mixed.value == doctest::Approx(0.0));
  CHECK(mixed.value >= 0.0);

  const NegativityResult bell = negativity(qmat::bell_state(BellLabel::PsiPlus).projector());
  CHECK(bell.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bell.pt_eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-14));

  const NegativityResult thermal = negativity(dipolar::thermal_state(CouplingParams(3, 1)));
  CHECK(thermal.value == doctest::Approx(kNegativity31).epsilon(1e-12));

  CHECK_THROWS_AS(negativity(ComplexMatrix::identity(4)), std::invalid_argument);
  CHECK_THROWS_AS(negativity(Complex(0.5) * ComplexMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("negativity result invariants on random states") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testsupport::random_matrix(rng, 4, trial % 4 + 1);  // mixed ranks
    Eigen::MatrixXcd rho = a.eigen() * a.eigen().adjoint();
    rho /= rho.trace().real();
    const NegativityResult n = negativity(ComplexMatrix(Eigen::MatrixXcd(0.5 * (rho + rho.adjoint()))));
    double sum = 0.0, abs_sum = 0.0, neg_part = 0.0;
    for (double l : n.pt_eigenvalues) {
      sum += l;
      abs_sum += std::abs(l);
      neg_part += std::max(0.0, -l);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(n.value - neg_part) < 1e-12);
    CHECK(std::abs(n.value - (abs_sum - 1.0) / 2.0) < 1e-12);
    CHECK(n.value >= 0.0);
    CHECK(n.value <= 0.5 + 1e-12);
  }
}

TEST_CASE("negativity_bell_diagonal") {
  CHECK(negativity_bell_diagonal(BellWeights::uniform()) == 0.0);
  CHECK(negativity_bell_diagonal(BellWeights::pure(BellLabel::PsiPlus)) == 0.5);
  const auto w31 = dipolar::spectrum(CouplingParams(3, 1)).weights;
  CHECK(negativity_bell_diagonal(w31) == doctest::Approx(kNegativity31).epsilon(1e-12));
  CHECK(normalized_negativity(negativity_bell_diagonal(BellWeights::pure(BellLabel::PhiMinus))) == 1.0);

  testsupport::for_grid(41, -10.0, 10.0, [](double u, double v) {
    const CouplingParams p(u, v);
    const auto w = dipolar::spectrum(p).weights;
    const NegativityResult full = negativity(dipolar::thermal_state(p));
    CHECK(std::abs(negativity_bell_diagonal(w) - full.value) < 1e-12);

    // Partial-transpose spectrum is {1/2 - p_alpha}.
    std::array<double, 4> expected{};
    for (BellLabel l : kBellLabels) expected[index(l)] = 0.5 - w[l];
    std::sort(expected.begin(), expected.end());
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(full.pt_eigenvalues[k] - expected[k]) < 1e-12);
  });
}

TEST_CASE("absolute-value correlation shortcut disagrees with the trace norm") {
  // (|c1 + c3| + |1 + c2| + |c1 - c3| + |1 - c2| - 1) / 4 is not the negativity:
  // on Psi+ (c = (1, 1, -1)) it gives 3/4 while the trace-norm definition gives 1/2.
  auto shortcut = [](double c1, double c2, double c3) {
    return (std::abs(c1 + c3) + std::abs(1 + c2) + std::abs(c1 - c3) + std::abs(1 - c2) - 1.0) / 4.0;
  };
  CHECK(shortcut(1, 1, -1) == 0.75);
  CHECK(negativity(qmat::bell_state(BellLabel::PsiPlus).projector()).value == doctest::Approx(0.5));
  const auto c = dipolar::correlations(CouplingParams(3, 1));
  CHECK(shortcut(c.c1, c.c2, c.c3) == doctest::Approx(0.4811).epsilon(1e-3));
}

TEST_CASE("nonlocal points are entangled") {
  testsupport::for_grid(81, -10.0, 10.0, [](double u, double v) {
    const CouplingParams p(u, v);
    if (chsh_max(p).value > 2.0 + 1e-9) CHECK(negativity_bell_diagonal(dipolar::spectrum(p).weights) >= 1e-12);
  });
}
