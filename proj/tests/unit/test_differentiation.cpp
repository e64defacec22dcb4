#include "scaleqm/differentiation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "scaleqm/error.hpp"
#include "support/oracles.hpp"

namespace scaleqm {
namespace {

using testing::max_abs_diff;
using testing::sample_1d;

// Smooth periodic test function on [0, L) and its derivatives.
struct Smooth {
  double length;
  Complex f(double z) const { return std::exp(Complex(std::sin(w() * z), 0.3 * std::cos(w() * z))); }
  Complex df(double z) const {
    return Complex(w() * std::cos(w() * z), -0.3 * w() * std::sin(w() * z)) * f(z);
  }
  Complex d2f(double z) const {
    const Complex inner(w() * std::cos(w() * z), -0.3 * w() * std::sin(w() * z));
    const Complex inner_d(-w() * w() * std::sin(w() * z), -0.3 * w() * w() * std::cos(w() * z));
    return (inner_d + inner * inner) * f(z);
  }
  double w() const { return 2.0 * kPi / length; }
};

double error_at(std::size_t n, DerivativeScheme scheme, int order) {
  const Grid grid = Grid::with_length(1, n, 3.0);
  const Smooth s{3.0};
  const ComplexVector f = sample_1d(grid, [&](double z) { return s.f(z); });
  if (order == 1) {
    return max_abs_diff(derivative(grid, f, 0, scheme),
                        sample_1d(grid, [&](double z) { return s.df(z); }));
  }
  return max_abs_diff(second_derivative(grid, f, 0, scheme),
                      sample_1d(grid, [&](double z) { return s.d2f(z); }));
}

TEST(Derivative, ParseAndName) {
  EXPECT_EQ(parse_derivative_scheme("central2"), DerivativeScheme::Central2);
  EXPECT_EQ(parse_derivative_scheme("central4"), DerivativeScheme::Central4);
  EXPECT_EQ(parse_derivative_scheme("spectral"), DerivativeScheme::Spectral);
  EXPECT_THROW((void)parse_derivative_scheme("upwind"), std::invalid_argument);
  EXPECT_EQ(to_string(DerivativeScheme::Central4), "central4");
}

TEST(Derivative, StencilsAgreeWithHandOracle) {
  const Grid grid(1, 8, 0.5);
  ComplexVector f(8);
  for (std::size_t i = 0; i < 8; ++i) f[i] = Complex(static_cast<double>(i * i % 5), 0.1 * i);
  const ComplexVector d = derivative(grid, f, 0, DerivativeScheme::Central2);
  const ComplexVector d2 = second_derivative(grid, f, 0, DerivativeScheme::Central2);
  for (std::size_t i = 0; i < 8; ++i) {
    const Complex fp = f[(i + 1) % 8];
    const Complex fm = f[(i + 7) % 8];
    EXPECT_LE(std::abs(d[i] - (fp - fm) / 1.0), 1e-13);
    EXPECT_LE(std::abs(d2[i] - (fp - 2.0 * f[i] + fm) / 0.25), 1e-13);
  }
}

TEST(Derivative, ConvergenceOrders) {
  for (int order = 1; order <= 2; ++order) {
    const double r2 = error_at(64, DerivativeScheme::Central2, order) /
                      error_at(128, DerivativeScheme::Central2, order);
    EXPECT_NEAR(std::log2(r2), 2.0, 0.1) << "order " << order;
    const double r4 = error_at(64, DerivativeScheme::Central4, order) /
                      error_at(128, DerivativeScheme::Central4, order);
    EXPECT_NEAR(std::log2(r4), 4.0, 0.2) << "order " << order;
    EXPECT_LE(error_at(64, DerivativeScheme::Spectral, order), 1e-10);
  }
}

TEST(Derivative, ConstantInputGivesExactZero) {
  const Grid grid(2, 8, 0.7);
  const ComplexVector f(grid.size(), Complex(0.3, -1.1));
  for (auto scheme : {DerivativeScheme::Central2, DerivativeScheme::Central4,
                      DerivativeScheme::Spectral}) {
    for (int axis = 0; axis < 2; ++axis) {
      for (const Complex& z : derivative(grid, f, axis, scheme)) EXPECT_EQ(z, Complex(0.0));
      for (const Complex& z : second_derivative(grid, f, axis, scheme)) EXPECT_EQ(z, Complex(0.0));
    }
  }
}

TEST(Derivative, AxesAreIndependent) {
  const Grid grid = Grid::with_length(2, 16, 2.0);
  ComplexVector f(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto z = grid.position(p);
    f[p] = std::sin(kPi * z[0]) * std::cos(2.0 * kPi * z[1]);
  }
  const ComplexVector d1 = derivative(grid, f, 1, DerivativeScheme::Spectral);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto z = grid.position(p);
    EXPECT_NEAR(std::abs(d1[p] + 2.0 * kPi * std::sin(kPi * z[0]) * std::sin(2.0 * kPi * z[1])),
                0.0, 1e-11);
  }
  EXPECT_THROW((void)derivative(grid, f, 2, DerivativeScheme::Central2), ShapeError);
  EXPECT_THROW((void)derivative(grid, ComplexVector(3), 0, DerivativeScheme::Central2), ShapeError);
}

TEST(DerivativeMatrix, MatchesOperatorAction) {
  const Grid grid(2, 6, 0.4);
  ComplexVector f(grid.size());
  for (std::size_t p = 0; p < f.size(); ++p) f[p] = Complex(std::cos(0.3 * p), std::sin(0.7 * p));
  const Eigen::Map<const Eigen::VectorXcd> fv(f.data(), static_cast<Eigen::Index>(f.size()));
  for (auto scheme : {DerivativeScheme::Central2, DerivativeScheme::Central4,
                      DerivativeScheme::Spectral}) {
    for (int axis = 0; axis < 2; ++axis) {
      const Eigen::VectorXcd d = derivative_matrix(grid, axis, scheme) * fv;
      const Eigen::VectorXcd d2 = second_derivative_matrix(grid, axis, scheme) * fv;
      const ComplexVector want_d = derivative(grid, f, axis, scheme);
      const ComplexVector want_d2 = second_derivative(grid, f, axis, scheme);
      for (std::size_t p = 0; p < f.size(); ++p) {
        EXPECT_LE(std::abs(d(static_cast<Eigen::Index>(p)) - want_d[p]), 1e-11);
        EXPECT_LE(std::abs(d2(static_cast<Eigen::Index>(p)) - want_d2[p]), 1e-10);
      }
    }
  }
}

TEST(DerivativeMatrix, SpectralFirstDerivativeIsAntiHermitianAndSquaresToSecond) {
  const Grid grid = Grid::with_length(1, 16, 5.0);
  const Eigen::MatrixXcd d = derivative_matrix(grid, 0, DerivativeScheme::Spectral);
  const Eigen::MatrixXcd d2 = second_derivative_matrix(grid, 0, DerivativeScheme::Spectral);
  EXPECT_LE((d + d.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((d * d - d2).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace scaleqm
