#include "scaleqm/single_particle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "scaleqm/error.hpp"
#include "scaleqm/fourier.hpp"
#include "support/oracles.hpp"

namespace scaleqm {
namespace {

using testing::max_abs;
using testing::max_abs_diff;

ComplexVector to_vec(std::span<const Complex> s) { return {s.begin(), s.end()}; }

// e^{gamma - gamma(ref)} applied to raw amplitudes, written out independently.
ComplexVector scaled_oracle(const ScalingField& field, std::span<const Complex> psi,
                            std::size_t ref) {
  ComplexVector out(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    out[i] = std::exp(field.gamma()[i]) / std::exp(field.gamma()[ref]) * psi[i];
  }
  return out;
}

double product_rule_residual(std::size_t n, DerivativeScheme scheme) {
  const double length = 10.0;
  const Grid grid = Grid::with_length(1, n, length);
  const ScalingField field = build_field(grid, gamma_presets::sine(0.3, length), scheme);
  const WavePacket psi = scheme == DerivativeScheme::Spectral
                            ? packets::random_smooth(grid, 17, 4, 3)
                            : packets::gaussian(grid, {4.0, 0, 0}, 1.0, {1.2, 0, 0}, 3);
  const PhysicalParams params;
  const WavePacket lhs = momentum_apply(scale_packet(psi, field), field, params, scheme);
  const WavePacket rhs = covariant_momentum_apply(psi, field, params, scheme);
  return max_abs_diff(to_vec(lhs.amplitudes()),
                      scaled_oracle(field, rhs.amplitudes(), psi.ref_point()));
}

double kinetic_residual(std::size_t n, KineticForm form) {
  const double length = 6.0;
  const Grid grid = Grid::with_length(1, n, length);
  const ScalingField field = build_field(grid, gamma_presets::sine(0.1, length));
  const WavePacket psi = packets::random_smooth(grid, 7, 3);
  const PhysicalParams params;
  const auto scheme = DerivativeScheme::Central2;
  const WavePacket lhs = kinetic_apply(scale_packet(psi, field), field, params, scheme);
  const WavePacket rhs = covariant_kinetic_apply(psi, field, params, scheme, form);
  return max_abs_diff(to_vec(lhs.amplitudes()), scaled_oracle(field, rhs.amplitudes(), 0));
}

TEST(PhysicalParams, Validation) {
  EXPECT_NO_THROW(PhysicalParams{}.validate());
  EXPECT_THROW((PhysicalParams{0.0, 1.0, -1, -1}.validate()), std::invalid_argument);
  EXPECT_THROW((PhysicalParams{1.0, -1.0, -1, -1}.validate()), std::invalid_argument);
  EXPECT_THROW((PhysicalParams{1.0, 1.0, 2, -1}.validate()), std::invalid_argument);
  EXPECT_EQ(PhysicalParams::paper_signs().momentum_sign, 1);
  EXPECT_DOUBLE_EQ(PhysicalParams::paper_signs(2.0, 4.0).kinetic_prefactor(), 0.5);
}

TEST(WavePacket, ConstructionAndNorm) {
  const Grid grid = Grid::with_length(1, 64, 8.0);
  EXPECT_THROW(WavePacket(grid, ComplexVector(63)), ShapeError);
  EXPECT_THROW(WavePacket(grid, ComplexVector(64), 64), ShapeError);
  ComplexVector bad(64);
  bad[3] = Complex(std::nan(""), 0.0);
  EXPECT_THROW(WavePacket(grid, bad), InvalidValueError);
  EXPECT_NEAR(packets::gaussian(grid, {4.0, 0, 0}, 0.7).norm(), 1.0, 1e-10);
  EXPECT_NEAR(packets::random_smooth(grid, 3).norm(), 1.0, 1e-10);
  EXPECT_NEAR(packets::delta(grid, 5).norm(), 1.0, 1e-12);
  EXPECT_THROW((void)WavePacket(grid, ComplexVector(64)).normalized(), InvalidValueError);
  const Grid g2 = Grid::with_length(2, 16, 4.0);
  EXPECT_NEAR(packets::gaussian(g2, {2.0, 1.0, 0}, 0.5).norm(), 1.0, 1e-10);
}

TEST(WavePacket, RandomSmoothIsSeededAndBandLimited) {
  const Grid grid = Grid::with_length(1, 32, 3.0);
  const WavePacket a = packets::random_smooth(grid, 99, 2);
  const WavePacket b = packets::random_smooth(grid, 99, 2);
  EXPECT_EQ(to_vec(a.amplitudes()), to_vec(b.amplitudes()));
  const ComplexVector spec = testing::naive_dft(grid, to_vec(a.amplitudes()));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (std::abs(grid.mode(k)) > 2) EXPECT_LE(std::abs(spec[k]), 1e-12);
  }
}

TEST(ScalePacket, TrivialAndConstantFieldsAreIdentity) {
  const Grid grid = Grid::with_length(1, 32, 4.0);
  const WavePacket psi = packets::gaussian(grid, {2.0, 0, 0}, 0.5, {3.0, 0, 0}, 7);
  for (Complex kappa : {Complex(0.0), Complex(0.7), Complex(-0.2, 1.3)}) {
    const ScalingField field = build_field(grid, gamma_presets::constant(kappa));
    const WavePacket s = scale_packet(psi, field);
    EXPECT_TRUE(s.scaled());
    EXPECT_EQ(to_vec(s.amplitudes()), to_vec(psi.amplitudes()));
  }
}

TEST(ScalePacket, MatchesPointwiseOracle) {
  const double length = 6.0;
  const Grid grid = Grid::with_length(1, 48, length);
  const double alpha = 0.4;
  const ScalingField field = build_field(grid, gamma_presets::linear_periodic(alpha, length));
  const WavePacket psi = packets::gaussian(grid, {3.0, 0, 0}, 0.8, {0, 0, 0}, 10);
  const WavePacket s = scale_packet(psi, field);
  const double zx = grid.position(10)[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = grid.position(i)[0];
    const double tri = z <= length / 2 ? z : length - z;
    const Complex want = std::exp(alpha * (tri - zx)) * psi.amplitudes()[i];
    EXPECT_LE(std::abs(s.amplitudes()[i] - want), 1e-13);
  }
}

TEST(ScalePacket, ReferencePointOnlyChangesGlobalFactor) {
  const double length = 5.0;
  const Grid grid = Grid::with_length(1, 32, length);
  const ScalingField field = build_field(grid, gamma_presets::sine(Complex(0.3, 0.2), length));
  const WavePacket psi = packets::random_smooth(grid, 5);
  const WavePacket a = scale_packet(psi.with_ref_point(2), field);
  const WavePacket b = scale_packet(psi.with_ref_point(19), field);
  const Complex factor = std::exp(field.gamma_at(19) - field.gamma_at(2));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(std::abs(a.amplitudes()[i] - factor * b.amplitudes()[i]), 1e-14);
  }
}

TEST(ScalePacket, Contracts) {
  const Grid grid = Grid::with_length(1, 16, 1.0);
  const ScalingField field = build_field(grid, gamma_presets::sine(0.1, 1.0));
  const WavePacket psi = packets::delta(grid, 3);
  const WavePacket s = scale_packet(psi, field);
  EXPECT_THROW((void)scale_packet(s, field), ContractError);
  EXPECT_THROW((void)momentum_apply(psi, field, {}, DerivativeScheme::Central2), ContractError);
  EXPECT_THROW((void)kinetic_apply(psi, field, {}, DerivativeScheme::Central2), ContractError);
  EXPECT_THROW((void)covariant_momentum_apply(s, field, {}, DerivativeScheme::Central2),
               ContractError);
  EXPECT_THROW((void)momentum_representation(psi, field), ContractError);
  const ScalingField other = build_field(Grid::with_length(1, 32, 1.0), gamma_presets::constant(0.0));
  EXPECT_THROW((void)scale_packet(psi, other), ShapeError);
  EXPECT_THROW((void)momentum_apply(s, field, {}, DerivativeScheme::Central2, 1), ShapeError);
}

TEST(MomentumApply, PlaneWaveEigenvalue) {
  const double length = 4.0;
  const Grid grid = Grid::with_length(1, 32, length);
  const ScalingField field = build_field(grid, gamma_presets::constant(0.0),
                                         DerivativeScheme::Spectral);
  const WavePacket psi = scale_packet(packets::plane_wave(grid, {3, 0, 0}), field);
  const double k = 2.0 * kPi * 3.0 / length;
  for (const PhysicalParams& params : {PhysicalParams{}, PhysicalParams::paper_signs()}) {
    const WavePacket p = momentum_apply(psi, field, params, DerivativeScheme::Spectral);
    const Complex eig = Complex(0.0, params.momentum_sign) * Complex(0.0, k);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_LE(std::abs(p.amplitudes()[i] - eig * psi.amplitudes()[i]), 1e-12);
    }
  }
}

TEST(MomentumApply, LinearWindowExample) {
  // gamma = 0.5 z on (0, L/2), k = 1, PhysicalParams::paper_signs(): (p + i hbar Gamma) psi = (-1 + 0.5i) psi.
  const double length = 2.0 * kPi;
  const Grid grid = Grid::with_length(1, 512, length);
  const ScalingField field = build_field(grid, gamma_presets::linear_periodic(0.5, length));
  const WavePacket psi = packets::plane_wave(grid, {1, 0, 0});
  const WavePacket out = covariant_momentum_apply(psi, field, PhysicalParams::paper_signs(),
                                                  DerivativeScheme::Central2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = grid.position(i)[0];
    if (z < 0.5 || z > 2.5) continue;
    EXPECT_LE(std::abs(out.amplitudes()[i] - Complex(-1.0, 0.5) * psi.amplitudes()[i]), 1e-4);
  }
}

TEST(MomentumApply, ProductRuleConvergesAtSecondOrder) {
  const double e64 = product_rule_residual(64, DerivativeScheme::Central2);
  const double e128 = product_rule_residual(128, DerivativeScheme::Central2);
  const double e256 = product_rule_residual(256, DerivativeScheme::Central2);
  EXPECT_NEAR(std::log2(e64 / e128), 2.0, 0.2);
  EXPECT_NEAR(std::log2(e128 / e256), 2.0, 0.2);
  EXPECT_LE(product_rule_residual(128, DerivativeScheme::Spectral), 1e-10);
}

TEST(KineticApply, PlaneWave) {
  const double length = 4.0;
  const Grid grid = Grid::with_length(1, 32, length);
  const ScalingField zero = build_field(grid, gamma_presets::constant(0.0));
  const ScalingField kappa = build_field(grid, gamma_presets::constant(1.5));
  const WavePacket psi = packets::plane_wave(grid, {2, 0, 0});
  const double k = 2.0 * kPi * 2.0 / length;
  for (const PhysicalParams& params : {PhysicalParams{}, PhysicalParams::paper_signs()}) {
    const WavePacket t = kinetic_apply(scale_packet(psi, zero), zero, params,
                                       DerivativeScheme::Spectral);
    const WavePacket tk = kinetic_apply(scale_packet(psi, kappa), kappa, params,
                                        DerivativeScheme::Spectral);
    EXPECT_EQ(to_vec(t.amplitudes()), to_vec(tk.amplitudes()));
    const double eig = params.kinetic_sign * 0.5 * -k * k;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_LE(std::abs(t.amplitudes()[i] - eig * psi.amplitudes()[i]), 1e-11);
    }
  }
}

TEST(KineticApply, CovariantIdentityIsSecondOrder) {
  for (KineticForm form : {KineticForm::Composed, KineticForm::Expanded}) {
    const double e64 = kinetic_residual(64, form);
    const double e128 = kinetic_residual(128, form);
    const double e256 = kinetic_residual(256, form);
    EXPECT_LT(e256, e64);
    EXPECT_NEAR(std::log2(e128 / e256), 2.0, 0.3);
  }
}

TEST(KineticApply, ExpandedAndComposedFormsAgreeSpectrally) {
  const double length = 6.0;
  const Grid grid = Grid::with_length(2, 16, length);
  const ScalingField field = build_field(grid, gamma_presets::sine(0.2, length),
                                         DerivativeScheme::Spectral);
  const WavePacket psi = packets::random_smooth(grid, 2, 2);
  const PhysicalParams params;
  const auto s = DerivativeScheme::Spectral;
  const ComplexVector composed =
      to_vec(covariant_kinetic_apply(psi, field, params, s, KineticForm::Composed).amplitudes());
  const ComplexVector expanded =
      to_vec(covariant_kinetic_apply(psi, field, params, s, KineticForm::Expanded).amplitudes());
  const ComplexVector direct = to_vec(kinetic_apply(scale_packet(psi, field), field, params, s)
                                          .amplitudes());
  EXPECT_LE(max_abs_diff(composed, expanded), 1e-9 * max_abs(composed));
  EXPECT_LE(max_abs_diff(direct, scaled_oracle(field, composed, 0)), 1e-9 * max_abs(direct));
}

TEST(MomentumRepresentation, TrivialField) {
  const Grid grid = Grid::with_length(1, 16, 2.0);
  const ScalingField zero = build_field(grid, gamma_presets::constant(0.0));
  const WavePacket psi = packets::random_smooth(grid, 8);
  EXPECT_LE(max_abs_diff(momentum_representation(scale_packet(psi, zero), zero),
                         testing::naive_dft(grid, to_vec(psi.amplitudes()))),
            1e-12);
  const ComplexVector plane =
      momentum_representation(scale_packet(packets::plane_wave(grid, {-3, 0, 0}), zero), zero);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.mode(k) == -3) {
      EXPECT_NEAR(std::abs(plane[k]), 16.0, 1e-12);
    } else {
      EXPECT_LE(std::abs(plane[k]), 1e-12);
    }
  }
}

TEST(MomentumRepresentation, ConvolutionDuality) {
  const double length = 12.0;
  for (int dims = 1; dims <= 2; ++dims) {
    const Grid grid = Grid::with_length(dims, dims == 1 ? 256 : 16, length);
    const ScalingField field = build_field(grid, gamma_presets::sine(Complex(0.2, 0.1), length));
    const WavePacket psi = packets::gaussian(grid, {5.0, 6.0, 0}, 1.1, {0.8, -0.3, 0}, 4);
    const ComplexVector direct = momentum_representation(scale_packet(psi, field), field);
    const ComplexVector conv = convolved_momentum_representation(psi, field);
    EXPECT_LE(max_abs_diff(direct, conv), 1e-10);

    // Independent evaluation through the naive DFT and naive convolution.
    ComplexVector oracle = testing::naive_convolution(
        grid, testing::naive_dft(grid, to_vec(field.g())),
        testing::naive_dft(grid, to_vec(psi.amplitudes())));
    for (Complex& z : oracle) z *= std::exp(-field.gamma_at(4)) / static_cast<double>(grid.size());
    EXPECT_LE(max_abs_diff(direct, oracle), 1e-10);
  }
}

TEST(MomentumKernel, IsTheNormalizedTransformOfG) {
  const Grid grid = Grid::with_length(1, 16, 3.0);
  const ScalingField field = build_field(grid, gamma_presets::gaussian_bump(0.5, 0.4, 3.0));
  const ComplexVector g_hat = testing::naive_dft(grid, to_vec(field.g()));
  for (std::size_t p = 0; p < grid.size(); ++p) {
    for (std::size_t q = 0; q < grid.size(); ++q) {
      const Complex want = g_hat[(p + grid.size() - q) % grid.size()] / 16.0;
      EXPECT_LE(std::abs(momentum_kernel(field, p, q) - want), 1e-13);
    }
  }
  EXPECT_THROW((void)momentum_kernel(field, 16, 0), ShapeError);
}

TEST(PotentialField, PeriodicWell) {
  const Grid grid = Grid::with_length(1, 16, 8.0);
  const PotentialField v = PotentialField::periodic_well(grid, 2.0);
  EXPECT_TRUE(v.is_real());
  EXPECT_NEAR(v.values()[8].real(), 0.0, 1e-15);
  EXPECT_NEAR(v.values()[0].real(), 2.0, 1e-15);
  EXPECT_THROW(PotentialField(grid, ComplexVector(3)), ShapeError);
  EXPECT_FALSE(PotentialField(grid, ComplexVector(16, Complex(0.0, 1.0))).is_real());
}

}  // namespace
}  // namespace scaleqm
