#pragma once

// Scaled single-particle wave packets and the Gamma-modified momentum and
// kinetic operators.
//
// A packet is "scaled" once its amplitudes carry the factor
// exp(gamma(z) - gamma(z_x)) relative to its reference point x. Operators on
// scaled packets act with plain derivatives; the covariant_* variants act on
// the unscaled packet with d/dz + Gamma. The two routes agree up to the
// scaling factor:
//
//   p (e^gamma psi) = e^gamma (p + s i hbar Gamma) psi
//   d^2 (e^gamma psi) = e^gamma (d + Gamma)^2 psi

#include <array>
#include <cstdint>
#include <span>

#include "scaleqm/differentiation.hpp"
#include "scaleqm/grid.hpp"
#include "scaleqm/scaling_field.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

/// Physical constants and sign conventions.
///
/// The defaults are the usual p = -i hbar grad and K = -(hbar^2 / 2m) laplacian.
/// paper_signs() switches to p = +i hbar grad and K = +(hbar^2 / 2m) laplacian.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  int momentum_sign = -1;
  int kinetic_sign = -1;

  static PhysicalParams paper_signs(double hbar = 1.0, double mass = 1.0) {
    return {hbar, mass, +1, +1};
  }
  /// Throws std::invalid_argument on non-positive hbar/mass or signs outside {+1, -1}.
  void validate() const;
  /// kinetic_sign * hbar^2 / (2 mass)
  [[nodiscard]] double kinetic_prefactor() const noexcept {
    return kinetic_sign * hbar * hbar / (2.0 * mass);
  }
};

class WavePacket {
 public:
  /// Throws ShapeError if amplitudes do not match the grid or the reference
  /// point is off-grid; InvalidValueError for non-finite amplitudes.
  WavePacket(const Grid& grid, ComplexVector amplitudes, std::size_t ref_point = 0,
             bool scaled = false);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] std::size_t ref_point() const noexcept { return ref_point_; }
  [[nodiscard]] bool scaled() const noexcept { return scaled_; }

  /// sqrt(sum |psi|^2 Delta^dims)
  [[nodiscard]] double norm() const;
  [[nodiscard]] WavePacket normalized() const;
  [[nodiscard]] WavePacket with_ref_point(std::size_t ref_point) const;

 private:
  Grid grid_;
  ComplexVector amplitudes_;
  std::size_t ref_point_;
  bool scaled_;
};

namespace packets {

/// Normalized Gaussian exp(-|u|^2 / (2 width^2) + i k.u) with u = z - center,
/// summed over the nearest periodic images so it is smooth across the wrap for any k.
WavePacket gaussian(const Grid& grid, const std::array<double, 3>& center, double width,
                    const std::array<double, 3>& wavevector = {0.0, 0.0, 0.0},
                    std::size_t ref_point = 0);
/// Unit-amplitude plane wave exp(i k.z) with k_j = 2 pi modes_j / L.
WavePacket plane_wave(const Grid& grid, const std::array<long, 3>& modes,
                      std::size_t ref_point = 0);
/// Normalized lattice delta at `point`.
WavePacket delta(const Grid& grid, std::size_t point, std::size_t ref_point = 0);
/// Normalized random combination of Fourier modes with |m_j| <= max_mode.
WavePacket random_smooth(const Grid& grid, std::uint64_t seed, long max_mode = 3,
                         std::size_t ref_point = 0);

}  // namespace packets

/// External potential V(z), real or complex.
class PotentialField {
 public:
  PotentialField(const Grid& grid, ComplexVector values);

  static PotentialField zero(const Grid& grid);
  /// depth * sum_j sin^2(pi (z_j - L/2) / L): smooth, periodic, minimum at the centre.
  static PotentialField periodic_well(const Grid& grid, double depth);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const Complex> values() const noexcept { return values_; }
  [[nodiscard]] bool is_real() const noexcept;

 private:
  Grid grid_;
  ComplexVector values_;
};

enum class KineticForm {
  /// (D + Gamma)((D + Gamma) psi)
  Composed,
  /// D2 psi + (D Gamma) psi + 2 Gamma D psi + Gamma^2 psi
  Expanded,
};

/// Pointwise e^{gamma(z) - gamma(z_x)} psi(z). Identity when gamma is constant.
/// Throws ContractError on an already scaled packet, ShapeError on grid mismatch.
[[nodiscard]] WavePacket scale_packet(const WavePacket& psi, const ScalingField& field);

/// s i hbar d/dz_axis applied to a scaled packet.
[[nodiscard]] WavePacket momentum_apply(const WavePacket& scaled, const ScalingField& field,
                                        const PhysicalParams& params, DerivativeScheme scheme,
                                        int axis = 0);

/// s i hbar (d/dz_axis + Gamma_axis) applied to an unscaled packet.
[[nodiscard]] WavePacket covariant_momentum_apply(const WavePacket& unscaled,
                                                  const ScalingField& field,
                                                  const PhysicalParams& params,
                                                  DerivativeScheme scheme, int axis = 0);

/// kinetic_prefactor * laplacian of a scaled packet.
[[nodiscard]] WavePacket kinetic_apply(const WavePacket& scaled, const ScalingField& field,
                                       const PhysicalParams& params, DerivativeScheme scheme);

/// kinetic_prefactor * sum_j (d_j + Gamma_j)^2 of an unscaled packet.
[[nodiscard]] WavePacket covariant_kinetic_apply(const WavePacket& unscaled,
                                                 const ScalingField& field,
                                                 const PhysicalParams& params,
                                                 DerivativeScheme scheme,
                                                 KineticForm form = KineticForm::Composed);

/// DFT of the scaled amplitudes (convention in fourier.hpp).
[[nodiscard]] ComplexVector momentum_representation(const WavePacket& scaled,
                                                    const ScalingField& field);

/// The same momentum amplitudes built from the unscaled packet as a
/// convolution over an intermediate momentum:
///   e^{-gamma(z_x)} sum_q K(p, q) Psi(q),  K(p, q) = (1/size) DFT(e^gamma)[p - q].
[[nodiscard]] ComplexVector convolved_momentum_representation(const WavePacket& unscaled,
                                                              const ScalingField& field);

/// <p| e^gamma |q> on the grid, (1/size) sum_n exp(-2 pi i (p - q).n / N) g(n),
/// evaluated as a direct sum. p and q are flat momentum-bin indices.
[[nodiscard]] Complex momentum_kernel(const ScalingField& field, std::size_t p, std::size_t q);

namespace kernels {

/// (d/dz_axis + fraction * Gamma_axis) psi on raw amplitudes.
[[nodiscard]] ComplexVector covariant_derivative(const ScalingField& field,
                                                 std::span<const Complex> psi, int axis,
                                                 DerivativeScheme scheme, double fraction = 1.0);

/// (d/dz_axis + fraction * Gamma_axis)^2 psi on raw amplitudes.
[[nodiscard]] ComplexVector covariant_second_derivative(const ScalingField& field,
                                                        std::span<const Complex> psi, int axis,
                                                        DerivativeScheme scheme,
                                                        double fraction = 1.0,
                                                        KineticForm form = KineticForm::Composed);

}  // namespace kernels

}  // namespace scaleqm
