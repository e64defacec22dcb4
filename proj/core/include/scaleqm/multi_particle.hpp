#pragma once

// n-particle states on one shared grid: product and Slater states, scaling by
// the geometric-mean field h = e^rho, and the per-particle momentum and
// kinetic operators in which each particle sees Gamma / n.
//
// Tensor layout: flat row-major index over (w_1, ..., w_n), particle 1
// slowest. Each w_j is itself a flat grid index.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "scaleqm/differentiation.hpp"
#include "scaleqm/grid.hpp"
#include "scaleqm/scaling_field.hpp"
#include "scaleqm/single_particle.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

/// Upper bound on the number of tensor entries.
inline constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 24;

/// grid.size()^n, or ResourceError when it exceeds kMaxTensorEntries.
[[nodiscard]] std::size_t tensor_entries(const Grid& grid, std::size_t n);

class EntangledState {
 public:
  /// Throws ArityError for n == 0, ResourceError for oversized tensors and
  /// ShapeError when amplitudes or ref_points have the wrong length.
  EntangledState(const Grid& grid, std::size_t n, ComplexVector amplitudes,
                 std::vector<std::size_t> ref_points, bool scaled = false);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t particles() const noexcept { return n_; }
  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] std::span<const std::size_t> ref_points() const noexcept { return ref_points_; }
  [[nodiscard]] bool scaled() const noexcept { return scaled_; }

  /// Grid points (w_1, ..., w_n) of a flat tensor index.
  [[nodiscard]] std::vector<std::size_t> points(std::size_t flat) const;
  [[nodiscard]] std::size_t flat(std::span<const std::size_t> points) const;
  /// Stride of particle j in the flat layout.
  [[nodiscard]] std::size_t particle_stride(std::size_t j) const;

  /// The state with particles i and j swapped (same ref points).
  [[nodiscard]] EntangledState exchanged(std::size_t i, std::size_t j) const;
  /// sqrt(sum |psi|^2 Delta^(n dims))
  [[nodiscard]] double norm() const;
  [[nodiscard]] EntangledState with_ref_points(std::vector<std::size_t> ref_points) const;

 private:
  Grid grid_;
  std::size_t n_;
  ComplexVector amplitudes_;
  std::vector<std::size_t> ref_points_;
  bool scaled_;
};

class ParticleMasses {
 public:
  /// Throws std::invalid_argument unless every mass is positive and finite.
  explicit ParticleMasses(std::vector<double> masses);
  static ParticleMasses uniform(std::size_t n, double mass = 1.0);

  [[nodiscard]] std::size_t size() const noexcept { return masses_.size(); }
  [[nodiscard]] double operator[](std::size_t j) const { return masses_.at(j); }

 private:
  std::vector<double> masses_;
};

/// prod_j psi_j(w_j). Reference points are all set to the first packet's.
/// Throws ArityError for no packets, ShapeError on grid mismatch and
/// ContractError for scaled packets.
[[nodiscard]] EntangledState product_state(std::span<const WavePacket> packets);

/// (psi1(w) psi2(z) - psi1(z) psi2(w)) / sqrt(2); exactly antisymmetric.
[[nodiscard]] EntangledState slater_state(const WavePacket& psi1, const WavePacket& psi2);

/// Pointwise e^{rho(w_1..w_n) - rho(refs)} psi. For n = 1 this matches scale_packet bit for bit.
/// Throws ContractError on an already scaled state.
[[nodiscard]] EntangledState scale_entangled(const EntangledState& state,
                                             const ScalingField& field);

/// Applies `op` to every one-particle slice along particle j, with the other
/// particles held fixed. `op` maps grid.size() amplitudes to grid.size() values.
[[nodiscard]] ComplexVector apply_along_particle(
    const EntangledState& state, std::size_t j,
    const std::function<ComplexVector(std::span<const Complex>)>& op);

/// s i hbar sum_j d/dw_j on a scaled state (component `axis`).
[[nodiscard]] EntangledState total_momentum_apply(const EntangledState& scaled,
                                                  const ScalingField& field,
                                                  const PhysicalParams& params,
                                                  DerivativeScheme scheme, int axis = 0);

/// s i hbar sum_j (d/dw_j + Gamma(w_j) / n) on an unscaled state.
[[nodiscard]] EntangledState covariant_total_momentum_apply(const EntangledState& unscaled,
                                                            const ScalingField& field,
                                                            const PhysicalParams& params,
                                                            DerivativeScheme scheme, int axis = 0);

/// Kinetic term of particle j alone: plain laplacian on a scaled state,
/// (grad + Gamma / n)^2 on an unscaled one, times kinetic_sign hbar^2 / (2 m_j).
[[nodiscard]] ComplexVector particle_kinetic_term(const EntangledState& state,
                                                  const ScalingField& field, std::size_t j,
                                                  const ParticleMasses& masses,
                                                  const PhysicalParams& params,
                                                  DerivativeScheme scheme,
                                                  KineticForm form = KineticForm::Composed);

/// Sum of particle_kinetic_term over particles, on a scaled state.
/// Throws ShapeError if masses.size() != n.
[[nodiscard]] EntangledState kinetic_apply_n(const EntangledState& scaled,
                                             const ScalingField& field,
                                             const ParticleMasses& masses,
                                             const PhysicalParams& params,
                                             DerivativeScheme scheme);

/// Sum of particle_kinetic_term over particles, on an unscaled state.
[[nodiscard]] EntangledState covariant_kinetic_apply_n(const EntangledState& unscaled,
                                                       const ScalingField& field,
                                                       const ParticleMasses& masses,
                                                       const PhysicalParams& params,
                                                       DerivativeScheme scheme,
                                                       KineticForm form = KineticForm::Composed);

/// Pair interaction U as a function of the separation vector (one entry per axis).
using PairPotential = std::function<Complex(std::span<const double>)>;

/// sum_{i<j} U(w_i - w_j) at every tensor entry, separations taken as minimum images.
[[nodiscard]] ComplexVector pair_interaction_values(const Grid& grid, std::size_t n,
                                                    const PairPotential& pair);

/// Kinetic part (plain or covariant, according to state.scaled()) plus
/// sum_j V(w_j) plus the optional pair interaction.
[[nodiscard]] EntangledState hamiltonian_apply_n(const EntangledState& state,
                                                 const ScalingField& field,
                                                 const ParticleMasses& masses,
                                                 const PotentialField& potential,
                                                 const PhysicalParams& params,
                                                 DerivativeScheme scheme,
                                                 const std::optional<PairPotential>& pair = {});

struct CoalesceReport {
  /// max |A - f B| / max |A| with A, B the state scaled at refs_a, refs_b.
  double max_relative_deviation = 0.0;
  /// max deviation between unit-norm A and B after removing their relative phase.
  double normalized_phase_deviation = 0.0;
  /// f = e^{rho(refs_b) - rho(refs_a)}
  Complex global_factor{1.0, 0.0};
};

/// Scales an unscaled state at two reference tuples and checks that the
/// results differ by the global factor alone.
/// Throws ArityError when a reference tuple does not have n entries.
[[nodiscard]] CoalesceReport coalesce_check(const EntangledState& state,
                                            const ScalingField& field,
                                            std::span<const std::size_t> refs_a,
                                            std::span<const std::size_t> refs_b);

}  // namespace scaleqm
