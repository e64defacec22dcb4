#pragma once

// Dense single-particle Hamiltonians in the standard and Gamma-modified gauge,
// and the eigen-solvers used to compare their spectra.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "scaleqm/differentiation.hpp"
#include "scaleqm/scaling_field.hpp"
#include "scaleqm/single_particle.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

/// Largest operator dimension accepted for dense assembly.
inline constexpr std::size_t kMaxDenseDimension = 4096;

enum class Gauge { Standard, GammaModified };

/// How the Gamma term enters the modified operator D + G.
enum class ConnectionForm {
  /// G = e^{-gamma} [D, e^{gamma}], so D + G = e^{-gamma} D e^{gamma} as matrices.
  Commutator,
  /// G = diag(Gamma), with Gamma from the field's own derivative scheme.
  Diagonal,
};

/// Matrix of G along one axis.
[[nodiscard]] Eigen::MatrixXcd connection_matrix(const ScalingField& field, int axis,
                                                 DerivativeScheme scheme, ConnectionForm form);

/// Standard: kinetic_prefactor * sum_j D2_j + diag(V).
/// GammaModified: the standard matrix plus kinetic_prefactor * sum_j (D_j G_j + G_j D_j + G_j^2),
/// i.e. D2 replaced by (D + G)^2 up to the difference between D2 and D * D.
/// Throws ResourceError above kMaxDenseDimension and ShapeError on grid mismatch.
[[nodiscard]] Eigen::MatrixXcd build_hamiltonian(const ScalingField& field,
                                                 const PotentialField& potential,
                                                 const PhysicalParams& params, Gauge gauge,
                                                 DerivativeScheme scheme,
                                                 ConnectionForm form = ConnectionForm::Commutator);

/// Max |H - H^dagger| <= tol * max(1, max |H|).
[[nodiscard]] bool is_hermitian(const Eigen::MatrixXcd& h, double tol = 1e-12);

/// Eigenvalues sorted by (real, imag). Hermitian inputs use the self-adjoint
/// solver and return exactly real values.
/// Throws ShapeError for non-square input, ResourceError above
/// kMaxDenseDimension and NumericError when the solver does not converge.
[[nodiscard]] std::vector<Complex> eigen_spectrum(const Eigen::MatrixXcd& h);

struct Eigenpairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns
};

/// Eigen-decomposition of a Hermitian matrix. Throws ContractError if `h` is not Hermitian.
[[nodiscard]] Eigenpairs hermitian_eigenpairs(const Eigen::MatrixXcd& h);

struct SpectrumMatch {
  std::vector<Complex> first;
  std::vector<Complex> second;  // second[i] is the partner of first[i]
  double max_abs_diff = 0.0;
};

/// Greedy nearest-neighbour pairing of two spectra of equal length: each value
/// of `a`, taken in sorted order, is paired with the closest unused value of `b`.
[[nodiscard]] SpectrumMatch match_spectra(const std::vector<Complex>& a,
                                          const std::vector<Complex>& b);

}  // namespace scaleqm
