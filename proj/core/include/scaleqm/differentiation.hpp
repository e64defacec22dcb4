#pragma once

// Periodic derivative operators on a Grid: second- and fourth-order central
// differences, and a spectral (DFT) derivative.
//
// The spectral first derivative multiplies mode k by i k, including the
// Nyquist mode of an even grid (taken at +pi / spacing). That keeps the
// first-derivative operator anti-Hermitian and makes D * D equal the
// spectral second derivative.

#include <Eigen/Dense>
#include <span>
#include <string_view>

#include "scaleqm/grid.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

enum class DerivativeScheme { Central2, Central4, Spectral };

[[nodiscard]] std::string_view to_string(DerivativeScheme scheme) noexcept;
/// Accepts "central2", "central4", "spectral". Throws std::invalid_argument otherwise.
[[nodiscard]] DerivativeScheme parse_derivative_scheme(std::string_view name);

/// d f / d z_axis. An exactly constant input yields an exactly zero result.
[[nodiscard]] ComplexVector derivative(const Grid& grid, std::span<const Complex> f, int axis,
                                       DerivativeScheme scheme);

/// d^2 f / d z_axis^2 using the compact stencil of the scheme.
[[nodiscard]] ComplexVector second_derivative(const Grid& grid, std::span<const Complex> f,
                                              int axis, DerivativeScheme scheme);

[[nodiscard]] ComplexVector laplacian(const Grid& grid, std::span<const Complex> f,
                                      DerivativeScheme scheme);

/// Dense matrix of `derivative` along an axis (grid.size() squared entries).
[[nodiscard]] Eigen::MatrixXcd derivative_matrix(const Grid& grid, int axis,
                                                 DerivativeScheme scheme);
[[nodiscard]] Eigen::MatrixXcd second_derivative_matrix(const Grid& grid, int axis,
                                                        DerivativeScheme scheme);

}  // namespace scaleqm
