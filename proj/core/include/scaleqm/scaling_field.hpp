#pragma once

// The scalar scaling field gamma on a periodic grid, g = exp(gamma), its
// gradient Gamma, the connection factor between fibers, the structure-group
// action on scales, and n-point geometric averages.
//
// In canonical coordinates the connection C_g(x, y), which combines the
// level-preserving transport V(x, y) with the structure projection Z, acts
// as multiplication by the single scalar g(y) / g(x). That scalar is all that
// survives of the bundle machinery here.

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scaleqm/differentiation.hpp"
#include "scaleqm/grid.hpp"
#include "scaleqm/scaled_numbers.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

/// gamma as a function of position; the span holds one coordinate per grid axis.
using AnalyticGamma = std::function<Complex(std::span<const double>)>;

namespace gamma_presets {

/// gamma = kappa everywhere.
AnalyticGamma constant(Complex kappa);
/// gamma = alpha * sum_j sin(2 pi z_j / L).
AnalyticGamma sine(Complex alpha, double length);
/// Triangle wave: gamma = alpha * z_j for z_j <= L/2 and alpha * (L - z_j) beyond,
/// summed over axes. Linear near the origin, continuous across the wrap.
AnalyticGamma linear_periodic(Complex alpha, double length);
/// Sum over periodic images of a Gaussian bump of the given width centred at L/2,
/// multiplied across axes and scaled by alpha.
AnalyticGamma gaussian_bump(Complex alpha, double width, double length);

/// Builds a preset by name: "constant", "linear-periodic", "sine",
/// "gaussian-bump-periodicized". Recognised parameters: alpha and alpha_imag
/// (real and imaginary part of the amplitude), kappa (constant; overrides alpha),
/// width (bump; default L / 10). Throws std::invalid_argument for unknown names.
AnalyticGamma by_name(const std::string& name, const std::map<std::string, double>& params,
                      double length);

}  // namespace gamma_presets

/// gamma sampled on a grid with cached g = exp(gamma) and Gamma = grad gamma.
class ScalingField {
 public:
  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] DerivativeScheme scheme() const noexcept { return scheme_; }
  [[nodiscard]] std::span<const Complex> gamma() const noexcept { return gamma_; }
  [[nodiscard]] std::span<const Complex> g() const noexcept { return g_; }
  /// Component `axis` of Gamma at every grid point.
  [[nodiscard]] std::span<const Complex> gradient(int axis) const;

  [[nodiscard]] Complex gamma_at(std::size_t point) const { return gamma_.at(point); }
  [[nodiscard]] Complex g_at(std::size_t point) const { return g_.at(point); }

  /// True when every gamma sample is bitwise equal.
  [[nodiscard]] bool is_constant() const noexcept;

  /// Same gamma multiplied by `factor` (so Gamma is multiplied by it too).
  [[nodiscard]] ScalingField scaled_by(double factor) const;

 private:
  friend ScalingField build_field(const Grid&, ComplexVector, DerivativeScheme);
  ScalingField(const Grid& grid, ComplexVector gamma, DerivativeScheme scheme);

  Grid grid_;
  DerivativeScheme scheme_;
  ComplexVector gamma_;
  ComplexVector g_;
  std::vector<ComplexVector> gradient_;
};

/// Samples an analytic gamma at every grid point.
///
/// Throws FieldConstructionError for non-finite samples and PeriodicityError
/// when the function differs by more than 1e-8 between z_j = 0 and z_j = L.
ScalingField build_field(const Grid& grid, const AnalyticGamma& gamma,
                         DerivativeScheme scheme = DerivativeScheme::Central2);

/// Per-point table of gamma values in flat-index order.
ScalingField build_field(const Grid& grid, ComplexVector gamma_table,
                         DerivativeScheme scheme = DerivativeScheme::Central2);

/// Reads rows "flat_index,re,im" (an optional non-numeric header line is
/// skipped). Every grid index must appear exactly once.
ScalingField read_field_csv(const Grid& grid, std::istream& in,
                            DerivativeScheme scheme = DerivativeScheme::Central2);

/// Parallel-transport factor g(y) / g(x) = exp(gamma(y) - gamma(x)).
[[nodiscard]] Complex connection_factor(const ScalingField& field, std::size_t x, std::size_t y);

/// Structure-group action W_d on the level c: returns d * c.
[[nodiscard]] StructureScale compose_scale(StructureScale w_d, StructureScale c);

/// rho = (1/n) sum_j gamma(x_j). Summation runs over the points in sorted
/// order, so the result is exactly invariant under permutation.
/// Throws ArityError for an empty point list.
[[nodiscard]] Complex multi_rho(const ScalingField& field, std::span<const std::size_t> points);

/// h = exp(rho), the geometric mean of g over the points (principal branch).
[[nodiscard]] Complex geometric_mean_scale(const ScalingField& field,
                                           std::span<const std::size_t> points);

}  // namespace scaleqm
