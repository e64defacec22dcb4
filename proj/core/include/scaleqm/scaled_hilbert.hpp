#pragma once

// Finite-dimensional scaled vector structures H^c over C^c.

#include <span>

#include "scaleqm/scaled_numbers.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

/// Base vector stored by its coordinates in H^1, read in H^scale.
class ScaledVector {
 public:
  /// Throws ShapeError for an empty vector, InvalidValueError for non-finite entries.
  ScaledVector(ComplexVector canonical, StructureScale scale);

  [[nodiscard]] std::size_t dimension() const noexcept { return canonical_.size(); }
  [[nodiscard]] std::span<const Complex> canonical() const noexcept { return canonical_; }
  [[nodiscard]] StructureScale scale() const noexcept { return scale_; }
  /// Coordinates of the vector as a value in its own structure.
  [[nodiscard]] ComplexVector values() const;
  [[nodiscard]] ScaledVector read_in(StructureScale scale) const { return {canonical_, scale}; }

  friend ScaledVector operator+(const ScaledVector& a, const ScaledVector& b);
  /// Scalar multiplication inside one structure.
  friend ScaledVector operator*(const ScaledNumber& a, const ScaledVector& v);

 private:
  ComplexVector canonical_;
  StructureScale scale_;
};

/// Standard inner product, conjugate-linear in the first argument.
[[nodiscard]] Complex inner(std::span<const Complex> phi, std::span<const Complex> rho);

/// (d / c) * psi_values: v_c coordinates of the base vector whose v_d coordinates are psi_values.
[[nodiscard]] ComplexVector corresponding_vector(std::span<const Complex> psi_values,
                                                 StructureScale d, StructureScale c);

/// (c / d) * a * psi: v_c coordinates of a ._d psi.
[[nodiscard]] ComplexVector project_scalar_mul(Complex a, std::span<const Complex> psi,
                                               StructureScale d, StructureScale c);

/// (d / c) * <phi, rho>, the projected scalar product of H^d_c.
/// Throws ShapeError on a dimension mismatch.
[[nodiscard]] Complex project_inner(std::span<const Complex> phi, std::span<const Complex> rho,
                                    StructureScale d, StructureScale c);

}  // namespace scaleqm
