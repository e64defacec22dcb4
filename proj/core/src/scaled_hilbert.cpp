#include "scaleqm/scaled_hilbert.hpp"

#include <cmath>
#include <string>

namespace scaleqm {
namespace {

void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ShapeError("vector dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

ComplexVector scaled_copy(Complex factor, std::span<const Complex> v) {
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = factor * v[i];
  }
  return out;
}

}  // namespace

ScaledVector::ScaledVector(ComplexVector canonical, StructureScale scale)
    : canonical_(std::move(canonical)), scale_(scale) {
  if (canonical_.empty()) {
    throw ShapeError("scaled vector needs dimension >= 1");
  }
  for (const Complex& z : canonical_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidValueError("scaled vector entries must be finite");
    }
  }
}

ComplexVector ScaledVector::values() const { return scaled_copy(1.0 / scale_.value(), canonical_); }

ScaledVector operator+(const ScaledVector& a, const ScaledVector& b) {
  if (!(a.scale() == b.scale())) {
    throw StructureMismatchError("vector addition across structures");
  }
  require_same_dimension(a.dimension(), b.dimension());
  ComplexVector sum(a.dimension());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] = a.canonical_[i] + b.canonical_[i];
  }
  return {std::move(sum), a.scale()};
}

ScaledVector operator*(const ScaledNumber& a, const ScaledVector& v) {
  if (!(a.scale() == v.scale())) {
    throw StructureMismatchError("scalar multiplication across structures");
  }
  // value(a . v) = value(a) * value(v); canonical coordinates carry one factor of the scale.
  return {scaled_copy(a.value(), v.canonical()), v.scale()};
}

Complex inner(std::span<const Complex> phi, std::span<const Complex> rho) {
  require_same_dimension(phi.size(), rho.size());
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    acc += std::conj(phi[i]) * rho[i];
  }
  return acc;
}

ComplexVector corresponding_vector(std::span<const Complex> psi_values, StructureScale d,
                                   StructureScale c) {
  return scaled_copy(d.value() / c.value(), psi_values);
}

ComplexVector project_scalar_mul(Complex a, std::span<const Complex> psi, StructureScale d,
                                 StructureScale c) {
  return scaled_copy((c.value() / d.value()) * a, psi);
}

Complex project_inner(std::span<const Complex> phi, std::span<const Complex> rho, StructureScale d,
                      StructureScale c) {
  return (d.value() / c.value()) * inner(phi, rho);
}

}  // namespace scaleqm
