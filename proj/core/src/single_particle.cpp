#include "scaleqm/single_particle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "scaleqm/error.hpp"
#include "scaleqm/fourier.hpp"

namespace scaleqm {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_scaled(const WavePacket& psi, bool expected, const char* op) {
  if (psi.scaled() != expected) {
    throw ContractError(std::string(op) + (expected ? " needs a scaled packet"
                                                    : " needs an unscaled packet"));
  }
}

void require_axis(const Grid& grid, int axis) {
  if (axis < 0 || axis >= grid.dims()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range");
  }
}

WavePacket result_like(const WavePacket& psi, ComplexVector amplitudes) {
  return WavePacket(psi.grid(), std::move(amplitudes), psi.ref_point(), psi.scaled());
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
  if (momentum_sign != 1 && momentum_sign != -1) {
    throw std::invalid_argument("momentum_sign must be +1 or -1");
  }
  if (kinetic_sign != 1 && kinetic_sign != -1) {
    throw std::invalid_argument("kinetic_sign must be +1 or -1");
  }
}

WavePacket::WavePacket(const Grid& grid, ComplexVector amplitudes, std::size_t ref_point,
                       bool scaled)
    : grid_(grid), amplitudes_(std::move(amplitudes)), ref_point_(ref_point), scaled_(scaled) {
  if (amplitudes_.size() != grid_.size()) {
    throw ShapeError("packet has " + std::to_string(amplitudes_.size()) +
                     " amplitudes, grid has " + std::to_string(grid_.size()) + " points");
  }
  if (ref_point_ >= grid_.size()) {
    throw ShapeError("reference point outside the grid");
  }
  for (const Complex& z : amplitudes_) {
    if (!finite(z)) throw InvalidValueError("packet amplitudes must be finite");
  }
}

double WavePacket::norm() const {
  double acc = 0.0;
  for (const Complex& z : amplitudes_) {
    acc += std::norm(z);
  }
  return std::sqrt(acc * grid_.cell_volume());
}

WavePacket WavePacket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidValueError("cannot normalize the zero packet");
  ComplexVector out(amplitudes_);
  for (Complex& z : out) z /= n;
  return WavePacket(grid_, std::move(out), ref_point_, scaled_);
}

WavePacket WavePacket::with_ref_point(std::size_t ref_point) const {
  return WavePacket(grid_, amplitudes_, ref_point, scaled_);
}

namespace packets {

WavePacket gaussian(const Grid& grid, const std::array<double, 3>& center, double width,
                    const std::array<double, 3>& wavevector, std::size_t ref_point) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be > 0");
  const double length = grid.length();
  ComplexVector amp(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto z = grid.position(p);
    Complex value{1.0, 0.0};
    for (int a = 0; a < grid.dims(); ++a) {
      const auto ax = static_cast<std::size_t>(a);
      Complex s{0.0, 0.0};
      for (int m = -1; m <= 1; ++m) {
        const double u = z[ax] - center[ax] + m * length;
        s += std::exp(Complex(-u * u / (2.0 * width * width), wavevector[ax] * u));
      }
      value *= s;
    }
    amp[p] = value;
  }
  return WavePacket(grid, std::move(amp), ref_point).normalized();
}

WavePacket plane_wave(const Grid& grid, const std::array<long, 3>& modes, std::size_t ref_point) {
  ComplexVector amp(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto idx = grid.coords(p);
    // Phase from integer arithmetic keeps exact periodicity.
    double phase = 0.0;
    for (int a = 0; a < grid.dims(); ++a) {
      const auto ax = static_cast<std::size_t>(a);
      const auto n = static_cast<long>(grid.points_per_dim());
      const long k = ((modes[ax] * static_cast<long>(idx[ax])) % n + n) % n;
      phase += 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    }
    amp[p] = std::polar(1.0, phase);
  }
  return WavePacket(grid, std::move(amp), ref_point);
}

WavePacket delta(const Grid& grid, std::size_t point, std::size_t ref_point) {
  if (point >= grid.size()) throw ShapeError("delta point outside the grid");
  ComplexVector amp(grid.size(), Complex{0.0, 0.0});
  amp[point] = 1.0 / std::sqrt(grid.cell_volume());
  return WavePacket(grid, std::move(amp), ref_point);
}

WavePacket random_smooth(const Grid& grid, std::uint64_t seed, long max_mode,
                         std::size_t ref_point) {
  if (max_mode < 0 || 2 * max_mode >= static_cast<long>(grid.points_per_dim())) {
    throw std::invalid_argument("max_mode must satisfy 0 <= 2 max_mode < N");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Coefficients live in the DFT spectrum; only modes with |m| <= max_mode
  // on every axis are populated.
  ComplexVector spectrum(grid.size(), Complex{0.0, 0.0});
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto idx = grid.coords(p);
    bool inside = true;
    for (int a = 0; a < grid.dims(); ++a) {
      inside = inside && std::abs(grid.mode(idx[static_cast<std::size_t>(a)])) <= max_mode;
    }
    if (inside) {
      const double re = normal(rng);
      const double im = normal(rng);
      spectrum[p] = Complex(re, im);
    }
  }
  const FourierTransform dft(grid);
  return WavePacket(grid, dft.inverse(spectrum), ref_point).normalized();
}

}  // namespace packets

PotentialField::PotentialField(const Grid& grid, ComplexVector values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ShapeError("potential does not match grid");
  for (const Complex& v : values_) {
    if (!finite(v)) throw InvalidValueError("potential must be finite");
  }
}

PotentialField PotentialField::zero(const Grid& grid) {
  return PotentialField(grid, ComplexVector(grid.size(), Complex{0.0, 0.0}));
}

PotentialField PotentialField::periodic_well(const Grid& grid, double depth) {
  ComplexVector v(grid.size());
  const double length = grid.length();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto z = grid.position(p);
    double s = 0.0;
    for (int a = 0; a < grid.dims(); ++a) {
      const double t = std::sin(kPi * (z[static_cast<std::size_t>(a)] - 0.5 * length) / length);
      s += t * t;
    }
    v[p] = depth * s;
  }
  return PotentialField(grid, std::move(v));
}

bool PotentialField::is_real() const noexcept {
  for (const Complex& v : values_) {
    if (v.imag() != 0.0) return false;
  }
  return true;
}

namespace kernels {

ComplexVector covariant_derivative(const ScalingField& field, std::span<const Complex> psi,
                                   int axis, DerivativeScheme scheme, double fraction) {
  const Grid& grid = field.grid();
  ComplexVector out = derivative(grid, psi, axis, scheme);
  const auto gamma = field.gradient(axis);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += fraction * gamma[i] * psi[i];
  }
  return out;
}

ComplexVector covariant_second_derivative(const ScalingField& field, std::span<const Complex> psi,
                                          int axis, DerivativeScheme scheme, double fraction,
                                          KineticForm form) {
  const Grid& grid = field.grid();
  if (form == KineticForm::Composed) {
    const ComplexVector once = covariant_derivative(field, psi, axis, scheme, fraction);
    return covariant_derivative(field, once, axis, scheme, fraction);
  }
  const auto gamma = field.gradient(axis);
  const ComplexVector d_gamma = derivative(grid, gamma, axis, scheme);
  const ComplexVector d_psi = derivative(grid, psi, axis, scheme);
  ComplexVector out = second_derivative(grid, psi, axis, scheme);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Complex f_gamma = fraction * gamma[i];
    out[i] += fraction * d_gamma[i] * psi[i] + 2.0 * f_gamma * d_psi[i] + f_gamma * f_gamma * psi[i];
  }
  return out;
}

}  // namespace kernels

WavePacket scale_packet(const WavePacket& psi, const ScalingField& field) {
  require_scaled(psi, false, "scale_packet");
  require_same_grid(psi.grid(), field.grid(), "scale_packet");
  const Complex gamma_ref = field.gamma_at(psi.ref_point());
  const auto amp = psi.amplitudes();
  ComplexVector out(amp.size());
  for (std::size_t i = 0; i < amp.size(); ++i) {
    out[i] = std::exp(field.gamma_at(i) - gamma_ref) * amp[i];
  }
  return WavePacket(psi.grid(), std::move(out), psi.ref_point(), true);
}

WavePacket momentum_apply(const WavePacket& scaled, const ScalingField& field,
                          const PhysicalParams& params, DerivativeScheme scheme, int axis) {
  require_scaled(scaled, true, "momentum_apply");
  require_same_grid(scaled.grid(), field.grid(), "momentum_apply");
  require_axis(scaled.grid(), axis);
  ComplexVector out = derivative(scaled.grid(), scaled.amplitudes(), axis, scheme);
  const Complex factor(0.0, params.momentum_sign * params.hbar);
  for (Complex& z : out) z *= factor;
  return result_like(scaled, std::move(out));
}

WavePacket covariant_momentum_apply(const WavePacket& unscaled, const ScalingField& field,
                                    const PhysicalParams& params, DerivativeScheme scheme,
                                    int axis) {
  require_scaled(unscaled, false, "covariant_momentum_apply");
  require_same_grid(unscaled.grid(), field.grid(), "covariant_momentum_apply");
  require_axis(unscaled.grid(), axis);
  ComplexVector out = kernels::covariant_derivative(field, unscaled.amplitudes(), axis, scheme);
  const Complex factor(0.0, params.momentum_sign * params.hbar);
  for (Complex& z : out) z *= factor;
  return result_like(unscaled, std::move(out));
}

WavePacket kinetic_apply(const WavePacket& scaled, const ScalingField& field,
                         const PhysicalParams& params, DerivativeScheme scheme) {
  require_scaled(scaled, true, "kinetic_apply");
  require_same_grid(scaled.grid(), field.grid(), "kinetic_apply");
  ComplexVector out = laplacian(scaled.grid(), scaled.amplitudes(), scheme);
  const double c = params.kinetic_prefactor();
  for (Complex& z : out) z *= c;
  return result_like(scaled, std::move(out));
}

WavePacket covariant_kinetic_apply(const WavePacket& unscaled, const ScalingField& field,
                                   const PhysicalParams& params, DerivativeScheme scheme,
                                   KineticForm form) {
  require_scaled(unscaled, false, "covariant_kinetic_apply");
  require_same_grid(unscaled.grid(), field.grid(), "covariant_kinetic_apply");
  const Grid& grid = unscaled.grid();
  ComplexVector out(grid.size(), Complex{0.0, 0.0});
  for (int axis = 0; axis < grid.dims(); ++axis) {
    const ComplexVector term =
        kernels::covariant_second_derivative(field, unscaled.amplitudes(), axis, scheme, 1.0, form);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
  }
  const double c = params.kinetic_prefactor();
  for (Complex& z : out) z *= c;
  return result_like(unscaled, std::move(out));
}

ComplexVector momentum_representation(const WavePacket& scaled, const ScalingField& field) {
  require_scaled(scaled, true, "momentum_representation");
  require_same_grid(scaled.grid(), field.grid(), "momentum_representation");
  return FourierTransform(scaled.grid()).forward(scaled.amplitudes());
}

ComplexVector convolved_momentum_representation(const WavePacket& unscaled,
                                                const ScalingField& field) {
  require_scaled(unscaled, false, "convolved_momentum_representation");
  require_same_grid(unscaled.grid(), field.grid(), "convolved_momentum_representation");
  const Grid& grid = unscaled.grid();
  const FourierTransform dft(grid);
  const ComplexVector g_hat = dft.forward(field.g());
  const ComplexVector psi_hat = dft.forward(unscaled.amplitudes());
  ComplexVector out = circular_convolution(grid, g_hat, psi_hat);
  const Complex prefactor =
      std::exp(-field.gamma_at(unscaled.ref_point())) / static_cast<double>(grid.size());
  for (Complex& z : out) z *= prefactor;
  return out;
}

Complex momentum_kernel(const ScalingField& field, std::size_t p, std::size_t q) {
  const Grid& grid = field.grid();
  if (p >= grid.size() || q >= grid.size()) throw ShapeError("momentum bin outside the grid");
  const auto pi = grid.coords(p);
  const auto qi = grid.coords(q);
  const auto n = static_cast<long>(grid.points_per_dim());
  Complex acc{0.0, 0.0};
  for (std::size_t z = 0; z < grid.size(); ++z) {
    const auto zi = grid.coords(z);
    long phase_index = 0;
    for (int a = 0; a < grid.dims(); ++a) {
      const auto ax = static_cast<std::size_t>(a);
      const long dk = static_cast<long>(pi[ax]) - static_cast<long>(qi[ax]);
      phase_index += dk * static_cast<long>(zi[ax]);
    }
    phase_index = ((phase_index % n) + n) % n;
    const double phase = -2.0 * kPi * static_cast<double>(phase_index) / static_cast<double>(n);
    acc += std::polar(1.0, phase) * field.g_at(z);
  }
  return acc / static_cast<double>(grid.size());
}

}  // namespace scaleqm
