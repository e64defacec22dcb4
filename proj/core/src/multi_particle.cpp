#include "scaleqm/multi_particle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scaleqm/error.hpp"

namespace scaleqm {
namespace {

void require_scaled(const EntangledState& s, bool expected, const char* op) {
  if (s.scaled() != expected) {
    throw ContractError(std::string(op) + (expected ? " needs a scaled state"
                                                    : " needs an unscaled state"));
  }
}

void require_axis(const Grid& grid, int axis) {
  if (axis < 0 || axis >= grid.dims()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range");
  }
}

void require_masses(const EntangledState& s, const ParticleMasses& masses) {
  if (masses.size() != s.particles()) {
    throw ShapeError("expected " + std::to_string(s.particles()) + " masses, got " +
                     std::to_string(masses.size()));
  }
}

EntangledState result_like(const EntangledState& s, ComplexVector amplitudes) {
  return EntangledState(s.grid(), s.particles(), std::move(amplitudes),
                        std::vector<std::size_t>(s.ref_points().begin(), s.ref_points().end()),
                        s.scaled());
}

void accumulate(ComplexVector& out, const ComplexVector& term, bool first) {
  if (first) {
    out = term;
    return;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
}

double minimum_image(double d, double length) {
  return d - length * std::round(d / length);
}

}  // namespace

std::size_t tensor_entries(const Grid& grid, std::size_t n) {
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (total > kMaxTensorEntries / grid.size()) {
      throw ResourceError("tensor of " + std::to_string(grid.size()) + "^" + std::to_string(n) +
                          " entries exceeds the limit of " + std::to_string(kMaxTensorEntries));
    }
    total *= grid.size();
  }
  return total;
}

EntangledState::EntangledState(const Grid& grid, std::size_t n, ComplexVector amplitudes,
                               std::vector<std::size_t> ref_points, bool scaled)
    : grid_(grid),
      n_(n),
      amplitudes_(std::move(amplitudes)),
      ref_points_(std::move(ref_points)),
      scaled_(scaled) {
  if (n_ == 0) throw ArityError("an entangled state needs at least one particle");
  const std::size_t entries = tensor_entries(grid_, n_);
  if (amplitudes_.size() != entries) {
    throw ShapeError("state has " + std::to_string(amplitudes_.size()) + " amplitudes, expected " +
                     std::to_string(entries));
  }
  if (ref_points_.size() != n_) {
    throw ShapeError("expected " + std::to_string(n_) + " reference points, got " +
                     std::to_string(ref_points_.size()));
  }
  for (std::size_t r : ref_points_) {
    if (r >= grid_.size()) throw ShapeError("reference point outside the grid");
  }
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidValueError("state amplitudes must be finite");
    }
  }
}

std::size_t EntangledState::particle_stride(std::size_t j) const {
  if (j >= n_) throw ShapeError("particle index out of range");
  std::size_t stride = 1;
  for (std::size_t k = j + 1; k < n_; ++k) stride *= grid_.size();
  return stride;
}

std::vector<std::size_t> EntangledState::points(std::size_t flat) const {
  std::vector<std::size_t> out(n_);
  const std::size_t m = grid_.size();
  for (std::size_t k = n_; k-- > 0;) {
    out[k] = flat % m;
    flat /= m;
  }
  return out;
}

std::size_t EntangledState::flat(std::span<const std::size_t> pts) const {
  if (pts.size() != n_) throw ShapeError("point tuple has the wrong length");
  std::size_t out = 0;
  for (std::size_t p : pts) {
    if (p >= grid_.size()) throw ShapeError("point outside the grid");
    out = out * grid_.size() + p;
  }
  return out;
}

EntangledState EntangledState::exchanged(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw ShapeError("particle index out of range");
  ComplexVector out(amplitudes_.size());
  for (std::size_t f = 0; f < amplitudes_.size(); ++f) {
    auto pts = points(f);
    std::swap(pts[i], pts[j]);
    out[flat(pts)] = amplitudes_[f];
  }
  return EntangledState(grid_, n_, std::move(out), ref_points_, scaled_);
}

double EntangledState::norm() const {
  double acc = 0.0;
  for (const Complex& z : amplitudes_) acc += std::norm(z);
  return std::sqrt(acc * std::pow(grid_.cell_volume(), static_cast<double>(n_)));
}

EntangledState EntangledState::with_ref_points(std::vector<std::size_t> ref_points) const {
  return EntangledState(grid_, n_, amplitudes_, std::move(ref_points), scaled_);
}

ParticleMasses::ParticleMasses(std::vector<double> masses) : masses_(std::move(masses)) {
  for (double m : masses_) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("particle masses must be positive and finite");
    }
  }
}

ParticleMasses ParticleMasses::uniform(std::size_t n, double mass) {
  return ParticleMasses(std::vector<double>(n, mass));
}

EntangledState product_state(std::span<const WavePacket> packets) {
  if (packets.empty()) throw ArityError("product_state needs at least one packet");
  const Grid& grid = packets.front().grid();
  for (const WavePacket& p : packets) {
    require_same_grid(grid, p.grid(), "product_state");
    if (p.scaled()) throw ContractError("product_state needs unscaled packets");
  }
  const std::size_t n = packets.size();
  const std::size_t entries = tensor_entries(grid, n);
  const std::size_t m = grid.size();
  ComplexVector amp(entries);
  for (std::size_t f = 0; f < entries; ++f) {
    std::size_t rest = f;
    Complex value{1.0, 0.0};
    for (std::size_t k = n; k-- > 0;) {
      value = packets[k].amplitudes()[rest % m] * value;
      rest /= m;
    }
    amp[f] = value;
  }
  // n = 1 must reproduce the packet itself.
  if (n == 1) {
    amp.assign(packets.front().amplitudes().begin(), packets.front().amplitudes().end());
  }
  return EntangledState(grid, n, std::move(amp),
                        std::vector<std::size_t>(n, packets.front().ref_point()));
}

EntangledState slater_state(const WavePacket& psi1, const WavePacket& psi2) {
  require_same_grid(psi1.grid(), psi2.grid(), "slater_state");
  if (psi1.scaled() || psi2.scaled()) throw ContractError("slater_state needs unscaled packets");
  const Grid& grid = psi1.grid();
  const std::size_t m = grid.size();
  const std::size_t entries = tensor_entries(grid, 2);
  const auto a = psi1.amplitudes();
  const auto b = psi2.amplitudes();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexVector amp(entries);
  for (std::size_t w = 0; w < m; ++w) {
    for (std::size_t z = 0; z < m; ++z) {
      amp[w * m + z] = (a[w] * b[z] - a[z] * b[w]) * inv_sqrt2;
    }
  }
  return EntangledState(grid, 2, std::move(amp),
                        std::vector<std::size_t>(2, psi1.ref_point()));
}

EntangledState scale_entangled(const EntangledState& state, const ScalingField& field) {
  require_scaled(state, false, "scale_entangled");
  require_same_grid(state.grid(), field.grid(), "scale_entangled");
  const Complex rho_ref = multi_rho(field, state.ref_points());
  const auto amp = state.amplitudes();
  ComplexVector out(amp.size());
  for (std::size_t f = 0; f < amp.size(); ++f) {
    const auto pts = state.points(f);
    out[f] = std::exp(multi_rho(field, pts) - rho_ref) * amp[f];
  }
  return EntangledState(state.grid(), state.particles(), std::move(out),
                        std::vector<std::size_t>(state.ref_points().begin(),
                                                 state.ref_points().end()),
                        true);
}

ComplexVector apply_along_particle(
    const EntangledState& state, std::size_t j,
    const std::function<ComplexVector(std::span<const Complex>)>& op) {
  const std::size_t stride = state.particle_stride(j);
  const std::size_t m = state.grid().size();
  const auto amp = state.amplitudes();
  ComplexVector out(amp.size());
  ComplexVector slice(m);
  // Every base index has digit 0 for particle j.
  for (std::size_t base = 0; base < amp.size(); ++base) {
    if ((base / stride) % m != 0) continue;
    for (std::size_t w = 0; w < m; ++w) slice[w] = amp[base + w * stride];
    const ComplexVector res = op(slice);
    if (res.size() != m) throw ShapeError("slice operator changed the slice length");
    for (std::size_t w = 0; w < m; ++w) out[base + w * stride] = res[w];
  }
  return out;
}

EntangledState total_momentum_apply(const EntangledState& scaled, const ScalingField& field,
                                    const PhysicalParams& params, DerivativeScheme scheme,
                                    int axis) {
  params.validate();
  require_scaled(scaled, true, "total_momentum_apply");
  require_same_grid(scaled.grid(), field.grid(), "total_momentum_apply");
  require_axis(scaled.grid(), axis);
  const Grid& grid = scaled.grid();
  ComplexVector out;
  for (std::size_t j = 0; j < scaled.particles(); ++j) {
    accumulate(out, apply_along_particle(scaled, j, [&](std::span<const Complex> s) {
                 return derivative(grid, s, axis, scheme);
               }),
               j == 0);
  }
  const Complex factor(0.0, params.momentum_sign * params.hbar);
  for (Complex& z : out) z *= factor;
  return result_like(scaled, std::move(out));
}

EntangledState covariant_total_momentum_apply(const EntangledState& unscaled,
                                              const ScalingField& field,
                                              const PhysicalParams& params,
                                              DerivativeScheme scheme, int axis) {
  params.validate();
  require_scaled(unscaled, false, "covariant_total_momentum_apply");
  require_same_grid(unscaled.grid(), field.grid(), "covariant_total_momentum_apply");
  require_axis(unscaled.grid(), axis);
  const double fraction = 1.0 / static_cast<double>(unscaled.particles());
  ComplexVector out;
  for (std::size_t j = 0; j < unscaled.particles(); ++j) {
    accumulate(out, apply_along_particle(unscaled, j, [&](std::span<const Complex> s) {
                 return kernels::covariant_derivative(field, s, axis, scheme, fraction);
               }),
               j == 0);
  }
  const Complex factor(0.0, params.momentum_sign * params.hbar);
  for (Complex& z : out) z *= factor;
  return result_like(unscaled, std::move(out));
}

ComplexVector particle_kinetic_term(const EntangledState& state, const ScalingField& field,
                                    std::size_t j, const ParticleMasses& masses,
                                    const PhysicalParams& params, DerivativeScheme scheme,
                                    KineticForm form) {
  params.validate();
  require_masses(state, masses);
  require_same_grid(state.grid(), field.grid(), "particle_kinetic_term");
  const Grid& grid = state.grid();
  const double fraction = 1.0 / static_cast<double>(state.particles());
  const bool plain = state.scaled();
  ComplexVector out = apply_along_particle(state, j, [&](std::span<const Complex> s) {
    ComplexVector acc;
    for (int axis = 0; axis < grid.dims(); ++axis) {
      accumulate(acc,
                 plain ? second_derivative(grid, s, axis, scheme)
                       : kernels::covariant_second_derivative(field, s, axis, scheme, fraction,
                                                              form),
                 axis == 0);
    }
    return acc;
  });
  PhysicalParams particle = params;
  particle.mass = masses[j];
  const double c = particle.kinetic_prefactor();
  for (Complex& z : out) z *= c;
  return out;
}

EntangledState kinetic_apply_n(const EntangledState& scaled, const ScalingField& field,
                               const ParticleMasses& masses, const PhysicalParams& params,
                               DerivativeScheme scheme) {
  require_scaled(scaled, true, "kinetic_apply_n");
  ComplexVector out;
  for (std::size_t j = 0; j < scaled.particles(); ++j) {
    accumulate(out, particle_kinetic_term(scaled, field, j, masses, params, scheme), j == 0);
  }
  return result_like(scaled, std::move(out));
}

EntangledState covariant_kinetic_apply_n(const EntangledState& unscaled,
                                         const ScalingField& field, const ParticleMasses& masses,
                                         const PhysicalParams& params, DerivativeScheme scheme,
                                         KineticForm form) {
  require_scaled(unscaled, false, "covariant_kinetic_apply_n");
  ComplexVector out;
  for (std::size_t j = 0; j < unscaled.particles(); ++j) {
    accumulate(out, particle_kinetic_term(unscaled, field, j, masses, params, scheme, form),
               j == 0);
  }
  return result_like(unscaled, std::move(out));
}

ComplexVector pair_interaction_values(const Grid& grid, std::size_t n, const PairPotential& pair) {
  const std::size_t entries = tensor_entries(grid, n);
  const std::size_t m = grid.size();
  const double length = grid.length();
  const auto dims = static_cast<std::size_t>(grid.dims());
  ComplexVector out(entries, Complex{0.0, 0.0});
  std::vector<std::size_t> pts(n);
  std::array<double, 3> sep{};
  for (std::size_t f = 0; f < entries; ++f) {
    std::size_t rest = f;
    for (std::size_t k = n; k-- > 0;) {
      pts[k] = rest % m;
      rest /= m;
    }
    for (std::size_t a = 0; a < n; ++a) {
      const auto za = grid.position(pts[a]);
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto zb = grid.position(pts[b]);
        for (std::size_t ax = 0; ax < dims; ++ax) sep[ax] = minimum_image(za[ax] - zb[ax], length);
        out[f] += pair(std::span<const double>(sep.data(), dims));
      }
    }
  }
  return out;
}

EntangledState hamiltonian_apply_n(const EntangledState& state, const ScalingField& field,
                                   const ParticleMasses& masses, const PotentialField& potential,
                                   const PhysicalParams& params, DerivativeScheme scheme,
                                   const std::optional<PairPotential>& pair) {
  require_same_grid(state.grid(), potential.grid(), "hamiltonian_apply_n");
  const EntangledState kinetic = state.scaled()
                                     ? kinetic_apply_n(state, field, masses, params, scheme)
                                     : covariant_kinetic_apply_n(state, field, masses, params,
                                                                 scheme);
  ComplexVector out(kinetic.amplitudes().begin(), kinetic.amplitudes().end());
  const auto amp = state.amplitudes();
  const auto v = potential.values();
  ComplexVector u;
  if (pair) u = pair_interaction_values(state.grid(), state.particles(), *pair);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto pts = state.points(f);
    Complex total{0.0, 0.0};
    for (std::size_t p : pts) total += v[p];
    if (!u.empty()) total += u[f];
    out[f] += total * amp[f];
  }
  return result_like(state, std::move(out));
}

CoalesceReport coalesce_check(const EntangledState& state, const ScalingField& field,
                              std::span<const std::size_t> refs_a,
                              std::span<const std::size_t> refs_b) {
  if (refs_a.size() != state.particles() || refs_b.size() != state.particles()) {
    throw ArityError("reference tuples must have one point per particle");
  }
  const EntangledState a = scale_entangled(
      state.with_ref_points(std::vector<std::size_t>(refs_a.begin(), refs_a.end())), field);
  const EntangledState b = scale_entangled(
      state.with_ref_points(std::vector<std::size_t>(refs_b.begin(), refs_b.end())), field);

  CoalesceReport report;
  report.global_factor = std::exp(multi_rho(field, refs_b) - multi_rho(field, refs_a));
  const auto av = a.amplitudes();
  const auto bv = b.amplitudes();
  double max_a = 0.0;
  double max_dev = 0.0;
  for (std::size_t f = 0; f < av.size(); ++f) {
    max_a = std::max(max_a, std::abs(av[f]));
    max_dev = std::max(max_dev, std::abs(av[f] - report.global_factor * bv[f]));
  }
  report.max_relative_deviation = max_a > 0.0 ? max_dev / max_a : max_dev;

  // Unit-norm comparison with the relative phase <b, a> / |<b, a>| removed.
  double na = 0.0;
  double nb = 0.0;
  Complex overlap{0.0, 0.0};
  for (std::size_t f = 0; f < av.size(); ++f) {
    na += std::norm(av[f]);
    nb += std::norm(bv[f]);
    overlap += std::conj(bv[f]) * av[f];
  }
  if (na > 0.0 && nb > 0.0) {
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    const double sa = 1.0 / std::sqrt(na);
    const double sb = 1.0 / std::sqrt(nb);
    double dev = 0.0;
    for (std::size_t f = 0; f < av.size(); ++f) {
      dev = std::max(dev, std::abs(av[f] * sa - phase * bv[f] * sb));
    }
    report.normalized_phase_deviation = dev;
  }
  return report;
}

}  // namespace scaleqm
