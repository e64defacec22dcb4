#include "scaleqm_runner/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <random>

#include <fmt/format.h>

#include "scaleqm/scaleqm.hpp"

namespace scaleqm::runner {
namespace {

// Tolerance for checks whose error is exactly zero by construction.
constexpr double kExact = 1e-300;

std::size_t default_n(const std::string& suite, int dims) {
  static const std::map<std::string, std::array<std::size_t, 3>> table{
      {"single", {kDefaultSingleN, 64, 32}},
      {"spectrum", {kDefaultSpectrumN, 16, 8}},
      {"momentum", {kDefaultMomentumN, 32, 12}},
      {"entangled", {kDefaultEntangledN, 24, 8}},
  };
  return table.at(suite)[static_cast<std::size_t>(dims - 1)];
}

std::size_t grid_n(const RunConfig& cfg, const std::string& suite) {
  return cfg.grid.n != 0 ? cfg.grid.n : default_n(suite, cfg.grid.dims);
}

Grid make_grid(const RunConfig& cfg, std::size_t n) {
  return Grid::with_length(cfg.grid.dims, n, cfg.grid.length);
}

AnalyticGamma make_gamma(const RunConfig& cfg) {
  std::map<std::string, double> params{{"alpha", cfg.field.alpha},
                                       {"alpha_imag", cfg.field.alpha_imag}};
  if (cfg.field.width) params["width"] = *cfg.field.width;
  return gamma_presets::by_name(cfg.field.preset, params, cfg.grid.length);
}

ScalingField make_field(const RunConfig& cfg, const Grid& grid, DerivativeScheme scheme) {
  if (cfg.field.csv) {
    std::ifstream in(*cfg.field.csv);
    if (!in) throw ConfigError("field.csv", 0, "cannot open '" + *cfg.field.csv + "'");
    try {
      return read_field_csv(grid, in, scheme);
    } catch (const Error& e) {
      throw ConfigError("field.csv", 0, e.what());
    }
  }
  return build_field(grid, make_gamma(cfg), scheme);
}

ScalingField trivial_field(const Grid& grid, DerivativeScheme scheme) {
  return build_field(grid, gamma_presets::constant(Complex(0.0, 0.0)), scheme);
}

PhysicalParams make_params(const RunConfig& cfg, double mass) {
  PhysicalParams p;
  p.hbar = cfg.physics.hbar;
  p.mass = mass;
  if (cfg.physics.paper_signs) p = PhysicalParams::paper_signs(cfg.physics.hbar, mass);
  return p;
}

PhysicalParams make_params(const RunConfig& cfg) { return make_params(cfg, cfg.physics.masses.front()); }

ParticleMasses make_masses(const RunConfig& cfg, std::size_t n) {
  const auto& m = cfg.physics.masses;
  if (m.size() == 1) return ParticleMasses::uniform(n, m.front());
  if (m.size() != n) {
    throw ConfigError("physics.masses", 0,
                      fmt::format("expected 1 or {} entries, got {}", n, m.size()));
  }
  return ParticleMasses(m);
}

std::size_t checked_ref(const RunConfig& cfg, const Grid& grid) {
  if (cfg.state.ref_point >= grid.size()) {
    throw ConfigError("state.ref_point", 0,
                      fmt::format("{} is outside a grid of {} points", cfg.state.ref_point,
                                  grid.size()));
  }
  return cfg.state.ref_point;
}

void check_max_mode(const RunConfig& cfg, const Grid& grid) {
  if (cfg.state.max_mode < 0 ||
      2 * static_cast<std::size_t>(cfg.state.max_mode) >= grid.points_per_dim()) {
    throw ConfigError("state.max_mode", 0,
                      fmt::format("must satisfy 0 <= 2 * max_mode < N (N = {})",
                                  grid.points_per_dim()));
  }
}

WavePacket make_packet(const RunConfig& cfg, const Grid& grid, std::size_t ref) {
  const auto& s = cfg.state;
  const double length = grid.length();
  if (s.packet == "gaussian") {
    const double c = s.center * length;
    return packets::gaussian(grid, {c, c, c}, s.width * length, {s.wavevector, 0.0, 0.0}, ref);
  }
  if (s.packet == "plane-wave") return packets::plane_wave(grid, {s.mode, 0, 0}, ref);
  if (s.packet == "delta") {
    if (s.point >= grid.size()) {
      throw ConfigError("state.point", 0, fmt::format("{} is outside the grid", s.point));
    }
    return packets::delta(grid, s.point, ref);
  }
  check_max_mode(cfg, grid);
  return packets::random_smooth(grid, cfg.seed, s.max_mode, ref);
}

double max_abs(std::span<const Complex> a) {
  double m = 0.0;
  for (const Complex& z : a) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_diff(std::span<const Complex> got, std::span<const Complex> want) {
  return max_abs_diff(got, want) / std::max(max_abs(want), 1e-300);
}

// Worst |order - 2| over consecutive refinements. Residuals at rounding level
// mean the identity holds exactly and carry no order information.
double order_deviation(const std::vector<double>& residuals) {
  constexpr double kRoundoff = 1e-12;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
    if (std::isnan(residuals[i]) || std::isnan(residuals[i + 1])) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    if (residuals[i + 1] <= kRoundoff) continue;
    const double order = std::log2(residuals[i] / residuals[i + 1]);
    worst = std::max(worst, std::abs(order - 2.0));
  }
  return worst;
}

class Checks {
 public:
  Checks(const RunConfig& cfg, std::string suite) : cfg_(cfg) {
    result_.suite = std::move(suite);
    result_.config = cfg.to_json();
  }

  void add(const std::string& name, double error, double fallback_tol, std::size_t grid_n,
           std::size_t particles = 0, std::size_t samples = 0) {
    result_.checks.push_back(make_check(name, error, cfg_.tolerance_for(name, fallback_tol),
                                        grid_n, particles, samples));
  }

  void table(Table t) { result_.tables.push_back(std::move(t)); }

  SuiteResult take() { return std::move(result_); }

 private:
  const RunConfig& cfg_;
  SuiteResult result_;
};

// ---------------------------------------------------------------- axioms

class Annulus {
 public:
  explicit Annulus(std::uint64_t seed)
      : rng_(seed), log_r_(std::log(0.1), std::log(10.0)), angle_(-kPi, kPi) {}

  Complex operator()() { return std::polar(std::exp(log_r_(rng_)), angle_(rng_)); }

  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> log_r_;
  std::uniform_real_distribution<double> angle_;
};

// Running maxima, reported in first-seen order.
class MaxTable {
 public:
  void put(const std::string& name, double err) {
    auto [it, inserted] = index_.try_emplace(name, entries_.size());
    if (inserted) entries_.push_back({name, 0.0, 0});
    auto& e = entries_[it->second];
    if (std::isnan(err) || std::isnan(e.err)) {
      e.err = std::numeric_limits<double>::quiet_NaN();
    } else {
      e.err = std::max(e.err, err);
    }
    ++e.samples;
  }

  struct Entry {
    std::string name;
    double err;
    std::size_t samples;
  };
  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<Entry> entries_;
};

double rel(Complex got, Complex want, double scale) {
  return std::abs(got - want) / std::max(scale, 1e-300);
}

double rel(Complex got, Complex want) { return rel(got, want, std::abs(want)); }

double rel_vec(const ComplexVector& got, const ComplexVector& want) { return rel_diff(got, want); }

ComplexVector add(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

struct Operands {
  Complex s, t, u;
  ComplexVector phi, rho;
};

void field_axioms(MaxTable& m, StructureScale d, StructureScale e, StructureScale c,
                  const Operands& o) {
  const Complex s = o.s, t = o.t, u = o.u;
  auto mul = [&](Complex a, Complex b) { return project_mul(a, b, d, c); };
  auto div = [&](Complex a, Complex b) { return project_div(a, b, d, c); };
  auto cj = [&](Complex a) { return transported_conj(a, d, c); };
  const Complex one = projected_one(d, c);

  m.put("add_commutativity", rel(s + t, t + s));
  m.put("add_associativity",
        rel((s + t) + u, s + (t + u), std::abs(s) + std::abs(t) + std::abs(u)));
  m.put("add_identity", rel(s + Complex(0.0, 0.0), s));
  m.put("add_inverse", rel(s + (-s), Complex(0.0, 0.0), std::abs(s)));
  m.put("mul_commutativity", rel(mul(s, t), mul(t, s)));
  m.put("mul_associativity", rel(mul(mul(s, t), u), mul(s, mul(t, u))));
  m.put("distributivity", rel(mul(s, t + u), mul(s, t) + mul(s, u),
                              std::abs(mul(s, t)) + std::abs(mul(s, u))));
  m.put("mul_identity", rel(mul(one, s), s));
  m.put("mul_inverse", rel(mul(s, div(one, s)), one));
  m.put("division_inverse", rel(mul(div(s, t), t), s));
  m.put("conj_involution", rel(cj(cj(s)), s));
  m.put("conj_additive", rel(cj(s + t), cj(s) + cj(t), std::abs(s) + std::abs(t)));
  m.put("conj_multiplicative", rel(cj(mul(s, t)), mul(cj(s), cj(t))));
  m.put("conj_literal_ratio", rel(project_conj(s, d, c), std::conj(d.value() / c.value()) * cj(s)));

  const ScaledNumber bs = ScaledNumber::from_value(s, c).read_in(d);
  const ScaledNumber bt = ScaledNumber::from_value(t, c).read_in(d);
  m.put("internal_route_add", rel((bs + bt).read_in(c).value(), s + t, std::abs(s) + std::abs(t)));
  m.put("internal_route_mul", rel((bs * bt).read_in(c).value(), mul(s, t)));
  m.put("internal_route_div", rel((bs / bt).read_in(c).value(), div(s, t)));
  m.put("internal_route_conj", rel(conj(bs).read_in(c).value(), cj(s)));

  // The same projection routed through a third level e.
  const Complex se = rescale_value(s, c, e);
  const Complex te = rescale_value(t, c, e);
  m.put("composition_mul", rel(rescale_value(project_mul(se, te, d, e), e, c), mul(s, t)));
  m.put("composition_div", rel(rescale_value(project_div(se, te, d, e), e, c), div(s, t)));
  m.put("composition_conj", rel(rescale_value(transported_conj(se, d, e), e, c), cj(s)));
  m.put("composition_literal_conj",
        rel(rescale_value(project_conj(s, d, e), e, c), project_conj(s, d, c)));
}

void value_map_identities(MaxTable& m, StructureScale d, StructureScale c, const Operands& o) {
  const ScaledNumber b = ScaledNumber::from_value(o.s, c);
  m.put("value_map_scale_product", rel(d.value() * value_map(b, d), c.value() * value_map(b, c)));
  const ScaledNumber a = corresponding_number(o.s, d, c);
  m.put("corresponding_round_trip", rel(value_map(a, d), o.s));
  m.put("rescale_ratio", rel(a.value(), (d.value() / c.value()) * o.s));
  m.put("rescale_round_trip", rel(rescale_value(rescale_value(o.s, d, c), c, d), o.s));
  m.put("zero_fixed_point", std::abs(value_map(ScaledNumber(Complex(0.0, 0.0), d), c)));
}

void hilbert_axioms(MaxTable& m, StructureScale d, StructureScale c, const Operands& o) {
  const Complex a = o.s, b = o.t;
  auto psm = [&](Complex x, const ComplexVector& v) { return project_scalar_mul(x, v, d, c); };
  auto ip = [&](const ComplexVector& x, const ComplexVector& y) { return project_inner(x, y, d, c); };
  const ComplexVector& phi = o.phi;
  const ComplexVector& rho = o.rho;

  m.put("hilbert_scalar_distributes_vectors", rel_vec(psm(a, add(phi, rho)), add(psm(a, phi), psm(a, rho))));
  m.put("hilbert_scalar_distributes_scalars", rel_vec(psm(a + b, phi), add(psm(a, phi), psm(b, phi))));
  m.put("hilbert_scalar_compatibility", rel_vec(psm(a, psm(b, phi)), psm(project_mul(a, b, d, c), phi)));
  m.put("hilbert_scalar_identity", rel_vec(psm(projected_one(d, c), phi), phi));

  const ScaledNumber an = ScaledNumber::from_value(a, c).read_in(d);
  const ScaledVector v =
      ScaledVector(corresponding_vector(phi, c, StructureScale(1.0)), c).read_in(d);
  m.put("hilbert_internal_route_scalar_mul", rel_vec((an * v).read_in(c).values(), psm(a, phi)));

  const Complex base = ip(phi, rho);
  m.put("hilbert_inner_linear", rel(ip(phi, psm(a, rho)), project_mul(a, base, d, c)));
  m.put("hilbert_inner_conjugate_linear",
        rel(ip(psm(a, phi), rho), project_mul(transported_conj(a, d, c), base, d, c)));
  m.put("hilbert_inner_hermitian", rel(ip(rho, phi), transported_conj(base, d, c)));
  m.put("hilbert_inner_additive",
        rel(ip(phi, add(rho, phi)), base + ip(phi, phi), std::abs(base) + std::abs(ip(phi, phi))));
}

}  // namespace

SuiteResult run_axioms(const RunConfig& cfg) {
  Checks out(cfg, "axioms");
  Annulus sample(cfg.seed);
  std::vector<std::array<StructureScale, 2>> scales;
  for (std::size_t i = 0; i < cfg.axiom_scale_pairs; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    scales.push_back({d, c});
  }
  std::vector<Operands> operands;
  for (std::size_t i = 0; i < cfg.axiom_operand_triples; ++i) {
    Operands o{sample(), sample(), sample(), {}, {}};
    if (cfg.hilbert) {
      for (int k = 0; k < 4; ++k) o.phi.push_back(sample());
      for (int k = 0; k < 4; ++k) o.rho.push_back(sample());
    }
    operands.push_back(std::move(o));
  }

  MaxTable m;
  for (std::size_t p = 0; p < scales.size(); ++p) {
    const auto [d, c] = scales[p];
    const StructureScale e = scales[(p + 1) % scales.size()][0];
    for (const auto& o : operands) {
      field_axioms(m, d, e, c, o);
      value_map_identities(m, d, c, o);
      if (cfg.hilbert) hilbert_axioms(m, d, c, o);
    }
  }

  for (const auto& e : m.entries()) {
    const double tol = e.name == "zero_fixed_point" ? kExact : 1e-12;
    out.add(e.name, e.err, tol, 0, 0, e.samples);
  }

  // m * v_m(j) = n * v_n(j) in exact integer arithmetic.
  std::size_t mismatches = 0;
  const std::size_t trials = cfg.axiom_scale_pairs * cfg.axiom_operand_triples;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t b = sample.integer(1, 1000);
    const std::uint64_t a = b * sample.integer(1, 1000);
    const std::uint64_t j = a * sample.integer(0, 1000);
    const auto [va, vb] = natural_subset_value(j, a, b);
    if (a * va != j || b * vb != j) ++mismatches;
  }
  out.add("natural_subset_cross_scale", static_cast<double>(mismatches), kExact, 0, 0, trials);
  return out.take();
}

// ---------------------------------------------------------------- single

namespace {

double product_rule_residual(const WavePacket& psi, const ScalingField& field,
                             const PhysicalParams& params, DerivativeScheme scheme) {
  const WavePacket lhs = momentum_apply(scale_packet(psi, field), field, params, scheme);
  const WavePacket rhs = scale_packet(covariant_momentum_apply(psi, field, params, scheme), field);
  return max_abs_diff(lhs.amplitudes(), rhs.amplitudes());
}

double kinetic_residual(const WavePacket& psi, const ScalingField& field,
                        const PhysicalParams& params, DerivativeScheme scheme) {
  const WavePacket lhs = kinetic_apply(scale_packet(psi, field), field, params, scheme);
  const WavePacket rhs = scale_packet(covariant_kinetic_apply(psi, field, params, scheme), field);
  return max_abs_diff(lhs.amplitudes(), rhs.amplitudes());
}

}  // namespace

SuiteResult run_single(const RunConfig& cfg) {
  Checks out(cfg, "single");
  const std::size_t n0 = grid_n(cfg, "single");
  const Grid grid = make_grid(cfg, n0);
  const std::size_t ref = checked_ref(cfg, grid);
  const PhysicalParams params = make_params(cfg);
  const WavePacket psi = make_packet(cfg, grid, ref);
  const ScalingField field = make_field(cfg, grid, cfg.scheme);

  {
    const ScalingField flat = build_field(
        grid, gamma_presets::constant(Complex(cfg.field.alpha, cfg.field.alpha_imag)), cfg.scheme);
    const WavePacket scaled = scale_packet(psi, flat);
    out.add("scale_packet_constant_identity", max_abs_diff(scaled.amplitudes(), psi.amplitudes()),
            kExact, n0);
  }
  {
    // Oracle: gamma evaluated afresh at every position.
    ComplexVector want(grid.size());
    const auto gamma = field.gamma();
    std::vector<Complex> direct(grid.size());
    if (cfg.field.csv) {
      direct.assign(gamma.begin(), gamma.end());
    } else {
      const auto g = make_gamma(cfg);
      for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto z = grid.position(p);
        direct[p] = g(std::span<const double>(z.data(), static_cast<std::size_t>(grid.dims())));
      }
    }
    for (std::size_t p = 0; p < grid.size(); ++p) {
      want[p] = std::exp(direct[p] - direct[ref]) * psi.amplitudes()[p];
    }
    out.add("scale_packet_pointwise", rel_diff(scale_packet(psi, field).amplitudes(), want), 1e-13,
            n0);
  }
  {
    const std::size_t other = (ref + grid.size() / 3) % grid.size();
    const WavePacket a = scale_packet(psi, field);
    const WavePacket b = scale_packet(psi.with_ref_point(other), field);
    const Complex f = std::exp(field.gamma_at(other) - field.gamma_at(ref));
    ComplexVector fb(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) fb[p] = f * b.amplitudes()[p];
    out.add("reference_point_global_factor", rel_diff(fb, a.amplitudes()), 1e-13, n0);
  }

  // Convergence of the central-difference identities over N, 2N, 4N.
  std::vector<double> momentum_res, kinetic_res;
  Table conv{"single_convergence.csv", {"check_name", "grid_N", "residual"}, {}};
  for (std::size_t n : {n0, 2 * n0, 4 * n0}) {
    const Grid g = make_grid(cfg, n);
    const ScalingField f = make_field(cfg, g, DerivativeScheme::Central2);
    const WavePacket p = make_packet(cfg, g, 0);
    momentum_res.push_back(product_rule_residual(p, f, params, DerivativeScheme::Central2));
    kinetic_res.push_back(kinetic_residual(p, f, params, DerivativeScheme::Central2));
    conv.rows.push_back({"momentum_product_rule_central2", std::to_string(n),
                         format_number(momentum_res.back())});
    conv.rows.push_back({"kinetic_identity_central2", std::to_string(n),
                         format_number(kinetic_res.back())});
  }
  out.add("momentum_product_rule_central2_order", order_deviation(momentum_res), 0.2, n0);
  out.add("kinetic_identity_central2_order", order_deviation(kinetic_res), 0.2, n0);
  out.table(std::move(conv));

  {
    check_max_mode(cfg, grid);
    const ScalingField spectral = make_field(cfg, grid, DerivativeScheme::Spectral);
    const WavePacket smooth = packets::random_smooth(grid, cfg.seed, cfg.state.max_mode, ref);
    out.add("momentum_product_rule_spectral",
            product_rule_residual(smooth, spectral, params, DerivativeScheme::Spectral), 1e-10, n0);
    out.add("kinetic_identity_spectral",
            kinetic_residual(smooth, spectral, params, DerivativeScheme::Spectral), 1e-10, n0);
    const WavePacket composed = covariant_kinetic_apply(smooth, spectral, params,
                                                        DerivativeScheme::Spectral,
                                                        KineticForm::Composed);
    const WavePacket expanded = covariant_kinetic_apply(smooth, spectral, params,
                                                        DerivativeScheme::Spectral,
                                                        KineticForm::Expanded);
    out.add("kinetic_expanded_vs_composed_spectral",
            max_abs_diff(composed.amplitudes(), expanded.amplitudes()), 1e-10, n0);
  }
  {
    const ScalingField zero = trivial_field(grid, DerivativeScheme::Spectral);
    const WavePacket wave = packets::plane_wave(grid, {cfg.state.mode, 0, 0}, ref);
    const WavePacket p =
        momentum_apply(scale_packet(wave, zero), zero, params, DerivativeScheme::Spectral);
    const double k = 2.0 * kPi * static_cast<double>(cfg.state.mode) / grid.length();
    const double eigenvalue = -params.momentum_sign * params.hbar * k;
    ComplexVector want(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) want[i] = eigenvalue * wave.amplitudes()[i];
    out.add("plane_wave_momentum_eigenvalue", max_abs_diff(p.amplitudes(), want), 1e-10, n0);
  }
  return out.take();
}

// ---------------------------------------------------------------- spectrum

namespace {

bool bit_identical(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

SuiteResult run_spectrum(const RunConfig& cfg) {
  Checks out(cfg, "spectrum");
  const std::size_t n = grid_n(cfg, "spectrum");
  const Grid grid = make_grid(cfg, n);
  const PhysicalParams params = make_params(cfg);
  const ScalingField field = make_field(cfg, grid, cfg.scheme);
  const PotentialField well = PotentialField::periodic_well(grid, cfg.well_depth);

  const Eigen::MatrixXcd h0 = build_hamiltonian(field, well, params, Gauge::Standard, cfg.scheme);
  const Eigen::MatrixXcd hg =
      build_hamiltonian(field, well, params, Gauge::GammaModified, cfg.scheme);
  const auto e0 = eigen_spectrum(h0);
  const auto eg = eigen_spectrum(hg);
  const SpectrumMatch match = match_spectra(e0, eg);
  out.add("spectrum_max_abs_diff", match.max_abs_diff, 1e-8, n);

  const auto gamma = field.gamma();
  const auto dim = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXcd g(dim);
  for (Eigen::Index i = 0; i < dim; ++i) g(i) = std::exp(gamma[static_cast<std::size_t>(i)]);
  {
    const Eigen::MatrixXcd similar = g.cwiseInverse().asDiagonal() * h0 * g.asDiagonal();
    out.add("gauge_similarity_matrix",
            (similar - hg).cwiseAbs().maxCoeff() / std::max(1.0, h0.cwiseAbs().maxCoeff()), 1e-10,
            n);
  }
  if (is_hermitian(h0)) {
    // Eigenvectors of the modified operator are e^{-gamma} times the standard ones.
    const Eigenpairs pairs = hermitian_eigenpairs(h0);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < pairs.vectors.cols(); ++j) {
      const Eigen::VectorXcd v = g.cwiseInverse().cwiseProduct(pairs.vectors.col(j));
      const double e = pairs.values(j);
      worst = std::max(worst, (hg * v - e * v).norm() / (std::max(std::abs(e), 1.0) * v.norm()));
    }
    out.add("eigenvector_residual", worst, 1e-6, n);
  }
  {
    const ScalingField flat = build_field(
        grid, gamma_presets::constant(Complex(cfg.field.alpha, cfg.field.alpha_imag)), cfg.scheme);
    double err = 0.0;
    for (auto form : {ConnectionForm::Commutator, ConnectionForm::Diagonal}) {
      const Eigen::MatrixXcd a = build_hamiltonian(flat, well, params, Gauge::Standard, cfg.scheme, form);
      const Eigen::MatrixXcd b =
          build_hamiltonian(flat, well, params, Gauge::GammaModified, cfg.scheme, form);
      if (!bit_identical(a, b)) {
        err = std::max({err, (a - b).cwiseAbs().maxCoeff(), std::numeric_limits<double>::min()});
      }
    }
    out.add("constant_field_bit_identity", err, kExact, n);
  }
  {
    // Closed form -kinetic_sign hbar^2 |k|^2 / (2 m) on a small grid with V = 0.
    const std::size_t small_n = 8;
    const Grid small = make_grid(cfg, small_n);
    const ScalingField f = make_field(cfg, small, DerivativeScheme::Spectral);
    const PotentialField zero = PotentialField::zero(small);
    std::vector<double> want;
    for (std::size_t p = 0; p < small.size(); ++p) {
      const auto idx = small.coords(p);
      double k2 = 0.0;
      for (int a = 0; a < small.dims(); ++a) {
        const double k = small.wavenumber(idx[static_cast<std::size_t>(a)]);
        k2 += k * k;
      }
      want.push_back(-params.kinetic_prefactor() * k2);
    }
    std::sort(want.begin(), want.end());
    double err = 0.0;
    for (Gauge gauge : {Gauge::Standard, Gauge::GammaModified}) {
      const auto spec =
          eigen_spectrum(build_hamiltonian(f, zero, params, gauge, DerivativeScheme::Spectral));
      for (std::size_t i = 0; i < spec.size(); ++i) {
        err = std::max(err, std::abs(spec[i] - Complex(want[i], 0.0)));
      }
    }
    out.add("free_particle_spectrum", err, 1e-9, small_n);
  }

  Table t{"spectrum_table.csv", {"index", "E_standard", "E_gamma", "abs_diff"}, {}};
  for (std::size_t i = 0; i < match.first.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_number(match.first[i].real()),
                      format_number(match.second[i].real()),
                      format_number(std::abs(match.first[i] - match.second[i]))});
  }
  out.table(std::move(t));
  return out.take();
}

// ---------------------------------------------------------------- momentum

SuiteResult run_momentum(const RunConfig& cfg) {
  Checks out(cfg, "momentum");
  const std::size_t n = grid_n(cfg, "momentum");
  const Grid grid = make_grid(cfg, n);
  constexpr std::size_t kMaxConvolution = 4096;
  if (grid.size() > kMaxConvolution) {
    throw ConfigError("grid.n", 0,
                      fmt::format("the momentum suite convolves directly and needs at most {} "
                                  "grid points (got {})",
                                  kMaxConvolution, grid.size()));
  }
  const std::size_t ref = checked_ref(cfg, grid);
  const WavePacket psi = make_packet(cfg, grid, ref);
  const ScalingField field = make_field(cfg, grid, cfg.scheme);

  const ComplexVector direct = momentum_representation(scale_packet(psi, field), field);
  const ComplexVector convolved = convolved_momentum_representation(psi, field);
  out.add("convolution_duality", max_abs_diff(direct, convolved), 1e-10, n);

  {
    const ScalingField zero = trivial_field(grid, cfg.scheme);
    out.add("convolution_trivial_field",
            max_abs_diff(momentum_representation(scale_packet(psi, zero), zero),
                         convolved_momentum_representation(psi, zero)),
            1e-13, n);

    const WavePacket wave = packets::plane_wave(grid, {cfg.state.mode, 0, 0}, ref);
    const ComplexVector spectrum = momentum_representation(scale_packet(wave, zero), zero);
    std::array<std::size_t, 3> bin{0, 0, 0};
    const auto nn = static_cast<long>(n);
    bin[0] = static_cast<std::size_t>(((cfg.state.mode % nn) + nn) % nn);
    const std::size_t target = grid.flat(bin);
    ComplexVector want(grid.size(), Complex(0.0, 0.0));
    want[target] = Complex(static_cast<double>(grid.size()), 0.0);
    out.add("plane_wave_single_bin", rel_diff(spectrum, want), 1e-12, n);
  }
  {
    // <p|e^gamma|q> depends on p - q only and equals DFT(g)[p - q] / size.
    FourierTransform fft(grid);
    const ComplexVector gk = fft.forward(field.g());
    const double inv = 1.0 / static_cast<double>(grid.size());
    const std::size_t q1 = grid.shifted(0, 0, 1);
    double err = 0.0;
    for (std::size_t q : {std::size_t{0}, q1}) {
      for (std::size_t p = 0; p < grid.size(); ++p) {
        const std::size_t diff = q == 0 ? p : grid.shifted(p, 0, -1);
        err = std::max(err, std::abs(momentum_kernel(field, p, q) - gk[diff] * inv));
      }
    }
    out.add("momentum_kernel_consistency", err / std::max(max_abs(gk) * inv, 1e-300), 1e-12, n);
  }

  Table t{"momentum_amplitudes.csv", {"index", "abs_direct", "abs_convolved", "abs_diff"}, {}};
  for (std::size_t i = 0; i < direct.size(); ++i) {
    t.rows.push_back({std::to_string(i), format_number(std::abs(direct[i])),
                      format_number(std::abs(convolved[i])),
                      format_number(std::abs(direct[i] - convolved[i]))});
  }
  out.table(std::move(t));
  return out.take();
}

// ---------------------------------------------------------------- entangled

namespace {

std::vector<std::size_t> ref_tuple(std::size_t x, std::size_t n, std::size_t size, bool equal) {
  std::vector<std::size_t> refs(n, x);
  if (!equal) {
    for (std::size_t j = 1; j < n; ++j) refs[j] = (x + j * size / (n + 1)) % size;
  }
  return refs;
}

EntangledState make_state(const std::vector<WavePacket>& packets, std::size_t n) {
  if (n == 2) return slater_state(packets[0], packets[1]);
  return product_state(std::span<const WavePacket>(packets.data(), n));
}

double route_residual(const EntangledState& psi, const ScalingField& field,
                      const ParticleMasses& masses, const PhysicalParams& params,
                      DerivativeScheme scheme, bool kinetic) {
  const EntangledState scaled = scale_entangled(psi, field);
  const EntangledState lhs = kinetic ? kinetic_apply_n(scaled, field, masses, params, scheme)
                                     : total_momentum_apply(scaled, field, params, scheme);
  const EntangledState cov =
      kinetic ? covariant_kinetic_apply_n(psi, field, masses, params, scheme)
              : covariant_total_momentum_apply(psi, field, params, scheme);
  const EntangledState rhs = scale_entangled(cov, field);
  return rel_diff(lhs.amplitudes(), rhs.amplitudes());
}

}  // namespace

SuiteResult run_entangled(const RunConfig& cfg) {
  Checks out(cfg, "entangled");
  const std::size_t n_grid = grid_n(cfg, "entangled");
  const std::size_t n = cfg.entangled.n;
  const Grid grid = make_grid(cfg, n_grid);
  const std::size_t x = checked_ref(cfg, grid);
  check_max_mode(cfg, grid);
  const PhysicalParams params = make_params(cfg);
  const ParticleMasses masses = make_masses(cfg, n);
  try {
    (void)tensor_entries(grid, std::max<std::size_t>(n, 2));
  } catch (const ResourceError& e) {
    throw ConfigError("grid.n", 0, e.what());
  }
  const ScalingField field = make_field(cfg, grid, DerivativeScheme::Spectral);
  const bool equal = cfg.entangled.refs == "equal";
  if (cfg.entangled.dump_tensor && (n > 2 || n_grid > 64)) {
    throw ConfigError("entangled.dump_tensor", 0, "tensor dumps need n <= 2 and N <= 64");
  }

  std::vector<WavePacket> packets;
  for (std::size_t j = 0; j < 3; ++j) {
    packets.push_back(packets::random_smooth(grid, cfg.seed + j, cfg.state.max_mode, x));
  }

  {
    const EntangledState slater = slater_state(packets[0], packets[1])
                                      .with_ref_points(ref_tuple(x, 2, grid.size(), equal));
    const EntangledState scaled = scale_entangled(slater, field);
    const EntangledState swapped = scaled.exchanged(0, 1);
    double err = 0.0;
    for (std::size_t i = 0; i < scaled.amplitudes().size(); ++i) {
      err = std::max(err, std::abs(scaled.amplitudes()[i] + swapped.amplitudes()[i]));
    }
    out.add("slater_antisymmetry_scaled", err, 1e-14, n_grid, 2);
  }
  {
    const EntangledState one = product_state(std::span<const WavePacket>(packets.data(), 1));
    out.add("scale_reduction_n1",
            max_abs_diff(scale_entangled(one, field).amplitudes(),
                         scale_packet(packets[0], field).amplitudes()),
            kExact, n_grid, 1);
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    double err = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const std::vector<std::size_t> pts(k, p);
      const Complex g = field.g_at(p);
      err = std::max(err, std::abs(geometric_mean_scale(field, pts) - g) / std::abs(g));
    }
    out.add("geometric_mean_coalesced", err, 1e-12, n_grid, k);
  }
  {
    // h(u, v) = sqrt(g(u) g(v)) wherever the principal root is the right branch.
    double err = 0.0;
    for (std::size_t u = 0; u < grid.size(); ++u) {
      for (std::size_t v = 0; v < grid.size(); ++v) {
        if (std::abs((field.gamma_at(u) + field.gamma_at(v)).imag()) >= kPi) continue;
        const std::array<std::size_t, 2> pts{u, v};
        const Complex want = std::sqrt(field.g_at(u) * field.g_at(v));
        err = std::max(err, std::abs(geometric_mean_scale(field, pts) - want) / std::abs(want));
      }
    }
    out.add("geometric_mean_pair", err, 1e-12, n_grid, 2);
  }

  const EntangledState state =
      make_state(packets, n).with_ref_points(ref_tuple(x, n, grid.size(), equal));
  {
    const auto refs = ref_tuple(x, n, grid.size(), equal);
    const auto alt = ref_tuple(x, n, grid.size(), !equal);
    const CoalesceReport rep = coalesce_check(state, field, refs, alt);
    out.add("coalescence_global_factor", rep.max_relative_deviation, 1e-12, n_grid, n);
    out.add("coalescence_normalized_phase", rep.normalized_phase_deviation, 1e-12, n_grid, n);
  }
  out.add("total_momentum_route_spectral",
          route_residual(state, field, masses, params, DerivativeScheme::Spectral, false), 1e-10,
          n_grid, n);
  out.add("kinetic_route_spectral",
          route_residual(state, field, masses, params, DerivativeScheme::Spectral, true), 1e-10,
          n_grid, n);
  {
    // Refine upwards unless the finer tensor gets large.
    const bool up = tensor_entries(make_grid(cfg, 2 * n_grid), n) <= (std::size_t{1} << 23);
    const std::size_t coarse = up ? n_grid : n_grid / 2;
    std::vector<double> res;
    for (std::size_t m : {coarse, 2 * coarse}) {
      const Grid g = make_grid(cfg, m);
      const ScalingField f = make_field(cfg, g, DerivativeScheme::Central2);
      std::vector<WavePacket> ps;
      for (std::size_t j = 0; j < 3; ++j) {
        const long modes = std::min(cfg.state.max_mode, static_cast<long>((coarse - 1) / 2));
        ps.push_back(packets::random_smooth(g, cfg.seed + j, modes, 0));
      }
      const EntangledState s = make_state(ps, n);
      const EntangledState lhs =
          kinetic_apply_n(scale_entangled(s, f), f, masses, params, DerivativeScheme::Central2);
      const EntangledState rhs = scale_entangled(
          covariant_kinetic_apply_n(s, f, masses, params, DerivativeScheme::Central2), f);
      res.push_back(max_abs_diff(lhs.amplitudes(), rhs.amplitudes()));
    }
    out.add("kinetic_route_central2_order", order_deviation(res), 0.2, n_grid, n);
  }
  {
    // Each particle's term against the one-particle operator with gamma / n on its slices.
    const ScalingField share = field.scaled_by(1.0 / static_cast<double>(n));
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const PhysicalParams pj = make_params(cfg, masses[j]);
      const ComplexVector term =
          particle_kinetic_term(state, field, j, masses, params, DerivativeScheme::Spectral);
      const ComplexVector oracle = apply_along_particle(state, j, [&](std::span<const Complex> s) {
        const WavePacket slice(grid, ComplexVector(s.begin(), s.end()));
        const WavePacket r = covariant_kinetic_apply(slice, share, pj, DerivativeScheme::Spectral);
        return ComplexVector(r.amplitudes().begin(), r.amplitudes().end());
      });
      err = std::max(err, rel_diff(term, oracle));
    }
    out.add("kinetic_slice_oracle", err, 1e-12, n_grid, n);
  }
  {
    const EntangledState one = product_state(std::span<const WavePacket>(packets.data(), 1));
    const ParticleMasses m1 = ParticleMasses::uniform(1, masses[0]);
    const PhysicalParams p0 = make_params(cfg, masses[0]);
    const auto sch = DerivativeScheme::Spectral;
    double err = max_abs_diff(
        kinetic_apply_n(scale_entangled(one, field), field, m1, p0, sch).amplitudes(),
        kinetic_apply(scale_packet(packets[0], field), field, p0, sch).amplitudes());
    err = std::max(err, max_abs_diff(covariant_kinetic_apply_n(one, field, m1, p0, sch).amplitudes(),
                                     covariant_kinetic_apply(packets[0], field, p0, sch).amplitudes()));
    err = std::max(err,
                   max_abs_diff(covariant_total_momentum_apply(one, field, p0, sch).amplitudes(),
                                covariant_momentum_apply(packets[0], field, p0, sch).amplitudes()));
    out.add("operator_reduction_n1", err, kExact, n_grid, 1);
  }
  if (n >= 2) {
    const ParticleMasses equal_masses = ParticleMasses::uniform(n, masses[0]);
    const EntangledState product =
        product_state(std::span<const WavePacket>(packets.data(), n));
    const auto sch = DerivativeScheme::Spectral;
    const EntangledState a =
        covariant_kinetic_apply_n(product.exchanged(0, 1), field, equal_masses, params, sch);
    const EntangledState b =
        covariant_kinetic_apply_n(product, field, equal_masses, params, sch).exchanged(0, 1);
    out.add("exchange_covariance", rel_diff(a.amplitudes(), b.amplitudes()), 1e-12, n_grid, n);
  }

  if (cfg.entangled.dump_tensor) {
    const EntangledState scaled = scale_entangled(state, field);
    Table t{"entangled_tensor.csv", {"flat_index", "re", "im"}, {}};
    for (std::size_t i = 0; i < scaled.amplitudes().size(); ++i) {
      const Complex z = scaled.amplitudes()[i];
      t.rows.push_back({std::to_string(i), fmt::format("{:.17e}", z.real()),
                        fmt::format("{:.17e}", z.imag())});
    }
    out.table(std::move(t));
  }
  return out.take();
}

std::vector<SuiteResult> run_suites(const RunConfig& cfg) {
  cfg.validate();
  const std::string& sub = cfg.subcommand;
  if (sub == "axioms") return {run_axioms(cfg)};
  if (sub == "single") return {run_single(cfg)};
  if (sub == "spectrum") return {run_spectrum(cfg)};
  if (sub == "momentum") return {run_momentum(cfg)};
  if (sub == "entangled") return {run_entangled(cfg)};
  if (sub == "all") {
    return {run_axioms(cfg), run_single(cfg), run_spectrum(cfg), run_momentum(cfg),
            run_entangled(cfg)};
  }
  throw ConfigError("subcommand", 0, "unknown subcommand '" + sub + "'");
}

std::vector<SuiteResult> run_and_write(const RunConfig& cfg) {
  std::vector<SuiteResult> results = run_suites(cfg);
  const std::filesystem::path dir(cfg.out_dir);
  for (const auto& r : results) write_suite(dir, r);
  write_run_summary(dir, results);
  return results;
}

}  // namespace scaleqm::runner
