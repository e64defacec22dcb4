#include "scaleqm/scaling_field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "scaleqm/error.hpp"

namespace scaleqm {

namespace gamma_presets {

AnalyticGamma constant(Complex kappa) {
  return [kappa](std::span<const double>) { return kappa; };
}

AnalyticGamma sine(Complex alpha, double length) {
  return [alpha, length](std::span<const double> z) {
    double s = 0.0;
    for (double zj : z) {
      s += std::sin(2.0 * kPi * zj / length);
    }
    return alpha * s;
  };
}

AnalyticGamma linear_periodic(Complex alpha, double length) {
  return [alpha, length](std::span<const double> z) {
    double s = 0.0;
    for (double zj : z) {
      const double w = zj - length * std::floor(zj / length);
      s += w <= 0.5 * length ? w : length - w;
    }
    return alpha * s;
  };
}

AnalyticGamma gaussian_bump(Complex alpha, double width, double length) {
  return [alpha, width, length](std::span<const double> z) {
    double prod = 1.0;
    for (double zj : z) {
      double s = 0.0;
      for (int m = -2; m <= 2; ++m) {
        const double u = zj - 0.5 * length + m * length;
        s += std::exp(-u * u / (2.0 * width * width));
      }
      prod *= s;
    }
    return alpha * prod;
  };
}

AnalyticGamma by_name(const std::string& name, const std::map<std::string, double>& params,
                      double length) {
  auto param = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  const Complex alpha(param("alpha", 0.0), param("alpha_imag", 0.0));
  if (name == "constant") return params.count("kappa") ? constant(param("kappa", 0.0)) : constant(alpha);
  if (name == "sine") return sine(alpha, length);
  if (name == "linear-periodic") return linear_periodic(alpha, length);
  if (name == "gaussian-bump-periodicized") {
    return gaussian_bump(alpha, param("width", 0.1 * length), length);
  }
  throw std::invalid_argument("unknown field preset '" + name + "'");
}

}  // namespace gamma_presets

ScalingField::ScalingField(const Grid& grid, ComplexVector gamma, DerivativeScheme scheme)
    : grid_(grid), scheme_(scheme), gamma_(std::move(gamma)) {
  if (gamma_.size() != grid_.size()) {
    throw FieldConstructionError("gamma table has " + std::to_string(gamma_.size()) +
                                 " entries, grid has " + std::to_string(grid_.size()));
  }
  g_.resize(gamma_.size());
  for (std::size_t i = 0; i < gamma_.size(); ++i) {
    const Complex z = gamma_[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw FieldConstructionError("non-finite gamma at grid index " + std::to_string(i));
    }
    g_[i] = std::exp(z);
  }
  gradient_.reserve(static_cast<std::size_t>(grid_.dims()));
  for (int axis = 0; axis < grid_.dims(); ++axis) {
    gradient_.push_back(derivative(grid_, gamma_, axis, scheme_));
  }
}

std::span<const Complex> ScalingField::gradient(int axis) const {
  if (axis < 0 || axis >= grid_.dims()) {
    throw ShapeError("gradient axis out of range");
  }
  return gradient_[static_cast<std::size_t>(axis)];
}

bool ScalingField::is_constant() const noexcept {
  return std::all_of(gamma_.begin(), gamma_.end(),
                     [&](const Complex& z) { return z == gamma_.front(); });
}

ScalingField ScalingField::scaled_by(double factor) const {
  ComplexVector scaled(gamma_);
  for (Complex& z : scaled) {
    z *= factor;
  }
  return build_field(grid_, std::move(scaled), scheme_);
}

namespace {

Complex sample(const AnalyticGamma& gamma, const Grid& grid, const std::array<double, 3>& z) {
  return gamma(std::span<const double>(z.data(), static_cast<std::size_t>(grid.dims())));
}

}  // namespace

ScalingField build_field(const Grid& grid, const AnalyticGamma& gamma, DerivativeScheme scheme) {
  ComplexVector table(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    table[p] = sample(gamma, grid, grid.position(p));
    if (!std::isfinite(table[p].real()) || !std::isfinite(table[p].imag())) {
      throw FieldConstructionError("gamma is not finite at grid index " + std::to_string(p));
    }
  }
  // Periodicity: compare the value on each lower face with the value one
  // period further along that axis.
  constexpr double kWrapTolerance = 1e-8;
  for (int axis = 0; axis < grid.dims(); ++axis) {
    const auto ax = static_cast<std::size_t>(axis);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      if (grid.coords(p)[ax] != 0) continue;
      std::array<double, 3> z = grid.position(p);
      z[ax] = grid.length();
      const Complex wrapped = sample(gamma, grid, z);
      if (std::abs(wrapped - table[p]) > kWrapTolerance) {
        throw PeriodicityError("gamma is not periodic along axis " + std::to_string(axis) +
                               " (mismatch " + std::to_string(std::abs(wrapped - table[p])) + ")");
      }
    }
  }
  return build_field(grid, std::move(table), scheme);
}

ScalingField build_field(const Grid& grid, ComplexVector gamma_table, DerivativeScheme scheme) {
  return ScalingField(grid, std::move(gamma_table), scheme);
}

ScalingField read_field_csv(const Grid& grid, std::istream& in, DerivativeScheme scheme) {
  ComplexVector table(grid.size());
  std::vector<bool> seen(grid.size(), false);
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long index = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> index >> re >> im)) {
      if (rows == 0 && line_no == 1) continue;  // header
      throw FieldConstructionError("malformed gamma table row at line " + std::to_string(line_no));
    }
    if (index < 0 || static_cast<std::size_t>(index) >= grid.size()) {
      throw FieldConstructionError("gamma table index out of range at line " +
                                   std::to_string(line_no));
    }
    const auto i = static_cast<std::size_t>(index);
    if (seen[i]) {
      throw FieldConstructionError("duplicate gamma table index " + std::to_string(i));
    }
    seen[i] = true;
    table[i] = Complex(re, im);
    ++rows;
  }
  if (rows != grid.size()) {
    throw FieldConstructionError("gamma table has " + std::to_string(rows) + " rows, grid needs " +
                                 std::to_string(grid.size()));
  }
  return build_field(grid, std::move(table), scheme);
}

Complex connection_factor(const ScalingField& field, std::size_t x, std::size_t y) {
  return std::exp(field.gamma_at(y) - field.gamma_at(x));
}

StructureScale compose_scale(StructureScale w_d, StructureScale c) {
  return StructureScale(w_d.value() * c.value());
}

Complex multi_rho(const ScalingField& field, std::span<const std::size_t> points) {
  if (points.empty()) {
    throw ArityError("multi_rho needs at least one point");
  }
  std::vector<std::size_t> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  Complex sum{0.0, 0.0};
  for (std::size_t p : sorted) {
    sum += field.gamma_at(p);
  }
  return sum / static_cast<double>(sorted.size());
}

Complex geometric_mean_scale(const ScalingField& field, std::span<const std::size_t> points) {
  return std::exp(multi_rho(field, points));
}

}  // namespace scaleqm
