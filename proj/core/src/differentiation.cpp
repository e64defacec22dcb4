#include "scaleqm/differentiation.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "scaleqm/error.hpp"
#include "scaleqm/fourier.hpp"

namespace scaleqm {
namespace {

struct Stencil {
  std::array<double, 5> weights;  // offsets -2..2
  int order;                      // power of spacing in the denominator
};

Stencil first_stencil(DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::Central4) {
    return {{1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0}, 1};
  }
  return {{0.0, -0.5, 0.0, 0.5, 0.0}, 1};
}

Stencil second_stencil(DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::Central4) {
    return {{-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0}, 2};
  }
  return {{0.0, 1.0, -2.0, 1.0, 0.0}, 2};
}

void check_input(const Grid& grid, std::span<const Complex> f, int axis) {
  if (f.size() != grid.size()) {
    throw ShapeError("derivative input size does not match grid");
  }
  if (axis < 0 || axis >= grid.dims()) {
    throw ShapeError("derivative axis out of range: " + std::to_string(axis));
  }
}

bool is_constant(std::span<const Complex> f) {
  return std::all_of(f.begin(), f.end(), [&](const Complex& z) { return z == f.front(); });
}

ComplexVector apply_stencil(const Grid& grid, std::span<const Complex> f, int axis,
                            const Stencil& st) {
  const double scale = 1.0 / (st.order == 1 ? grid.spacing() : grid.spacing() * grid.spacing());
  ComplexVector out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) {
    Complex acc{0.0, 0.0};
    for (int o = -2; o <= 2; ++o) {
      const double w = st.weights[static_cast<std::size_t>(o + 2)];
      if (w != 0.0) {
        acc += w * f[grid.shifted(p, axis, o)];
      }
    }
    out[p] = acc * scale;
  }
  return out;
}

ComplexVector apply_spectral(const Grid& grid, std::span<const Complex> f, int axis, int order) {
  const FourierTransform dft(grid);
  ComplexVector spec = dft.forward(f);
  for (std::size_t p = 0; p < spec.size(); ++p) {
    const double k = grid.wavenumber(grid.coords(p)[static_cast<std::size_t>(axis)]);
    const Complex factor = order == 1 ? Complex(0.0, k) : Complex(-k * k, 0.0);
    spec[p] *= factor;
  }
  return dft.inverse(spec);
}

// Derivative operators are shift invariant, so column q of the matrix is the
// response to a unit impulse at 0, translated by q.
Eigen::MatrixXcd circulant_matrix(const Grid& grid, std::span<const Complex> impulse_response) {
  const std::size_t m = grid.size();
  const std::size_t n = grid.points_per_dim();
  Eigen::MatrixXcd mat(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t q = 0; q < m; ++q) {
    const Grid::Index qi = grid.coords(q);
    for (std::size_t p = 0; p < m; ++p) {
      const Grid::Index pi = grid.coords(p);
      Grid::Index diff{0, 0, 0};
      for (std::size_t ax = 0; ax < 3; ++ax) {
        diff[ax] = (pi[ax] + n - qi[ax]) % n;
      }
      mat(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
          impulse_response[grid.flat(diff)];
    }
  }
  return mat;
}

ComplexVector unit_impulse(const Grid& grid) {
  ComplexVector e(grid.size(), Complex{0.0, 0.0});
  e[0] = 1.0;
  return e;
}

}  // namespace

std::string_view to_string(DerivativeScheme scheme) noexcept {
  switch (scheme) {
    case DerivativeScheme::Central2:
      return "central2";
    case DerivativeScheme::Central4:
      return "central4";
    case DerivativeScheme::Spectral:
      return "spectral";
  }
  return "unknown";
}

DerivativeScheme parse_derivative_scheme(std::string_view name) {
  if (name == "central2" || name == "central") return DerivativeScheme::Central2;
  if (name == "central4") return DerivativeScheme::Central4;
  if (name == "spectral") return DerivativeScheme::Spectral;
  throw std::invalid_argument("unknown derivative scheme '" + std::string(name) + "'");
}

ComplexVector derivative(const Grid& grid, std::span<const Complex> f, int axis,
                         DerivativeScheme scheme) {
  check_input(grid, f, axis);
  if (is_constant(f)) {
    return ComplexVector(f.size(), Complex{0.0, 0.0});
  }
  if (scheme == DerivativeScheme::Spectral) {
    return apply_spectral(grid, f, axis, 1);
  }
  return apply_stencil(grid, f, axis, first_stencil(scheme));
}

ComplexVector second_derivative(const Grid& grid, std::span<const Complex> f, int axis,
                                DerivativeScheme scheme) {
  check_input(grid, f, axis);
  if (is_constant(f)) {
    return ComplexVector(f.size(), Complex{0.0, 0.0});
  }
  if (scheme == DerivativeScheme::Spectral) {
    return apply_spectral(grid, f, axis, 2);
  }
  return apply_stencil(grid, f, axis, second_stencil(scheme));
}

ComplexVector laplacian(const Grid& grid, std::span<const Complex> f, DerivativeScheme scheme) {
  ComplexVector out(f.size(), Complex{0.0, 0.0});
  for (int axis = 0; axis < grid.dims(); ++axis) {
    const ComplexVector d2 = second_derivative(grid, f, axis, scheme);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += d2[i];
    }
  }
  return out;
}

Eigen::MatrixXcd derivative_matrix(const Grid& grid, int axis, DerivativeScheme scheme) {
  return circulant_matrix(grid, derivative(grid, unit_impulse(grid), axis, scheme));
}

Eigen::MatrixXcd second_derivative_matrix(const Grid& grid, int axis, DerivativeScheme scheme) {
  return circulant_matrix(grid, second_derivative(grid, unit_impulse(grid), axis, scheme));
}

}  // namespace scaleqm
