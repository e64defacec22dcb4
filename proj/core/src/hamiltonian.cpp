#include "scaleqm/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scaleqm/error.hpp"

namespace scaleqm {
namespace {

void require_dense_size(std::size_t n) {
  if (n > kMaxDenseDimension) {
    throw ResourceError("dense operator of dimension " + std::to_string(n) + " exceeds the limit " +
                        std::to_string(kMaxDenseDimension));
  }
}

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

Eigen::MatrixXcd connection_matrix(const ScalingField& field, int axis, DerivativeScheme scheme,
                                   ConnectionForm form) {
  const Grid& grid = field.grid();
  require_dense_size(grid.size());
  const auto m = static_cast<Eigen::Index>(grid.size());
  if (form == ConnectionForm::Diagonal) {
    const auto gamma = field.gradient(axis);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) g(i, i) = gamma[static_cast<std::size_t>(i)];
    return g;
  }
  const Eigen::MatrixXcd d = derivative_matrix(grid, axis, scheme);
  const auto gamma = field.gamma();
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex ratio = std::exp(gamma[static_cast<std::size_t>(j)] -
                                     gamma[static_cast<std::size_t>(i)]);
      g(i, j) = d(i, j) * (ratio - 1.0);
    }
  }
  return g;
}

Eigen::MatrixXcd build_hamiltonian(const ScalingField& field, const PotentialField& potential,
                                   const PhysicalParams& params, Gauge gauge,
                                   DerivativeScheme scheme, ConnectionForm form) {
  params.validate();
  const Grid& grid = field.grid();
  require_same_grid(grid, potential.grid(), "build_hamiltonian");
  require_dense_size(grid.size());
  const auto m = static_cast<Eigen::Index>(grid.size());
  const double c = params.kinetic_prefactor();

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  for (int axis = 0; axis < grid.dims(); ++axis) {
    h += c * second_derivative_matrix(grid, axis, scheme);
  }
  if (gauge == Gauge::GammaModified) {
    for (int axis = 0; axis < grid.dims(); ++axis) {
      const Eigen::MatrixXcd d = derivative_matrix(grid, axis, scheme);
      const Eigen::MatrixXcd g = connection_matrix(field, axis, scheme, form);
      // Skipping a vanishing connection keeps signed zeros of the standard matrix intact.
      if ((g.array() == Complex(0.0, 0.0)).all()) continue;
      Eigen::MatrixXcd extra = d * g;
      extra.noalias() += g * d;
      extra.noalias() += g * g;
      h += c * extra;
    }
  }
  const auto v = potential.values();
  for (Eigen::Index i = 0; i < m; ++i) h(i, i) += v[static_cast<std::size_t>(i)];
  return h;
}

bool is_hermitian(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  return dev <= tol * scale;
}

std::vector<Complex> eigen_spectrum(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) {
    throw ShapeError("eigen_spectrum needs a square matrix, got " + std::to_string(h.rows()) +
                     "x" + std::to_string(h.cols()));
  }
  require_dense_size(static_cast<std::size_t>(h.rows()));
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(h.rows()));
  if (is_hermitian(h)) {
    const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericError("self-adjoint eigensolver did not converge (dimension " +
                         std::to_string(h.rows()) + ")");
    }
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      out.emplace_back(solver.eigenvalues()(i), 0.0);
    }
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(h, false);
    if (solver.info() != Eigen::Success) {
      throw NumericError("complex eigensolver did not converge after " +
                         std::to_string(solver.getMaxIterations()) +
                         " iterations per eigenvalue (dimension " + std::to_string(h.rows()) + ")");
    }
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      out.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(out.begin(), out.end(), complex_less);
  return out;
}

Eigenpairs hermitian_eigenpairs(const Eigen::MatrixXcd& h) {
  if (!is_hermitian(h)) throw ContractError("hermitian_eigenpairs needs a Hermitian matrix");
  require_dense_size(static_cast<std::size_t>(h.rows()));
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericError("self-adjoint eigensolver did not converge (dimension " +
                       std::to_string(h.rows()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectrumMatch match_spectra(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) {
    throw ShapeError("spectra have different lengths: " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  SpectrumMatch match;
  match.first = a;
  std::sort(match.first.begin(), match.first.end(), complex_less);
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : match.first) {
    std::size_t best = b.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(b[j] - x);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == b.size()) throw NumericError("cannot pair non-finite eigenvalues");
    used[best] = true;
    match.second.push_back(b[best]);
    match.max_abs_diff = std::max(match.max_abs_diff, best_dist);
  }
  return match;
}

}  // namespace scaleqm
