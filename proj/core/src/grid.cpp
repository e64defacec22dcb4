#include "scaleqm/grid.hpp"

#include <cmath>
#include <string>

#include "scaleqm/error.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

Grid::Grid(int dims, std::size_t points_per_dim, double spacing)
    : dims_(dims), n_(points_per_dim), spacing_(spacing), size_(1) {
  if (dims < 1 || dims > 3) {
    throw ShapeError("grid dims must be 1, 2 or 3 (got " + std::to_string(dims) + ")");
  }
  if (points_per_dim < 4) {
    throw ShapeError("grid needs at least 4 points per dimension");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw ShapeError("grid spacing must be positive and finite");
  }
  for (int a = 0; a < dims; ++a) {
    size_ *= n_;
  }
}

Grid Grid::with_length(int dims, std::size_t points_per_dim, double length) {
  if (points_per_dim == 0) {
    throw ShapeError("grid needs at least 4 points per dimension");
  }
  return Grid(dims, points_per_dim, length / static_cast<double>(points_per_dim));
}

double Grid::cell_volume() const noexcept { return std::pow(spacing_, dims_); }

std::size_t Grid::stride(int axis) const noexcept {
  std::size_t s = 1;
  for (int a = axis + 1; a < dims_; ++a) {
    s *= n_;
  }
  return s;
}

Grid::Index Grid::coords(std::size_t flat) const noexcept {
  Index idx{0, 0, 0};
  for (int a = dims_ - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = flat % n_;
    flat /= n_;
  }
  return idx;
}

std::size_t Grid::flat(const Index& idx) const noexcept {
  std::size_t f = 0;
  for (int a = 0; a < dims_; ++a) {
    f = f * n_ + idx[static_cast<std::size_t>(a)] % n_;
  }
  return f;
}

std::size_t Grid::shifted(std::size_t flat, int axis, long offset) const noexcept {
  const std::size_t s = stride(axis);
  const auto i = static_cast<long>((flat / s) % n_);
  const auto n = static_cast<long>(n_);
  const long j = ((i + offset) % n + n) % n;
  return flat + static_cast<std::size_t>(j - i) * s;
}

std::array<double, 3> Grid::position(std::size_t flat) const noexcept {
  const Index idx = coords(flat);
  return {static_cast<double>(idx[0]) * spacing_, static_cast<double>(idx[1]) * spacing_,
          static_cast<double>(idx[2]) * spacing_};
}

long Grid::mode(std::size_t i) const noexcept {
  const auto n = static_cast<long>(n_);
  const auto k = static_cast<long>(i % n_);
  return k <= n / 2 ? k : k - n;
}

double Grid::wavenumber(std::size_t i) const noexcept {
  return 2.0 * kPi * static_cast<double>(mode(i)) / length();
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) {
    throw ShapeError(std::string("grid mismatch: ") + what);
  }
}

}  // namespace scaleqm
