#pragma once

#include <array>
#include <cstddef>

namespace scaleqm {

/// Uniform periodic grid with 1 to 3 dimensions and N points per dimension.
///
/// Points are addressed by a flat row-major index with axis 0 varying slowest.
/// Position of index i along an axis is i * spacing; index arithmetic wraps
/// modulo N.
class Grid {
 public:
  using Index = std::array<std::size_t, 3>;

  /// Throws ShapeError unless 1 <= dims <= 3, N >= 4 and spacing > 0.
  Grid(int dims, std::size_t points_per_dim, double spacing);

  static Grid with_length(int dims, std::size_t points_per_dim, double length);

  [[nodiscard]] int dims() const noexcept { return dims_; }
  [[nodiscard]] std::size_t points_per_dim() const noexcept { return n_; }
  [[nodiscard]] double spacing() const noexcept { return spacing_; }
  [[nodiscard]] double length() const noexcept { return static_cast<double>(n_) * spacing_; }
  /// Total number of grid points, N^dims.
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  /// Delta^dims.
  [[nodiscard]] double cell_volume() const noexcept;

  [[nodiscard]] std::size_t stride(int axis) const noexcept;
  [[nodiscard]] Index coords(std::size_t flat) const noexcept;
  [[nodiscard]] std::size_t flat(const Index& idx) const noexcept;
  /// Flat index of the point `offset` steps along `axis`, wrapped periodically.
  [[nodiscard]] std::size_t shifted(std::size_t flat, int axis, long offset) const noexcept;
  [[nodiscard]] std::array<double, 3> position(std::size_t flat) const noexcept;

  /// Signed FFT-ordered mode number of index i: 0..N/2 then -(N/2-1)..-1.
  [[nodiscard]] long mode(std::size_t i) const noexcept;
  /// Angular wavenumber 2 pi mode(i) / L.
  [[nodiscard]] double wavenumber(std::size_t i) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dims_;
  std::size_t n_;
  double spacing_;
  std::size_t size_;
};

/// Throws ShapeError when two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace scaleqm
