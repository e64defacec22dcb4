#pragma once

// Discrete Fourier transforms over a Grid.
//
// Convention: forward X_k = sum_n x_n exp(-2 pi i k.n / N) (unnormalized),
// inverse x_n = (1 / size) sum_k X_k exp(+2 pi i k.n / N). With it the
// circular convolution theorem reads DFT(a b) = (1 / size) DFT(a) (*) DFT(b).

#include <memory>
#include <span>

#include "scaleqm/grid.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);
  ~FourierTransform();
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  [[nodiscard]] const Grid& grid() const noexcept;

  /// Throws ShapeError if data.size() != grid().size().
  [[nodiscard]] ComplexVector forward(std::span<const Complex> data) const;
  [[nodiscard]] ComplexVector inverse(std::span<const Complex> spectrum) const;

 private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Circular convolution over the grid's index group: out[p] = sum_q a[p - q] b[q].
/// Direct O(size^2) evaluation.
[[nodiscard]] ComplexVector circular_convolution(const Grid& grid, std::span<const Complex> a,
                                                 std::span<const Complex> b);

}  // namespace scaleqm
