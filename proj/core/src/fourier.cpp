#include "scaleqm/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>

#include "scaleqm/error.hpp"

namespace scaleqm {

struct FourierTransform::Plans {
  Grid grid;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(const Grid& g) : grid(g) {
    std::array<int, 3> extents{};
    for (int a = 0; a < g.dims(); ++a) {
      extents[static_cast<std::size_t>(a)] = static_cast<int>(g.points_per_dim());
    }
    // FFTW_ESTIMATE never inspects or overwrites the scratch arrays and picks
    // the same algorithm every run, which keeps output bit-reproducible.
    auto* scratch_in = fftw_alloc_complex(g.size());
    auto* scratch_out = fftw_alloc_complex(g.size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft(g.dims(), extents.data(), scratch_in, scratch_out, FFTW_FORWARD, flags);
    backward =
        fftw_plan_dft(g.dims(), extents.data(), scratch_in, scratch_out, FFTW_BACKWARD, flags);
    fftw_free(scratch_in);
    fftw_free(scratch_out);
    if (forward == nullptr || backward == nullptr) {
      throw NumericError("FFTW failed to create a plan");
    }
  }

  ~Plans() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

FourierTransform::FourierTransform(const Grid& grid) : plans_(std::make_unique<Plans>(grid)) {}
FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

const Grid& FourierTransform::grid() const noexcept { return plans_->grid; }

namespace {

ComplexVector execute(fftw_plan plan, const Grid& grid, std::span<const Complex> data) {
  if (data.size() != grid.size()) {
    throw ShapeError("DFT input size does not match grid");
  }
  ComplexVector in(data.begin(), data.end());
  ComplexVector out(data.size());
  // std::complex<double> is layout compatible with fftw_complex.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

ComplexVector FourierTransform::forward(std::span<const Complex> data) const {
  return execute(plans_->forward, plans_->grid, data);
}

ComplexVector FourierTransform::inverse(std::span<const Complex> spectrum) const {
  ComplexVector out = execute(plans_->backward, plans_->grid, spectrum);
  const double norm = 1.0 / static_cast<double>(out.size());
  for (Complex& z : out) {
    z *= norm;
  }
  return out;
}

ComplexVector circular_convolution(const Grid& grid, std::span<const Complex> a,
                                   std::span<const Complex> b) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw ShapeError("convolution operands do not match grid");
  }
  const std::size_t n = grid.points_per_dim();
  ComplexVector out(grid.size(), Complex{0.0, 0.0});
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Grid::Index pi = grid.coords(p);
    Complex acc{0.0, 0.0};
    for (std::size_t q = 0; q < grid.size(); ++q) {
      const Grid::Index qi = grid.coords(q);
      Grid::Index diff{0, 0, 0};
      for (std::size_t ax = 0; ax < 3; ++ax) {
        diff[ax] = (pi[ax] + n - qi[ax]) % n;
      }
      acc += a[grid.flat(diff)] * b[q];
    }
    out[p] = acc;
  }
  return out;
}

}  // namespace scaleqm
