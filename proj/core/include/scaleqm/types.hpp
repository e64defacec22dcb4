#pragma once

#include <complex>
#include <vector>

namespace scaleqm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace scaleqm
