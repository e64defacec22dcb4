#include "scaleqm/scaled_numbers.hpp"

#include <cmath>
#include <string>

namespace scaleqm {
namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_structure(const ScaledNumber& s, const ScaledNumber& t) {
  if (!(s.scale() == t.scale())) {
    throw StructureMismatchError("field operations are only defined inside one structure");
  }
}

}  // namespace

StructureScale::StructureScale(Complex value) : value_(value) {
  if (value == Complex(0.0, 0.0)) {
    throw InvalidScaleError("structure scale must be nonzero");
  }
  if (!is_finite(value)) {
    throw InvalidScaleError("structure scale must be finite");
  }
}

ScaledNumber::ScaledNumber(Complex canonical, StructureScale scale)
    : canonical_(canonical), scale_(scale) {
  if (!is_finite(canonical)) {
    throw InvalidValueError("scaled number must be finite");
  }
  if (!is_finite(canonical / scale.value())) {
    throw InvalidValueError("value of scaled number overflows in its structure");
  }
}

ScaledNumber ScaledNumber::from_value(Complex value, StructureScale scale) {
  return ScaledNumber(value * scale.value(), scale);
}

ScaledNumber operator+(const ScaledNumber& s, const ScaledNumber& t) {
  require_same_structure(s, t);
  return ScaledNumber::from_value(s.value() + t.value(), s.scale());
}

ScaledNumber operator-(const ScaledNumber& s, const ScaledNumber& t) {
  require_same_structure(s, t);
  return ScaledNumber::from_value(s.value() - t.value(), s.scale());
}

ScaledNumber operator*(const ScaledNumber& s, const ScaledNumber& t) {
  require_same_structure(s, t);
  return ScaledNumber::from_value(s.value() * t.value(), s.scale());
}

ScaledNumber operator/(const ScaledNumber& s, const ScaledNumber& t) {
  require_same_structure(s, t);
  if (t.canonical() == Complex(0.0, 0.0)) {
    throw DivisionByZeroError("division by the zero element");
  }
  return ScaledNumber::from_value(s.value() / t.value(), s.scale());
}

ScaledNumber operator-(const ScaledNumber& s) {
  return ScaledNumber(-s.canonical(), s.scale(), ScaledNumber::Unchecked{});
}

ScaledNumber conj(const ScaledNumber& s) {
  return ScaledNumber::from_value(std::conj(s.value()), s.scale());
}

NaturalSubset::NaturalSubset(std::uint64_t stride) : stride_(stride) {
  if (stride == 0) {
    throw NotAMemberError("natural subset stride must be at least 1");
  }
}

std::uint64_t NaturalSubset::value_of(std::uint64_t j) const {
  if (!contains(j)) {
    throw NotAMemberError(std::to_string(j) + " is not a member of N_" + std::to_string(stride_));
  }
  return j / stride_;
}

Complex value_map(const ScaledNumber& b, StructureScale c) { return b.canonical() / c.value(); }

Complex rescale_value(Complex val, StructureScale from_d, StructureScale to_c) {
  return (from_d.value() / to_c.value()) * val;
}

ScaledNumber corresponding_number(Complex a, StructureScale d, StructureScale c) {
  return ScaledNumber::from_value(a, d).read_in(c);
}

Complex projected_one(StructureScale d, StructureScale c) { return d.value() / c.value(); }

Complex project_mul(Complex s, Complex t, StructureScale d, StructureScale c) {
  return (c.value() / d.value()) * (s * t);
}

Complex project_div(Complex s, Complex t, StructureScale d, StructureScale c) {
  if (t == Complex(0.0, 0.0)) {
    throw DivisionByZeroError("projected division by zero");
  }
  return (d.value() / c.value()) * (s / t);
}

Complex project_conj(Complex s, StructureScale d, StructureScale c) {
  return (d.value() / c.value()) * std::conj(s);
}

Complex transported_conj(Complex s, StructureScale d, StructureScale c) {
  const Complex ratio = d.value() / c.value();
  return ratio * std::conj(s / ratio);
}

std::pair<std::uint64_t, std::uint64_t> natural_subset_value(std::uint64_t j, std::uint64_t m,
                                                             std::uint64_t n) {
  const NaturalSubset coarse(m);
  const NaturalSubset fine(n);
  if (m % n != 0) {
    throw NotAMemberError("N_" + std::to_string(m) + " is not a subset of N_" + std::to_string(n));
  }
  return {coarse.value_of(j), fine.value_of(j)};
}

}  // namespace scaleqm
