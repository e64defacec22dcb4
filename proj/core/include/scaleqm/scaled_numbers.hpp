#pragma once

// Scaled complex-number structures C^c.
//
// A base-set element carries no value of its own; it acquires one only when
// read in a structure. Elements are stored by their value in the reference
// structure C^1 (the "canonical" coordinate), so the value of b in C^c is
// canonical(b) / c and every map between structures is closed form.

#include <cstdint>
#include <utility>

#include "scaleqm/error.hpp"
#include "scaleqm/types.hpp"

namespace scaleqm {

/// Nonzero complex scale factor labelling the structure C^c.
class StructureScale {
 public:
  /// Throws InvalidScaleError for zero or non-finite values.
  explicit StructureScale(Complex value);
  explicit StructureScale(double value) : StructureScale(Complex(value, 0.0)) {}

  [[nodiscard]] Complex value() const noexcept { return value_; }

  friend bool operator==(const StructureScale&, const StructureScale&) = default;

 private:
  Complex value_;
};

/// Base-set element together with the structure it is currently read in.
///
/// Field operations are defined only inside one structure; mixing elements
/// read in different structures throws StructureMismatchError.
class ScaledNumber {
 public:
  ScaledNumber(Complex canonical, StructureScale scale);

  /// The element whose value in C^scale is `value` (canonical = value * scale).
  static ScaledNumber from_value(Complex value, StructureScale scale);

  [[nodiscard]] Complex canonical() const noexcept { return canonical_; }
  [[nodiscard]] StructureScale scale() const noexcept { return scale_; }
  /// Value of the element in its own structure.
  [[nodiscard]] Complex value() const noexcept { return canonical_ / scale_.value(); }

  /// Same element, read in another structure. Only the scale changes.
  [[nodiscard]] ScaledNumber read_in(StructureScale scale) const noexcept {
    return ScaledNumber(canonical_, scale, Unchecked{});
  }

  friend ScaledNumber operator+(const ScaledNumber& s, const ScaledNumber& t);
  friend ScaledNumber operator-(const ScaledNumber& s, const ScaledNumber& t);
  friend ScaledNumber operator*(const ScaledNumber& s, const ScaledNumber& t);
  friend ScaledNumber operator/(const ScaledNumber& s, const ScaledNumber& t);
  friend ScaledNumber operator-(const ScaledNumber& s);
  friend ScaledNumber conj(const ScaledNumber& s);

 private:
  struct Unchecked {};
  ScaledNumber(Complex canonical, StructureScale scale, Unchecked) noexcept
      : canonical_(canonical), scale_(scale) {}

  Complex canonical_;
  StructureScale scale_;
};

/// The subset N_m of every m-th natural number.
class NaturalSubset {
 public:
  explicit NaturalSubset(std::uint64_t stride);

  [[nodiscard]] std::uint64_t stride() const noexcept { return stride_; }
  [[nodiscard]] bool contains(std::uint64_t j) const noexcept { return j % stride_ == 0; }
  /// Well-ordering value of j inside N_m. Throws NotAMemberError if j is not in N_m.
  [[nodiscard]] std::uint64_t value_of(std::uint64_t j) const;

 private:
  std::uint64_t stride_;
};

/// v_c(b): the value of b when read in C^c.
[[nodiscard]] Complex value_map(const ScaledNumber& b, StructureScale c);

/// v_c(b) given v_d(b) = val, i.e. (d / c) * val.
[[nodiscard]] Complex rescale_value(Complex val, StructureScale from_d, StructureScale to_c);

/// a_d: the element with value `a` in C^d, reported as read in C^c.
/// value_map(result, d) == a.
[[nodiscard]] ScaledNumber corresponding_number(Complex a, StructureScale d, StructureScale c);

/// v_c value of the number 1_d, the multiplicative identity of C^d_c.
[[nodiscard]] Complex projected_one(StructureScale d, StructureScale c);

// Operations of C^d expressed on v_c values through Z^d_c.

/// (c / d) * s * t
[[nodiscard]] Complex project_mul(Complex s, Complex t, StructureScale d, StructureScale c);
/// (d / c) * (s / t). Throws DivisionByZeroError when t == 0.
[[nodiscard]] Complex project_div(Complex s, Complex t, StructureScale d, StructureScale c);
/// (d / c) * conj(s), the conjugation map exactly as Z^d_c is written.
///
/// For d / c off the positive real axis this map is not an involution, and for
/// any d != c it differs from the conjugation transported from C^d (see
/// transported_conj).
[[nodiscard]] Complex project_conj(Complex s, StructureScale d, StructureScale c);
/// v_c(s^{*_d}): conjugation carried out in C^d and read back in C^c,
/// (d / c) * conj(c / d) * conj(s). Always an involution.
[[nodiscard]] Complex transported_conj(Complex s, StructureScale d, StructureScale c);

/// Values of j in N_m and in N_n; requires n | m and m | j.
/// The pair satisfies m * first == n * second == j.
[[nodiscard]] std::pair<std::uint64_t, std::uint64_t> natural_subset_value(std::uint64_t j,
                                                                           std::uint64_t m,
                                                                           std::uint64_t n);

}  // namespace scaleqm
