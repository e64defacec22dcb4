#include "scaleqm/scaled_numbers.hpp"

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace scaleqm {
namespace {

using testing::AnnulusSampler;
using testing::rel_err;

const Complex kI{0.0, 1.0};

TEST(StructureScale, RejectsZeroAndNonFinite) {
  EXPECT_THROW(StructureScale(0.0), InvalidScaleError);
  EXPECT_THROW(StructureScale(Complex(0.0, 0.0)), InvalidScaleError);
  EXPECT_THROW(StructureScale(std::numeric_limits<double>::infinity()), InvalidScaleError);
  EXPECT_THROW(StructureScale(Complex(1.0, std::nan(""))), InvalidScaleError);
  EXPECT_NO_THROW(StructureScale(Complex(0.0, -3.0)));
}

TEST(ValueMap, Examples) {
  const ScaledNumber six(6.0, StructureScale(1.0));
  EXPECT_EQ(value_map(six, StructureScale(1.0)), Complex(6.0));
  EXPECT_EQ(value_map(six, StructureScale(2.0)), Complex(3.0));
  const ScaledNumber zero(0.0, StructureScale(1.0));
  EXPECT_EQ(value_map(zero, StructureScale(Complex(0.3, -7.0))), Complex(0.0));
}

TEST(ValueMap, ScaleTimesValueIsCanonical) {
  AnnulusSampler sample(11);
  for (int i = 0; i < 200; ++i) {
    const ScaledNumber b(sample(), StructureScale(1.0));
    const StructureScale c(sample());
    const StructureScale d(sample());
    EXPECT_LE(rel_err(d.value() * value_map(b, d), c.value() * value_map(b, c)), 1e-12);
  }
}

TEST(RescaleValue, Examples) {
  EXPECT_EQ(rescale_value(3.0, StructureScale(2.0), StructureScale(1.0)), Complex(6.0));
  EXPECT_EQ(rescale_value(5.0, StructureScale(4.0), StructureScale(4.0)), Complex(5.0));
  EXPECT_EQ(rescale_value(Complex(1.0, 1.0), StructureScale(2.0 * kI), StructureScale(1.0)),
            Complex(-2.0, 2.0));
}

TEST(CorrespondingNumber, Examples) {
  EXPECT_EQ(corresponding_number(1.0, StructureScale(1.0), StructureScale(1.0)).canonical(),
            Complex(1.0));
  EXPECT_EQ(corresponding_number(1.0, StructureScale(2.0), StructureScale(1.0)).canonical(),
            Complex(2.0));
  EXPECT_EQ(corresponding_number(0.0, StructureScale(kI), StructureScale(5.0)).canonical(),
            Complex(0.0));
}

TEST(CorrespondingNumber, RoundTrip) {
  AnnulusSampler sample(12);
  for (int i = 0; i < 200; ++i) {
    const Complex a = sample();
    const StructureScale d(sample());
    const StructureScale c(sample());
    const ScaledNumber b = corresponding_number(a, d, c);
    EXPECT_EQ(b.scale(), c);
    EXPECT_LE(rel_err(value_map(b, d), a), 1e-12);
    // Its value in C^c is the rescaled value.
    EXPECT_LE(rel_err(b.value(), rescale_value(a, d, c)), 1e-12);
  }
}

TEST(ProjectMul, Examples) {
  const StructureScale one(1.0);
  const StructureScale two(2.0);
  EXPECT_EQ(project_mul(2.0, 3.0, two, one), Complex(3.0));
  EXPECT_EQ(project_mul(2.0, 3.0, two, two), Complex(6.0));
  AnnulusSampler sample(13);
  for (int i = 0; i < 50; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    const Complex x = sample();
    EXPECT_LE(rel_err(project_mul(projected_one(d, c), x, d, c), x), 1e-14);
  }
}

TEST(ProjectDiv, Examples) {
  EXPECT_EQ(project_div(6.0, 3.0, StructureScale(2.0), StructureScale(1.0)), Complex(4.0));
  EXPECT_EQ(project_div(6.0, 3.0, StructureScale(5.0), StructureScale(5.0)), Complex(2.0));
  EXPECT_THROW((void)project_div(1.0, 0.0, StructureScale(2.0), StructureScale(1.0)),
               DivisionByZeroError);
  AnnulusSampler sample(14);
  for (int i = 0; i < 50; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    const Complex s = sample();
    const Complex t = sample();
    EXPECT_LE(rel_err(project_div(project_mul(s, t, d, c), t, d, c), s), 1e-13);
  }
}

TEST(ProjectConj, Examples) {
  const Complex s(1.0, 2.0);
  EXPECT_EQ(project_conj(s, StructureScale(3.0), StructureScale(3.0)), Complex(1.0, -2.0));
  EXPECT_EQ(project_conj(1.0, StructureScale(2.0), StructureScale(1.0)), Complex(2.0));
  EXPECT_EQ(project_conj(0.0, StructureScale(kI), StructureScale(2.0)), Complex(0.0));
}

TEST(ProjectConj, LiteralFormAppliedTwiceScalesByRatioModulusSquared) {
  AnnulusSampler sample(21);
  for (int i = 0; i < 100; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    const Complex s = sample();
    const double r2 = std::norm(d.value() / c.value());
    EXPECT_LE(rel_err(project_conj(project_conj(s, d, c), d, c), r2 * s), 1e-13);
  }
  // Unit-modulus ratios, complex or not, give an involution.
  const Complex s(0.5, 0.25);
  const StructureScale c(2.0);
  const StructureScale d(2.0 * std::polar(1.0, 0.7));
  EXPECT_LE(rel_err(project_conj(project_conj(s, d, c), d, c), s), 1e-15);
  EXPECT_GT(std::abs(project_conj(project_conj(s, StructureScale(4.0), c), StructureScale(4.0), c) - s),
            0.1);
}

TEST(TransportedConj, IsInvolutiveAndMatchesInternalConjugation) {
  AnnulusSampler sample(15);
  for (int i = 0; i < 200; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    const Complex s = sample();
    EXPECT_LE(rel_err(transported_conj(transported_conj(s, d, c), d, c), s), 1e-13);
    // Conjugate inside C^d, then read the result in C^c.
    const ScaledNumber b = ScaledNumber::from_value(s, c).read_in(d);
    EXPECT_LE(rel_err(conj(b).read_in(c).value(), transported_conj(s, d, c)), 1e-13);
    // For a real ratio it is plain conjugation; the literal form carries an extra d / c.
    const double r = std::abs(sample());
    const StructureScale dr(c.value() * r);
    EXPECT_LE(rel_err(transported_conj(s, dr, c), std::conj(s)), 1e-13);
    EXPECT_LE(rel_err(project_conj(s, dr, c), r * transported_conj(s, dr, c)), 1e-13);
  }
}

TEST(ProjectedOps, MatchArithmeticInsideTheOtherStructure) {
  AnnulusSampler sample(16);
  for (int i = 0; i < 200; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    const Complex s = sample();
    const Complex t = sample();
    const ScaledNumber bs = ScaledNumber::from_value(s, c).read_in(d);
    const ScaledNumber bt = ScaledNumber::from_value(t, c).read_in(d);
    EXPECT_LE(rel_err((bs * bt).read_in(c).value(), project_mul(s, t, d, c)), 1e-12);
    EXPECT_LE(rel_err((bs / bt).read_in(c).value(), project_div(s, t, d, c)), 1e-12);
    EXPECT_LE(rel_err((bs + bt).read_in(c).value(), s + t), 1e-12);
  }
}

TEST(ProjectedOps, FieldAxioms) {
  AnnulusSampler sample(17);
  for (int i = 0; i < 200; ++i) {
    const StructureScale d(sample());
    const StructureScale c(sample());
    const Complex s = sample();
    const Complex t = sample();
    const Complex u = sample();
    const Complex one = projected_one(d, c);
    auto mul = [&](Complex a, Complex b) { return project_mul(a, b, d, c); };
    auto div = [&](Complex a, Complex b) { return project_div(a, b, d, c); };

    EXPECT_LE(rel_err(mul(s, t), mul(t, s)), 1e-12);
    EXPECT_LE(rel_err(mul(mul(s, t), u), mul(s, mul(t, u))), 1e-12);
    EXPECT_LE(rel_err(mul(s, t + u), mul(s, t) + mul(s, u)), 1e-12);
    EXPECT_EQ(s + 0.0, s);
    EXPECT_LE(rel_err(mul(one, s), s), 1e-12);
    EXPECT_LE(rel_err(mul(s, div(one, s)), one), 1e-12);
    EXPECT_LE(rel_err(mul(div(s, t), t), s), 1e-12);
  }
}

TEST(ProjectedOps, Composition) {
  AnnulusSampler sample(18);
  for (int i = 0; i < 200; ++i) {
    const StructureScale d(sample());
    const StructureScale e(sample());
    const StructureScale c(sample());
    const Complex s = sample();
    const Complex t = sample();
    // Express the operands in C^e, apply the d->e projection, return to C^c.
    auto via_e = [&](auto op) {
      return rescale_value(op(rescale_value(s, c, e), rescale_value(t, c, e), d, e), e, c);
    };
    auto mul = [](Complex a, Complex b, StructureScale x, StructureScale y) {
      return project_mul(a, b, x, y);
    };
    auto div = [](Complex a, Complex b, StructureScale x, StructureScale y) {
      return project_div(a, b, x, y);
    };
    auto cj = [](Complex a, Complex, StructureScale x, StructureScale y) {
      return transported_conj(a, x, y);
    };
    EXPECT_LE(rel_err(via_e(mul), project_mul(s, t, d, c)), 1e-12);
    EXPECT_LE(rel_err(via_e(div), project_div(s, t, d, c)), 1e-12);
    EXPECT_LE(rel_err(via_e(cj), transported_conj(s, d, c)), 1e-12);
    // The literal conjugation only composes as a ratio of scales.
    EXPECT_LE(rel_err(project_conj(s, d, c), rescale_value(project_conj(s, d, e), e, c)), 1e-12);
  }
}

TEST(ScaledNumber, OpsRequireOneStructure) {
  const ScaledNumber a(1.0, StructureScale(1.0));
  const ScaledNumber b(1.0, StructureScale(2.0));
  EXPECT_THROW((void)(a + b), StructureMismatchError);
  EXPECT_THROW((void)(a * b), StructureMismatchError);
  EXPECT_THROW((void)(a / ScaledNumber(0.0, StructureScale(1.0))), DivisionByZeroError);
  EXPECT_THROW(ScaledNumber(std::nan(""), StructureScale(1.0)), InvalidValueError);
}

TEST(ScaledNumber, ZeroIsTheOnlyScaleInvariantValue) {
  AnnulusSampler sample(19);
  const ScaledNumber zero(0.0, StructureScale(1.0));
  for (int i = 0; i < 50; ++i) {
    const StructureScale c(sample());
    const StructureScale d(sample());
    EXPECT_EQ(value_map(zero, c), Complex(0.0));
    const ScaledNumber b(sample(), StructureScale(1.0));
    if (!(c == d)) {
      EXPECT_NE(value_map(b, c), value_map(b, d));
    }
  }
}

TEST(NaturalSubset, Values) {
  EXPECT_EQ(natural_subset_value(2, 2, 1), std::make_pair(std::uint64_t{1}, std::uint64_t{2}));
  EXPECT_EQ(natural_subset_value(12, 6, 3), std::make_pair(std::uint64_t{2}, std::uint64_t{4}));
  EXPECT_EQ(natural_subset_value(0, 5, 1), std::make_pair(std::uint64_t{0}, std::uint64_t{0}));
  EXPECT_THROW((void)natural_subset_value(3, 2, 1), NotAMemberError);
  EXPECT_THROW((void)natural_subset_value(12, 6, 4), NotAMemberError);
  EXPECT_THROW(NaturalSubset(0), NotAMemberError);
}

TEST(NaturalSubset, CrossScaleIdentityIsExact) {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<std::uint64_t> small(1, 12);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = small(rng);
    const std::uint64_t m = n * small(rng);
    const std::uint64_t j = m * small(rng);
    const auto [vm, vn] = natural_subset_value(j, m, n);
    EXPECT_EQ(m * vm, n * vn);
    EXPECT_EQ(m * vm, j);
  }
}

}  // namespace
}  // namespace scaleqm
