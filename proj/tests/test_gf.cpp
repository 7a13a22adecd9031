#include <gtest/gtest.h>

#include "nbldpc/error.hpp"
#include "nbldpc/gf.hpp"
#include "support/oracles.hpp"

using namespace nbldpc;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Field, MultiplicationMatchesCarrylessProduct) {
  for (int q = kMinQ; q <= kMaxQ; ++q) {
    const Field f = Field::build(q);
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(f.order()); ++a) {
      for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(f.order()); ++b) {
        ASSERT_EQ(f.mul(static_cast<Symbol>(a), static_cast<Symbol>(b)), oracle::clmul(a, b, f.poly(), q))
            << "q=" << q << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Field, AxiomsExhaustiveSmallFields) {
  for (int q = 2; q <= 4; ++q) {
    const Field f = Field::build(q);
    const auto g = static_cast<Symbol>(f.order());
    for (Symbol a = 0; a < g; ++a) {
      EXPECT_EQ(f.add(a, 0), a);
      EXPECT_EQ(f.add(a, a), 0);
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.mul(a, 0), 0);
      if (a != 0) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      for (Symbol b = 0; b < g; ++b) {
        EXPECT_EQ(f.add(a, b), f.add(b, a));
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        if (b != 0) EXPECT_EQ(f.mul(f.div(a, b), b), a);
        for (Symbol c = 0; c < g; ++c) {
          EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
          EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST(Field, ExpLogRoundTrip) {
  for (int q = kMinQ; q <= kMaxQ; ++q) {
    const Field f = Field::build(q);
    const auto g = static_cast<std::uint32_t>(f.order());
    for (Symbol a = 1; a < g; ++a) EXPECT_EQ(f.exp(f.log(a)), a);
    for (std::uint32_t k = 0; k < g - 1; ++k) EXPECT_EQ(f.log(f.exp(k)), k);
    EXPECT_EQ(f.exp(g - 1), 1);
    for (Symbol a = 0; a < g; ++a) EXPECT_EQ(f.from_power_index(f.power_index(a)), a);
  }
}

TEST(Field, Errors) {
  expect_error(ErrorKind::kUnsupportedQ, [] { Field::build(1); });
  expect_error(ErrorKind::kUnsupportedQ, [] { Field::build(9); });
  // x^4 + x^3 + x^2 + x + 1 is irreducible but alpha has order 5.
  expect_error(ErrorKind::kNonPrimitivePolynomial, [] { Field::build(4, 0b11111); });
  expect_error(ErrorKind::kNonPrimitivePolynomial, [] { Field::build(4, 0b1011); });
  const Field f = Field::build(3);
  expect_error(ErrorKind::kDivisionByZero, [&] { f.inv(0); });
  expect_error(ErrorKind::kDivisionByZero, [&] { f.div(3, 0); });
}

TEST(Field, AlternatePrimitivePolynomial) {
  const Field f = Field::build(4, 0b11001);
  EXPECT_EQ(f.poly(), 0b11001U);
  EXPECT_FALSE(f == Field::build(4));
  for (Symbol a = 1; a < 16; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
}

TEST(Field, Gf4PowerNotation) {
  const Field f = Field::build(2);
  // alpha = x, alpha^2 = x + 1.
  EXPECT_EQ(f.exp(1), 2);
  EXPECT_EQ(f.exp(2), 3);
  EXPECT_EQ(f.mul(2, 2), 3);
  EXPECT_EQ(f.format_power(0), "0");
  EXPECT_EQ(f.format_power(1), "1");
  EXPECT_EQ(f.format_power(2), "α");
  EXPECT_EQ(f.format_power(3), "α^2");
}
