#include <gtest/gtest.h>

#include <sstream>

#include "rhlab/kernel/zeta.hpp"
#include "rhlab/li_coefficients.hpp"
#include "support.hpp"

using namespace rhlab;
using namespace rhlab::li;
using rhlab::testing::lit;
using rhlab::testing::within;

namespace {

const ZeroTable& table() {
  static const ZeroTable t = load_zeros(RHLAB_ZERO_FILE);
  return t;
}

// lambda_1 = 1 + gamma/2 - ln(4 pi)/2.
BigReal lambda1_closed(int digits) {
  return 1L + BigReal::euler_gamma(digits) / 2L - log(BigReal::pi(digits) * 4L) / 2L;
}

// With |1 - 1/rho| = 1 on the critical line, each pair contributes
// 4 sin^2(n atan(1 / (2 gamma))).
BigReal lambda_by_angles(std::size_t n, const ZeroTable& zeros, int digits) {
  BigReal sum(digits);
  for (const auto& g : zeros.gammas) {
    BigReal angle(digits);
    const BigReal x = 1L / (g.with_digits(digits) * 2L);
    mpfr_atan(angle.get(), x.get(), MPFR_RNDN);
    const BigReal s = sin(angle * static_cast<long>(n));
    sum += s * s * 4L;
  }
  return sum;
}

std::string numbered(std::size_t count, double start = 15.0) {
  std::ostringstream os;
  for (std::size_t i = 0; i < count; ++i) os << start + static_cast<double>(i) << "\n";
  return os.str();
}

}  // namespace

TEST(ZeroTableParse, FormatEcho) {
  const auto t = parse_zeros("14.134725\n21.022040\n");
  ASSERT_EQ(t.count(), 2u);
  EXPECT_EQ(to_string(t.gammas[0], 8), "14.134725");
  EXPECT_EQ(to_string(t.gammas[1], 8), "21.022040");
}

TEST(ZeroTableParse, CommentsAndWhitespace) {
  const auto t = parse_zeros("# header\n\n  14.134725  # first\n\t21.022040\r\n#\n");
  EXPECT_EQ(t.count(), 2u);
}

TEST(ZeroTableParse, KeepsAllInputDigits) {
  const std::string text = "14.13472514173469379045725198356247";
  const auto t = parse_zeros(text + "\n");
  EXPECT_EQ(to_string(t.gammas[0], 34), text);
}

TEST(ZeroTableParse, Errors) {
  try {
    parse_zeros("21.022040\n14.134725\n");
    FAIL() << "shuffled table accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_zeros("# c\n14.5\n14.5\n");
    FAIL() << "repeated ordinate accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_zeros("14.2\nabc\n"), ParseError);
  EXPECT_THROW(parse_zeros("13.9\n"), ParseError);
  EXPECT_THROW(parse_zeros(""), ParseError);
  EXPECT_THROW(parse_zeros("# only a comment\n"), ParseError);
  EXPECT_THROW(load_zeros("/nonexistent/zeros.txt"), DomainError);
}

TEST(ZeroTableFile, GeneratedTable) {
  const auto& t = table();
  EXPECT_GE(t.count(), 100'000u);
  EXPECT_NEAR(t.gammas[0].to_double(), 14.134725, 1e-6);
  // Independent check: zeta vanishes at the listed ordinates.
  for (std::size_t k : {0u, 1u, 9u, 99u}) {
    const BigComplex s(BigReal(0.5, 30), t.gammas[k].with_digits(30));
    EXPECT_LT(abs(kernel::zeta_continued(s, 20)).to_double(), 1e-6) << k;
  }
}

TEST(LiLambda, ZeroIndex) {
  const auto z = parse_zeros(numbered(100));
  const auto e = li_lambda(0, z, 20);
  EXPECT_TRUE(e.value.is_zero());
  EXPECT_TRUE(e.tail_bound.is_zero());
}

TEST(LiLambda, NeedsHundredZeros) {
  EXPECT_THROW(li_lambda(1, parse_zeros(numbered(99)), 20), DomainError);
  EXPECT_NO_THROW(li_lambda(1, parse_zeros(numbered(100)), 20));
}

TEST(LiLambda, MatchesAngleForm) {
  const auto z = truncate(table(), 2000);
  const auto range = li_lambda_range(12, z, 30);
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    const BigReal oracle = lambda_by_angles(n, z, 60);
    EXPECT_TRUE(within(range[n - 1].value, oracle, -28)) << n;
    EXPECT_TRUE(within(li_lambda(n, z, 30).value, oracle, -28)) << n;
  }
}

TEST(LiLambda, LambdaOneAgainstClosedValue) {
  const auto e = li_lambda(1, table(), 30);
  EXPECT_NEAR(e.value.to_double(), 0.0231, 5e-4);
  // The truncated sum falls short of the full value by no more than the tail bound.
  const BigReal exact = lambda1_closed(30);
  EXPECT_LT(e.value, exact);
  EXPECT_LT(exact, e.value + e.tail_bound);
}

TEST(LiLambda, DoublingWithinTailBound) {
  const auto& full = table();
  const auto half = truncate(full, full.count() / 2);
  const auto a = li_lambda(1, half, 30);
  const auto b = li_lambda(1, full, 30);
  EXPECT_GT(b.value, a.value);
  EXPECT_LT(b.value - a.value, a.tail_bound);
  EXPECT_LT(b.tail_bound, a.tail_bound);
}

TEST(LiLambda, PositiveThroughTwenty) {
  const auto estimates = li_lambda_range(20, table(), 30);
  ASSERT_EQ(estimates.size(), 20u);
  for (const auto& e : estimates) {
    EXPECT_GE(e.tail_bound, 0L);
    EXPECT_TRUE(e.positive()) << e.n;
    EXPECT_EQ(e.zeros_used, table().count());
  }
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    EXPECT_GT(estimates[i].value, estimates[i - 1].value);
    EXPECT_GT(estimates[i].tail_bound, estimates[i - 1].tail_bound);
  }
}

TEST(LiLambda, ThreadCountDoesNotChangeBits) {
  const auto z = truncate(table(), 20'000);
  const auto one = li_lambda_range(6, z, 25, 1);
  const auto four = li_lambda_range(6, z, 25, 4);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_TRUE(one[i].value == four[i].value);
  EXPECT_TRUE(li_lambda(9, z, 25, 1).value == li_lambda(9, z, 25, 3).value);
}

TEST(LiLambda, ConjugatePairingResidue) {
  const int digits = 25;
  const auto z = truncate(table(), 3000);
  for (std::size_t n : {1u, 7u, 20u}) {
    const BigComplex naive = li_lambda_complex(n, z, digits);
    EXPECT_LE(abs(naive.im()), BigReal::pow10(-(digits - 2), digits)) << n;
    EXPECT_TRUE(within(naive.re(), li_lambda(n, z, digits).value, -(digits - 2)));
  }
}

TEST(LiLambda, TailBoundShape) {
  const BigReal t = lit("1000");
  EXPECT_TRUE(li_tail_bound(0, t, 20).is_zero());
  EXPECT_LT(li_tail_bound(5, t, 20), li_tail_bound(6, t, 20));
  EXPECT_GT(li_tail_bound(5, lit("100"), 20), li_tail_bound(5, t, 20));
}
