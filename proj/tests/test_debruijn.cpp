#include <gtest/gtest.h>

#include <cmath>

#include "rhlab/debruijn.hpp"
#include "rhlab/li_coefficients.hpp"
#include "support.hpp"

using namespace rhlab;
using namespace rhlab::debruijn;
using rhlab::testing::within;

namespace {

const li::ZeroTable& table() {
  static const li::ZeroTable t = li::load_zeros(RHLAB_ZERO_FILE);
  return t;
}

double phi_direct(double t) {
  double sum = 0;
  for (int n = 1; n <= 3; ++n) {
    const double n2 = n * n;
    sum += (2 * M_PI * M_PI * n2 * n2 * std::exp(9 * t) - 3 * M_PI * n2 * std::exp(5 * t)) *
           std::exp(-M_PI * n2 * std::exp(4 * t));
  }
  return sum;
}

// -1/8 pi^{-1/4} Gamma(1/4) zeta(1/2) from MPFR's own special functions.
BigReal xi_zero_closed(int digits) {
  BigReal g(digits), z(digits);
  const BigReal quarter(0.25, digits), half(0.5, digits);
  mpfr_gamma(g.get(), quarter.get(), MPFR_RNDN);
  mpfr_zeta(z.get(), half.get(), MPFR_RNDN);
  return -(pow(BigReal::pi(digits), -quarter) * g * z) / 8L;
}

}  // namespace

TEST(Phi, AgainstDirectSum) {
  for (double t : {0.0, 0.05, 0.2, 0.5}) {
    EXPECT_NEAR(phi(t, 20).value.to_double(), phi_direct(t), 1e-12) << t;
  }
  EXPECT_NEAR(phi(0.0, 20).value.to_double(), 0.4467, 1e-4);
}

TEST(Phi, DecayAndTruncation) {
  const auto p3 = phi(3.0, 20);
  EXPECT_LT(p3.value, BigReal::pow10(-100, 20));
  EXPECT_GT(p3.value, 0L);
  EXPECT_EQ(p3.terms_used, 1u);
  EXPECT_LE(phi(2.0, 20).terms_used, phi(0.0, 20).terms_used);
  EXPECT_LE(phi(0.0, 20).terms_used, phi(0.0, 60).terms_used);
  EXPECT_THROW(phi(-0.1, 20), DomainError);
}

TEST(Phi, PositiveOnQuadratureNodes) {
  const double cutoff = h_cutoff(1.0, 20);
  for (int j = 0; j <= 256; ++j) EXPECT_GT(phi(cutoff * j / 256.0, 20).value, 0L) << j;
}

TEST(Xi, OriginClosedForm) {
  EXPECT_TRUE(within(xi_on_line(0.0, 30), xi_zero_closed(50), -29));
  EXPECT_TRUE(within(xi_on_line(0.0, 45), xi_zero_closed(60), -44));
  EXPECT_NEAR(xi_on_line(0.0, 20).to_double(), 0.4971, 1e-4);
}

TEST(Xi, VanishesAtTableOrdinates) {
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_LT(abs(xi_on_line(table().gammas[k], 20)).to_double(), 1e-6) << k;
  }
}

TEST(Xi, EvenSymmetry) {
  for (double z : {0.3, 3.7, 11.0, 20.5, 33.3}) {
    const BigReal a = xi_on_line(z, 25);
    const BigReal b = xi_on_line(-z, 25);
    EXPECT_LE(abs(a - b), abs(a) * BigReal::pow10(-22, 25)) << z;
  }
}

TEST(Xi, DualPrecision) {
  const BigReal lo = xi_on_line(10.0, 20);
  const BigReal hi = xi_on_line(10.0, 40);
  EXPECT_LE(abs(lo - hi), abs(hi) * BigReal::pow10(-19, 40));
}

TEST(HLambda, OriginIsXiOverEight) {
  const auto h = h_lambda(0.0, 0.0, 20);
  EXPECT_NEAR(h.value.to_double(), 0.0621, 1e-4);
  EXPECT_TRUE(within(h.value, xi_on_line(0.0, 30) / 8L, -19));
}

TEST(HLambda, KeystoneConsistency) {
  const HQuadrature quad(0.0, 20);
  const BigReal limit = BigReal::pow10(-6, 20);
  BigReal worst(20);
  for (int i = 0; i <= 40; ++i) {
    const double z = 1.25 * i;
    const BigReal gap = abs(quad.evaluate(z).value - xi_on_line(z / 2.0, 25) / 8L);
    worst = max(worst, gap);
  }
  EXPECT_LE(worst, limit);
  EXPECT_LE(worst, BigReal::pow10(-18, 20));
}

TEST(HLambda, NodeDoublingStability) {
  for (double lambda : {-1.0, 0.0, 0.5, 1.0}) {
    const HQuadrature quad(lambda, 20);
    for (double z : {0.0, 17.0, 45.0, 90.0}) {
      const auto base = quad.evaluate(z);
      const auto finer = quad.evaluate(z, 1);
      EXPECT_GE(base.quadrature_error, 0L);
      EXPECT_GT(finer.nodes, base.nodes);
      EXPECT_LE(abs(finer.value - base.value), base.quadrature_error * 2L) << lambda << " " << z;
    }
  }
}

TEST(HLambda, NegativeLambdaDamps) {
  EXPECT_LT(abs(h_lambda(30.0, -1.0, 20).value), abs(h_lambda(30.0, 0.0, 20).value));
}

TEST(HLambda, LambdaAboveOneRejected) {
  EXPECT_THROW(h_lambda(1.0, 1.01, 20), DomainError);
  EXPECT_NO_THROW(h_lambda(1.0, 1.0, 20));
  EXPECT_GT(h_cutoff(1.0, 20), h_cutoff(0.0, 20) - 1e-12);
}

TEST(ZeroScan, FirstZero) {
  const auto zs = real_zero_scan(0.0, 1.0, 40.0, 0.5);
  ASSERT_EQ(zs.size(), 1u);
  EXPECT_NEAR(zs[0].mid(), 2.0 * table().gammas[0].to_double(), 1e-4);
  EXPECT_NEAR(zs[0].mid(), 28.269451, 1e-5);
}

TEST(ZeroScan, MatchesTableToTen) {
  const auto zs = real_zero_scan(0.0, 1.0, 100.0, 0.5);
  ASSERT_EQ(zs.size(), 10u);
  for (std::size_t k = 0; k < zs.size(); ++k) {
    EXPECT_LE(zs[k].hi - zs[k].lo, kZeroTolerance);
    EXPECT_NEAR(zs[k].mid(), 2.0 * table().gammas[k].to_double(), 1e-4) << k;
  }
}

TEST(ZeroScan, ThreadIndependentAndEdges) {
  const auto a = real_zero_scan(0.5, 20.0, 60.0, 0.5, 20, 1);
  const auto b = real_zero_scan(0.5, 20.0, 60.0, 0.5, 20, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].lo, b[i].lo);
  EXPECT_TRUE(real_zero_scan(0.0, 10.0, 10.0, 0.5).empty());
  EXPECT_TRUE(real_zero_scan(0.0, 10.0, 5.0, 0.5).empty());
  EXPECT_THROW(real_zero_scan(0.0, 1.0, 10.0, 0.0), DomainError);
}
