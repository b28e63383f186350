#include <gtest/gtest.h>

#include <vector>

#include "rhlab/kernel/bernoulli.hpp"
#include "rhlab/kernel/gamma.hpp"
#include "rhlab/kernel/zeta.hpp"
#include "rhlab/kernel/zeta_even.hpp"
#include "support.hpp"

using namespace rhlab;
using namespace rhlab::kernel;
using rhlab::testing::lit;
using rhlab::testing::within;

namespace {

// B_0..B_n from sum_{j=0}^{n} C(n+1, j) B_j = 0.
std::vector<Rational> bernoulli_by_recurrence(std::size_t n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    Rational acc = 0;
    Integer binom = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b[m] = -acc / Rational(binom);
    b[m].canonicalize();
  }
  return b;
}

// Direct partial sum of n^{-2m} with N terms; tail < N^{1-2m}/(2m-1).
BigReal dirichlet_even(std::size_t m, unsigned long terms, int digits) {
  BigReal sum(digits);
  BigReal p(digits);
  for (unsigned long n = terms; n >= 1; --n) {
    mpfr_ui_pow_ui(p.get(), n, 2 * m, MPFR_RNDN);
    mpfr_ui_div(p.get(), 1, p.get(), MPFR_RNDN);
    sum += p;
  }
  return sum;
}

}  // namespace

TEST(Bernoulli, SmallValues) {
  EXPECT_EQ(bernoulli(0), Rational(1));
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(4), Rational(-1, 30));
  EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
}

TEST(Bernoulli, MatchesRecurrenceOracle) {
  const auto oracle = bernoulli_by_recurrence(120);
  for (unsigned n = 0; n <= 120; n += 2) EXPECT_EQ(bernoulli(n), oracle[n]) << "n=" << n;
  for (unsigned n = 3; n <= 119; n += 2) EXPECT_EQ(oracle[n], Rational(0));
}

TEST(Bernoulli, OddIndexRejected) {
  EXPECT_THROW(bernoulli(1), DomainError);
  EXPECT_THROW(bernoulli(7), DomainError);
}

TEST(ZetaEven, ClosedForms) {
  const int d = 50;
  const auto table = ZetaEvenTable::build(4, d);
  const BigReal pi = BigReal::pi(80);
  EXPECT_TRUE(within(table.zeta(1), pow(pi, 2L) / 6L, -d));
  EXPECT_TRUE(within(table.zeta(2), pow(pi, 4L) / 90L, -d));
  EXPECT_TRUE(within(table.zeta(3), pow(pi, 6L) / 945L, -d));
  EXPECT_TRUE(within(table.zeta(4), pow(pi, 8L) / 9450L, -d));
}

TEST(ZetaEven, PrintedFormulaOffByFourToTheM) {
  // Without the (2)^{2m} factor the m = 1 value is pi^2/24, not pi^2/6.
  const BigReal pi = BigReal::pi(30);
  const BigReal printed = pow(pi, 2L) / 6L / 4L;
  const auto table = ZetaEvenTable::build(1, 30);
  EXPECT_TRUE(within(table.zeta(1) / printed, BigReal(4L, 30), -25));
}

TEST(ZetaEven, MatchesDirichletPartialSums) {
  const int d = 40;
  const auto table = ZetaEvenTable::build(300, d);
  ASSERT_LT(ZetaEvenTable::bernoulli_cutoff(working_digits(d)), 300u);
  for (std::size_t m : {10u, 25u, 40u, 41u, 80u, 150u, 299u}) {
    const BigReal oracle = dirichlet_even(m, 2000, 80);
    EXPECT_TRUE(within(table.zeta(m), oracle, -d)) << "m=" << m;
  }
}

TEST(ZetaEven, TableInvariants) {
  const int d = 30;
  const auto table = ZetaEvenTable::build(200, d);
  const BigReal tol = BigReal::pow10(-(d - 2), d);
  for (std::size_t m = 1; m <= table.size(); ++m) {
    EXPECT_GT(table.excess(m), 0L);
    EXPECT_GE(table.zeta(m), 1L);
    EXPECT_LE(table.zeta(m), table.zeta(1));
    if (m > 1) {
      EXPECT_LT(table.excess(m), table.excess(m - 1));
      EXPECT_LE(table.zeta(m), table.zeta(m - 1));
    }
    // Resolvable at the table precision while 4^{-m} > 10^{-d}.
    if (m <= 45) {
      EXPECT_GT(table.zeta(m), 1L);
    }
    EXPECT_LE(abs(table.zeta(m) * table.inverse(m) - 1L), tol);
  }
  // zeta(2m) - 1 ~ 4^{-m}
  const BigReal ratio = table.excess(150) * pow(BigReal(4L, d), 150L);
  EXPECT_TRUE(within(ratio, BigReal(1L, d), -20));
  EXPECT_TRUE(within(table.excess(150) + 1L, table.zeta(150), -d));
}

TEST(ZetaEven, DualPrecision) {
  const auto lo = ZetaEvenTable::build(500, 30);
  const auto hi = ZetaEvenTable::build(500, 50);
  for (std::size_t m = 1; m <= 500; m += 7) {
    EXPECT_TRUE(within(lo.inverse(m), hi.inverse(m), -30)) << m;
  }
}

TEST(ZetaEven, FromValuesValidates) {
  const auto t = ZetaEvenTable::build(5, 20);
  std::vector<BigReal> z, inv;
  for (std::size_t m = 1; m <= 5; ++m) {
    z.push_back(t.excess(m));
    inv.push_back(t.inverse(m));
  }
  EXPECT_NO_THROW(ZetaEvenTable::from_values(20, z, inv));
  auto bad = z;
  std::swap(bad[1], bad[2]);
  EXPECT_THROW(ZetaEvenTable::from_values(20, bad, inv), DomainError);
}

TEST(ZetaDirichlet, KnownValues) {
  const BigComplex z3 = zeta_dirichlet(3.0, 40);
  EXPECT_TRUE(within(z3.re(), lit("1.2020569031595942853997381615114499907649862923405"), -40));
  EXPECT_TRUE(z3.im().is_zero());
  const auto table = ZetaEvenTable::build(2, 40);
  EXPECT_TRUE(within(zeta_dirichlet(2.0, 40).re(), table.zeta(1), -40));
}

TEST(ZetaDirichlet, Errors) {
  EXPECT_THROW(zeta_dirichlet(1.0, 20), PoleError);
  try {
    zeta_dirichlet(1.05, 20);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("margin"), std::string::npos);
  }
  EXPECT_NO_THROW(zeta_dirichlet(1.05, 20, 0.01));
}

TEST(ZetaContinued, AgreesWithDirichlet) {
  const int d = 30;
  for (double s : {2.0, 3.0, 4.0, 2.5}) {
    EXPECT_TRUE(within(zeta_continued(s, d), zeta_dirichlet(s, d), -(d - 2))) << s;
  }
  const BigComplex s(BigReal(2.0, d), BigReal(7.5, d));
  EXPECT_TRUE(within(zeta_continued(s, d), zeta_dirichlet(s, d), -(d - 2)));
}

TEST(ZetaContinued, CriticalLine) {
  EXPECT_TRUE(within(zeta_continued(0.5, 30).re(), lit("-1.4603545088095868128894991525152980125"), -30));
  const BigComplex rho(BigReal(0.5, 30), lit("14.134725141734693790457251983562470270784", 30));
  EXPECT_LT(abs(zeta_continued(rho, 30)).to_double(), 1e-25);
}

TEST(ZetaContinued, Errors) {
  EXPECT_THROW(zeta_continued(1.0, 20), PoleError);
  EXPECT_THROW(zeta_continued(-0.5, 20), DomainError);
  // 1 - 2^{1-s} = 0 at s = 1 + 2 pi i / ln 2.
  const BigReal t = BigReal::pi(30) * 2L / BigReal::log2(30);
  EXPECT_THROW(zeta_continued(BigComplex(BigReal(1L, 30), t), 20), ConditioningError);
}

TEST(ZetaMaslanka, ConvergesAtThree) {
  const BigReal ref = zeta_dirichlet(3.0, 30).re();
  const auto table = ZetaEvenTable::build(121, 80);
  std::vector<double> err;
  for (std::size_t k = 10; k <= 60; k += 10) {
    const BigComplex v = zeta_maslanka(BigComplex(3.0, 0.0, 30), k, 30, &table);
    err.push_back(abs(v.re() - ref).to_double());
  }
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_LE(err[i], err[i - 1]) << i;
  // Measured truncation error at K = 60 (independent high-precision
  // evaluation gives 3.63e-8).
  EXPECT_NEAR(err.back(), 3.63e-8, 0.01e-8);
  const BigComplex far = zeta_maslanka(BigComplex(3.0, 0.0, 30), 120, 30, &table);
  EXPECT_LT(abs(far.re() - ref).to_double(), err.back());
}

TEST(ZetaMaslanka, MatchesContinuationNearZero) {
  const BigComplex v = zeta_maslanka(0.0, 120, 20);
  EXPECT_NEAR(v.re().to_double(), -0.5, 1e-5);
  // Oracle from the continued evaluator, extrapolated from s = 1e-3.
  const double slope = -0.5 * std::log(2.0 * M_PI);  // zeta'(0)
  const double at_small = zeta_continued(1e-3, 20).re().to_double();
  EXPECT_NEAR(at_small - 1e-3 * slope, -0.5, 1e-5);
}

TEST(ZetaMaslanka, ComplexArgument) {
  const BigComplex s(BigReal(2.0, 30), BigReal(1.0, 30));
  const BigComplex v = zeta_maslanka(s, 80, 30);
  EXPECT_LT(abs(v - zeta_dirichlet(s, 30)).to_double(), 1e-6);
}

TEST(ZetaMaslanka, PoleRejected) { EXPECT_THROW(zeta_maslanka(1.0, 10, 20), PoleError); }

TEST(Gamma, ClosedForms) {
  const int d = 40;
  EXPECT_TRUE(within(gamma_complex(BigComplex(1.0, 0.0, d), d).re(), BigReal(1L, d), -d));
  EXPECT_TRUE(within(gamma_complex(BigComplex(0.5, 0.0, d), d).re(), sqrt(BigReal::pi(60)), -d));
  EXPECT_TRUE(within(gamma_complex(BigComplex(5.0, 0.0, d), d).re(), BigReal(24L, d), -(d - 1)));
  // |Gamma(i)|^2 = pi / (sinh pi)
  const BigComplex gi = gamma_complex(BigComplex(0.0, 1.0, d), d);
  const BigReal pi = BigReal::pi(60);
  const BigReal sinh_pi = (exp(pi) - exp(-pi)) / 2L;
  EXPECT_TRUE(within(norm(gi), pi / sinh_pi, -(d - 2)));
}

TEST(Gamma, RecurrenceAndReflection) {
  const int d = 30;
  for (auto [re, im] : std::vector<std::pair<double, double>>{{0.25, 3.0}, {-2.5, 0.7}, {7.1, -20.0}}) {
    const BigComplex z(re, im, d);
    const BigComplex g = gamma_complex(z, d);
    const BigComplex g1 = gamma_complex(z + 1L, d);
    EXPECT_LE(abs(g1 - z * g).to_double(), 1e-28 * std::max(1.0, abs(g1).to_double())) << re;
  }
  const BigComplex z(0.3, 0.4, d);
  const BigComplex lhs = gamma_complex(z, d) * gamma_complex(1L - z, d);
  const BigComplex pz = z * BigReal::pi(50);
  // sin(pi z) for complex z
  const BigComplex iz(-pz.im(), pz.re());
  const BigComplex sin_pz = (exp(iz) - exp(-iz)) / BigComplex(BigReal(0L, 50), BigReal(2L, 50));
  EXPECT_TRUE(within(lhs, BigComplex(BigReal::pi(50)) / sin_pz, -(d - 2)));
}

TEST(Gamma, Poles) {
  EXPECT_THROW(gamma_complex(BigComplex(0.0, 0.0, 20), 20), PoleError);
  EXPECT_THROW(gamma_complex(BigComplex(-3.0, 0.0, 20), 20), PoleError);
}

TEST(Kernel, DualPrecisionOracle) {
  const int p = 25;
  const BigComplex s(BigReal(0.5, 60), BigReal(21.0, 60));
  EXPECT_TRUE(within(zeta_continued(s, p), zeta_continued(s, p + 20), -p));
  EXPECT_TRUE(within(zeta_dirichlet(2.5, p), zeta_dirichlet(2.5, p + 20), -p));
  const BigComplex z(BigReal(0.25, 60), BigReal(12.0, 60));
  const BigComplex g_lo = gamma_complex(z, p);
  EXPECT_LE(abs(g_lo - gamma_complex(z, p + 20)).to_double(), 1e-25 * abs(g_lo).to_double());
}
