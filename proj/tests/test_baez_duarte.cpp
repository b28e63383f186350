#include <gtest/gtest.h>

#include <vector>

#include "rhlab/baez_duarte.hpp"
#include "rhlab/kernel/zeta.hpp"
#include "support.hpp"

using namespace rhlab;
using namespace rhlab::baez_duarte;
using rhlab::testing::lit;
using rhlab::testing::within;

namespace {

std::vector<int> mobius(std::size_t n) {
  std::vector<int> mu(n + 1, 1);
  std::vector<bool> composite(n + 1, false);
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p; m <= n; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = -mu[m];
    }
    for (std::size_t m = p * p; m <= n; m += p * p) mu[m] = 0;
  }
  return mu;
}

// c_k = sum_n mu(n)/n^2 (1 - 1/n^2)^k, split at N: the head is summed
// directly, the tail is expanded binomially with r_j = sum_{n>N} mu(n) n^{-2j-2}
// = 1/zeta(2j+2) - sum_{n<=N} mu(n) n^{-2j-2}. Since r_j ~ N^{-2j-1} the
// binomial sum converges without cancellation, and 1/zeta comes from the
// Euler-Maclaurin evaluator instead of the even-zeta table.
BigReal ck_mobius(std::size_t k, int digits) {
  const std::size_t cut = 1000;
  const auto mu = mobius(cut);
  // |r_j| <= N^{-2j-1}; stop once C(k,j) N^{-2j-1} < 10^{-(digits+10)} and
  // carry enough digits that r_j times the largest binomial is still exact.
  std::size_t j_max = 0;
  double log_binom = 0;
  double log_binom_max = 0;
  while (j_max < k && log_binom - (2.0 * j_max + 1) * 3.0 > -(digits + 10.0)) {
    log_binom += std::log10(static_cast<double>(k - j_max) / static_cast<double>(j_max + 1));
    log_binom_max = std::max(log_binom_max, log_binom);
    ++j_max;
  }
  const int w = digits + 20 + static_cast<int>(std::ceil(log_binom_max));

  BigReal head(w);
  for (std::size_t n = 1; n <= cut; ++n) {
    if (mu[n] == 0) continue;
    const BigReal inv_sq = BigReal(1L, w) / BigReal(static_cast<long>(n * n), w);
    const BigReal term = inv_sq * pow(1L - inv_sq, static_cast<long>(k));
    if (mu[n] > 0) {
      head += term;
    } else {
      head -= term;
    }
  }
  BigReal tail(w);
  mpz_class binom = 1;
  for (std::size_t j = 0; j <= j_max; ++j) {
    const long s = static_cast<long>(2 * j + 2);
    BigReal partial(w);
    for (std::size_t n = 1; n <= cut; ++n) {
      if (mu[n] == 0) continue;
      const BigReal t = pow(BigReal(static_cast<long>(n), w), -s);
      if (mu[n] > 0) {
        partial += t;
      } else {
        partial -= t;
      }
    }
    const BigReal inv_zeta = 1L / kernel::zeta_dirichlet(static_cast<double>(s), w).re();
    const BigReal term = (inv_zeta - partial) * BigReal(binom, w);
    if (j % 2 == 0) {
      tail += term;
    } else {
      tail -= term;
    }
    binom = binom * static_cast<unsigned long>(k - j) / static_cast<unsigned long>(j + 1);
  }
  return head + tail;
}

}  // namespace

TEST(Ck, FirstValues) {
  const auto table = kernel::ZetaEvenTable::build(2, 60);
  EXPECT_TRUE(within(ck(0, 40), 6L / pow(BigReal::pi(60), 2L), -40));
  EXPECT_TRUE(within(ck(1, 40), table.inverse(1) - table.inverse(2), -40));
  EXPECT_NEAR(ck(1, 20).to_double(), -0.3160113, 1e-7);
}

TEST(Ck, MatchesMobiusOracle) {
  for (std::size_t k : {2u, 10u, 100u, 500u, 2000u}) {
    EXPECT_TRUE(within(ck(k, 30), ck_mobius(k, 30), -30)) << "k=" << k;
  }
}

TEST(Ck, ReferenceValues) {
  // Independent 60-digit evaluations.
  EXPECT_TRUE(within(ck(10, 20), lit("-0.0691390655051096"), -16));
  EXPECT_TRUE(within(ck(100, 20), lit("-0.00147737763415939"), -17));
  EXPECT_TRUE(within(ck(500, 20), lit("-6.39342675614993e-5"), -18));
}

TEST(Ck, BudgetErrorNamesMinimum) {
  const auto table = kernel::ZetaEvenTable::build(101, 60);
  try {
    ck_with_table(100, 40, table);
    FAIL();
  } catch (const BudgetError& e) {
    EXPECT_EQ(e.minimum_digits(), 51);
    EXPECT_EQ(budget_digits(100), 51);
  }
  EXPECT_NO_THROW(ck_with_table(100, 51, table));
}

TEST(Ck, TableTooSmallRejected) {
  const auto table = kernel::ZetaEvenTable::build(10, 60);
  EXPECT_THROW(ck_with_table(20, 60, table), DomainError);
}

TEST(CkRange, MatchesSingleCalls) {
  const auto series = ck_range(0, 1, 1, 30);
  ASSERT_EQ(series.size(), 2u);
  EXPECT_TRUE(series.entries()[0].value == ck(0, 30));
  EXPECT_TRUE(series.entries()[1].value == ck(1, 30));

  const auto wide = ck_range(0, 300, 13, 30);
  for (const auto& e : wide.entries()) {
    const auto own = kernel::ZetaEvenTable::build(e.k + 1, e.precision_used);
    EXPECT_TRUE(e.value == ck_with_table(e.k, e.precision_used, own)) << "k=" << e.k;
  }
}

TEST(CkRange, IndependentOfThreadCount) {
  const auto one = ck_range(0, 400, 3, 25, 1);
  const auto four = ck_range(0, 400, 3, 25, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one.entries()[i].k, four.entries()[i].k);
    EXPECT_TRUE(one.entries()[i].value == four.entries()[i].value) << i;
    EXPECT_EQ(to_exact_string(one.entries()[i].value), to_exact_string(four.entries()[i].value));
  }
}

TEST(CkRange, BudgetLawAndOrdering) {
  const auto series = ck_range(5, 700, 35, 20);
  std::size_t previous = 0;
  for (const auto& e : series.entries()) {
    EXPECT_GE(e.precision_used, budget_digits(e.k));
    EXPECT_GE(e.precision_used, 0.30103 * static_cast<double>(e.k) + 20);
    if (e.k != series.entries().front().k) {
      EXPECT_GT(e.k, previous);
    }
    previous = e.k;
  }
}

TEST(CkRange, DualPrecision) {
  const int p = 25;
  const auto lo = ck_range(0, 600, 17, p);
  const auto hi = ck_range(0, 600, 17, p + 20);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    EXPECT_TRUE(within(lo.entries()[i].value, hi.entries()[i].value, -p)) << lo.entries()[i].k;
  }
}

TEST(CkRange, PolicyBelowBudgetRejected) {
  EXPECT_THROW(ck_range(0, 200, 1, [](std::size_t) { return 30; }), BudgetError);
  EXPECT_THROW(ck_range(5, 4, 1, 20), DomainError);
  EXPECT_THROW(ck_range(0, 4, 0, 20), DomainError);
}

TEST(CkSeries, EnvelopeRecomputable) {
  const auto series = ck_range(100, 400, 10, 20);
  const auto stat = series.envelope(100, 400);
  ASSERT_TRUE(stat.has_value());
  EXPECT_EQ(stat->samples, series.size());
  double best = 0;
  std::size_t arg = 0;
  for (const auto& e : series.entries()) {
    const double v = std::fabs(e.value.to_double()) * std::pow(static_cast<double>(e.k), 0.75);
    if (v > best) {
      best = v;
      arg = e.k;
    }
  }
  EXPECT_EQ(stat->argmax, arg);
  EXPECT_NEAR(stat->sup.to_double(), best, best * 1e-12);
  EXPECT_FALSE(series.envelope(5000, 6000).has_value());
}

TEST(AlternatingSum, ClosedForm) {
  EXPECT_EQ(to_string(alternating_sum_closed(16), 16), "0.7825279853253842");
  const BigReal lo = alternating_sum_closed(30);
  const BigReal hi = alternating_sum_closed(50);
  EXPECT_TRUE(within(lo, hi, -30));
  EXPECT_TRUE(within(hi, lit("0.78252798532538423457"), -20));
  const auto table = kernel::ZetaEvenTable::build(1, 30);
  EXPECT_LT(table.inverse(1) / 2L, lo);
}

TEST(AlternatingSum, DirectAgreesWithClosed) {
  const BigReal closed = alternating_sum_closed(30);
  const auto direct = alternating_sum_direct(2000, 4);
  EXPECT_LE(abs(direct.value - closed).to_double(), 1e-3);
  EXPECT_LE(abs(direct.value - closed).to_double(), direct.uncertainty.to_double());
}

TEST(AlternatingSum, RawPartialSumsBracket) {
  // From k = 8 on the partial sums alternate about the closed value.
  const BigReal closed = alternating_sum_closed(30);
  for (std::size_t n = 10; n < 40; ++n) {
    const auto a = alternating_sum_direct(n, 0);
    const auto b = alternating_sum_direct(n + 1, 0);
    EXPECT_LT(((a.value - closed) * (b.value - closed)).sign(), 0) << n;
  }
}

TEST(AlternatingSum, UncertaintyCoversError) {
  const BigReal closed = alternating_sum_closed(30);
  int covered = 0;
  int total = 0;
  for (std::size_t n = 10; n <= 60; n += 2) {
    for (std::size_t depth : {0u, 2u, 4u}) {
      const auto r = alternating_sum_direct(n, depth);
      ++total;
      if (r.uncertainty > abs(r.value - closed)) ++covered;
    }
  }
  EXPECT_GE(covered, (9 * total + 9) / 10);
  EXPECT_THROW(alternating_sum_direct(9, 4), DomainError);
}
