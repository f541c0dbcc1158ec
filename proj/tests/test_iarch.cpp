#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "conegauge/models/estimation.hpp"
#include "conegauge/models/iarch.hpp"
#include "support/oracles.hpp"

using namespace conegauge;

namespace {

double eta_by_compositions(const IarchSpec& s, int k, int n) {
  return oracle::eta_by_compositions(s.a, [&](int t) { return std::exp(log_noise(s, t)); }, k, n);
}

}  // namespace

TEST(IarchEta, Examples) {
  IarchSpec e{{1.0}, 0, ConstantNoise{std::exp(1.0)}};
  auto t = iarch_eta(e, 10, 10);
  for (int k = 1; k <= 10; ++k) {
    EXPECT_NEAR(t.eta(k, k), std::exp(static_cast<double>(k)), 1e-9 * std::exp(k));
    EXPECT_DOUBLE_EQ(t.h(k, k), -static_cast<double>(k));
  }

  IarchSpec two{{0.0, 1.0}, 3, LognormalNoise{0.4}};
  auto t2 = iarch_eta(two, 6, 12);
  for (int k = 0; k <= 6; ++k)
    for (int n = 0; n <= 12; ++n) {
      if (n == 2 * k) {
        EXPECT_GT(t2.eta(k, n), 0.0);
      } else {
        EXPECT_EQ(t2.eta(k, n), 0.0);
        EXPECT_TRUE(std::isinf(t2.h(k, n)));
      }
    }

  IarchSpec half{{0.5, 0.5}};
  EXPECT_DOUBLE_EQ(iarch_eta(half, 2, 3).eta(2, 3), 0.5);
}

TEST(IarchEta, MatchesCompositionEnumeration) {
  std::vector<IarchSpec> specs{
      {{0.5, 0.5}, 1, LognormalNoise{0.5}},
      {{0.2, 0.0, 0.5, 0.3}, 2, ExponentialNoise{}},
      {{1.0}, 3, LognormalNoise{1.0}},
      {{0.1, 0.2, 0.3, 0.4}, 4, ConstantNoise{1.3}},
  };
  for (const auto& s : specs) {
    auto t = iarch_eta(s, 12, 12);
    auto lin = iarch_eta_linear(s, 12, 12);
    for (int k = 0; k <= 12; ++k)
      for (int n = 0; n <= 12; ++n) {
        const double truth = (k == 0 && n == 0) ? 1.0 : eta_by_compositions(s, k, n);
        if (truth == 0) {
          EXPECT_EQ(t.eta(k, n), 0.0);
          EXPECT_EQ(lin[k][n], 0.0);
          continue;
        }
        EXPECT_LE(std::abs(t.eta(k, n) - truth), 1e-12 * truth) << k << "," << n;
        EXPECT_LE(std::abs(lin[k][n] - truth), 1e-12 * truth) << k << "," << n;
      }
  }
}

TEST(IarchEta, ZeroExactlyOutsideSemigroup) {
  std::vector<double> a{0.0, 0.6, 0.0, 0.0, 0.4};
  IarchSpec s{a, 9, LognormalNoise{0.3}};
  auto t = iarch_eta(s, 8, 30);
  for (int k = 0; k <= 8; ++k)
    for (int n = 0; n <= 30; ++n) EXPECT_EQ(t.eta(k, n) > 0, iarch_in_semigroup(a, k, n)) << k << "," << n;
}

TEST(IarchEta, SubadditiveUnderShift) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    IarchSpec s{{0.3, 0.5, 0.2}, rng(), LognormalNoise{0.8}};
    auto whole = iarch_eta(s, 20, 60);
    for (int t = 0; t < 30; ++t) {
      const int k = 1 + rng() % 8, l = 1 + rng() % 8;
      const int m = k + rng() % (2 * k + 1), n = l + rng() % (2 * l + 1);
      auto head = iarch_eta(s, k, m);
      auto tail = iarch_eta(shifted(s, m), l, n);
      const double lhs = whole.h(k + l, m + n);
      const double rhs = head.h(k, m) + tail.h(l, n);
      EXPECT_LE(lhs, rhs + 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST(IarchEta, LogDomainSurvivesUnderflow) {
  // a = (1/2, 1/2), ε ≡ c: η_{k,n} = C(k, n-k) (c/2)^k, far below the double range here.
  const double c = 0.05;
  const int k = 300, n = 450;
  IarchSpec s{{0.5, 0.5}, 5, ConstantNoise{c}};
  auto t = iarch_eta(s, k, n);
  auto lin = iarch_eta_linear(s, k, n);
  const double log_binom = std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - std::lgamma(2.0 * k - n + 1.0);
  const double truth = -(log_binom + k * std::log(c / 2));
  EXPECT_EQ(lin[k][n], 0.0);
  EXPECT_NEAR(t.h(k, n), truth, 1e-9 * truth);
}

TEST(IarchEta, Validation) {
  EXPECT_THROW(iarch_eta(IarchSpec{{}}, 1, 1), InputError);
  EXPECT_THROW(iarch_eta(IarchSpec{{-0.1, 1.1}}, 1, 1), InputError);
  IarchSpec sum{{0.3, 0.3}};
  sum.enforce_unit_sum = true;
  EXPECT_THROW(iarch_eta(sum, 1, 1), InputError);
  EXPECT_THROW(iarch_eta(IarchSpec{{1.0}, 0, ConstantNoise{0.0}}, 1, 1), InputError);
  EXPECT_THROW(iarch_eta(IarchSpec{{1.0}}, -1, 1), InputError);
}

TEST(IarchNoise, LognormalHasUnitMean) {
  IarchSpec s{{1.0}, 77, LognormalNoise{0.5}};
  double sum = 0;
  const int n = 200000;
  for (int t = 1; t <= n; ++t) sum += std::exp(log_noise(s, t));
  EXPECT_NEAR(sum / n, 1.0, 0.01);
}

TEST(IarchModel, ContractAndShift) {
  IarchModel m{{0.5, 0.5}, LognormalNoise{0.5}};
  EXPECT_TRUE(m.contains({2, 3}));
  EXPECT_FALSE(m.contains({2, 5}));
  EXPECT_FALSE(m.evaluate({2, 5}, 1).has_value());
  const std::uint64_t seed = 4;
  auto direct = iarch_eta(IarchSpec{{0.5, 0.5}, seed, LognormalNoise{0.5}, 7}, 3, 5);
  EXPECT_DOUBLE_EQ(*m.evaluate_shifted({3, 5}, {0, 7}, seed), direct.h(3, 5));
}
