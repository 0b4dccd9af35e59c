#include <doctest.h>

#include "oracles.hpp"
#include "ofdma/error.hpp"
#include "ofdma/scheduler.hpp"

#include <cmath>

using namespace ofdma;

namespace {

ChannelParams rayleigh(double Pcon = 1.0)
{
  ChannelParams c;
  c.alpha = 1.5;
  c.beta = 1.0;
  c.r0 = 0.1;
  c.Pcon = Pcon;
  c.fading = Rayleigh{};
  return c;
}

SnrTensor random_tensor(oracle::Gen& g, std::size_t B, std::size_t K, std::size_t N)
{
  SnrTensor t(B, K, N);
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t n = 0; n < N; ++n)
        t(i, k, n) = std::exp(g.uniform(-3.0, 5.0));
  return t;
}

double quotient(const PowerAllocation& p, const SnrTensor& t, std::size_t i, std::size_t k,
                std::size_t n)
{
  double I = 0.0;
  for (std::size_t j = 0; j < t.B(); ++j)
    if (j != i)
      I += p(j, n) * t(j, k, n);
  return p(i, n) * t(i, k, n) / (1.0 + I);
}

} // namespace

TEST_CASE("single user is always scheduled")
{
  oracle::Gen g(1);
  auto t = random_tensor(g, 3, 1, 2);
  auto a = schedule_users(PowerAllocation::equal(3, 2, 1.0), t);
  for (std::size_t v : a.u)
    CHECK(v == 0);
}

TEST_CASE("single transmitter schedules the strongest user")
{
  oracle::Gen g(2);
  auto t = random_tensor(g, 1, 7, 3);
  auto a = schedule_users(PowerAllocation::equal(1, 3, 1.0), t);
  for (std::size_t n = 0; n < 3; ++n) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 7; ++k)
      if (t(0, k, n) > t(0, best, n))
        best = k;
    CHECK(a(0, n) == best);
  }
}

TEST_CASE("scheduling matches exhaustive evaluation")
{
  SnrTensor t(2, 4, 1);
  double a0[4] = {5.0, 9.0, 2.0, 7.0};
  double a1[4] = {1.0, 8.0, 0.1, 0.5};
  for (std::size_t k = 0; k < 4; ++k) {
    t(0, k, 0) = a0[k];
    t(1, k, 0) = a1[k];
  }
  PowerAllocation p(2, 1, 1.0);
  auto a = schedule_users(p, t);
  // TX 0 quotients 5/2, 9/9, 2/1.1, 7/1.5; TX 1: 1/6, 8/10, 0.1/3, 0.5/8
  CHECK(a(0, 0) == 3);
  CHECK(a(1, 0) == 1);

  oracle::Gen g(3);
  for (int it = 0; it < 200; ++it) {
    std::size_t B = g.pick(1, 4), K = g.pick(1, 6), N = g.pick(1, 3);
    auto tt = random_tensor(g, B, K, N);
    PowerAllocation pw(B, N);
    for (double& v : pw.p)
      v = g.uniform(0.0, 1.0 / static_cast<double>(N));
    auto as = schedule_users(pw, tt);
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t n = 0; n < N; ++n) {
        double best = -1.0;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < K; ++k) {
          double q = quotient(pw, tt, i, k, n);
          if (q > best) {
            best = q;
            arg = k;
          }
        }
        CHECK(as(i, n) == arg);
        CHECK(sinr(pw, tt, i, as(i, n), n) == doctest::Approx(best));
      }
  }
}

TEST_CASE("uniform rescaling of the own-link term keeps the schedule")
{
  oracle::Gen g(4);
  for (int it = 0; it < 100; ++it) {
    std::size_t B = g.pick(2, 4), K = g.pick(2, 6), N = g.pick(1, 3);
    auto t = random_tensor(g, B, K, N);
    auto pw = PowerAllocation::equal(B, N, 1.0);
    auto a = schedule_users(pw, t);
    std::size_t i = g.pick(0, B - 1);
    double kappa = std::exp(g.uniform(-2.0, 2.0));
    auto p2 = pw;
    for (std::size_t n = 0; n < N; ++n)
      p2(i, n) *= kappa; // only TX i's own quotient changes, by the same factor for all k
    auto b = schedule_users(p2, t);
    for (std::size_t n = 0; n < N; ++n)
      CHECK(a(i, n) == b(i, n));
  }
}

TEST_CASE("dimension checks")
{
  SnrTensor t(2, 3, 2, 1.0);
  CHECK_THROWS_AS(schedule_users(PowerAllocation(3, 2, 0.1), t), DimensionMismatch);
  CHECK_THROWS_AS(schedule_users(PowerAllocation(2, 1, 0.1), t), DimensionMismatch);
}

TEST_CASE("single link achieved rate")
{
  SnrTensor t(1, 1, 1, 1.0);
  PowerAllocation p(1, 1, 1.0);
  CHECK(scheduled_rate(p, t, schedule_users(p, t)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("achieved rate grows with nested user sets")
{
  auto c = rayleigh();
  auto l = build_dense_layout(2, 1.0, 0.3, 0.1, Placement::UniformRandom, {}, 5);
  auto pw = PowerAllocation::equal(2, 2, 1.0);
  for (std::size_t t = 0; t < 30; ++t) {
    auto s5 = draw_trial_tensor(l, c, 5, 2, UserSampling::Disc, 6, t);
    auto s50 = draw_trial_tensor(l, c, 50, 2, UserSampling::Disc, 6, t);
    CHECK(scheduled_rate(pw, s50, schedule_users(pw, s50)) >=
          scheduled_rate(pw, s5, schedule_users(pw, s5)));
  }
  auto a5 = achieved_sum_rate(l, c, 5, 2, pw, 100, 6);
  auto a50 = achieved_sum_rate(l, c, 50, 2, pw, 100, 6);
  CHECK(a50.mean >= a5.mean);
}

TEST_CASE("achieved rate stays below the upper bound")
{
  auto c = rayleigh();
  auto l = build_dense_layout(3, 1.0, 0.3, 0.1, Placement::UniformRandom, {}, 7);
  auto pw = PowerAllocation::equal(3, 2, 1.0);
  auto a = achieved_sum_rate(l, c, 200, 2, pw, 100, 8);
  auto b = mc_bounds(l, c, 200, 2, 100, 8);
  CHECK(a.mean <= b.upper + 3.0 * std::hypot(a.stderr_, b.std_error_upper));
  CHECK_THROWS_AS(achieved_sum_rate(l, c, 200, 2, PowerAllocation(3, 2, 0.9), 10, 8),
                  ConstraintViolation);
  CHECK_THROWS_AS(achieved_sum_rate(l, c, 200, 2, pw, 0, 8), InvalidParam);
}

TEST_CASE("p2p scaling branches")
{
  auto c = rayleigh();
  auto s = p2p_scaling(1e4, 2, 1, 0.1, c, 1.0);
  CHECK(s.regime == P2PRegime::Linear);
  CHECK(s.predicted_rate_scale == doctest::Approx(2.0 * std::log(std::log(1e4))));
  CHECK(s.gain_branch == GainBranch::LinearInB);
  CHECK(s.gain_over_single_tx == doctest::Approx(2.0));
  CHECK(s.single_tx_power == doctest::Approx(0.2));

  auto big = p2p_scaling(1e4, 100, 1, 0.1, c, 1.0);
  CHECK(big.regime == P2PRegime::Saturated);
  CHECK(big.predicted_rate_scale == doctest::Approx(std::log(1e4)));
  CHECK(big.gain_branch == GainBranch::LogOverLogB);
  CHECK(big.gain_over_single_tx == doctest::Approx(std::log(1e4) / std::log(100.0)));

  auto mid = p2p_scaling(1e4, 6, 1, 0.1, c, 1.0);
  CHECK(mid.gain_branch == GainBranch::LogOverLogLog);

  for (double K : {16.0, 1e3, 1e8}) {
    auto one = p2p_scaling(K, 1, 3, 0.1, c, 1.0);
    CHECK(one.regime == P2PRegime::Linear);
    CHECK(one.gain_over_single_tx == 1.0);
  }
  CHECK_THROWS_AS(p2p_scaling(10.0, 1, 1, 0.1, c, 1.0), DomainError);
}

TEST_CASE("sum rate flattens as transmitters are added")
{
  const double P_bar = 1.0;
  auto c = rayleigh(P_bar);
  std::vector<double> rate;
  for (std::size_t B : {1u, 2u, 4u, 8u, 16u, 32u}) {
    auto l = build_dense_layout(B, 1.0, 0.3, 0.1, Placement::UniformRandom, {}, 100 + B);
    auto a = achieved_sum_rate(l, c, 10000, 1, PowerAllocation::equal(B, 1, P_bar), 10, 9);
    rate.push_back(a.mean);
  }
  for (std::size_t k = 1; k < rate.size(); ++k)
    CHECK(rate[k] > rate[k - 1]);
  CHECK(rate[5] / rate[4] < rate[1] / rate[0]);
}
