#include <doctest.h>

#include "oracles.hpp"
#include "ofdma/design.hpp"
#include "ofdma/error.hpp"

#include <cmath>

using namespace ofdma;

namespace {

double p4_curve(double rho) { return std::log1p(std::log(rho)) / rho; }

} // namespace

TEST_CASE("required resources")
{
  CHECK(required_resource_count(1e4) == doctest::Approx(1e4 / std::log(std::log(1e4))));
  CHECK(required_resource_count(1e4) == doctest::Approx(4503.8).epsilon(1e-4));
  CHECK(required_resource_count(16.0) == doctest::Approx(15.69).epsilon(1e-3));
  double prev = 0.0;
  for (double K = 16.0; K < 1e9; K *= 1.7) {
    double v = required_resource_count(K);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(required_resource_count(15.0), DomainError);
}

TEST_CASE("return on investment fixture")
{
  auto r = investment_feasible(1e6, 10, 2, 1.0, 1.0, 1e-3);
  double g = std::log(0.5 * std::log(2e5));
  CHECK(r.roi_value == doctest::Approx(20.0 / 12.0 * g));
  CHECK(r.roi_value == doctest::Approx(3.0147).epsilon(1e-4));
  CHECK(r.throughput_value == doctest::Approx(20.0 / 1e6 * g));
  CHECK(r.roi_ok);
  CHECK_FALSE(r.throughput_ok);
}

TEST_CASE("return on investment fails for many blocks")
{
  bool seen_false = false;
  for (double N = 1; N < 1e4; N *= 2) {
    auto r = investment_feasible(1e4, 10, N, 0.5, 1.0, 1e-6);
    if (!r.roi_ok)
      seen_false = true;
    if (seen_false)
      CHECK_FALSE(r.roi_ok);
  }
  CHECK(seen_false);
}

TEST_CASE("throughput holds when transmitters scale with users")
{
  for (double K : {1e4, 1e6, 1e8}) {
    auto r = investment_feasible(K, K / 100.0, 1, 0.1, 1.0, 1e-3);
    CHECK(r.throughput_ok);
  }
  auto same = investment_feasible(1e4, 1e4, 1, 0.1, 1.0, 1e-3);
  CHECK_FALSE(same.throughput_ok);
}

TEST_CASE("feasible user density range")
{
  auto r = density_feasible_range(10.0);
  CHECK(std::fabs(r.first - 1.1) <= 0.1);
  CHECK(std::fabs(r.second - 12.7) <= 0.1);
  CHECK(r.first == doctest::Approx(1.13).epsilon(5e-3));
  CHECK(r.second == doctest::Approx(12.65).epsilon(5e-3));
  for (double rho : {r.first, r.second})
    CHECK(std::fabs(rho - throughput_constraint(rho, 10.0)) < 1e-6);
  CHECK(throughput_constraint(5.0, 10.0) > 5.0);

  auto wide = density_feasible_range(1e6);
  CHECK(wide.first < 1.001);
  CHECK(wide.second > 1e6);
  auto huge = density_feasible_range(1e12);
  CHECK(huge.second == 1e9);

  CHECK_THROWS_AS(density_feasible_range(0.1), Infeasible);
  for (double rho = 1.0; rho < 100.0; rho += 0.01)
    CHECK(0.1 * std::log1p(std::log(rho)) - rho < 0.0);
}

TEST_CASE("kkt density")
{
  double inf = kkt_density(INFINITY);
  double ref = oracle::bisect([](double r) { return r * (1.0 + std::log(r)) - 10.0; }, 1.0, 10.0);
  CHECK(inf == doctest::Approx(ref).epsilon(1e-9));
  CHECK(std::fabs(inf - 4.1) < 0.05);

  double th = kkt_lambda_threshold();
  CHECK(std::fabs(th - 0.29) < 0.005);
  auto range = density_feasible_range(10.0);
  double expect = 10.0 / (range.second * (1.0 + std::log(range.second)) - 10.0);
  CHECK(th == doctest::Approx(expect));

  double prev = INFINITY;
  for (double lam : {0.5, 1.0, 5.0, 50.0}) {
    double rho = kkt_density(lam);
    CHECK(rho < prev);
    CHECK(rho >= range.first);
    CHECK(rho <= range.second);
    CHECK(rho == doctest::Approx(kkt_rhs(rho, lam)).epsilon(1e-9));
    prev = rho;
  }
  CHECK_THROWS_AS(kkt_density(0.2), NoSolution);
}

TEST_CASE("kkt density inside the feasible range above the threshold")
{
  oracle::Gen g(9);
  double th = kkt_lambda_threshold();
  auto range = density_feasible_range(10.0);
  for (int it = 0; it < 200; ++it) {
    double lam = th * std::exp(g.uniform(0.001, 8.0));
    double rho = kkt_density(lam);
    CHECK(rho >= range.first - 1e-9);
    CHECK(rho <= range.second + 1e-9);
  }
}

TEST_CASE("density ratio peak")
{
  auto pk = revenue_ratio_peak();
  double best = 0.0, arg = 0.0;
  for (double rho = 1.0; rho <= 20.0; rho += 1e-4) {
    double v = p4_curve(rho);
    if (v > best) {
      best = v;
      arg = rho;
    }
  }
  CHECK(pk.second == doctest::Approx(best).epsilon(1e-8));
  CHECK(std::fabs(pk.first - arg) < 1e-3);
  CHECK(std::fabs(pk.second - 0.26) < 0.005);
  CHECK(pk.first == doctest::Approx(2.14).epsilon(5e-3));
  CHECK(revenue_ratio(3.0) == doctest::Approx(p4_curve(3.0)));
}

TEST_CASE("rightmost density for a cost ratio")
{
  auto pk = revenue_ratio_peak();
  CHECK(revenue_density(pk.second) == doctest::Approx(pk.first).epsilon(1e-4));

  double grid = 0.0;
  for (double rho = pk.first; rho < 100.0; rho += 1e-3)
    if (p4_curve(rho) >= 0.1)
      grid = rho;
  CHECK(std::fabs(revenue_density(0.1) - grid) < 2e-3);

  double prev = INFINITY;
  for (double s = 0.01; s <= pk.second; s += 0.01) {
    double r = revenue_density(s);
    CHECK(r <= prev);
    CHECK(r >= 2.14 - 0.01);
    prev = r;
  }
  CHECK_THROWS_AS(revenue_density(0.27), Infeasible);
}
