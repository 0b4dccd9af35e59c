#include <doctest.h>

#include "oracles.hpp"
#include "ofdma/error.hpp"
#include "ofdma/fading.hpp"

#include <cmath>

using namespace ofdma;

namespace {

double mean(const std::vector<double>& v)
{
  double s = 0.0;
  for (double x : v)
    s += x;
  return s / static_cast<double>(v.size());
}

double var(const std::vector<double>& v)
{
  double m = mean(v), s = 0.0;
  for (double x : v)
    s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

} // namespace

TEST_CASE("rayleigh power gain has unit mean")
{
  auto v = sample_power_gain(Rayleigh{}, 1000000, 1);
  CHECK(std::fabs(mean(v) - 1.0) < 0.01);
}

TEST_CASE("nakagami power gain moments")
{
  auto v = sample_power_gain(Nakagami{2.0, 3.0}, 1000000, 2);
  CHECK(std::fabs(mean(v) - 3.0) < 0.02);
  CHECK(std::fabs(var(v) - 4.5) < 0.1);
}

TEST_CASE("weibull with lambda 1 and t 2 is exponential")
{
  auto v = sample_power_gain(Weibull{1.0, 2.0}, 100000, 3);
  double d = oracle::ks_distance(v, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); });
  CHECK(d < oracle::dkw_eps(v.size()));
  for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0})
    CHECK(power_gain_cdf(Weibull{1.0, 2.0}, x) == doctest::Approx(power_gain_cdf(Rayleigh{}, x)));
}

TEST_CASE("closed-form moments")
{
  auto r = power_gain_moments(Rayleigh{});
  CHECK(r.mu == 1.0);
  CHECK(r.sigma == 1.0);
  auto n = power_gain_moments(Nakagami{2.0, 3.0});
  CHECK(n.mu == doctest::Approx(3.0));
  CHECK(n.sigma == doctest::Approx(std::sqrt(4.5)));
  auto l = power_gain_moments(LogNormal{0.0, 0.25});
  CHECK(l.mu == doctest::Approx(std::exp(0.5)));
  CHECK(l.sigma == doctest::Approx(std::sqrt(std::exp(2.0) - std::exp(1.0))));
}

TEST_CASE("cdf spot values")
{
  CHECK(power_gain_cdf(Rayleigh{}, 0.0) == 0.0);
  CHECK(power_gain_cdf(Rayleigh{}, std::log(2.0)) == doctest::Approx(0.5));
  CHECK(power_gain_cdf(Nakagami{1.0, 1.0}, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(power_gain_cdf(Nakagami{1.0, 1.0}, 1.0) == doctest::Approx(0.6321).epsilon(1e-4));
}

TEST_CASE("empirical cdf within the DKW band for every family")
{
  oracle::Gen g(17);
  std::uint64_t seed = 100;
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<FadingModel> models = {
        Rayleigh{},
        Nakagami{g.uniform(0.5, 4.0), g.uniform(0.2, 3.0)},
        Weibull{g.uniform(0.3, 2.0), g.uniform(0.5, 4.0)},
        LogNormal{g.uniform(-1.0, 1.0), g.uniform(0.05, 1.0)},
    };
    for (const auto& m : models) {
      auto v = sample_power_gain(m, 100000, ++seed);
      double d = oracle::ks_distance(v, [&](double x) { return power_gain_cdf(m, x); });
      INFO(family_name(m));
      CHECK(d < oracle::dkw_eps(v.size()));
    }
  }
}

TEST_CASE("moments match samples within five standard errors")
{
  std::vector<FadingModel> models = {Rayleigh{}, Nakagami{0.7, 2.0}, Nakagami{3.0, 0.5},
                                     Weibull{1.3, 1.5}, LogNormal{0.2, 0.1}};
  std::uint64_t seed = 500;
  for (const auto& m : models) {
    auto v = sample_power_gain(m, 1000000, ++seed);
    auto mo = power_gain_moments(m);
    double n = static_cast<double>(v.size());
    double sm = mean(v);
    double m4 = 0.0;
    for (double x : v)
      m4 += std::pow(x - sm, 4);
    m4 /= n;
    double sv = var(v);
    INFO(family_name(m));
    CHECK(std::fabs(sm - mo.mu) < 5.0 * mo.sigma / std::sqrt(n));
    CHECK(std::fabs(sv - mo.sigma * mo.sigma) < 5.0 * std::sqrt((m4 - sv * sv) / n));
  }
}

TEST_CASE("ccdf complements cdf")
{
  std::vector<FadingModel> models = {Rayleigh{}, Nakagami{2.5, 1.5}, Weibull{0.8, 3.0},
                                     LogNormal{0.1, 0.3}};
  for (const auto& m : models)
    for (double x : {0.01, 0.3, 1.0, 2.5, 7.0})
      CHECK(power_gain_cdf(m, x) + power_gain_ccdf(m, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid fading parameters")
{
  CHECK_THROWS_AS(sample_power_gain(Nakagami{0.4, 1.0}, 1, 1), InvalidParam);
  CHECK_THROWS_AS(sample_power_gain(Nakagami{1.0, 0.0}, 1, 1), InvalidParam);
  CHECK_THROWS_AS(sample_power_gain(Weibull{1.0, 0.0}, 1, 1), InvalidParam);
  CHECK_THROWS_AS(sample_power_gain(Weibull{-1.0, 2.0}, 1, 1), InvalidParam);
  CHECK_THROWS_AS(sample_power_gain(LogNormal{0.0, 0.0}, 1, 1), InvalidParam);
}

TEST_CASE("fading json tagged union")
{
  nlohmann::json j = FadingModel{Nakagami{2.0, 3.0}};
  CHECK(j == nlohmann::json::parse(R"({"family":"nakagami","m":2.0,"w":3.0})"));
  auto back = nlohmann::json::parse(R"({"family":"weibull","lambda":1.5,"t":3})").get<FadingModel>();
  REQUIRE(std::holds_alternative<Weibull>(back));
  CHECK(std::get<Weibull>(back).lambda == 1.5);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"family":"rician"})").get<FadingModel>(), ConfigError);
}

TEST_CASE("grid KS bound dominates the exact KS distance")
{
  oracle::Gen g(404);
  std::vector<double> xs(5000);
  for (double& x : xs)
    x = -std::log(g.uniform(0.0, 1.0));
  auto F = [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-1.1 * x); };
  double exact = oracle::ks_distance(xs, F);
  std::vector<double> probes;
  for (double x = 0.0; x < 12.0; x += 0.01)
    probes.push_back(x);
  double bound = oracle::ks_bound_on_grid(xs, probes, F);
  CHECK(bound >= exact);
  CHECK(bound < exact + 0.02);
}
