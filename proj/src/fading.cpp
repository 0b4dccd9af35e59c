#include "ofdma/fading.hpp"
#include "ofdma/error.hpp"
#include "ofdma/detail/overloaded.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <random>

namespace ofdma {

namespace {

using detail::overloaded;

void check_positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidParam(std::string(what) + " must be positive and finite");
}

} // namespace

void validate(const FadingModel& model)
{
  std::visit(overloaded{
                 [](const Rayleigh&) {},
                 [](const Nakagami& f) {
                   if (!(f.m >= 0.5))
                     throw InvalidParam("Nakagami m must be at least 0.5");
                   check_positive(f.w, "Nakagami w");
                 },
                 [](const Weibull& f) {
                   check_positive(f.lambda, "Weibull lambda");
                   check_positive(f.t, "Weibull t");
                 },
                 [](const LogNormal& f) {
                   if (!std::isfinite(f.a))
                     throw InvalidParam("LogNormal a must be finite");
                   check_positive(f.w, "LogNormal w");
                 },
             },
             model);
}

std::string family_name(const FadingModel& model)
{
  return std::visit(overloaded{
                        [](const Rayleigh&) { return std::string("rayleigh"); },
                        [](const Nakagami&) { return std::string("nakagami"); },
                        [](const Weibull&) { return std::string("weibull"); },
                        [](const LogNormal&) { return std::string("lognormal"); },
                    },
                    model);
}

double draw_power_gain(const FadingModel& model, Rng& rng)
{
  return std::visit(
      overloaded{
          [&](const Rayleigh&) { return std::exponential_distribution<double>(1.0)(rng); },
          [&](const Nakagami& f) {
            return std::gamma_distribution<double>(f.m, f.w / f.m)(rng);
          },
          [&](const Weibull& f) {
            return std::weibull_distribution<double>(f.t / 2.0, f.lambda * f.lambda)(rng);
          },
          [&](const LogNormal& f) {
            return std::lognormal_distribution<double>(2.0 * f.a, 2.0 * std::sqrt(f.w))(rng);
          },
      },
      model);
}

std::vector<double> sample_power_gain(const FadingModel& model, std::size_t count,
                                      std::uint64_t seed)
{
  validate(model);
  if (count < 1)
    throw InvalidParam("count must be at least 1");
  Rng rng = make_stream(seed, {kStreamFading});
  std::vector<double> out(count);
  for (double& v : out)
    v = draw_power_gain(model, rng);
  return out;
}

Moments power_gain_moments(const FadingModel& model)
{
  validate(model);
  return std::visit(overloaded{
                        [](const Rayleigh&) { return Moments{1.0, 1.0}; },
                        [](const Nakagami& f) { return Moments{f.w, f.w / std::sqrt(f.m)}; },
                        [](const Weibull& f) {
                          double k = f.t / 2.0;
                          double s = f.lambda * f.lambda;
                          double g1 = std::tgamma(1.0 + 1.0 / k);
                          double g2 = std::tgamma(1.0 + 2.0 / k);
                          return Moments{s * g1, s * std::sqrt(g2 - g1 * g1)};
                        },
                        [](const LogNormal& f) {
                          double mu = 2.0 * f.a;
                          double s2 = 4.0 * f.w;
                          return Moments{std::exp(mu + s2 / 2.0),
                                         std::sqrt(std::expm1(s2) * std::exp(2.0 * mu + s2))};
                        },
                    },
                    model);
}

double power_gain_ccdf(const FadingModel& model, double x)
{
  if (x <= 0.0)
    return 1.0;
  return std::visit(overloaded{
                        [&](const Rayleigh&) { return std::exp(-x); },
                        [&](const Nakagami& f) {
                          return boost::math::gamma_q(f.m, x * f.m / f.w);
                        },
                        [&](const Weibull& f) {
                          return std::exp(-std::pow(x / (f.lambda * f.lambda), f.t / 2.0));
                        },
                        [&](const LogNormal& f) {
                          double z = (std::log(x) - 2.0 * f.a) / (2.0 * std::sqrt(f.w));
                          return 0.5 * std::erfc(z / std::sqrt(2.0));
                        },
                    },
                    model);
}

double power_gain_cdf(const FadingModel& model, double x)
{
  if (x <= 0.0)
    return 0.0;
  return std::visit(overloaded{
                        [&](const Rayleigh&) { return -std::expm1(-x); },
                        [&](const Nakagami& f) {
                          return boost::math::gamma_p(f.m, x * f.m / f.w);
                        },
                        [&](const Weibull& f) {
                          return -std::expm1(-std::pow(x / (f.lambda * f.lambda), f.t / 2.0));
                        },
                        [&](const LogNormal& f) {
                          double z = (std::log(x) - 2.0 * f.a) / (2.0 * std::sqrt(f.w));
                          return 0.5 * std::erfc(-z / std::sqrt(2.0));
                        },
                    },
                    model);
}

void to_json(nlohmann::json& j, const FadingModel& m)
{
  std::visit(overloaded{
                 [&](const Rayleigh&) { j = {{"family", "rayleigh"}}; },
                 [&](const Nakagami& f) { j = {{"family", "nakagami"}, {"m", f.m}, {"w", f.w}}; },
                 [&](const Weibull& f) {
                   j = {{"family", "weibull"}, {"lambda", f.lambda}, {"t", f.t}};
                 },
                 [&](const LogNormal& f) {
                   j = {{"family", "lognormal"}, {"a", f.a}, {"w", f.w}};
                 },
             },
             m);
}

void from_json(const nlohmann::json& j, FadingModel& m)
{
  std::string fam = j.at("family").get<std::string>();
  if (fam == "rayleigh")
    m = Rayleigh{};
  else if (fam == "nakagami")
    m = Nakagami{j.at("m").get<double>(), j.at("w").get<double>()};
  else if (fam == "weibull")
    m = Weibull{j.at("lambda").get<double>(), j.at("t").get<double>()};
  else if (fam == "lognormal")
    m = LogNormal{j.value("a", 0.0), j.at("w").get<double>()};
  else
    throw ConfigError("unknown fading family '" + fam + "'");
  validate(m);
}

} // namespace ofdma
