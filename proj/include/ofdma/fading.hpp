#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ofdma/random.hpp"

namespace ofdma {

struct Rayleigh {};
struct Nakagami {
  double m = 1.0;
  double w = 1.0;
};
struct Weibull {
  double lambda = 1.0;
  double t = 2.0;
};
struct LogNormal {
  double a = 0.0;
  double w = 1.0;
};

// Fading law of the power gain |nu|^2.
//   Rayleigh      Exp(1)
//   Nakagami      Gamma(m, w/m)
//   Weibull       Weibull(scale lambda^2, shape t/2)
//   LogNormal     log |nu|^2 ~ Normal(2a, 4w)
using FadingModel = std::variant<Rayleigh, Nakagami, Weibull, LogNormal>;

void validate(const FadingModel& model);

std::string family_name(const FadingModel& model);

// Draws one |nu|^2.
double draw_power_gain(const FadingModel& model, Rng& rng);

std::vector<double> sample_power_gain(const FadingModel& model, std::size_t count,
                                      std::uint64_t seed);

struct Moments {
  double mu = 0.0;
  double sigma = 0.0;
};

Moments power_gain_moments(const FadingModel& model);

double power_gain_cdf(const FadingModel& model, double x);

// 1 - cdf, computed without cancellation.
double power_gain_ccdf(const FadingModel& model, double x);

void to_json(nlohmann::json& j, const FadingModel& m);
void from_json(const nlohmann::json& j, FadingModel& m);

} // namespace ofdma
