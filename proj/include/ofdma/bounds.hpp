#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "ofdma/numeric.hpp"
#include "ofdma/snr_model.hpp"

namespace ofdma {

enum class UserSampling { Disc, PerCell };

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// Users and fading for one Monte Carlo trial. PerCell puts K / B users in each cell.
UserSet draw_trial_users(const NetworkLayout& layout, std::size_t K, UserSampling sampling,
                         std::uint64_t seed, std::size_t trial);
SnrTensor draw_trial_tensor(const NetworkLayout& layout, const ChannelParams& params,
                            std::size_t K, std::size_t N, UserSampling sampling,
                            std::uint64_t seed, std::size_t trial);

struct RealizationBounds {
  double lower = 0.0;
  double upper = 0.0;
  double upper_jensen = 0.0;
};

RealizationBounds realization_bounds(const SnrTensor& snr, double Pcon);

struct BoundsResult {
  double lower = 0.0;
  double upper = 0.0;
  double upper_jensen = 0.0;
  std::size_t trials = 0;
  double std_error_lower = 0.0;
  double std_error_upper = 0.0;
  double std_error_jensen = 0.0;
};

BoundsResult mc_bounds(const NetworkLayout& layout, const ChannelParams& params, std::size_t K,
                       std::size_t N, std::size_t trials, std::uint64_t seed,
                       UserSampling sampling = UserSampling::Disc, unsigned threads = 1);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool asymptotic_only = true; // additive O(1) terms dropped
  bool small_k = false;        // K below the range where the asymptotics are meaningful
};

// r^2 / ((1 + r^2)(N + Pcon G0 (mu + r sigma) B)), the Cantelli interference fraction.
double dense_lower_fraction(const ChannelParams& params, double r, std::size_t B, std::size_t N);

double extended_interference_constant(const ChannelParams& params, double R);
double extended_lower_fraction(const ChannelParams& params, double r, std::size_t N, double R);

Bracket dense_bracket(const ChannelParams& params, double K, std::size_t B, std::size_t N,
                      double p, double r);
Bracket extended_bracket(const ChannelParams& params, double K, std::size_t B, std::size_t N,
                         double R, double r);

enum class Regime { Dense, Extended };

struct ScalingLaw {
  std::function<double(double K, double B, double N)> upper;
  std::function<double(double K, double B, double N)> lower;
  std::string upper_expr;
  std::string lower_expr;
};

ScalingLaw scaling_table(const FadingModel& model, Regime regime);

// Best sum rate over all user maps and a lattice of per-TX power splits
// (a_n Pcon / (grid_size - 1) with sum a_n <= grid_size - 1).
double brute_force_realization(const SnrTensor& snr, double Pcon, std::size_t grid_size);

MeanStderr brute_force_c_star(const NetworkLayout& layout, const ChannelParams& params,
                              std::size_t K, std::size_t N, std::size_t grid_size,
                              std::size_t trials, std::uint64_t seed,
                              UserSampling sampling = UserSampling::Disc, unsigned threads = 1);

// x with Pr(|nu|^2 > x) = tail, for tail in (0, 1].
double tail_quantile(const FadingModel& model, double tail);

// (1 - e^{-S1}) V(l) <= E V(max of T draws) <= V(E max) with V = log(1 + x)
// and l the level exceeded with probability S1 / T.
struct MaxSandwich {
  double level = 0.0;
  double lower = 0.0;
  double mean = 0.0; // MC estimate of E V(max)
  double std_error = 0.0;
  double upper = 0.0; // V(MC mean of max)
};

MaxSandwich max_sandwich(const FadingModel& model, std::size_t T, double S1,
                         std::size_t samples, std::uint64_t seed);

} // namespace ofdma
