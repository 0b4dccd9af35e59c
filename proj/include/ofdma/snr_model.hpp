#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ofdma/fading.hpp"
#include "ofdma/geometry.hpp"

namespace ofdma {

struct ChannelParams {
  double alpha = 2.0;
  double beta = 1.0;
  double r0 = 0.1;
  double Pcon = 1.0;
  FadingModel fading = Rayleigh{};

  void validate() const;
  // beta^2 r0^{-2 alpha}: the largest path gain.
  double peak_gain() const;
};

void to_json(nlohmann::json& j, const ChannelParams& c);
void from_json(const nlohmann::json& j, ChannelParams& c);

// gamma[i][k][n], flat with n fastest.
class SnrTensor {
public:
  SnrTensor() = default;
  SnrTensor(std::size_t B, std::size_t K, std::size_t N, double fill = 0.0);

  std::size_t B() const { return B_; }
  std::size_t K() const { return K_; }
  std::size_t N() const { return N_; }

  double& operator()(std::size_t i, std::size_t k, std::size_t n)
  {
    return v_[(i * K_ + k) * N_ + n];
  }
  double operator()(std::size_t i, std::size_t k, std::size_t n) const
  {
    return v_[(i * K_ + k) * N_ + n];
  }
  const std::vector<double>& values() const { return v_; }

private:
  std::size_t B_ = 0, K_ = 0, N_ = 0;
  std::vector<double> v_;
};

// beta^2 R_{i,k}^{-2 alpha}, B x K row-major.
std::vector<double> path_gain_matrix(const NetworkLayout& layout, const UserSet& users,
                                     const ChannelParams& params);

SnrTensor compute_snr_tensor(const NetworkLayout& layout, const UserSet& users,
                             const ChannelParams& params, std::size_t N, std::uint64_t seed);

// Fading draws are taken user-major, so the first K' users of a larger draw
// see the same fading as a K'-user draw with the same rng state.
SnrTensor compute_snr_tensor(const std::vector<double>& path_gains, std::size_t B,
                             std::size_t K, std::size_t N, const FadingModel& fading, Rng& rng);

void write_snr_csv(std::ostream& os, const SnrTensor& t);
void write_snr_binary(std::ostream& os, const SnrTensor& t);
SnrTensor read_snr_binary(std::istream& is);

// Distribution of the path gain G = beta^2 max(r0, |user - tx|)^{-2 alpha}
// for a user uniform on the radius-p disc and a TX at distance d from its center.

// Pr(|user - tx| <= rad).
double user_distance_cdf(double rad, double d, double p);

double lens_fraction(double g, double d, double p, double alpha, double beta);

double gain_cdf(double g, double d, double p, double r0, double alpha, double beta);

// Pr(gamma > x) for gamma = G |nu|^2, by quadrature over the user-TX distance.
double snr_ccdf(const FadingModel& model, double x, double d, double p, double r0,
                double alpha, double beta);

double snr_cdf(const FadingModel& model, double x, double d, double p, double r0,
               double alpha, double beta);

double rayleigh_snr_cdf(double gamma, double d, double p, double r0, double alpha,
                        double beta);

double scaling_point(const FadingModel& model, double K, double p, double r0, double alpha,
                     double beta);

// Level l with ccdf(l) = 1/K.
double numeric_scaling_point(const std::function<double(double)>& ccdf, double K,
                             double scale_hint = 1.0);

double numeric_scaling_point(const FadingModel& model, double K, double d, double p,
                             double r0, double alpha, double beta);

double growth_function(const FadingModel& model, double gamma_level, double p, double r0,
                       double alpha, double beta);

std::pair<double, double> concentration_band(const FadingModel& model, double K, double p,
                                             double r0, double alpha, double beta);

} // namespace ofdma
