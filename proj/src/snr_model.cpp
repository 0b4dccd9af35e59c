#include "ofdma/snr_model.hpp"
#include "ofdma/detail/overloaded.hpp"
#include "ofdma/error.hpp"
#include "ofdma/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

namespace ofdma {

using detail::overloaded;

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double v)
{
  return std::clamp(v, -1.0, 1.0);
}

// Normalized area of the radius-rad disc around a point at distance d from the
// center of the radius-p disc, intersected with that disc.
double lens_by_radius(double rad, double d, double p)
{
  double a1 = std::acos(clamp_unit((d * d + rad * rad - p * p) / (2.0 * d * rad)));
  double a2 = std::acos(clamp_unit((d * d + p * p - rad * rad) / (2.0 * d * p)));
  double q = (p + d - rad) * (p + rad - d) * (d + rad - p) * (d + p + rad);
  double area = rad * rad * a1 + p * p * a2 - 0.5 * std::sqrt(std::max(0.0, q));
  return std::clamp(area / (kPi * p * p), 0.0, 1.0);
}

// d/drad of user_distance_cdf on the lens branch: arc length inside the disc.
double lens_density(double rad, double d, double p)
{
  double th = std::acos(clamp_unit((d * d + rad * rad - p * p) / (2.0 * d * rad)));
  return 2.0 * rad * th / (kPi * p * p);
}

double gain_radius(double g, double alpha, double beta)
{
  return std::pow(g / (beta * beta), -1.0 / (2.0 * alpha));
}

void check_disc(double d, double p, double r0)
{
  if (!(d >= 0.0) || !(d < p - r0))
    throw DomainError("need 0 <= d < p - r0 (d=" + std::to_string(d) +
                      ", p=" + std::to_string(p) + ", r0=" + std::to_string(r0) + ")");
}

double log_K_over_area(double K, double p, double r0)
{
  double v = std::log(K) + 2.0 * std::log(r0) - 2.0 * std::log(p);
  if (!(v > 0.0))
    throw DomainError("need K r0^2 / p^2 > 1");
  return v;
}

} // namespace

void ChannelParams::validate() const
{
  if (!(alpha > 1.0))
    throw InvalidParam("alpha must exceed 1");
  if (!(beta > 0.0))
    throw InvalidParam("beta must be positive");
  if (!(r0 > 0.0))
    throw InvalidParam("r0 must be positive");
  if (!(Pcon > 0.0))
    throw InvalidParam("Pcon must be positive");
  ofdma::validate(fading);
}

double ChannelParams::peak_gain() const
{
  return beta * beta * std::pow(r0, -2.0 * alpha);
}

void to_json(nlohmann::json& j, const ChannelParams& c)
{
  j = {{"alpha", c.alpha}, {"beta", c.beta}, {"r0", c.r0}, {"Pcon", c.Pcon},
       {"fading", c.fading}};
}

void from_json(const nlohmann::json& j, ChannelParams& c)
{
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.value("beta", 1.0);
  c.r0 = j.at("r0").get<double>();
  c.Pcon = j.value("Pcon", 1.0);
  c.fading = j.contains("fading") ? j.at("fading").get<FadingModel>() : FadingModel{Rayleigh{}};
  c.validate();
}

SnrTensor::SnrTensor(std::size_t B, std::size_t K, std::size_t N, double fill)
    : B_(B), K_(K), N_(N), v_(B * K * N, fill)
{
}

std::vector<double> path_gain_matrix(const NetworkLayout& layout, const UserSet& users,
                                     const ChannelParams& params)
{
  std::size_t B = layout.B();
  std::size_t K = users.K();
  std::vector<double> g(B * K);
  double b2 = params.beta * params.beta;
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t k = 0; k < K; ++k)
      g[i * K + k] =
          b2 * std::pow(truncated_distance(layout.tx[i], users.pos[k], params.r0),
                        -2.0 * params.alpha);
  return g;
}

SnrTensor compute_snr_tensor(const std::vector<double>& path_gains, std::size_t B,
                             std::size_t K, std::size_t N, const FadingModel& fading, Rng& rng)
{
  if (path_gains.size() != B * K)
    throw DimensionMismatch("path gain matrix is not B x K");
  if (N < 1)
    throw DimensionMismatch("N must be at least 1");
  SnrTensor t(B, K, N);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t n = 0; n < N; ++n)
        t(i, k, n) = path_gains[i * K + k] * draw_power_gain(fading, rng);
  return t;
}

SnrTensor compute_snr_tensor(const NetworkLayout& layout, const UserSet& users,
                             const ChannelParams& params, std::size_t N, std::uint64_t seed)
{
  params.validate();
  if (layout.B() < 1 || users.K() < 1)
    throw DimensionMismatch("need at least one transmitter and one user");
  Rng rng = make_stream(seed, {kStreamFading});
  return compute_snr_tensor(path_gain_matrix(layout, users, params), layout.B(), users.K(), N,
                            params.fading, rng);
}

void write_snr_csv(std::ostream& os, const SnrTensor& t)
{
  os << "i,k,n,gamma\n";
  char buf[64];
  for (std::size_t i = 0; i < t.B(); ++i)
    for (std::size_t k = 0; k < t.K(); ++k)
      for (std::size_t n = 0; n < t.N(); ++n) {
        std::snprintf(buf, sizeof buf, "%.17g", t(i, k, n));
        os << i << ',' << k << ',' << n << ',' << buf << '\n';
      }
}

namespace {
constexpr char kMagic[4] = {'S', 'N', 'R', 'T'};
}

// Layout: "SNRT", uint64 B, K, N, then B*K*N native-endian doubles.
void write_snr_binary(std::ostream& os, const SnrTensor& t)
{
  os.write(kMagic, 4);
  std::uint64_t dims[3] = {t.B(), t.K(), t.N()};
  os.write(reinterpret_cast<const char*>(dims), sizeof dims);
  os.write(reinterpret_cast<const char*>(t.values().data()),
           static_cast<std::streamsize>(t.values().size() * sizeof(double)));
  if (!os)
    throw IoError("failed writing SNR tensor");
}

SnrTensor read_snr_binary(std::istream& is)
{
  char magic[4];
  std::uint64_t dims[3];
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(dims), sizeof dims);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("not an SNR tensor stream");
  SnrTensor t(dims[0], dims[1], dims[2]);
  for (std::size_t i = 0; i < t.B(); ++i)
    for (std::size_t k = 0; k < t.K(); ++k)
      for (std::size_t n = 0; n < t.N(); ++n)
        is.read(reinterpret_cast<char*>(&t(i, k, n)), sizeof(double));
  if (!is)
    throw IoError("truncated SNR tensor stream");
  return t;
}

double user_distance_cdf(double rad, double d, double p)
{
  if (rad <= 0.0)
    return 0.0;
  if (rad >= p + d)
    return 1.0;
  if (rad <= p - d)
    return std::min(1.0, rad * rad / (p * p));
  return lens_by_radius(rad, d, p);
}

double lens_fraction(double g, double d, double p, double alpha, double beta)
{
  if (!(d > 0.0))
    throw DomainError("lens_fraction needs d > 0");
  double rad = gain_radius(g, alpha, beta);
  if (!(rad > p - d) || rad > p + d)
    throw DomainError("radius " + std::to_string(rad) + " outside (p-d, p+d]");
  return lens_by_radius(rad, d, p);
}

double gain_cdf(double g, double d, double p, double r0, double alpha, double beta)
{
  check_disc(d, p, r0);
  if (g < 0.0)
    throw DomainError("gain must be nonnegative");
  if (g >= beta * beta * std::pow(r0, -2.0 * alpha))
    return 1.0;
  if (g <= 0.0)
    return 0.0;
  // Pr(G > g) = Pr(distance < rad)
  return 1.0 - user_distance_cdf(gain_radius(g, alpha, beta), d, p);
}

double snr_ccdf(const FadingModel& model, double x, double d, double p, double r0,
                double alpha, double beta)
{
  check_disc(d, p, r0);
  if (x <= 0.0)
    return 1.0;
  double b2 = beta * beta;
  auto tail = [&](double rad) {
    return power_gain_ccdf(model, x * std::pow(rad, 2.0 * alpha) / b2);
  };
  double atom = (r0 * r0) / (p * p) * tail(r0);
  double inner = integrate([&](double rad) { return tail(rad) * 2.0 * rad / (p * p); }, r0,
                           p - d, 0.0, 1e-10);
  double outer = 0.0;
  if (d > 0.0)
    // rad = p - d cos(phi) removes the square-root endpoint behaviour of the arc length
    outer = integrate(
        [&](double phi) {
          double rad = p - d * std::cos(phi);
          return tail(rad) * lens_density(rad, d, p) * d * std::sin(phi);
        },
        0.0, kPi, 0.0, 1e-10);
  return std::clamp(atom + inner + outer, 0.0, 1.0);
}

double snr_cdf(const FadingModel& model, double x, double d, double p, double r0, double alpha,
               double beta)
{
  return 1.0 - snr_ccdf(model, x, d, p, r0, alpha, beta);
}

double rayleigh_snr_cdf(double gamma, double d, double p, double r0, double alpha, double beta)
{
  if (gamma < 0.0)
    throw DomainError("SNR must be nonnegative");
  return snr_cdf(Rayleigh{}, gamma, d, p, r0, alpha, beta);
}

double scaling_point(const FadingModel& model, double K, double p, double r0, double alpha,
                     double beta)
{
  validate(model);
  double L = log_K_over_area(K, p, r0);
  double g0 = beta * beta * std::pow(r0, -2.0 * alpha);
  return std::visit(
      overloaded{
          [&](const Rayleigh&) { return g0 * L; },
          [&](const Nakagami& f) {
            double arg = L + (f.m - 1.0) * std::log(f.m) - std::lgamma(f.m) -
                         (f.m - 1.0) * std::log(f.w * g0);
            if (!(arg > 0.0))
              throw DomainError("Nakagami scaling point is not positive at this K");
            return f.w * g0 / f.m * arg;
          },
          [&](const Weibull& f) {
            return g0 * f.lambda * f.lambda * std::pow(L, 2.0 / f.t);
          },
          [&](const LogNormal& f) { return g0 * std::exp(std::sqrt(8.0 * f.w * L)); },
      },
      model);
}

double numeric_scaling_point(const std::function<double(double)>& ccdf, double K,
                             double scale_hint)
{
  if (!(K > 1.0))
    throw DomainError("K must exceed 1");
  double target = -std::log(K);
  auto f = [&](double l) {
    double c = ccdf(l);
    return (c > 0.0 ? std::log(c) : -1e300) - target;
  };
  RootOptions opt;
  opt.rel_tol = 1e-10;
  return bisect_grow(f, 0.0, scale_hint, opt);
}

double numeric_scaling_point(const FadingModel& model, double K, double d, double p, double r0,
                             double alpha, double beta)
{
  validate(model);
  log_K_over_area(K, p, r0);
  double g0 = beta * beta * std::pow(r0, -2.0 * alpha);
  return numeric_scaling_point(
      [&](double x) { return snr_ccdf(model, x, d, p, r0, alpha, beta); }, K, g0);
}

double growth_function(const FadingModel& model, double gamma_level, double /*p*/, double r0,
                       double alpha, double beta)
{
  validate(model);
  double g0 = beta * beta * std::pow(r0, -2.0 * alpha);
  return std::visit(overloaded{
                        [&](const Rayleigh&) { return g0; },
                        [&](const Nakagami& f) { return f.w * g0 / f.m; },
                        [&](const Weibull& f) {
                          return 2.0 * std::pow(g0 * f.lambda * f.lambda, f.t / 2.0) / f.t *
                                 std::pow(gamma_level, 1.0 - f.t / 2.0);
                        },
                        [&](const LogNormal& f) {
                          return 4.0 * f.w * gamma_level / std::log(gamma_level);
                        },
                    },
                    model);
}

std::pair<double, double> concentration_band(const FadingModel& model, double K, double p,
                                             double r0, double alpha, double beta)
{
  if (!(K >= 16.0))
    throw DomainError("concentration band needs K >= 16");
  double l = scaling_point(model, K, p, r0, alpha, beta);
  double w = growth_function(model, l, p, r0, alpha, beta) * std::log(std::log(K));
  return {l - w, l + w};
}

} // namespace ofdma
