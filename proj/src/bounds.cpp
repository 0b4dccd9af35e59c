#include "ofdma/bounds.hpp"
#include "ofdma/error.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ofdma {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial)
{
  return splitmix64(splitmix64(seed) ^ splitmix64(0x5eed0000ULL + trial));
}

UserSet draw_trial_users(const NetworkLayout& layout, std::size_t K, UserSampling sampling,
                         std::uint64_t seed, std::size_t trial)
{
  std::uint64_t s = trial_seed(seed, trial);
  if (sampling == UserSampling::PerCell) {
    if (K % layout.B() != 0)
      throw DimensionMismatch("per-cell sampling needs K divisible by B");
    return sample_users_per_cell(layout, K / layout.B(), s);
  }
  return sample_users_disc(layout, K, s);
}

SnrTensor draw_trial_tensor(const NetworkLayout& layout, const ChannelParams& params,
                            std::size_t K, std::size_t N, UserSampling sampling,
                            std::uint64_t seed, std::size_t trial)
{
  UserSet users = draw_trial_users(layout, K, sampling, seed, trial);
  return compute_snr_tensor(layout, users, params, N, trial_seed(seed, trial));
}

RealizationBounds realization_bounds(const SnrTensor& snr, double Pcon)
{
  std::size_t B = snr.B(), K = snr.K(), N = snr.N();
  double Nd = static_cast<double>(N);
  RealizationBounds r;
  for (std::size_t i = 0; i < B; ++i) {
    double best_any = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      std::size_t ks = 0;
      for (std::size_t k = 1; k < K; ++k)
        if (snr(i, k, n) > snr(i, ks, n))
          ks = k;
      double g = snr(i, ks, n);
      double interf = 0.0;
      for (std::size_t j = 0; j < B; ++j)
        if (j != i)
          interf += snr(j, ks, n);
      r.lower += std::log1p(Pcon * g) / (Nd + Pcon * interf);
      r.upper += std::log1p(Pcon * g);
      best_any = std::max(best_any, g);
    }
    r.upper_jensen += Nd * std::log1p(Pcon / Nd * best_any);
  }
  return r;
}

BoundsResult mc_bounds(const NetworkLayout& layout, const ChannelParams& params, std::size_t K,
                       std::size_t N, std::size_t trials, std::uint64_t seed,
                       UserSampling sampling, unsigned threads)
{
  if (trials < 1)
    throw InvalidParam("trials must be at least 1");
  params.validate();
  std::vector<double> lo(trials), up(trials), jn(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    RealizationBounds r =
        realization_bounds(draw_trial_tensor(layout, params, K, N, sampling, seed, t), params.Pcon);
    lo[t] = r.lower;
    up[t] = r.upper;
    jn[t] = r.upper_jensen;
  });
  BoundsResult res;
  res.trials = trials;
  MeanStderr a = mean_stderr(lo), b = mean_stderr(up), c = mean_stderr(jn);
  res.lower = a.mean;
  res.std_error_lower = a.stderr_;
  res.upper = b.mean;
  res.std_error_upper = b.stderr_;
  res.upper_jensen = c.mean;
  res.std_error_jensen = c.stderr_;
  return res;
}

double dense_lower_fraction(const ChannelParams& params, double r, std::size_t B, std::size_t N)
{
  if (!(r > 0.0))
    throw InvalidParam("Cantelli parameter r must be positive");
  Moments mo = power_gain_moments(params.fading);
  double denom = static_cast<double>(N) +
                 params.Pcon * params.peak_gain() * (mo.mu + r * mo.sigma) * static_cast<double>(B);
  return r * r / ((1.0 + r * r) * denom);
}

double extended_interference_constant(const ChannelParams& params, double R)
{
  return params.Pcon * params.beta * params.beta * std::pow(params.r0, 2.0 - 2.0 * params.alpha) /
         (R * R) * (4.0 + std::numbers::pi / (std::sqrt(3.0) * (2.0 * params.alpha - 2.0)));
}

double extended_lower_fraction(const ChannelParams& params, double r, std::size_t N, double R)
{
  if (!(r > 0.0))
    throw InvalidParam("Cantelli parameter r must be positive");
  double c0 = extended_interference_constant(params, R);
  return r * r / ((1.0 + r * r) * (static_cast<double>(N) + (1.0 + r) * c0));
}

namespace {

void require_rayleigh(const ChannelParams& params)
{
  if (!std::holds_alternative<Rayleigh>(params.fading))
    throw FamilyMismatch("bracket is stated for Rayleigh fading; use scaling_table");
}

} // namespace

Bracket dense_bracket(const ChannelParams& params, double K, std::size_t B, std::size_t N,
                      double p, double r)
{
  params.validate();
  require_rayleigh(params);
  double lK = scaling_point(params.fading, K, p, params.r0, params.alpha, params.beta);
  double hi = static_cast<double>(B * N) * std::log1p(params.Pcon * lK);
  Bracket b;
  b.hi = hi;
  b.lo = hi * dense_lower_fraction(params, r, B, N);
  b.small_k = K < 1e3;
  return b;
}

Bracket extended_bracket(const ChannelParams& params, double K, std::size_t B, std::size_t N,
                         double R, double r)
{
  params.validate();
  require_rayleigh(params);
  double L = std::log(K * params.r0 * params.r0 / (static_cast<double>(B) * R * R));
  if (!(L > 0.0))
    throw DomainError("need K r0^2 / (B R^2) > 1");
  double lK = params.peak_gain() * L;
  double hi = static_cast<double>(B * N) * std::log1p(params.Pcon * lK);
  Bracket b;
  b.hi = hi;
  b.lo = hi * extended_lower_fraction(params, r, N, R);
  b.small_k = K / static_cast<double>(B) < 1e3;
  return b;
}

ScalingLaw scaling_table(const FadingModel& model, Regime regime)
{
  validate(model);
  // growth of log(1 + l_K) as a function of the per-TX user pool
  std::function<double(double)> g;
  std::string gs;
  if (const auto* w = std::get_if<Weibull>(&model)) {
    double e = 2.0 / w->t;
    g = [e](double x) { return e * std::log(std::log(x)); };
    gs = "log log^{" + std::to_string(e) + "}";
  } else if (std::holds_alternative<LogNormal>(model)) {
    g = [](double x) { return std::sqrt(std::log(x)); };
    gs = "sqrt log";
  } else {
    g = [](double x) { return std::log(std::log(x)); };
    gs = "log log";
  }
  ScalingLaw s;
  if (regime == Regime::Dense) {
    s.upper = [g](double K, double B, double N) { return B * N * g(K); };
    s.lower = [g](double K, double B, double N) { return std::min(B, N) * g(K); };
    s.upper_expr = "B N " + gs + " K";
    s.lower_expr = "min(B,N) " + gs + " K";
  } else {
    s.upper = [g](double K, double B, double N) { return B * N * g(K / B); };
    s.lower = [g](double K, double B, double) { return B * g(K / B); };
    s.upper_expr = "B N " + gs + " (K/B)";
    s.lower_expr = "B " + gs + " (K/B)";
  }
  return s;
}

namespace {

void simplex_lattice(std::size_t N, std::size_t G, std::vector<std::size_t>& cur,
                     std::size_t left, std::vector<std::vector<std::size_t>>& out)
{
  if (cur.size() == N) {
    out.push_back(cur);
    return;
  }
  for (std::size_t a = 0; a <= left; ++a) {
    cur.push_back(a);
    simplex_lattice(N, G, cur, left - a, out);
    cur.pop_back();
  }
}

double ipow(double b, std::size_t e)
{
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i)
    r *= b;
  return r;
}

} // namespace

double brute_force_realization(const SnrTensor& snr, double Pcon, std::size_t grid_size)
{
  std::size_t B = snr.B(), K = snr.K(), N = snr.N();
  if (grid_size < 2)
    throw InvalidParam("grid_size must be at least 2");
  double bn = static_cast<double>(B * N);
  if (ipow(static_cast<double>(K), B * N) * ipow(static_cast<double>(grid_size), B * N) > 1e7)
    throw BudgetExceeded("enumeration exceeds 1e7 evaluations");

  std::size_t G = grid_size - 1;
  std::vector<std::vector<std::size_t>> lattice;
  std::vector<std::size_t> cur;
  simplex_lattice(N, G, cur, G, lattice);
  (void)bn;

  std::size_t L = lattice.size();
  std::vector<std::size_t> pick(B, 0);
  std::vector<double> pw(B * N);
  double best = 0.0;
  for (;;) {
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t n = 0; n < N; ++n)
        pw[i * N + n] = Pcon * static_cast<double>(lattice[pick[i]][n]) / static_cast<double>(G);
    // the (i,n) terms depend on the user map only through u(i,n), so the
    // maximum over all K^{BN} maps is the sum of per-term maxima
    double total = 0.0;
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t n = 0; n < N; ++n) {
        double term = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          double interf = 0.0;
          for (std::size_t j = 0; j < B; ++j)
            if (j != i)
              interf += pw[j * N + n] * snr(j, k, n);
          term = std::max(term, std::log1p(pw[i * N + n] * snr(i, k, n) / (1.0 + interf)));
        }
        total += term;
      }
    best = std::max(best, total);

    std::size_t d = 0;
    while (d < B && ++pick[d] == L)
      pick[d++] = 0;
    if (d == B)
      break;
  }
  return best;
}

MeanStderr brute_force_c_star(const NetworkLayout& layout, const ChannelParams& params,
                              std::size_t K, std::size_t N, std::size_t grid_size,
                              std::size_t trials, std::uint64_t seed, UserSampling sampling,
                              unsigned threads)
{
  if (trials < 1)
    throw InvalidParam("trials must be at least 1");
  params.validate();
  double budget = ipow(static_cast<double>(K), layout.B() * N) *
                  ipow(static_cast<double>(grid_size), layout.B() * N);
  if (budget > 1e7)
    throw BudgetExceeded("enumeration exceeds 1e7 evaluations");
  std::vector<double> v(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    v[t] = brute_force_realization(draw_trial_tensor(layout, params, K, N, sampling, seed, t),
                                   params.Pcon, grid_size);
  });
  return mean_stderr(v);
}

double tail_quantile(const FadingModel& model, double tail)
{
  if (!(tail > 0.0) || tail > 1.0)
    throw DomainError("tail probability must lie in (0, 1]");
  if (tail == 1.0)
    return 0.0;
  double target = std::log(tail);
  auto f = [&](double x) {
    double c = power_gain_ccdf(model, x);
    return (c > 0.0 ? std::log(c) : -1e300) - target;
  };
  RootOptions opt;
  opt.rel_tol = 1e-13;
  return bisect_grow(f, 0.0, power_gain_moments(model).mu, opt);
}

MaxSandwich max_sandwich(const FadingModel& model, std::size_t T, double S1,
                         std::size_t samples, std::uint64_t seed)
{
  validate(model);
  if (T < 1 || samples < 2)
    throw InvalidParam("need T >= 1 and at least two samples");
  if (!(S1 > 0.0) || S1 > static_cast<double>(T))
    throw InvalidParam("need 0 < S1 <= T");
  MaxSandwich r;
  r.level = tail_quantile(model, S1 / static_cast<double>(T));
  r.lower = -std::expm1(-S1) * std::log1p(r.level);
  Rng rng = make_stream(seed, {kStreamFading});
  std::vector<double> v(samples);
  double max_sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double m = 0.0;
    for (std::size_t t = 0; t < T; ++t)
      m = std::max(m, draw_power_gain(model, rng));
    v[s] = std::log1p(m);
    max_sum += m;
  }
  MeanStderr ms = mean_stderr(v);
  r.mean = ms.mean;
  r.std_error = ms.stderr_;
  r.upper = std::log1p(max_sum / static_cast<double>(samples));
  return r;
}

} // namespace ofdma
