#include "ofdma/design.hpp"
#include "ofdma/error.hpp"
#include "ofdma/numeric.hpp"

#include <cmath>
#include <limits>

namespace ofdma {

namespace {

constexpr double kRhoCap = 1e9;

RootOptions tight()
{
  RootOptions o;
  o.rel_tol = 1e-14;
  return o;
}

} // namespace

double required_resource_count(double K)
{
  if (!(K >= 16.0))
    throw DomainError("required_resource_count needs K >= 16");
  return K / std::log(std::log(K));
}

InvestmentCheck investment_feasible(double K, double B, double N, double sbar, double c_N,
                               double shat)
{
  InvestmentCheck r;
  double arg = std::log(K * N / B) / N;
  if (!(arg > 1.0))
    return r;
  double l = std::log(arg);
  r.roi_value = B * N / (B + c_N * N) * l;
  r.throughput_value = B * N / K * l;
  r.roi_ok = r.roi_value > sbar;
  r.throughput_ok = r.throughput_value > shat;
  return r;
}

double throughput_constraint(double rho, double c_over_sbar)
{
  return c_over_sbar * std::log1p(std::log(rho));
}

std::pair<double, double> density_feasible_range(double c_over_sbar)
{
  if (!(c_over_sbar > 0.0))
    throw Infeasible("c/sbar must be positive");
  auto q = [&](double rho) { return throughput_constraint(rho, c_over_sbar) - rho; };
  // q is concave on rho >= 1 with maximum where c/sbar = rho (1 + log rho)
  double peak = 1.0;
  if (c_over_sbar > 1.0)
    peak = bisect([&](double r) { return r * (1.0 + std::log(r)) - c_over_sbar; }, 1.0,
                  c_over_sbar + 1.0, tight());
  if (!(q(peak) >= 0.0))
    throw Infeasible("no rho satisfies the throughput constraint");
  double lo = q(peak) == 0.0 ? peak : bisect(q, 1.0, peak, tight());
  double hi = peak;
  if (q(kRhoCap) >= 0.0) {
    hi = kRhoCap;
  } else if (q(peak) > 0.0) {
    hi = bisect(q, peak, kRhoCap, tight());
  }
  return {lo, hi};
}

double kkt_rhs(double rho, double lambda, double c_over_sbar)
{
  double scale = std::isinf(lambda) ? 1.0 : (lambda + 1.0) / lambda;
  return scale * c_over_sbar / (1.0 + std::log(rho));
}

double kkt_lambda_threshold(double c_over_sbar)
{
  double hi = density_feasible_range(c_over_sbar).second;
  double excess = hi * (1.0 + std::log(hi)) - c_over_sbar;
  if (!(excess > 0.0))
    return std::numeric_limits<double>::infinity();
  return c_over_sbar / excess;
}

double kkt_density(double lambda, double c_over_sbar)
{
  if (!(lambda > 0.0))
    throw NoSolution("lambda must be positive");
  double target = std::isinf(lambda) ? c_over_sbar : c_over_sbar * (lambda + 1.0) / lambda;
  // rho (1 + log rho) is increasing on rho >= 1
  double rho = bisect_grow([&](double r) { return r * (1.0 + std::log(r)) - target; }, 1.0,
                           2.0, tight());
  auto range = density_feasible_range(c_over_sbar);
  if (rho > range.second || rho < range.first)
    throw NoSolution("KKT root lies outside the feasible range; lambda below threshold " +
                     std::to_string(kkt_lambda_threshold(c_over_sbar)));
  return rho;
}

double revenue_ratio(double rho)
{
  return std::log1p(std::log(rho)) / rho;
}

std::pair<double, double> revenue_ratio_peak()
{
  double rho = golden_max(revenue_ratio, 1.0, 20.0, 1e-12);
  return {rho, revenue_ratio(rho)};
}

double revenue_density(double sbar_over_c)
{
  auto [peak, vmax] = revenue_ratio_peak();
  if (!(sbar_over_c > 0.0))
    throw Infeasible("sbar/c must be positive");
  if (sbar_over_c > vmax + 1e-12)
    throw Infeasible("sbar/c above the maximum " + std::to_string(vmax));
  if (sbar_over_c >= vmax)
    return peak;
  return bisect_grow([&](double r) { return revenue_ratio(r) - sbar_over_c; }, peak,
                     2.0 * peak, tight());
}

} // namespace ofdma
