#pragma once

#include <utility>

namespace ofdma {

double required_resource_count(double K);

struct InvestmentCheck {
  bool roi_ok = false;
  bool throughput_ok = false;
  double roi_value = 0.0;        // (BN / (B + c_N N)) log((1/N) log(KN/B))
  double throughput_value = 0.0; // (BN / K) log((1/N) log(KN/B))
};

InvestmentCheck investment_feasible(double K, double B, double N, double sbar, double c_N,
                               double shat);

// (c/sbar) log(1 + log rho), the per-user throughput constraint curve.
double throughput_constraint(double rho, double c_over_sbar);

std::pair<double, double> density_feasible_range(double c_over_sbar);

// Smallest lambda for which the KKT root lies inside the feasible range.
double kkt_lambda_threshold(double c_over_sbar = 10.0);

// Right-hand side of the KKT fixed point rho = (lambda + 1) c / ((1 + log rho) lambda).
double kkt_rhs(double rho, double lambda, double c_over_sbar = 10.0);

// lambda = +infinity is accepted.
double kkt_density(double lambda, double c_over_sbar = 10.0);

double revenue_ratio(double rho);

// (rho at the maximum, maximum value) of log(1 + log rho) / rho.
std::pair<double, double> revenue_ratio_peak();

double revenue_density(double sbar_over_c);

} // namespace ofdma
