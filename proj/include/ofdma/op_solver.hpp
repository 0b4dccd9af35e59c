#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ofdma/snr_model.hpp"

namespace ofdma {

// p[i][n], row-major with n fastest.
struct PowerAllocation {
  std::size_t B = 0;
  std::size_t N = 0;
  std::vector<double> p;

  PowerAllocation() = default;
  PowerAllocation(std::size_t B_, std::size_t N_, double fill = 0.0)
      : B(B_), N(N_), p(B_ * N_, fill)
  {
  }
  double& operator()(std::size_t i, std::size_t n) { return p[i * N + n]; }
  double operator()(std::size_t i, std::size_t n) const { return p[i * N + n]; }

  static PowerAllocation equal(std::size_t B, std::size_t N, double Pcon);
  // Throws ConstraintViolation if any entry is negative or a row sum exceeds Pcon.
  void check(double Pcon) const;
};

struct OpInstance {
  double c = 1.0;
  double hK = 1.0;
  std::size_t B = 1;
  std::size_t N = 1;
  ChannelParams params;
  double p_radius = 1.0;

  void validate() const;
  // ln(r0^2 hK / p^2)
  double log_level() const;
  // c^{2 alpha} r0^{-2 alpha}
  double coupling() const;
};

struct OpSolution {
  PowerAllocation powers;
  PowerAllocation x;
  double objective = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

struct SolverOptions {
  bool equal_start = true;
  bool vertex_starts = true;
  std::size_t random_starts = 4;
  std::uint64_t seed = 1;
  std::size_t max_sweeps = 500;
  std::size_t inner_steps = 20;
  double tol = 1e-9;
  std::vector<PowerAllocation> extra_starts;
};

// Positive root x of L = x / g0 + sum_j log(1 + q_j x / D).
double solve_proxy(double L, double g0, double D, const std::vector<double>& q);

PowerAllocation solve_x(const PowerAllocation& powers, const OpInstance& inst);

double op_objective(const PowerAllocation& powers, const OpInstance& inst);

// Gradient of op_objective with respect to every p[i][n].
PowerAllocation op_gradient(const PowerAllocation& powers, const OpInstance& inst);

OpSolution solve_op(const OpInstance& inst, const SolverOptions& opt = {});

double lbar(double c, double K, const OpInstance& inst);

struct OpRateBracket {
  double lo = 0.0;
  double hi = 0.0;
  double lo_prefactor = 0.0;
  double hi_prefactor = 0.0;
  double op_lo = 0.0;
  double op_hi = 0.0;
};

constexpr double kEulerGamma = 0.5772156649;

OpRateBracket op_rate_bracket(double K, double S1, const OpInstance& inst_r0,
                                 const OpInstance& inst_2p, const SolverOptions& opt = {});

double op_ratio_check(double c1, double c2, double hK, const OpInstance& inst,
                      const SolverOptions& opt = {});

double fixed_power_x(double P_bar, double c, double hK, const OpInstance& inst);

// Euclidean projection onto {v >= 0, sum v <= cap}.
std::vector<double> project_capped_simplex(const std::vector<double>& v, double cap);

// Shared engine for SISO and MISO problems. V virtual transmitters share block n;
// each belongs to one power group whose entries (over members and blocks) sum to <= Pcon.
struct VirtualProblem {
  std::size_t V = 0;
  std::size_t N = 0;
  std::vector<std::size_t> group; // size V
  std::size_t groups = 0;
  double Pcon = 1.0;
  double g0 = 1.0;
  double D = 1.0;
  double L = 0.0;
};

struct VirtualSolution {
  std::vector<double> p; // V x N
  std::vector<double> x; // V x N
  double objective = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

std::vector<double> virtual_x(const VirtualProblem& vp, const std::vector<double>& p);
double virtual_objective(const VirtualProblem& vp, const std::vector<double>& p);
std::vector<double> virtual_gradient(const VirtualProblem& vp, const std::vector<double>& p);
VirtualSolution solve_virtual(const VirtualProblem& vp, const SolverOptions& opt,
                              const std::vector<std::vector<double>>& extra_starts);

void to_json(nlohmann::json& j, const PowerAllocation& a);
void from_json(const nlohmann::json& j, PowerAllocation& a);
void to_json(nlohmann::json& j, const OpInstance& o);
void from_json(const nlohmann::json& j, OpInstance& o);
void to_json(nlohmann::json& j, const OpSolution& s);

} // namespace ofdma
