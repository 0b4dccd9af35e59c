#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ofdma/bounds.hpp"
#include "ofdma/op_solver.hpp"

namespace ofdma {

// u[i][n]: 0-based user index served by TX i on block n.
struct Assignment {
  std::size_t B = 0;
  std::size_t N = 0;
  std::vector<std::size_t> u;

  std::size_t operator()(std::size_t i, std::size_t n) const { return u[i * N + n]; }
};

double sinr(const PowerAllocation& powers, const SnrTensor& snr, std::size_t i, std::size_t k,
            std::size_t n);

Assignment schedule_users(const PowerAllocation& powers, const SnrTensor& snr);

// Sum over (i,n) of log(1 + SINR) for the scheduled users.
double scheduled_rate(const PowerAllocation& powers, const SnrTensor& snr, const Assignment& a);

MeanStderr achieved_sum_rate(const NetworkLayout& layout, const ChannelParams& params,
                             std::size_t K, std::size_t N, const PowerAllocation& powers,
                             std::size_t trials, std::uint64_t seed,
                             UserSampling sampling = UserSampling::Disc, unsigned threads = 1);

enum class P2PRegime { Linear, Saturated };
enum class GainBranch { LinearInB, LogOverLogLog, LogOverLogB };

struct P2PScaling {
  P2PRegime regime = P2PRegime::Linear;
  double predicted_rate_scale = 0.0;
  double gain_over_single_tx = 0.0;
  GainBranch gain_branch = GainBranch::LinearInB;
  double linear_branch = 0.0;    // B N log log K
  double saturated_branch = 0.0; // N log K
  double single_tx_power = 0.0;  // B * P_bar for the single-TX comparison
};

P2PScaling p2p_scaling(double K, std::size_t B, std::size_t N, double P_bar,
                       const ChannelParams& params, double p);

} // namespace ofdma
