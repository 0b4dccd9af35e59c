#include "ofdma/scheduler.hpp"
#include "ofdma/error.hpp"

#include <cmath>

namespace ofdma {

namespace {

void check_dims(const PowerAllocation& powers, const SnrTensor& snr)
{
  if (powers.B != snr.B() || powers.N != snr.N() || powers.p.size() != powers.B * powers.N)
    throw DimensionMismatch("powers and SNR tensor disagree on B or N");
  if (snr.K() < 1)
    throw DimensionMismatch("no users");
}

} // namespace

double sinr(const PowerAllocation& powers, const SnrTensor& snr, std::size_t i, std::size_t k,
            std::size_t n)
{
  double interf = 0.0;
  for (std::size_t j = 0; j < snr.B(); ++j)
    if (j != i)
      interf += powers(j, n) * snr(j, k, n);
  return powers(i, n) * snr(i, k, n) / (1.0 + interf);
}

Assignment schedule_users(const PowerAllocation& powers, const SnrTensor& snr)
{
  check_dims(powers, snr);
  Assignment a;
  a.B = snr.B();
  a.N = snr.N();
  a.u.assign(a.B * a.N, 0);
  for (std::size_t i = 0; i < a.B; ++i)
    for (std::size_t n = 0; n < a.N; ++n) {
      std::size_t best = 0;
      double bv = sinr(powers, snr, i, 0, n);
      for (std::size_t k = 1; k < snr.K(); ++k) {
        double v = sinr(powers, snr, i, k, n);
        if (v > bv) {
          bv = v;
          best = k;
        }
      }
      a.u[i * a.N + n] = best;
    }
  return a;
}

double scheduled_rate(const PowerAllocation& powers, const SnrTensor& snr, const Assignment& a)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.B; ++i)
    for (std::size_t n = 0; n < a.N; ++n)
      s += std::log1p(sinr(powers, snr, i, a(i, n), n));
  return s;
}

MeanStderr achieved_sum_rate(const NetworkLayout& layout, const ChannelParams& params,
                             std::size_t K, std::size_t N, const PowerAllocation& powers,
                             std::size_t trials, std::uint64_t seed, UserSampling sampling,
                             unsigned threads)
{
  if (trials < 1)
    throw InvalidParam("trials must be at least 1");
  params.validate();
  if (powers.B != layout.B() || powers.N != N)
    throw DimensionMismatch("powers do not match layout and N");
  powers.check(params.Pcon);
  std::vector<double> v(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    SnrTensor snr = draw_trial_tensor(layout, params, K, N, sampling, seed, t);
    v[t] = scheduled_rate(powers, snr, schedule_users(powers, snr));
  });
  return mean_stderr(v);
}

P2PScaling p2p_scaling(double K, std::size_t B, std::size_t N, double P_bar,
                       const ChannelParams& /*params*/, double /*p*/)
{
  if (!(K >= 16.0))
    throw DomainError("p2p scaling needs K >= 16");
  double lnK = std::log(K);
  double lnlnK = std::log(lnK);
  double Bd = static_cast<double>(B);
  double Nd = static_cast<double>(N);
  P2PScaling s;
  s.linear_branch = Bd * Nd * lnlnK;
  s.saturated_branch = Nd * lnK;
  if (s.linear_branch <= s.saturated_branch) {
    s.regime = P2PRegime::Linear;
    s.predicted_rate_scale = s.linear_branch;
  } else {
    s.regime = P2PRegime::Saturated;
    s.predicted_rate_scale = s.saturated_branch;
  }
  if (Bd <= lnK / lnlnK) {
    s.gain_branch = GainBranch::LinearInB;
    s.gain_over_single_tx = Bd;
  } else if (Bd <= lnK) {
    s.gain_branch = GainBranch::LogOverLogLog;
    s.gain_over_single_tx = lnK / lnlnK;
  } else {
    s.gain_branch = GainBranch::LogOverLogB;
    s.gain_over_single_tx = lnK / std::log(Bd);
  }
  s.single_tx_power = Bd * P_bar;
  return s;
}

} // namespace ofdma
