#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ofdma/op_solver.hpp"

namespace ofdma {

using cplx = std::complex<double>;

// M orthonormal beams in C^M; beam m is column m of a column-major M x M matrix.
struct BeamSet {
  std::size_t M = 0;
  std::vector<cplx> a;

  cplx operator()(std::size_t row, std::size_t m) const { return a[m * M + row]; }
};

BeamSet random_orthonormal_beams(std::size_t M, std::uint64_t seed);

// max |<phi_a, phi_b> - delta_ab|
double beam_unitarity_residual(const BeamSet& beams);

// p[i][n][m], m fastest.
struct MisoPowers {
  std::size_t B = 0, N = 0, M = 0;
  std::vector<double> p;

  MisoPowers() = default;
  MisoPowers(std::size_t B_, std::size_t N_, std::size_t M_, double fill = 0.0)
      : B(B_), N(N_), M(M_), p(B_ * N_ * M_, fill)
  {
  }
  double& operator()(std::size_t i, std::size_t n, std::size_t m) { return p[(i * N + n) * M + m]; }
  double operator()(std::size_t i, std::size_t n, std::size_t m) const
  {
    return p[(i * N + n) * M + m];
  }
};

// gamma[i][k][n][m], m fastest.
struct MisoGains {
  std::size_t B = 0, K = 0, N = 0, M = 0;
  std::vector<double> g;

  MisoGains() = default;
  MisoGains(std::size_t B_, std::size_t K_, std::size_t N_, std::size_t M_)
      : B(B_), K(K_), N(N_), M(M_), g(B_ * K_ * N_ * M_, 0.0)
  {
  }
  double& operator()(std::size_t i, std::size_t k, std::size_t n, std::size_t m)
  {
    return g[((i * K + k) * N + n) * M + m];
  }
  double operator()(std::size_t i, std::size_t k, std::size_t n, std::size_t m) const
  {
    return g[((i * K + k) * N + n) * M + m];
  }
};

// Which gain weights the serving TX's other beams in the interference sum.
enum class IntraBeamGain {
  SameBeam,  // gamma[i][k][n][m] for every m' (the displayed form)
  OtherBeam, // gamma[i][k][n][m']
};

double miso_sinr(const MisoPowers& powers, const MisoGains& gains, std::size_t i, std::size_t k,
                 std::size_t n, std::size_t m, IntraBeamGain mode = IntraBeamGain::SameBeam);

// |H phi_m|^2 with H = beta R^{-alpha} (i.i.d. CN(0,1))^M; needs Rayleigh fading.
MisoGains compute_miso_gains(const NetworkLayout& layout, const UserSet& users,
                             const ChannelParams& params, const std::vector<BeamSet>& beams,
                             std::size_t N, std::uint64_t seed);

struct MisoSolution {
  MisoPowers powers;
  MisoPowers x;
  double objective = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

MisoSolution solve_op_miso(const OpInstance& inst, std::size_t M, const SolverOptions& opt = {});

void to_json(nlohmann::json& j, const MisoPowers& a);
void to_json(nlohmann::json& j, const MisoSolution& s);

} // namespace ofdma
