#include "ofdma/miso.hpp"
#include "ofdma/error.hpp"
#include "ofdma/random.hpp"

#include <cmath>
#include <random>

namespace ofdma {

BeamSet random_orthonormal_beams(std::size_t M, std::uint64_t seed)
{
  if (M < 1)
    throw InvalidParam("M must be at least 1");
  BeamSet b;
  b.M = M;
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng = make_stream(seed, {kStreamBeams, attempt});
    b.a.assign(M * M, cplx{});
    for (auto& z : b.a)
      z = {nd(rng), nd(rng)};
    bool ok = true;
    // modified Gram-Schmidt over columns
    for (std::size_t m = 0; m < M && ok; ++m) {
      cplx* col = &b.a[m * M];
      for (std::size_t q = 0; q < m; ++q) {
        const cplx* prev = &b.a[q * M];
        cplx dot{};
        for (std::size_t r = 0; r < M; ++r)
          dot += std::conj(prev[r]) * col[r];
        for (std::size_t r = 0; r < M; ++r)
          col[r] -= dot * prev[r];
      }
      double nrm = 0.0;
      for (std::size_t r = 0; r < M; ++r)
        nrm += std::norm(col[r]);
      nrm = std::sqrt(nrm);
      if (!(nrm > 1e-12)) {
        ok = false;
        break;
      }
      for (std::size_t r = 0; r < M; ++r)
        col[r] /= nrm;
    }
    if (ok)
      return b;
  }
}

double beam_unitarity_residual(const BeamSet& beams)
{
  double worst = 0.0;
  for (std::size_t a = 0; a < beams.M; ++a)
    for (std::size_t c = 0; c < beams.M; ++c) {
      cplx dot{};
      for (std::size_t r = 0; r < beams.M; ++r)
        dot += std::conj(beams(r, a)) * beams(r, c);
      worst = std::max(worst, std::abs(dot - (a == c ? cplx{1.0} : cplx{})));
    }
  return worst;
}

double miso_sinr(const MisoPowers& powers, const MisoGains& gains, std::size_t i, std::size_t k,
                 std::size_t n, std::size_t m, IntraBeamGain mode)
{
  if (powers.B != gains.B || powers.N != gains.N || powers.M != gains.M)
    throw DimensionMismatch("MISO powers and gains disagree");
  if (i >= gains.B || k >= gains.K || n >= gains.N || m >= gains.M)
    throw IndexError("MISO index out of range");
  double den = 1.0;
  for (std::size_t mm = 0; mm < gains.M; ++mm)
    if (mm != m)
      den += powers(i, n, mm) *
             (mode == IntraBeamGain::SameBeam ? gains(i, k, n, m) : gains(i, k, n, mm));
  for (std::size_t j = 0; j < gains.B; ++j)
    if (j != i)
      for (std::size_t mm = 0; mm < gains.M; ++mm)
        den += powers(j, n, mm) * gains(j, k, n, mm);
  return powers(i, n, m) * gains(i, k, n, m) / den;
}

MisoGains compute_miso_gains(const NetworkLayout& layout, const UserSet& users,
                             const ChannelParams& params, const std::vector<BeamSet>& beams,
                             std::size_t N, std::uint64_t seed)
{
  params.validate();
  if (!std::holds_alternative<Rayleigh>(params.fading))
    throw FamilyMismatch("beamformed gains are drawn from complex Gaussian channels");
  if (beams.size() != layout.B() || beams.empty())
    throw DimensionMismatch("need one beam set per transmitter");
  std::size_t M = beams.front().M;
  for (const auto& b : beams)
    if (b.M != M)
      throw DimensionMismatch("beam sets differ in M");
  std::vector<double> pg = path_gain_matrix(layout, users, params);
  std::size_t B = layout.B(), K = users.K();
  MisoGains g(B, K, N, M);
  Rng rng = make_stream(seed, {kStreamFading});
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  std::vector<cplx> h(M);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t n = 0; n < N; ++n) {
        for (auto& z : h)
          z = {nd(rng), nd(rng)};
        for (std::size_t m = 0; m < M; ++m) {
          cplx s{};
          for (std::size_t r = 0; r < M; ++r)
            s += h[r] * beams[i](r, m);
          g(i, k, n, m) = pg[i * K + k] * std::norm(s);
        }
      }
  return g;
}

MisoSolution solve_op_miso(const OpInstance& inst, std::size_t M, const SolverOptions& opt)
{
  inst.validate();
  if (M < 1)
    throw InvalidParam("M must be at least 1");
  std::size_t B = inst.B, N = inst.N;
  // virtual transmitter v = i M + m, grouped by physical TX i
  VirtualProblem vp;
  vp.V = B * M;
  vp.N = N;
  vp.groups = B;
  vp.group.resize(vp.V);
  for (std::size_t v = 0; v < vp.V; ++v)
    vp.group[v] = v / M;
  vp.Pcon = inst.params.Pcon;
  vp.g0 = inst.params.peak_gain();
  vp.D = inst.coupling();
  vp.L = inst.log_level();

  std::vector<std::vector<double>> extra;
  for (const auto& s : opt.extra_starts) {
    if (s.B != B || s.N != N)
      throw DimensionMismatch("warm start does not match the instance");
    std::vector<double> p(vp.V * N);
    for (std::size_t i = 0; i < B; ++i)
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t n = 0; n < N; ++n)
          p[(i * M + m) * N + n] = s(i, n) / static_cast<double>(M);
    extra.push_back(std::move(p));
  }
  VirtualSolution vs = solve_virtual(vp, opt, extra);

  MisoSolution out;
  out.powers = MisoPowers(B, N, M);
  out.x = MisoPowers(B, N, M);
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t n = 0; n < N; ++n) {
        out.powers(i, n, m) = vs.p[(i * M + m) * N + n];
        out.x(i, n, m) = vs.x[(i * M + m) * N + n];
      }
  out.objective = vs.objective;
  out.converged = vs.converged;
  out.iterations = vs.iterations;
  return out;
}

void to_json(nlohmann::json& j, const MisoPowers& a)
{
  j = nlohmann::json::array();
  for (std::size_t i = 0; i < a.B; ++i) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 0; n < a.N; ++n) {
      nlohmann::json beams = nlohmann::json::array();
      for (std::size_t m = 0; m < a.M; ++m)
        beams.push_back(a(i, n, m));
      rows.push_back(beams);
    }
    j.push_back(rows);
  }
}

void to_json(nlohmann::json& j, const MisoSolution& s)
{
  j = {{"powers", s.powers},
       {"x", s.x},
       {"objective", s.objective},
       {"iterations", s.iterations},
       {"converged", s.converged}};
}

} // namespace ofdma
