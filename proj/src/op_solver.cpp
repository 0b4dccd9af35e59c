#include "ofdma/op_solver.hpp"
#include "ofdma/error.hpp"
#include "ofdma/numeric.hpp"
#include "ofdma/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace ofdma {

PowerAllocation PowerAllocation::equal(std::size_t B, std::size_t N, double Pcon)
{
  return PowerAllocation(B, N, Pcon / static_cast<double>(N));
}

void PowerAllocation::check(double Pcon) const
{
  if (p.size() != B * N)
    throw DimensionMismatch("power array is not B x N");
  for (std::size_t i = 0; i < B; ++i) {
    double s = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      if ((*this)(i, n) < 0.0)
        throw ConstraintViolation("negative power");
      s += (*this)(i, n);
    }
    if (s > Pcon + 1e-12)
      throw ConstraintViolation("transmitter " + std::to_string(i) + " exceeds its power budget");
  }
}

void OpInstance::validate() const
{
  params.validate();
  if (B < 1 || N < 1)
    throw InvalidParam("B and N must be at least 1");
  if (!(c >= params.r0))
    throw InvalidParam("need c >= r0");
  if (!(p_radius > 0.0))
    throw InvalidParam("p_radius must be positive");
  if (!(log_level() > 0.0))
    throw NoRoot("need r0^2 hK / p^2 > 1");
}

double OpInstance::log_level() const
{
  return std::log(hK) + 2.0 * std::log(params.r0) - 2.0 * std::log(p_radius);
}

double OpInstance::coupling() const
{
  return std::pow(c / params.r0, 2.0 * params.alpha);
}

double solve_proxy(double L, double g0, double D, const std::vector<double>& q)
{
  if (!(L > 0.0))
    throw NoRoot("fixed point needs a positive log level");
  auto f = [&](double x) {
    double s = x / g0 - L;
    for (double qj : q)
      s += std::log1p(qj * x / D);
    return s;
  };
  RootOptions opt;
  opt.rel_tol = 1e-15;
  return bisect_grow(f, 0.0, g0 * L + 1.0, opt);
}

std::vector<double> project_capped_simplex(const std::vector<double>& v, double cap)
{
  std::vector<double> out(v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(0.0, v[i]);
    s += out[i];
  }
  if (s <= cap)
    return out;
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    css += u[j];
    double t = (css - cap) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0)
      theta = t;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = std::max(0.0, v[i] - theta);
  return out;
}

std::vector<double> virtual_x(const VirtualProblem& vp, const std::vector<double>& p)
{
  std::vector<double> x(vp.V * vp.N);
  std::vector<double> q;
  q.reserve(vp.V);
  for (std::size_t v = 0; v < vp.V; ++v)
    for (std::size_t n = 0; n < vp.N; ++n) {
      q.clear();
      for (std::size_t u = 0; u < vp.V; ++u)
        if (u != v)
          q.push_back(p[u * vp.N + n]);
      x[v * vp.N + n] = solve_proxy(vp.L, vp.g0, vp.D, q);
    }
  return x;
}

double virtual_objective(const VirtualProblem& vp, const std::vector<double>& p)
{
  std::vector<double> x = virtual_x(vp, p);
  double s = 0.0;
  for (std::size_t e = 0; e < p.size(); ++e)
    s += std::log1p(p[e] * x[e]);
  return s;
}

std::vector<double> virtual_gradient(const VirtualProblem& vp, const std::vector<double>& p)
{
  std::size_t N = vp.N;
  std::vector<double> x = virtual_x(vp, p);
  std::vector<double> g(vp.V * N, 0.0);
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t v = 0; v < vp.V; ++v) {
      double xv = x[v * N + n];
      double pv = p[v * N + n];
      g[v * N + n] += xv / (1.0 + pv * xv);
      // implicit derivative of x_v with respect to the other powers on block n
      double dphi_dx = 1.0 / vp.g0;
      for (std::size_t u = 0; u < vp.V; ++u)
        if (u != v)
          dphi_dx += p[u * N + n] / (vp.D + p[u * N + n] * xv);
      double w = pv / (1.0 + pv * xv);
      for (std::size_t u = 0; u < vp.V; ++u)
        if (u != v)
          g[u * N + n] -= w * (xv / (vp.D + p[u * N + n] * xv)) / dphi_dx;
    }
  return g;
}

namespace {

struct Ascent {
  std::vector<double> p;
  double F = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

Ascent ascend(const VirtualProblem& vp, const SolverOptions& opt,
              const std::vector<std::vector<std::size_t>>& members, std::vector<double> p)
{
  Ascent a;
  double F = virtual_objective(vp, p);
  std::vector<double> step(vp.groups, 0.0);
  for (std::size_t sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    double F0 = F;
    for (std::size_t g = 0; g < vp.groups; ++g) {
      const auto& idx = members[g];
      for (std::size_t it = 0; it < opt.inner_steps; ++it) {
        std::vector<double> grad = virtual_gradient(vp, p);
        double gmax = 0.0;
        for (std::size_t e : idx)
          gmax = std::max(gmax, std::fabs(grad[e]));
        if (!(gmax > 0.0))
          break;
        double t = step[g] > 0.0 ? 2.0 * step[g] : vp.Pcon / gmax;
        std::vector<double> base(idx.size()), trial(idx.size());
        for (std::size_t e = 0; e < idx.size(); ++e)
          base[e] = p[idx[e]];
        bool accepted = false;
        std::vector<double> cand_p;
        double cand_F = F;
        for (int bt = 0; bt < 60; ++bt) {
          for (std::size_t e = 0; e < idx.size(); ++e)
            trial[e] = base[e] + t * grad[idx[e]];
          std::vector<double> proj = project_capped_simplex(trial, vp.Pcon);
          double delta = 0.0;
          for (std::size_t e = 0; e < idx.size(); ++e)
            delta += grad[idx[e]] * (proj[e] - base[e]);
          if (!(delta > 1e-18))
            break;
          cand_p = p;
          for (std::size_t e = 0; e < idx.size(); ++e)
            cand_p[idx[e]] = proj[e];
          cand_F = virtual_objective(vp, cand_p);
          if (cand_F >= F + 1e-4 * delta) {
            accepted = true;
            break;
          }
          t *= 0.5;
        }
        if (!accepted)
          break;
        step[g] = t;
        double gain = cand_F - F;
        p = std::move(cand_p);
        F = cand_F;
        if (gain < 0.1 * opt.tol)
          break;
      }
    }
    a.sweeps = sweep;
    if (F - F0 < opt.tol) {
      a.converged = true;
      break;
    }
  }
  a.p = std::move(p);
  a.F = F;
  return a;
}

} // namespace

VirtualSolution solve_virtual(const VirtualProblem& vp, const SolverOptions& opt,
                              const std::vector<std::vector<double>>& extra_starts)
{
  std::size_t N = vp.N;
  std::vector<std::vector<std::size_t>> members(vp.groups);
  std::vector<std::size_t> group_size(vp.groups, 0);
  for (std::size_t v = 0; v < vp.V; ++v) {
    ++group_size[vp.group[v]];
    for (std::size_t n = 0; n < N; ++n)
      members[vp.group[v]].push_back(v * N + n);
  }

  std::vector<std::vector<double>> starts;
  if (opt.equal_start) {
    std::vector<double> p(vp.V * N);
    for (std::size_t v = 0; v < vp.V; ++v)
      for (std::size_t n = 0; n < N; ++n)
        p[v * N + n] = vp.Pcon / static_cast<double>(group_size[vp.group[v]] * N);
    starts.push_back(std::move(p));
  }
  if (opt.vertex_starts && N > 1) {
    for (std::size_t blk = 0; blk < N; ++blk) {
      std::vector<double> p(vp.V * N, 0.0);
      for (std::size_t v = 0; v < vp.V; ++v)
        p[v * N + blk] = vp.Pcon / static_cast<double>(group_size[vp.group[v]]);
      starts.push_back(std::move(p));
    }
  }
  for (std::size_t r = 0; r < opt.random_starts; ++r) {
    Rng rng = make_stream(opt.seed, {kStreamStarts, r});
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> p(vp.V * N, 0.0);
    for (std::size_t g = 0; g < vp.groups; ++g) {
      double s = 0.0;
      for (std::size_t e : members[g]) {
        p[e] = ex(rng);
        s += p[e];
      }
      for (std::size_t e : members[g])
        p[e] *= vp.Pcon / s;
    }
    starts.push_back(std::move(p));
  }
  for (const auto& s : extra_starts) {
    if (s.size() != vp.V * N)
      throw DimensionMismatch("warm start has the wrong shape");
    std::vector<double> p = s;
    for (std::size_t g = 0; g < vp.groups; ++g) {
      std::vector<double> sub;
      for (std::size_t e : members[g])
        sub.push_back(p[e]);
      sub = project_capped_simplex(sub, vp.Pcon);
      for (std::size_t e = 0; e < sub.size(); ++e)
        p[members[g][e]] = sub[e];
    }
    starts.push_back(std::move(p));
  }
  if (starts.empty())
    throw InvalidParam("solver has no starting points");

  VirtualSolution best;
  bool have = false;
  for (auto& s : starts) {
    Ascent a = ascend(vp, opt, members, std::move(s));
    if (!have || a.F > best.objective) {
      best.p = std::move(a.p);
      best.objective = a.F;
      best.converged = a.converged;
      best.iterations = a.sweeps;
      have = true;
    }
  }
  best.x = virtual_x(vp, best.p);
  return best;
}

namespace {

VirtualProblem siso_problem(const OpInstance& inst)
{
  inst.validate();
  VirtualProblem vp;
  vp.V = inst.B;
  vp.N = inst.N;
  vp.groups = inst.B;
  vp.group.resize(inst.B);
  std::iota(vp.group.begin(), vp.group.end(), std::size_t{0});
  vp.Pcon = inst.params.Pcon;
  vp.g0 = inst.params.peak_gain();
  vp.D = inst.coupling();
  vp.L = inst.log_level();
  return vp;
}

void check_shape(const PowerAllocation& a, const OpInstance& inst)
{
  if (a.B != inst.B || a.N != inst.N || a.p.size() != inst.B * inst.N)
    throw DimensionMismatch("power allocation does not match the instance");
}

} // namespace

PowerAllocation solve_x(const PowerAllocation& powers, const OpInstance& inst)
{
  check_shape(powers, inst);
  VirtualProblem vp = siso_problem(inst);
  PowerAllocation x(inst.B, inst.N);
  x.p = virtual_x(vp, powers.p);
  return x;
}

double op_objective(const PowerAllocation& powers, const OpInstance& inst)
{
  check_shape(powers, inst);
  return virtual_objective(siso_problem(inst), powers.p);
}

PowerAllocation op_gradient(const PowerAllocation& powers, const OpInstance& inst)
{
  check_shape(powers, inst);
  PowerAllocation g(inst.B, inst.N);
  g.p = virtual_gradient(siso_problem(inst), powers.p);
  return g;
}

OpSolution solve_op(const OpInstance& inst, const SolverOptions& opt)
{
  VirtualProblem vp = siso_problem(inst);
  std::vector<std::vector<double>> extra;
  for (const auto& s : opt.extra_starts) {
    check_shape(s, inst);
    extra.push_back(s.p);
  }
  VirtualSolution vs = solve_virtual(vp, opt, extra);
  OpSolution out;
  out.powers = PowerAllocation(inst.B, inst.N);
  out.powers.p = vs.p;
  out.x = PowerAllocation(inst.B, inst.N);
  out.x.p = vs.x;
  out.objective = vs.objective;
  out.converged = vs.converged;
  out.iterations = vs.iterations;
  return out;
}

double lbar(double c, double K, const OpInstance& inst)
{
  OpInstance at = inst;
  at.c = c;
  at.hK = K;
  at.params.validate();
  double L = at.log_level();
  if (!(L > 0.0))
    throw NoRoot("need r0^2 K / p^2 > 1");
  std::vector<double> q(inst.B - 1, inst.params.Pcon);
  return solve_proxy(L, at.params.peak_gain(), at.coupling(), q);
}

OpRateBracket op_rate_bracket(double K, double S1, const OpInstance& inst_r0,
                                 const OpInstance& inst_2p, const SolverOptions& opt)
{
  if (!(S1 > 0.0) || S1 > K)
    throw InvalidParam("need 0 < S1 <= K");
  OpInstance lo_inst = inst_r0;
  lo_inst.hK = K / S1;
  OpInstance hi_inst = inst_2p;
  hi_inst.hK = K;

  OpSolution lo_sol = solve_op(lo_inst, opt);
  SolverOptions hi_opt = opt;
  hi_opt.extra_starts.push_back(lo_sol.powers);
  OpSolution hi_sol = solve_op(hi_inst, hi_opt);

  OpRateBracket b;
  b.op_lo = lo_sol.objective;
  b.op_hi = hi_sol.objective;
  b.lo_prefactor = -std::expm1(-S1);
  b.hi_prefactor =
      1.0 + inst_2p.params.peak_gain() * kEulerGamma / lbar(inst_2p.c, K, inst_2p);
  b.lo = b.lo_prefactor * b.op_lo;
  b.hi = b.hi_prefactor * b.op_hi;
  return b;
}

double op_ratio_check(double c1, double c2, double hK, const OpInstance& inst,
                      const SolverOptions& opt)
{
  if (!(c1 > 0.0) || c1 > c2)
    throw InvalidParam("need 0 < c1 <= c2");
  OpInstance i1 = inst, i2 = inst;
  i1.c = c1;
  i1.hK = hK;
  i2.c = c2;
  i2.hK = hK;
  // Each side is re-solved from the other side's optimum, so both solves see
  // the same candidate allocations.
  OpSolution s1 = solve_op(i1, opt);
  OpSolution s2;
  for (int round = 0; round < 3; ++round) {
    SolverOptions o2 = opt;
    o2.extra_starts.push_back(s1.powers);
    if (round > 0)
      o2.extra_starts.push_back(s2.powers);
    s2 = solve_op(i2, o2);
    SolverOptions o1 = opt;
    o1.extra_starts.push_back(s1.powers);
    o1.extra_starts.push_back(s2.powers);
    OpSolution again = solve_op(i1, o1);
    if (!(again.objective > s1.objective))
      break;
    s1 = again;
  }
  return s2.objective / s1.objective;
}

double fixed_power_x(double P_bar, double c, double hK, const OpInstance& inst)
{
  OpInstance at = inst;
  at.c = c;
  at.hK = hK;
  double lev = at.log_level();
  double first = at.params.peak_gain() * lev;
  if (inst.B < 2)
    return first;
  double second = std::pow(c / at.params.r0, 2.0 * at.params.alpha) / P_bar *
                  std::exp(lev / static_cast<double>(inst.B - 1));
  return std::min(first, second);
}

void to_json(nlohmann::json& j, const PowerAllocation& a)
{
  j = nlohmann::json::array();
  for (std::size_t i = 0; i < a.B; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t n = 0; n < a.N; ++n)
      row.push_back(a(i, n));
    j.push_back(row);
  }
}

void from_json(const nlohmann::json& j, PowerAllocation& a)
{
  a.B = j.size();
  a.N = a.B ? j.at(0).size() : 0;
  a.p.assign(a.B * a.N, 0.0);
  for (std::size_t i = 0; i < a.B; ++i) {
    if (j.at(i).size() != a.N)
      throw DimensionMismatch("ragged power array");
    for (std::size_t n = 0; n < a.N; ++n)
      a(i, n) = j.at(i).at(n).get<double>();
  }
}

void to_json(nlohmann::json& j, const OpInstance& o)
{
  j = {{"c", o.c}, {"hK", o.hK}, {"B", o.B}, {"N", o.N}, {"p_radius", o.p_radius},
       {"channel", o.params}};
}

void from_json(const nlohmann::json& j, OpInstance& o)
{
  o.c = j.at("c").get<double>();
  o.hK = j.at("hK").get<double>();
  o.B = j.at("B").get<std::size_t>();
  o.N = j.at("N").get<std::size_t>();
  o.p_radius = j.at("p_radius").get<double>();
  o.params = j.at("channel").get<ChannelParams>();
}

void to_json(nlohmann::json& j, const OpSolution& s)
{
  j = {{"powers", s.powers},
       {"x", s.x},
       {"objective", s.objective},
       {"iterations", s.iterations},
       {"converged", s.converged}};
}

} // namespace ofdma
