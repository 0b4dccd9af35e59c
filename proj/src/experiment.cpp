#include "ofdma/experiment.hpp"
#include "ofdma/bounds.hpp"
#include "ofdma/design.hpp"
#include "ofdma/error.hpp"
#include "ofdma/miso.hpp"
#include "ofdma/op_solver.hpp"
#include "ofdma/scheduler.hpp"

#include "schema_text.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#ifndef OFDMA_VERSION
#define OFDMA_VERSION "0.1.0"
#endif

namespace ofdma {

using nlohmann::json;
namespace fs = std::filesystem;

std::string version_string()
{
  return OFDMA_VERSION;
}

const json& config_schema()
{
  static const json s = json::parse(schema_text::config);
  return s;
}

const json& summary_schema()
{
  static const json s = json::parse(schema_text::summary);
  return s;
}

namespace {

bool type_matches(const json& doc, const std::string& t)
{
  if (t == "object")
    return doc.is_object();
  if (t == "array")
    return doc.is_array();
  if (t == "string")
    return doc.is_string();
  if (t == "number")
    return doc.is_number();
  if (t == "integer")
    return doc.is_number_integer();
  if (t == "boolean")
    return doc.is_boolean();
  if (t == "null")
    return doc.is_null();
  return false;
}

} // namespace

void validate_against_schema(const json& doc, const json& schema, const std::string& path)
{
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (const auto& e : t)
        ok = ok || type_matches(doc, e.get<std::string>());
    } else {
      ok = type_matches(doc, t.get<std::string>());
    }
    if (!ok)
      throw ConfigError(path + ": expected type " + t.dump());
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"])
      ok = ok || e == doc;
    if (!ok)
      throw ConfigError(path + ": value " + doc.dump() + " not in " + schema["enum"].dump());
  }
  if (doc.is_number()) {
    double v = doc.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>())
      throw ConfigError(path + ": below minimum " + schema["minimum"].dump());
    if (schema.contains("exclusiveMinimum") && !(v > schema["exclusiveMinimum"].get<double>()))
      throw ConfigError(path + ": must exceed " + schema["exclusiveMinimum"].dump());
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& r : schema["required"])
        if (!doc.contains(r.get<std::string>()))
          throw ConfigError(path + ": missing required field '" + r.get<std::string>() + "'");
    const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (props && props->contains(it.key()))
        validate_against_schema(it.value(), (*props)[it.key()], path + "." + it.key());
      else if (closed)
        throw ConfigError(path + ": unknown field '" + it.key() + "'");
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>())
      throw ConfigError(path + ": needs at least " + schema["minItems"].dump() + " items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < doc.size(); ++i)
        validate_against_schema(doc[i], schema["items"], path + "[" + std::to_string(i) + "]");
  }
}

namespace {

std::string num(double v)
{
  if (!std::isfinite(v))
    return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class Csv {
public:
  Csv(const fs::path& path, const std::string& header) : path_(path), os_(path, std::ios::binary)
  {
    if (!os_)
      throw IoError("cannot write " + path.string());
    os_ << header << '\n';
  }
  template <class... Ts>
  void row(const Ts&... cols)
  {
    bool first = true;
    ((os_ << (first ? "" : ",") << cols, first = false), ...);
    os_ << '\n';
  }
  ~Csv() = default;

private:
  fs::path path_;
  std::ofstream os_;
};

struct Ctx {
  json cfg;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  unsigned threads = 1;
  bool bits = false;
  fs::path out;
  ChannelParams params;
  std::vector<std::string> files;

  double rate(double nats) const { return bits ? nats / std::log(2.0) : nats; }

  fs::path file(const std::string& name)
  {
    files.push_back(name);
    return out / name;
  }
};

std::vector<std::size_t> axis(const Ctx& c, const char* name)
{
  if (!c.cfg.contains("sweep") || !c.cfg["sweep"].contains(name))
    throw ConfigError(std::string("sweep.") + name + " is required for this experiment");
  return c.cfg["sweep"][name].get<std::vector<std::size_t>>();
}

const json& section(const Ctx& c, const char* name)
{
  if (!c.cfg.contains(name))
    throw ConfigError(std::string("section '") + name + "' is required for this experiment");
  return c.cfg[name];
}

ChannelParams channel_of(const json& cfg)
{
  if (!cfg.contains("channel"))
    throw ConfigError("section 'channel' is required");
  try {
    return cfg["channel"].get<ChannelParams>();
  } catch (const InvalidParam& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
}

UserSampling sampling_of(const Ctx& c)
{
  const json& l = section(c, "layout");
  return l.value("sampling", "disc") == "per_cell" ? UserSampling::PerCell : UserSampling::Disc;
}

NetworkLayout layout_for(const Ctx& c, std::size_t B)
{
  const json& l = section(c, "layout");
  std::string kind = l.at("kind").get<std::string>();
  double r0 = c.params.r0;
  if (kind == "hex") {
    if (!l.contains("R"))
      throw ConfigError("layout.R is required for hex layouts");
    return build_hex_layout(B, l["R"].get<double>(), r0);
  }
  if (!l.contains("p") || !l.contains("R"))
    throw ConfigError("layout.p and layout.R are required for dense layouts");
  std::vector<Point> tx;
  Placement placement = Placement::UniformRandom;
  if (l.value("placement", "random") == "provided") {
    placement = Placement::Provided;
    if (!l.contains("tx"))
      throw ConfigError("layout.tx is required for provided placement");
    for (const auto& q : l["tx"])
      tx.push_back({q.at(0).get<double>(), q.at(1).get<double>()});
  }
  return build_dense_layout(B, l["p"].get<double>(), l["R"].get<double>(), r0, placement, tx,
                            c.seed);
}

OpInstance instance_of(const Ctx& c)
{
  const json& o = section(c, "op");
  OpInstance inst;
  inst.c = o.at("c").get<double>();
  inst.hK = o.at("hK").get<double>();
  inst.B = o.at("B").get<std::size_t>();
  inst.N = o.at("N").get<std::size_t>();
  inst.p_radius = o.at("p_radius").get<double>();
  inst.params = c.params;
  return inst;
}

SolverOptions solver_of(const Ctx& c)
{
  SolverOptions s;
  s.seed = c.seed;
  if (c.cfg.contains("solver")) {
    const json& j = c.cfg["solver"];
    s.random_starts = j.value("random_starts", s.random_starts);
    s.max_sweeps = j.value("max_sweeps", s.max_sweeps);
    s.tol = j.value("tol", s.tol);
  }
  return s;
}

json run_bounds(Ctx& c)
{
  auto Ks = axis(c, "K"), Bs = axis(c, "B"), Ns = axis(c, "N");
  double r = c.cfg.value("bracket_r", 1.0);
  UserSampling sampling = sampling_of(c);
  bool hex = section(c, "layout").at("kind") == "hex";
  Csv csv(c.file("bounds.csv"),
          "K,B,N,family,lo,hi,upper_jensen,stderr_lo,stderr_hi,stderr_jensen,bracket_lo,bracket_hi");
  json rows = json::array();
  std::string fam = family_name(c.params.fading);
  for (std::size_t K : Ks)
    for (std::size_t B : Bs)
      for (std::size_t N : Ns) {
        NetworkLayout layout = layout_for(c, B);
        BoundsResult res = mc_bounds(layout, c.params, K, N, c.trials, c.seed, sampling, c.threads);
        double blo = std::numeric_limits<double>::quiet_NaN(), bhi = blo;
        if (std::holds_alternative<Rayleigh>(c.params.fading)) {
          try {
            Bracket b = hex ? extended_bracket(c.params, static_cast<double>(K), B, N, layout.R, r)
                            : dense_bracket(c.params, static_cast<double>(K), B, N, layout.p, r);
            blo = b.lo;
            bhi = b.hi;
          } catch (const DomainError&) {
          }
        }
        csv.row(K, B, N, fam, num(c.rate(res.lower)), num(c.rate(res.upper)),
                num(c.rate(res.upper_jensen)), num(c.rate(res.std_error_lower)),
                num(c.rate(res.std_error_upper)), num(c.rate(res.std_error_jensen)),
                num(c.rate(blo)), num(c.rate(bhi)));
        json row = {{"K", K},
                    {"B", B},
                    {"N", N},
                    {"lower", c.rate(res.lower)},
                    {"upper", c.rate(res.upper)},
                    {"upper_jensen", c.rate(res.upper_jensen)},
                    {"stderr_lower", c.rate(res.std_error_lower)},
                    {"stderr_upper", c.rate(res.std_error_upper)},
                    {"stderr_jensen", c.rate(res.std_error_jensen)},
                    {"trials", res.trials}};
        if (std::isfinite(blo))
          row["bracket"] = {{"lo", c.rate(blo)}, {"hi", c.rate(bhi)}, {"asymptotic_only", true}};
        rows.push_back(row);
      }
  return rows;
}

json run_scaling(Ctx& c)
{
  auto Ks = axis(c, "K"), Bs = axis(c, "B"), Ns = axis(c, "N");
  UserSampling sampling = sampling_of(c);
  Regime regime = section(c, "layout").at("kind") == "hex" ? Regime::Extended : Regime::Dense;
  ScalingLaw law = scaling_table(c.params.fading, regime);
  std::string fam = family_name(c.params.fading);
  Csv csv(c.file("scaling.csv"), "K,B,N,family,upper,stderr_upper,law,ratio");
  json rows = json::array();
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (std::size_t K : Ks)
    for (std::size_t B : Bs)
      for (std::size_t N : Ns) {
        NetworkLayout layout = layout_for(c, B);
        BoundsResult res = mc_bounds(layout, c.params, K, N, c.trials, c.seed, sampling, c.threads);
        double lv = law.upper(static_cast<double>(K), static_cast<double>(B),
                              static_cast<double>(N));
        double ratio = c.rate(res.upper) / lv;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        csv.row(K, B, N, fam, num(c.rate(res.upper)), num(c.rate(res.std_error_upper)), num(lv),
                num(ratio));
        rows.push_back({{"K", K}, {"B", B}, {"N", N}, {"upper", c.rate(res.upper)},
                        {"law", lv}, {"ratio", ratio}});
      }
  return {{"law", law.upper_expr}, {"rows", rows}, {"ratio_spread", rmax / rmin}};
}

json solution_json(const Ctx& c, const OpSolution& s)
{
  json j = s;
  j["objective"] = c.rate(s.objective);
  return j;
}

json run_op(Ctx& c)
{
  OpInstance inst = instance_of(c);
  OpSolution s = solve_op(inst, solver_of(c));
  Csv csv(c.file("op_solution.csv"), "i,n,power,x");
  for (std::size_t i = 0; i < inst.B; ++i)
    for (std::size_t n = 0; n < inst.N; ++n)
      csv.row(i, n, num(s.powers(i, n)), num(s.x(i, n)));
  json sol = solution_json(c, s);
  std::ofstream(c.file("op_solution.json"), std::ios::binary) << sol.dump(2) << '\n';
  return sol;
}

json run_schedule(Ctx& c)
{
  auto Ks = axis(c, "K"), Bs = axis(c, "B"), Ns = axis(c, "N");
  UserSampling sampling = sampling_of(c);
  bool use_op = c.cfg.value("powers", "equal") == "op";
  Csv csv(c.file("schedule.csv"), "K,B,N,trial,i,n,scheduled_user,sinr,rate");
  json rows = json::array();
  for (std::size_t K : Ks)
    for (std::size_t B : Bs)
      for (std::size_t N : Ns) {
        NetworkLayout layout = layout_for(c, B);
        PowerAllocation powers = PowerAllocation::equal(B, N, c.params.Pcon);
        if (use_op) {
          OpInstance inst = instance_of(c);
          inst.B = B;
          inst.N = N;
          inst.hK = static_cast<double>(K);
          inst.p_radius = layout.p;
          powers = solve_op(inst, solver_of(c)).powers;
        }
        powers.check(c.params.Pcon);
        struct Cell {
          std::size_t user;
          double sinr;
        };
        std::vector<std::vector<Cell>> per_trial(c.trials);
        std::vector<double> totals(c.trials);
        parallel_for(c.trials, c.threads, [&](std::size_t t) {
          SnrTensor snr = draw_trial_tensor(layout, c.params, K, N, sampling, c.seed, t);
          Assignment a = schedule_users(powers, snr);
          auto& cells = per_trial[t];
          for (std::size_t i = 0; i < B; ++i)
            for (std::size_t n = 0; n < N; ++n)
              cells.push_back({a(i, n), sinr(powers, snr, i, a(i, n), n)});
          totals[t] = scheduled_rate(powers, snr, a);
        });
        for (std::size_t t = 0; t < c.trials; ++t)
          for (std::size_t i = 0; i < B; ++i)
            for (std::size_t n = 0; n < N; ++n) {
              const Cell& e = per_trial[t][i * N + n];
              csv.row(K, B, N, t, i, n, e.user, num(e.sinr), num(c.rate(std::log1p(e.sinr))));
            }
        MeanStderr ms = mean_stderr(totals);
        json row = {{"K", K},
                    {"B", B},
                    {"N", N},
                    {"powers", powers},
                    {"mean_rate", c.rate(ms.mean)},
                    {"stderr_rate", c.rate(ms.stderr_)}};
        if (K >= 16) {
          P2PScaling s = p2p_scaling(static_cast<double>(K), B, N, c.params.Pcon / N, c.params,
                                     layout.p);
          row["p2p"] = {{"regime", s.regime == P2PRegime::Linear ? "linear" : "saturated"},
                        {"predicted_rate_scale", s.predicted_rate_scale},
                        {"gain_over_single_tx", s.gain_over_single_tx},
                        {"single_tx_power", s.single_tx_power}};
        }
        rows.push_back(row);
      }
  return rows;
}

json run_design(Ctx& c)
{
  json d = c.cfg.value("design", json::object());
  double cs = d.value("c_over_sbar", 10.0);
  double rmin = d.value("rho_min", 1.0), rmax = d.value("rho_max", 20.0);
  double step = d.value("rho_step", 0.01);
  if (!(rmax >= rmin))
    throw ConfigError("design.rho_max must be at least rho_min");
  std::vector<double> lambdas;
  std::vector<std::string> lambda_labels;
  json lj = d.value("lambdas", json::array({0.1, 1.0, "inf"}));
  for (const auto& v : lj) {
    if (v.is_string()) {
      if (v != "inf")
        throw ConfigError("design.lambdas accepts numbers or \"inf\"");
      lambdas.push_back(std::numeric_limits<double>::infinity());
      lambda_labels.push_back("inf");
    } else {
      lambdas.push_back(v.get<double>());
      lambda_labels.push_back(num(v.get<double>()));
    }
  }
  std::size_t count = static_cast<std::size_t>(std::floor((rmax - rmin) / step + 1e-9)) + 1;

  {
    Csv csv(c.file("design_tradeoff.csv"), "rho,lambda,lhs,rhs,constraint");
    for (std::size_t l = 0; l < lambdas.size(); ++l)
      for (std::size_t s = 0; s < count; ++s) {
        double rho = rmin + static_cast<double>(s) * step;
        csv.row(num(rho), lambda_labels[l], num(rho), num(kkt_rhs(rho, lambdas[l], cs)),
                num(throughput_constraint(rho, cs)));
      }
  }
  std::vector<double> grid =
      d.value("lambda_grid", std::vector<double>{0.25, 0.3, 0.5, 1, 2, 5, 10, 50, 100});
  {
    Csv csv(c.file("design_kkt.csv"), "lambda,rho_star");
    for (double lam : grid) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = kkt_density(lam, cs);
      } catch (const NoSolution&) {
      }
      csv.row(num(lam), num(v));
    }
  }
  {
    Csv csv(c.file("design_ratio.csv"), "rho,ratio");
    for (std::size_t s = 0; s < count; ++s) {
      double rho = rmin + static_cast<double>(s) * step;
      csv.row(num(rho), num(revenue_ratio(rho)));
    }
  }
  json res;
  try {
    auto range = density_feasible_range(cs);
    res["feasible_range"] = {range.first, range.second};
    res["kkt_rho_lambda_inf"] = kkt_density(std::numeric_limits<double>::infinity(), cs);
    res["lambda_threshold"] = kkt_lambda_threshold(cs);
  } catch (const Infeasible&) {
    res["feasible_range"] = nullptr;
  }
  auto [peak, vmax] = revenue_ratio_peak();
  res["ratio_peak_rho"] = peak;
  res["ratio_peak_value"] = vmax;
  return res;
}

json run_miso(Ctx& c)
{
  OpInstance inst = instance_of(c);
  std::vector<std::size_t> Ms{1};
  if (c.cfg.contains("sweep") && c.cfg["sweep"].contains("M"))
    Ms = c.cfg["sweep"]["M"].get<std::vector<std::size_t>>();
  Csv csv(c.file("miso_solution.csv"), "M,i,n,m,power,x");
  json rows = json::array();
  for (std::size_t M : Ms) {
    MisoSolution s = solve_op_miso(inst, M, solver_of(c));
    for (std::size_t i = 0; i < inst.B; ++i)
      for (std::size_t n = 0; n < inst.N; ++n)
        for (std::size_t m = 0; m < M; ++m)
          csv.row(M, i, n, m, num(s.powers(i, n, m)), num(s.x(i, n, m)));
    json j = s;
    j["objective"] = c.rate(s.objective);
    j["M"] = M;
    rows.push_back(j);
  }
  return rows;
}

} // namespace

json run_experiment(json config, const RunOptions& opts)
{
  auto t0 = std::chrono::steady_clock::now();
  if (opts.seed)
    config["seed"] = *opts.seed;
  if (opts.out)
    config["out"] = *opts.out;
  if (opts.threads)
    config["threads"] = *opts.threads;
  if (opts.bits)
    config["bits"] = true;
  if (!config.contains("out"))
    config["out"] = "out";
  validate_against_schema(config, config_schema());
  if (!config.contains("seed"))
    throw ConfigError("seed is mandatory (config field 'seed' or --seed)");

  Ctx c;
  c.cfg = config;
  c.seed = config["seed"].get<std::uint64_t>();
  c.trials = config.value("trials", std::size_t{100});
  unsigned th = config.value("threads", 1u);
  c.threads = th == 0 ? std::max(1u, std::thread::hardware_concurrency()) : th;
  c.bits = config.value("bits", false);
  c.out = config.value("out", std::string("out"));
  std::string exp = config["experiment"].get<std::string>();
  if (exp != "design")
    c.params = channel_of(config);

  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec || !fs::is_directory(c.out))
    throw IoError("cannot create output directory " + c.out.string());

  json results;
  if (exp == "bounds")
    results = run_bounds(c);
  else if (exp == "scaling-sweep")
    results = run_scaling(c);
  else if (exp == "op-solve")
    results = run_op(c);
  else if (exp == "schedule-sim")
    results = run_schedule(c);
  else if (exp == "design")
    results = run_design(c);
  else
    results = run_miso(c);

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.files.push_back("summary.json");
  json summary = {{"experiment", exp},
                  {"version", version_string()},
                  {"config", config},
                  {"runtime_seconds", secs},
                  {"units", c.bits ? "bits" : "nats"},
                  {"results", results},
                  {"files", c.files}};
  validate_against_schema(summary, summary_schema());
  std::ofstream os(c.out / "summary.json", std::ios::binary);
  if (!os)
    throw IoError("cannot write summary.json");
  os << summary.dump(2) << '\n';
  return summary;
}

} // namespace ofdma
