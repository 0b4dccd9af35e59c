#include "ofdma/error.hpp"
#include "ofdma/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <utility>
#include <iostream>

int main(int argc, char** argv)
{
  CLI::App app{"OFDMA multiuser sum-rate experiments"};
  app.set_version_flag("--version", ofdma::version_string());
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 1;
  bool bits = false;

  const std::pair<const char*, const char*> commands[] = {
      {"bounds", "Monte Carlo sum-rate bounds and asymptotic brackets"},
      {"scaling-sweep", "upper bound against the fading family's scaling law"},
      {"op-solve", "power allocation for the deterministic surrogate problem"},
      {"schedule-sim", "max-SINR scheduling under equal or optimized powers"},
      {"design", "user-density tradeoff curves"},
      {"miso", "surrogate problem with M random beams per transmitter"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "master seed; overrides the config");
    sub->add_option("--out", out, "output directory; overrides the config");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
    sub->add_flag("--bits", bits, "report rates in bits instead of nats");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  try {
    std::ifstream is(config_path);
    if (!is)
      throw ofdma::IoError("cannot read " + config_path);
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
      throw ofdma::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (cfg.contains("experiment") && cfg["experiment"] != sub->get_name())
      throw ofdma::ConfigError("config is for '" + cfg["experiment"].get<std::string>() +
                               "', not '" + sub->get_name() + "'");
    cfg["experiment"] = sub->get_name();

    ofdma::RunOptions opts;
    if (sub->count("--seed"))
      opts.seed = seed;
    if (sub->count("--out"))
      opts.out = out;
    if (sub->count("--threads"))
      opts.threads = threads;
    opts.bits = bits;
    nlohmann::json summary = ofdma::run_experiment(cfg, opts);
    std::cout << summary["config"]["out"].get<std::string>() << "/summary.json\n";
  } catch (const ofdma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
