#include "qda/run_config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace qda {
namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

const std::map<std::string, Mode> kModeNames = {
    {"proton", Mode::proton},   {"photon", Mode::photon},   {"photon4", Mode::photon4},
    {"malus", Mode::malus},     {"ineq5", Mode::ineq5},     {"eigcheck", Mode::eigcheck},
    {"oracle", Mode::oracle}};

const std::map<std::string, DecisionStrategy> kStrategyNames = {
    {"deterministic", DecisionStrategy::deterministic},
    {"probabilistic", DecisionStrategy::probabilistic}};

const std::map<std::string, PairKind> kKindNames = {{"singlet", PairKind::singlet_spinor},
                                                    {"triplet", PairKind::triplet_spinor},
                                                    {"photon", PairKind::photon_vector}};

}  // namespace

std::vector<double> RunConfig::theta_grid_deg() const {
  std::vector<double> grid;
  const auto count =
      static_cast<std::size_t>(std::floor((theta_end_deg - theta_start_deg) / theta_step_deg + 1e-9)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(theta_start_deg + static_cast<double>(i) * theta_step_deg);
  return grid;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"quasi-deterministic analyzer simulation"};
  app.name("qda");

  app.add_option("--mode", config.mode, "run mode")
      ->transform(CLI::CheckedTransformer(kModeNames, CLI::ignore_case));
  app.add_option("--pairs", config.pairs, "pairs (or photons) per setting");
  auto* seed_opt = app.add_option("--seed", config.seed, "random seed");
  auto* start_opt = app.add_option("--theta-start", config.theta_start_deg, "sweep start, degrees");
  auto* end_opt = app.add_option("--theta-end", config.theta_end_deg, "sweep end, degrees");
  auto* step_opt = app.add_option("--theta-step", config.theta_step_deg, "sweep step, degrees");
  app.add_option("--triplet-fraction", config.triplet_fraction,
                 "probability a spinor pair is triplet");
  app.add_option("--strategy", config.strategy, "channel decision rule")
      ->transform(CLI::CheckedTransformer(kStrategyNames, CLI::ignore_case));
  app.add_option("--rotation-sign", config.rotation_sign, "sign of the analyzer rotation, +1 or -1");
  app.add_option("--threads", config.threads, "worker threads");
  app.add_option("--output", config.output_path, "CSV output path");
  app.add_flag("--plot", config.plot, "also emit a gnuplot script next to the CSV");
  app.add_flag("--independent-settings", config.independent_settings,
               "photon4: use four independent runs");
  app.add_flag("--independent-uprime", config.independent_u_prime,
               "ineq5: independent u' per counterfactual setting");
  app.add_option("--prepared-s1", config.prepared_s1, "malus: prepared channel, +1 or -1");
  app.add_option("--angle-a", config.angle_a_deg, "ineq5: setting a, degrees");
  app.add_option("--angle-a-prime", config.angle_a_prime_deg, "ineq5: setting a', degrees");
  app.add_option("--angle-b", config.angle_b_deg, "ineq5: setting b, degrees");
  app.add_option("--angle-b-prime", config.angle_b_prime_deg, "ineq5: setting b', degrees");
  app.add_option("--matrices", config.matrices, "eigcheck: number of random matrices");
  app.add_option("--kind", config.oracle_kind, "oracle: pair kind")
      ->transform(CLI::CheckedTransformer(kKindNames, CLI::ignore_case));
  app.add_option("--tolerance", config.oracle_tolerance, "oracle: convergence tolerance");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qda");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& error) {
    throw UsageError(error.what());
  }

  if (seed_opt->count() == 0) {
    if (const char* env_seed = std::getenv("QDA_SEED")) {
      try {
        config.seed = std::stoull(env_seed);
      } catch (const std::exception&) {
        throw UsageError("QDA_SEED is not an unsigned integer: " + std::string(env_seed));
      }
    }
  }

  // Mode-dependent sweep defaults; explicit flags always win.
  const bool coarse_grid = config.mode == Mode::proton || config.mode == Mode::malus;
  if (step_opt->count() == 0) config.theta_step_deg = coarse_grid ? 15.0 : 7.5;
  if (start_opt->count() == 0) config.theta_start_deg = 0.0;
  if (end_opt->count() == 0) config.theta_end_deg = 90.0;

  if (config.pairs == 0) throw UsageError("--pairs must be positive");
  if (config.matrices == 0) throw UsageError("--matrices must be positive");
  if (!(config.theta_step_deg > 0.0)) throw UsageError("--theta-step must be positive");
  if (config.theta_end_deg < config.theta_start_deg) {
    throw UsageError("--theta-end must not be below --theta-start");
  }
  if (!(config.triplet_fraction >= 0.0 && config.triplet_fraction <= 1.0)) {
    throw UsageError("--triplet-fraction must lie in [0, 1]");
  }
  if (config.rotation_sign != 1 && config.rotation_sign != -1) {
    throw UsageError("--rotation-sign must be +1 or -1");
  }
  if (config.prepared_s1 != 1 && config.prepared_s1 != -1) {
    throw UsageError("--prepared-s1 must be +1 or -1");
  }
  if (config.threads < 1) throw UsageError("--threads must be >= 1");
  if (!(config.oracle_tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  return config;
}

std::string canonical_flags(const RunConfig& config) {
  std::string flags;
  flags += "--mode ";
  flags += mode_name(config.mode);
  flags += " --pairs " + std::to_string(config.pairs);
  flags += " --seed " + std::to_string(config.seed);
  flags += " --theta-start " + format_double(config.theta_start_deg);
  flags += " --theta-end " + format_double(config.theta_end_deg);
  flags += " --theta-step " + format_double(config.theta_step_deg);
  flags += " --triplet-fraction " + format_double(config.triplet_fraction);
  flags += " --strategy ";
  flags += strategy_name(config.strategy);
  flags += " --rotation-sign " + std::to_string(config.rotation_sign);
  flags += " --threads " + std::to_string(config.threads);
  flags += " --output " + config.output_path;
  if (config.plot) flags += " --plot";
  if (config.independent_settings) flags += " --independent-settings";
  if (config.independent_u_prime) flags += " --independent-uprime";
  flags += " --prepared-s1 " + std::to_string(config.prepared_s1);
  flags += " --angle-a " + format_double(config.angle_a_deg);
  flags += " --angle-a-prime " + format_double(config.angle_a_prime_deg);
  flags += " --angle-b " + format_double(config.angle_b_deg);
  flags += " --angle-b-prime " + format_double(config.angle_b_prime_deg);
  flags += " --matrices " + std::to_string(config.matrices);
  flags += " --kind ";
  flags += kind_name(config.oracle_kind);
  flags += " --tolerance " + format_double(config.oracle_tolerance);
  return flags;
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::proton: return "proton";
    case Mode::photon: return "photon";
    case Mode::photon4: return "photon4";
    case Mode::malus: return "malus";
    case Mode::ineq5: return "ineq5";
    case Mode::eigcheck: return "eigcheck";
    case Mode::oracle: return "oracle";
  }
  return "unknown";
}

const char* strategy_name(DecisionStrategy strategy) {
  return strategy == DecisionStrategy::deterministic ? "deterministic" : "probabilistic";
}

const char* kind_name(PairKind kind) {
  switch (kind) {
    case PairKind::singlet_spinor: return "singlet";
    case PairKind::triplet_spinor: return "triplet";
    case PairKind::photon_vector: return "photon";
  }
  return "unknown";
}

}  // namespace qda
