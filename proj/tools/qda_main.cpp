#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "qda/csv.hpp"
#include "qda/eigcheck.hpp"
#include "qda/experiment.hpp"
#include "qda/plot.hpp"
#include "qda/reference.hpp"
#include "qda/run_config.hpp"

namespace {

using namespace qda;

constexpr double kDegree = std::numbers::pi / 180.0;

std::vector<double> grid_radians(const RunConfig& config) {
  std::vector<double> grid;
  for (double deg : config.theta_grid_deg()) grid.push_back(deg * kDegree);
  return grid;
}

RunOptions run_options(const RunConfig& config) {
  RunOptions options;
  options.strategy = config.strategy;
  options.rotation_sign = config.rotation_sign;
  options.threads = config.threads;
  return options;
}

SourceConfig source_config(const RunConfig& config, PairKind kind) {
  SourceConfig source;
  source.kind = kind;
  source.triplet_fraction = kind == PairKind::singlet_spinor ? config.triplet_fraction : 0.0;
  source.seed = config.seed;
  return source;
}

double oracle_reference(PairKind kind, double theta, double triplet_fraction) {
  switch (kind) {
    case PairKind::singlet_spinor:
      return qm_reference(ReferenceCurve::proton_mixture, theta, triplet_fraction);
    case PairKind::triplet_spinor:
      return std::cos(theta);
    case PairKind::photon_vector:
      return qm_reference(ReferenceCurve::photon_single, theta);
  }
  return 0.0;
}

std::string plot_path_for(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".gp";
  }
  return csv_path + ".gp";
}

void maybe_write_plot(const RunConfig& config) {
  if (!config.plot) return;
  if (config.mode == Mode::ineq5 || config.mode == Mode::eigcheck) {
    std::cerr << "qda: plot skipped: mode '" << mode_name(config.mode)
              << "' produces no angle sweep\n";
    return;
  }
  const std::string path = plot_path_for(config.output_path);
  write_plot_script(path, config, config.output_path);
  std::cout << "plot script: " << path << " (gnuplot -persist " << path << ")\n";
}

int run(const RunConfig& config) {
  switch (config.mode) {
    case Mode::proton: {
      const auto results = run_proton_experiment(
          source_config(config, PairKind::singlet_spinor), grid_radians(config), config.pairs,
          run_options(config));
      write_correlation_csv(config.output_path, config, results);
      std::cout << "proton pairs: " << results.size() << " angles x " << config.pairs
                << " pairs, triplet fraction " << config.triplet_fraction << ", seed "
                << config.seed << " -> " << config.output_path << "\n";
      break;
    }
    case Mode::photon: {
      const auto results =
          run_correlation_sweep(source_config(config, PairKind::photon_vector),
                                grid_radians(config), config.pairs, run_options(config));
      write_correlation_csv(config.output_path, config, results);
      std::cout << "photon pairs: " << results.size() << " angles x " << config.pairs
                << " pairs, seed " << config.seed << " -> " << config.output_path << "\n";
      break;
    }
    case Mode::photon4: {
      const SourceConfig source = source_config(config, PairKind::photon_vector);
      const std::vector<double> grid = grid_radians(config);
      const std::uint64_t settings = config.independent_settings ? 4 : 3;
      std::vector<FourAngleResult> results;
      std::size_t violations = 0;
      RunOptions options = run_options(config);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        options.stream_offset = static_cast<std::uint64_t>(i) * settings * config.pairs;
        results.push_back(run_four_angle(source, grid[i], config.pairs, options,
                                         config.independent_settings));
        if (chsh_bound_check(results.back()).violation) ++violations;
      }
      write_four_angle_csv(config.output_path, config, results);
      std::cout << "four-angle photon runs: " << results.size() << " angles x " << settings
                << " settings x " << config.pairs << " pairs, seed " << config.seed << " -> "
                << config.output_path << "\n";
      std::cout << "classical bound |gamma4| <= 2 broken beyond 4 standard errors at "
                << violations << " of " << results.size() << " angles\n";
      break;
    }
    case Mode::malus: {
      const std::vector<double> grid = grid_radians(config);
      std::vector<MalusResult> results;
      RunOptions options = run_options(config);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        options.stream_offset = static_cast<std::uint64_t>(i) * config.pairs;
        results.push_back(
            run_malus_sequence(config.prepared_s1, grid[i], config.pairs, config.seed, options));
      }
      write_malus_csv(config.output_path, config, results);
      std::cout << "sequential analyzer: " << results.size() << " angles x " << config.pairs
                << " photons, prepared channel " << (config.prepared_s1 > 0 ? "+" : "-")
                << ", seed " << config.seed << " -> " << config.output_path << "\n";
      break;
    }
    case Mode::ineq5: {
      Ineq5Options options;
      options.shared_u_prime = !config.independent_u_prime;
      options.rotation_sign = config.rotation_sign;
      options.threads = config.threads;
      const Ineq5Report report = inequality5_diagnostic(
          source_config(config, PairKind::photon_vector), config.angle_a_deg * kDegree,
          config.angle_a_prime_deg * kDegree, config.angle_b_deg * kDegree,
          config.angle_b_prime_deg * kDegree, config.pairs, options);
      write_ineq5_csv(config.output_path, config, report);
      std::cout << "counterfactual bound: n " << report.n << ", gamma4 " << report.gamma4
                << ", bound term " << report.rhs << ", sign-change fraction "
                << report.sign_change_fraction << " -> " << config.output_path << "\n";
      break;
    }
    case Mode::eigcheck: {
      const EigcheckSummary summary = run_eigcheck(config.seed, config.matrices);
      write_eigcheck_csv(config.output_path, config, summary);
      std::cout << "eigenstate identities over " << summary.matrices
                << " random analyzers: max residuals " << summary.max_eq1_residual << " "
                << summary.max_eq2_residual << " " << summary.max_eq3_residual
                << ", eigenvalue gap " << summary.max_eigenvalue_gap_error << " -> "
                << config.output_path << "\n";
      break;
    }
    case Mode::oracle: {
      OracleSpec spec;
      spec.tolerance = config.oracle_tolerance;
      std::vector<OraclePoint> points;
      for (double deg : config.theta_grid_deg()) {
        const double theta = deg * kDegree;
        OraclePoint point;
        point.theta_deg = deg;
        point.expectation = model_expectation_oracle(spec, theta, config.oracle_kind,
                                                     config.triplet_fraction, config.strategy,
                                                     config.rotation_sign);
        point.qm_reference = oracle_reference(config.oracle_kind, theta, config.triplet_fraction);
        points.push_back(point);
      }
      write_oracle_csv(config.output_path, config, points);
      std::cout << "expectation oracle (" << kind_name(config.oracle_kind) << ", "
                << strategy_name(config.strategy) << "): " << points.size() << " angles -> "
                << config.output_path << "\n";
      break;
    }
  }
  maybe_write_plot(config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const UsageError& error) {
    std::cerr << "qda: error: " << error.what() << "\n";
    std::cerr << "Try 'qda --help' for the flag reference.\n";
    return 2;
  }
  try {
    return run(config);
  } catch (const IoError& error) {
    std::cerr << "qda: I/O error: " << error.what() << "\n";
    return 3;
  } catch (const OracleError& error) {
    std::cerr << "qda: " << error.what() << "\n";
    std::cerr << "Raise --tolerance or lower the angle count and retry.\n";
    return 4;
  } catch (const std::exception& error) {
    std::cerr << "qda: unexpected error: " << error.what() << "\n";
    return 1;
  }
}
