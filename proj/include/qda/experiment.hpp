#pragma once

#include <cstdint>
#include <vector>

#include "qda/analyzer.hpp"
#include "qda/pair_source.hpp"

// Coincidence experiments: correlation sweeps, the four-angle combination
// with its CHSH check, the per-trial counterfactual inequality diagnostic,
// and the sequential-analyzer transmission run.
namespace qda {

struct RunOptions {
  DecisionStrategy strategy = DecisionStrategy::deterministic;
  int rotation_sign = +1;
  int threads = 1;
  std::uint64_t stream_offset = 0;  // first trial position within the seed's streams
};

struct CoincidenceCounts {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t n_degenerate = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }

  CoincidenceCounts& operator+=(const CoincidenceCounts& other) {
    n_pp += other.n_pp;
    n_pm += other.n_pm;
    n_mp += other.n_mp;
    n_mm += other.n_mm;
    n_degenerate += other.n_degenerate;
    return *this;
  }
};

struct CorrelationResult {
  double theta = 0.0;  // radians
  CoincidenceCounts counts;
  std::uint64_t n = 0;
  double gamma = 0.0;
  double std_error = 0.0;
  double qm_reference = 0.0;
};

struct FourAngleResult {
  double theta = 0.0;
  double gamma4 = 0.0;
  double std_error = 0.0;
  bool independent_settings = false;
  std::vector<CorrelationResult> components;  // theta, -theta, 3*theta (theta twice if independent)
};

struct ChshReport {
  double gamma4 = 0.0;
  double std_error = 0.0;
  double lower = -2.0;
  double upper = 2.0;
  double excess_sigma = 0.0;  // (|gamma4| - 2) / std_error, 0 when inside the bound
  bool violation = false;     // |gamma4| exceeds 2 by more than 4 standard errors
};

struct Ineq5Options {
  bool shared_u_prime = true;  // one u' per trial for all four counterfactual settings
  int rotation_sign = +1;
  int threads = 1;
  std::uint64_t stream_offset = 0;
};

struct Ineq5Report {
  double angle_a = 0.0;
  double angle_a_prime = 0.0;
  double angle_b = 0.0;
  double angle_b_prime = 0.0;
  std::uint64_t n = 0;
  std::uint64_t n_degenerate = 0;
  double gamma4 = 0.0;                // A (B(a-b) + B'(a-b') + B(a'-b) - B'(a'-b')) averaged
  double rhs = 0.0;                   // |B(a-b)+B'(a-b')| + |B(a'-b)-B'(a'-b')| averaged
  double sign_change_fraction = 0.0;  // trials where a counterfactual B flipped with the setting
};

struct MalusResult {
  double theta = 0.0;
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t n_degenerate = 0;
  double fraction = 0.0;
  double std_error = 0.0;
  double reference = 0.0;  // cos^2(theta) for prepared s1 = +1, sin^2 for -1
};

// One coincidence run: first analyzer at 0, second at theta.
CorrelationResult run_correlation(const SourceConfig& source, double theta, std::uint64_t n_pairs,
                                  const RunOptions& options = {});

// Correlation sweep over a grid of angles with per-angle stream offsets.
std::vector<CorrelationResult> run_correlation_sweep(const SourceConfig& source,
                                                     const std::vector<double>& theta_grid,
                                                     std::uint64_t n_pairs,
                                                     const RunOptions& options = {});

std::vector<CorrelationResult> run_proton_experiment(const SourceConfig& source,
                                                     const std::vector<double>& theta_grid,
                                                     std::uint64_t n_pairs,
                                                     const RunOptions& options = {});

// 2 gamma(theta) + gamma(-theta) - gamma(3 theta) from three runs on disjoint
// stream positions; independent_settings draws the doubled theta run twice.
FourAngleResult run_four_angle(const SourceConfig& source, double theta,
                               std::uint64_t n_per_setting, const RunOptions& options = {},
                               bool independent_settings = false);

ChshReport chsh_bound_check(const FourAngleResult& result);

// Per-trial counterfactual bound: for each trial the second-analyzer sign is
// evaluated at the four relative settings a-b, a-b', a'-b, a'-b'.
Ineq5Report inequality5_diagnostic(const SourceConfig& source, double angle_a,
                                   double angle_a_prime, double angle_b, double angle_b_prime,
                                   std::uint64_t n_pairs, const Ineq5Options& options = {});

// Photons prepared in a channel eigenstate (s1 = +/-1) meet one analyzer at
// theta; the plus fraction reproduces the cos^2 transmission law.
MalusResult run_malus_sequence(int prepared_s1, double theta, std::uint64_t n_photons,
                               std::uint64_t seed, const RunOptions& options = {});

}  // namespace qda
