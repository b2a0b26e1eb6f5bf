#include "qda/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qda/reference.hpp"
#include "qda/rng.hpp"

namespace qda {
namespace {

constexpr std::uint64_t kChunk = 1u << 16;

// Runs body(chunk_begin, chunk_end, slot) over fixed-size chunks of [0, n).
// Chunk boundaries do not depend on the thread count, and every chunk writes
// its own slot, so any parallelism level accumulates identical totals.
template <class Body>
void for_each_chunk(std::uint64_t n, int threads, std::size_t slots_per_chunk, Body body) {
  const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  if (threads <= 1 || n_chunks <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      body(c * kChunk, std::min(n, (c + 1) * kChunk), c * slots_per_chunk);
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
      body(c * kChunk, std::min(n, (c + 1) * kChunk), c * slots_per_chunk);
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min<std::uint64_t>(threads, n_chunks);
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

int channel_sign(Channel c) { return c == Channel::plus ? 1 : -1; }

struct TrialOutcome {
  Channel first;
  Channel second;
  bool degenerate;
};

TrialOutcome decide_trial(const SourceConfig& source, std::uint64_t position, double theta,
                          const RunOptions& options) {
  const IncidentPair pair = next_pair(source, position);
  const ParticleKind kind = particle_kind_of(pair.kind_drawn);
  if (options.strategy == DecisionStrategy::deterministic) {
    const double u = uniform_symmetric(source.seed, position, Substream::analyzer_u);
    const double u_prime = uniform_symmetric(source.seed, position, Substream::analyzer_u_prime);
    const AnalyzerSetting first{0.0, kind, options.rotation_sign};
    const AnalyzerSetting second{theta, kind, options.rotation_sign};
    const ChannelOutcome o1 = decide_deterministic(pair.s1_first, sample_analyzer(first, u));
    const ChannelOutcome o2 = decide_deterministic(pair.s1_second, sample_analyzer(second, u_prime));
    return {o1.channel, o2.channel, o1.degenerate || o2.degenerate};
  }
  const double r1 = uniform01(source.seed, position, Substream::born_first);
  const double r2 = uniform01(source.seed, position, Substream::born_second);
  const AnalyzerSetting second{theta, kind, options.rotation_sign};
  const ChannelOutcome o1 = decide_probabilistic(pair.s1_first, 0.0, r1);
  const ChannelOutcome o2 = decide_probabilistic(pair.s1_second, 0.5 * second.rotation(), r2);
  return {o1.channel, o2.channel, o1.degenerate || o2.degenerate};
}

CoincidenceCounts accumulate_counts(const SourceConfig& source, double theta,
                                    std::uint64_t n_pairs, const RunOptions& options) {
  const std::uint64_t n_chunks = (n_pairs + kChunk - 1) / kChunk;
  std::vector<CoincidenceCounts> partial(n_chunks);
  for_each_chunk(n_pairs, options.threads, 1, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
    CoincidenceCounts local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const TrialOutcome outcome = decide_trial(source, options.stream_offset + i, theta, options);
      if (outcome.first == Channel::plus) {
        (outcome.second == Channel::plus ? local.n_pp : local.n_pm) += 1;
      } else {
        (outcome.second == Channel::plus ? local.n_mp : local.n_mm) += 1;
      }
      local.n_degenerate += outcome.degenerate ? 1 : 0;
    }
    partial[slot] = local;
  });
  CoincidenceCounts counts;
  for (const auto& p : partial) counts += p;
  return counts;
}

double reference_for(const SourceConfig& source, double theta) {
  switch (source.kind) {
    case PairKind::singlet_spinor:
      return source.triplet_fraction > 0.0
                 ? qm_reference(ReferenceCurve::proton_mixture, theta, source.triplet_fraction)
                 : qm_reference(ReferenceCurve::proton_singlet, theta);
    case PairKind::triplet_spinor:
      return std::cos(theta);
    case PairKind::photon_vector:
      return qm_reference(ReferenceCurve::photon_single, theta);
  }
  return 0.0;
}

void check_common(std::uint64_t n_pairs, const RunOptions& options) {
  if (n_pairs == 0) throw std::invalid_argument("experiment: n_pairs must be positive");
  if (options.threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
}

}  // namespace

CorrelationResult run_correlation(const SourceConfig& source, double theta, std::uint64_t n_pairs,
                                  const RunOptions& options) {
  check_common(n_pairs, options);
  CorrelationResult result;
  result.theta = theta;
  result.counts = accumulate_counts(source, theta, n_pairs, options);
  result.n = n_pairs;
  const std::int64_t same = static_cast<std::int64_t>(result.counts.n_pp + result.counts.n_mm);
  const std::int64_t diff = static_cast<std::int64_t>(result.counts.n_pm + result.counts.n_mp);
  result.gamma = static_cast<double>(same - diff) / static_cast<double>(n_pairs);
  result.std_error = std::sqrt((1.0 - result.gamma * result.gamma) / static_cast<double>(n_pairs));
  result.qm_reference = reference_for(source, theta);
  return result;
}

std::vector<CorrelationResult> run_correlation_sweep(const SourceConfig& source,
                                                     const std::vector<double>& theta_grid,
                                                     std::uint64_t n_pairs,
                                                     const RunOptions& options) {
  std::vector<CorrelationResult> results;
  results.reserve(theta_grid.size());
  RunOptions per_angle = options;
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    per_angle.stream_offset = options.stream_offset + i * n_pairs;
    results.push_back(run_correlation(source, theta_grid[i], n_pairs, per_angle));
  }
  return results;
}

std::vector<CorrelationResult> run_proton_experiment(const SourceConfig& source,
                                                     const std::vector<double>& theta_grid,
                                                     std::uint64_t n_pairs,
                                                     const RunOptions& options) {
  if (particle_kind_of(source.kind) != ParticleKind::spinor) {
    throw std::invalid_argument("run_proton_experiment: source must emit spinor pairs");
  }
  return run_correlation_sweep(source, theta_grid, n_pairs, options);
}

FourAngleResult run_four_angle(const SourceConfig& source, double theta,
                               std::uint64_t n_per_setting, const RunOptions& options,
                               bool independent_settings) {
  check_common(n_per_setting, options);
  FourAngleResult result;
  result.theta = theta;
  result.independent_settings = independent_settings;
  std::vector<double> settings;
  if (independent_settings) {
    settings = {theta, theta, -theta, 3.0 * theta};
  } else {
    settings = {theta, -theta, 3.0 * theta};
  }
  RunOptions per_setting = options;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    per_setting.stream_offset = options.stream_offset + k * n_per_setting;
    result.components.push_back(run_correlation(source, settings[k], n_per_setting, per_setting));
  }
  double variance = 0.0;
  if (independent_settings) {
    result.gamma4 = result.components[0].gamma + result.components[1].gamma +
                    result.components[2].gamma - result.components[3].gamma;
    for (const auto& c : result.components) variance += c.std_error * c.std_error;
  } else {
    result.gamma4 = 2.0 * result.components[0].gamma + result.components[1].gamma -
                    result.components[2].gamma;
    variance = 4.0 * result.components[0].std_error * result.components[0].std_error +
               result.components[1].std_error * result.components[1].std_error +
               result.components[2].std_error * result.components[2].std_error;
  }
  result.std_error = std::sqrt(variance);
  return result;
}

ChshReport chsh_bound_check(const FourAngleResult& result) {
  ChshReport report;
  report.gamma4 = result.gamma4;
  report.std_error = result.std_error;
  const double excess = std::abs(result.gamma4) - report.upper;
  if (excess <= 0.0) {
    report.excess_sigma = 0.0;
    report.violation = false;
  } else if (result.std_error > 0.0) {
    report.excess_sigma = excess / result.std_error;
    report.violation = report.excess_sigma > 4.0;
  } else {
    report.excess_sigma = std::numeric_limits<double>::infinity();
    report.violation = true;
  }
  return report;
}

Ineq5Report inequality5_diagnostic(const SourceConfig& source, double angle_a,
                                   double angle_a_prime, double angle_b, double angle_b_prime,
                                   std::uint64_t n_pairs, const Ineq5Options& options) {
  if (n_pairs == 0) throw std::invalid_argument("inequality5_diagnostic: n_pairs must be positive");
  if (options.threads < 1) throw std::invalid_argument("inequality5_diagnostic: threads must be >= 1");

  const ParticleKind kind = particle_kind_of(source.kind);
  const double relative[4] = {angle_a - angle_b, angle_a - angle_b_prime,
                              angle_a_prime - angle_b, angle_a_prime - angle_b_prime};
  const Substream independent_streams[4] = {Substream::analyzer_u_prime, Substream::u_prime_b,
                                            Substream::u_prime_c, Substream::u_prime_d};

  struct Partial {
    std::int64_t gamma4_sum = 0;
    std::int64_t rhs_sum = 0;
    std::uint64_t changed = 0;
    std::uint64_t degenerate = 0;
  };
  const std::uint64_t n_chunks = (n_pairs + kChunk - 1) / kChunk;
  std::vector<Partial> partial(n_chunks);

  for_each_chunk(n_pairs, options.threads, 1, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
    Partial local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t position = options.stream_offset + i;
      const IncidentPair pair = next_pair(source, position);
      const double u = uniform_symmetric(source.seed, position, Substream::analyzer_u);
      const AnalyzerSetting first{0.0, kind, options.rotation_sign};
      const ChannelOutcome first_outcome =
          decide_deterministic(pair.s1_first, sample_analyzer(first, u));
      const int a = channel_sign(first_outcome.channel);

      int b[4];
      bool degenerate = first_outcome.degenerate;
      const double u_shared =
          uniform_symmetric(source.seed, position, Substream::analyzer_u_prime);
      for (int j = 0; j < 4; ++j) {
        const double u_j = options.shared_u_prime
                               ? u_shared
                               : uniform_symmetric(source.seed, position, independent_streams[j]);
        const AnalyzerSetting setting{relative[j], kind, options.rotation_sign};
        const ChannelOutcome outcome =
            decide_deterministic(pair.s1_second, sample_analyzer(setting, u_j));
        b[j] = channel_sign(outcome.channel);
        degenerate = degenerate || outcome.degenerate;
      }

      local.gamma4_sum += a * (b[0] + b[1] + b[2] - b[3]);
      local.rhs_sum += std::abs(b[0] + b[1]) + std::abs(b[2] - b[3]);
      local.changed += (b[0] != b[2] || b[1] != b[3]) ? 1 : 0;
      local.degenerate += degenerate ? 1 : 0;
    }
    partial[slot] = local;
  });

  Partial total;
  for (const auto& p : partial) {
    total.gamma4_sum += p.gamma4_sum;
    total.rhs_sum += p.rhs_sum;
    total.changed += p.changed;
    total.degenerate += p.degenerate;
  }

  Ineq5Report report;
  report.angle_a = angle_a;
  report.angle_a_prime = angle_a_prime;
  report.angle_b = angle_b;
  report.angle_b_prime = angle_b_prime;
  report.n = n_pairs;
  report.n_degenerate = total.degenerate;
  report.gamma4 = static_cast<double>(total.gamma4_sum) / static_cast<double>(n_pairs);
  report.rhs = static_cast<double>(total.rhs_sum) / static_cast<double>(n_pairs);
  report.sign_change_fraction = static_cast<double>(total.changed) / static_cast<double>(n_pairs);
  return report;
}

MalusResult run_malus_sequence(int prepared_s1, double theta, std::uint64_t n_photons,
                               std::uint64_t seed, const RunOptions& options) {
  check_common(n_photons, options);
  if (prepared_s1 != 1 && prepared_s1 != -1) {
    throw std::invalid_argument("run_malus_sequence: prepared_s1 must be +1 or -1");
  }

  struct Partial {
    std::uint64_t plus = 0;
    std::uint64_t degenerate = 0;
  };
  const std::uint64_t n_chunks = (n_photons + kChunk - 1) / kChunk;
  std::vector<Partial> partial(n_chunks);
  const AnalyzerSetting setting{theta, ParticleKind::vector, options.rotation_sign};

  for_each_chunk(n_photons, options.threads, 1, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
    Partial local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t position = options.stream_offset + i;
      const double u_prime = uniform_symmetric(seed, position, Substream::analyzer_u_prime);
      const ChannelOutcome outcome =
          decide_deterministic(static_cast<double>(prepared_s1), sample_analyzer(setting, u_prime));
      local.plus += outcome.channel == Channel::plus ? 1 : 0;
      local.degenerate += outcome.degenerate ? 1 : 0;
    }
    partial[slot] = local;
  });

  MalusResult result;
  result.theta = theta;
  for (const auto& p : partial) {
    result.n_plus += p.plus;
    result.n_degenerate += p.degenerate;
  }
  result.n_minus = n_photons - result.n_plus;
  result.fraction = static_cast<double>(result.n_plus) / static_cast<double>(n_photons);
  result.std_error =
      std::sqrt(result.fraction * (1.0 - result.fraction) / static_cast<double>(n_photons));
  const double c = std::cos(theta);
  result.reference = prepared_s1 == 1 ? c * c : 1.0 - c * c;
  return result;
}

}  // namespace qda
