#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qda/analyzer.hpp"
#include "qda/rng.hpp"

// Source of correlated pairs.  Each pair draws one polarization angle
// 2*beta uniform on [0, 2*pi); the first particle carries s1 = cos(2*beta)
// and the partner carries -s1 (singlet) or +s1 (triplet, photon).
namespace qda {

enum class PairKind { singlet_spinor, triplet_spinor, photon_vector };

inline ParticleKind particle_kind_of(PairKind kind) {
  return kind == PairKind::photon_vector ? ParticleKind::vector : ParticleKind::spinor;
}

struct SourceConfig {
  PairKind kind = PairKind::singlet_spinor;
  double triplet_fraction = 0.0;  // singlet base only: probability a pair is triplet
  std::uint64_t seed = 1;
};

struct IncidentPair {
  double two_beta = 0.0;
  double s1_first = 1.0;
  double s1_second = 1.0;
  PairKind kind_drawn = PairKind::photon_vector;
};

// Pure function of (config, position): any evaluation order sees the same pairs.
inline IncidentPair next_pair(const SourceConfig& config, std::uint64_t position) {
  if (!(config.triplet_fraction >= 0.0 && config.triplet_fraction <= 1.0)) {
    throw std::invalid_argument("next_pair: triplet_fraction outside [0, 1]");
  }
  IncidentPair pair;
  pair.two_beta = uniform_angle(config.seed, position, Substream::pair_angle);
  pair.s1_first = std::cos(pair.two_beta);
  pair.kind_drawn = config.kind;
  if (config.kind == PairKind::singlet_spinor && config.triplet_fraction > 0.0) {
    const double r = uniform01(config.seed, position, Substream::pair_kind);
    if (r < config.triplet_fraction) pair.kind_drawn = PairKind::triplet_spinor;
  }
  pair.s1_second =
      pair.kind_drawn == PairKind::singlet_spinor ? -pair.s1_first : pair.s1_first;
  return pair;
}

}  // namespace qda
