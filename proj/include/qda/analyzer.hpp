#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

// Single-analyzer sampling and the two channel-decision rules.
//
// An analyzer oriented at angle theta sees an incident state through the
// rotated Stokes component p1 = cos(2*alpha), where  2*alpha = arg(u) + q,
// arg(u) = arccos(u) - pi/2 with u uniform on [-1, 1], and the rotation
// q is theta for spinors and 2*theta for vectors.
namespace qda {

enum class ParticleKind { spinor, vector };

enum class DecisionStrategy { deterministic, probabilistic };

struct AnalyzerSetting {
  double orientation = 0.0;  // radians
  ParticleKind kind = ParticleKind::vector;
  int rotation_sign = +1;

  // Signed Stokes-space rotation q of this setting.
  double rotation() const {
    const double q = kind == ParticleKind::spinor ? orientation : 2.0 * orientation;
    return rotation_sign < 0 ? -q : q;
  }
};

struct AnalyzerSample {
  double u = 0.0;
  double two_alpha = 0.0;
  double p1 = 1.0;
};

enum class Channel { plus, minus };

struct ChannelOutcome {
  Channel channel = Channel::plus;
  double t0 = 0.0;            // decision variable; sign picked the channel
  bool degenerate = false;    // exact tie, resolved toward plus
};

inline AnalyzerSample sample_analyzer(const AnalyzerSetting& setting, double u) {
  if (!(u >= -1.0 && u <= 1.0)) {
    throw std::domain_error("sample_analyzer: u outside [-1, 1]");
  }
  AnalyzerSample sample;
  sample.u = u;
  sample.two_alpha = (std::acos(u) - std::numbers::pi / 2.0) + setting.rotation();
  sample.p1 = std::cos(sample.two_alpha);
  return sample;
}

// Channel = sign of t0 = s1 * p1; an exact tie goes to plus and is flagged.
inline ChannelOutcome decide_deterministic(double s1_incident, const AnalyzerSample& sample) {
  const double t0 = s1_incident * sample.p1;
  if (t0 > 0.0) return {Channel::plus, t0, false};
  if (t0 < 0.0) return {Channel::minus, t0, false};
  return {Channel::plus, t0, true};
}

// Comparison rule: plus iff the draw falls below cos^2 of the angle between
// the incident linear-polarization direction (recovered from s1 = cos(2*beta))
// and the analyzer axis.  analyzer_angle is the axis angle in direction space,
// i.e. half the Stokes-space rotation of the setting.
inline ChannelOutcome decide_probabilistic(double s1_incident, double analyzer_angle,
                                           double rng_draw) {
  const double s1 = std::clamp(s1_incident, -1.0, 1.0);
  const double polarization_angle = 0.5 * std::acos(s1);
  const double c = std::cos(polarization_angle - analyzer_angle);
  const double p_plus = c * c;
  const double t0 = p_plus - rng_draw;
  return {rng_draw < p_plus ? Channel::plus : Channel::minus, t0, false};
}

}  // namespace qda
