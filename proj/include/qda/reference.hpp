#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qda/analyzer.hpp"
#include "qda/pair_source.hpp"

// Quantum-mechanical reference curves and a brute-force numerical-expectation
// oracle for the simulated sign product.  The oracle integrates the exact
// sampling measure numerically (sign-boundary measurement for the channel
// rule, midpoint quadrature for the comparison rule) with doubling-based
// convergence control; it shares no code with the Monte Carlo path.
namespace qda {

enum class ReferenceCurve {
  proton_singlet,     // -cos(theta)
  proton_mixture,     // -(1 - 2 f) cos(theta)
  photon_single,      // cos(2 theta)
  photon_four_angle,  // 3 cos(2 theta) - cos(6 theta)
  chsh_limit,         // 2
};

inline double qm_reference(ReferenceCurve curve, double theta, double mixture_fraction = 0.0) {
  switch (curve) {
    case ReferenceCurve::proton_singlet:
      return -std::cos(theta);
    case ReferenceCurve::proton_mixture:
      return -(1.0 - 2.0 * mixture_fraction) * std::cos(theta);
    case ReferenceCurve::photon_single:
      return std::cos(2.0 * theta);
    case ReferenceCurve::photon_four_angle:
      return 3.0 * std::cos(2.0 * theta) - std::cos(6.0 * theta);
    case ReferenceCurve::chsh_limit:
      return 2.0;
  }
  throw std::invalid_argument("qm_reference: unknown curve");
}

struct OracleSpec {
  int base_resolution = 64;  // starting points per dimension, >= 64
  double tolerance = 1e-6;   // doubling must move the value by less than this
  int max_doublings = 18;
};

struct OracleError : std::runtime_error {
  OracleError(double coarse_value, double fine_value)
      : std::runtime_error("expectation oracle did not converge: " +
                           std::to_string(coarse_value) + " -> " + std::to_string(fine_value)),
        coarse(coarse_value),
        fine(fine_value) {}
  double coarse;
  double fine;
};

namespace oracle_detail {

// Sign of the rotated component cos(arccos(u') - pi/2 + q), written out as
// u' sin q + sqrt(1 - u'^2) cos q.  An exact zero lands in the plus channel,
// matching the tie rule.
inline double rotated_sign(double u, double sin_q, double cos_q) {
  const double p1 = u * sin_q + std::sqrt(1.0 - u * u) * cos_q;
  return p1 < 0.0 ? -1.0 : 1.0;
}

// Mean channel sign at the rotated analyzer over u' uniform on [-1, 1].  The
// first-analyzer factor sign(s1)^2 = 1 and the coupling sign are exact, so the
// deterministic sign product reduces to this one-dimensional integral.  A
// midpoint sum over the +/-1 response can tie across doublings before it is
// anywhere near the limit, so instead the sign pattern is measured directly:
// the response changes sign at most twice on (-1, 1), a scan at the given
// resolution brackets every crossing, bisection pins each one down, and the
// signed interval lengths add up to the expectation.
inline double deterministic_census(double q, int points) {
  const double sin_q = std::sin(q);
  const double cos_q = std::cos(q);
  const auto response = [&](double u) {
    return u * sin_q + std::sqrt(std::max(0.0, 1.0 - u * u)) * cos_q;
  };
  std::vector<double> cuts{-1.0};
  double u_prev = -1.0;
  double r_prev = response(u_prev);
  for (int i = 1; i <= points; ++i) {
    const double u = -1.0 + 2.0 * static_cast<double>(i) / points;
    const double r = response(u);
    if ((r_prev < 0.0) != (r < 0.0)) {
      double lo = u_prev;
      double r_lo = r_prev;
      double hi = u;
      for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = response(mid);
        if ((r_lo < 0.0) != (r_mid < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          r_lo = r_mid;
        }
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    u_prev = u;
    r_prev = r;
  }
  cuts.push_back(1.0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    total += rotated_sign(mid, sin_q, cos_q) * (cuts[k + 1] - cuts[k]);
  }
  return 0.5 * total;
}

// Expectation of the comparison-rule sign product over 2*beta uniform on
// [0, 2*pi).  The two comparison draws are independent of everything else, so
// their expectations are taken exactly: E[sign] = 2 p_plus - 1 per analyzer.
inline double probabilistic_expectation(double q, double coupling, int points) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double h = two_pi / points;
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double two_beta = (i + 0.5) * h;
    const double s1 = std::cos(two_beta);
    const double psi_first = 0.5 * std::acos(std::clamp(s1, -1.0, 1.0));
    const double psi_second = 0.5 * std::acos(std::clamp(coupling * s1, -1.0, 1.0));
    const double c_first = std::cos(psi_first);
    const double c_second = std::cos(psi_second - 0.5 * q);
    sum += (2.0 * c_first * c_first - 1.0) * (2.0 * c_second * c_second - 1.0);
  }
  return sum / points;
}

template <class Evaluate>
double converge(const OracleSpec& spec, Evaluate evaluate) {
  if (spec.base_resolution < 64) {
    throw std::invalid_argument("oracle: base_resolution must be at least 64");
  }
  int points = spec.base_resolution;
  double coarse = evaluate(points);
  double fine = coarse;
  for (int step = 0; step < spec.max_doublings; ++step) {
    points *= 2;
    fine = evaluate(points);
    if (std::abs(fine - coarse) < spec.tolerance) return fine;
    coarse = fine;
  }
  throw OracleError(coarse, fine);
}

}  // namespace oracle_detail

// Expected sign product for one analyzer pair: first analyzer at 0, second at
// theta, with the source kind and decision strategy of the simulation.
inline double model_expectation_oracle(const OracleSpec& spec, double theta, PairKind kind,
                                       double triplet_fraction, DecisionStrategy strategy,
                                       int rotation_sign = +1) {
  const double q_unsigned =
      particle_kind_of(kind) == ParticleKind::spinor ? theta : 2.0 * theta;
  const double q = rotation_sign < 0 ? -q_unsigned : q_unsigned;
  const bool mixture = kind == PairKind::singlet_spinor && triplet_fraction > 0.0;
  if (strategy == DecisionStrategy::deterministic) {
    // Coupling sign: -1 singlet, +1 triplet/photon; mixtures average exactly.
    double coupling_mean = 1.0;
    if (kind == PairKind::singlet_spinor) {
      coupling_mean = mixture ? 2.0 * triplet_fraction - 1.0 : -1.0;
    }
    const double census = oracle_detail::converge(
        spec, [q](int n) { return oracle_detail::deterministic_census(q, n); });
    return coupling_mean * census;
  }
  return oracle_detail::converge(spec, [&](int n) {
    if (!mixture) {
      const double coupling = kind == PairKind::singlet_spinor ? -1.0 : 1.0;
      return oracle_detail::probabilistic_expectation(q, coupling, n);
    }
    return (1.0 - triplet_fraction) * oracle_detail::probabilistic_expectation(q, -1.0, n) +
           triplet_fraction * oracle_detail::probabilistic_expectation(q, 1.0, n);
  });
}

// Oracle value of the four-angle combination 2 g(theta) + g(-theta) - g(3 theta).
inline double four_angle_expectation_oracle(const OracleSpec& spec, double theta, PairKind kind,
                                            double triplet_fraction, DecisionStrategy strategy,
                                            int rotation_sign = +1) {
  const double g_theta =
      model_expectation_oracle(spec, theta, kind, triplet_fraction, strategy, rotation_sign);
  const double g_minus =
      model_expectation_oracle(spec, -theta, kind, triplet_fraction, strategy, rotation_sign);
  const double g_triple =
      model_expectation_oracle(spec, 3.0 * theta, kind, triplet_fraction, strategy, rotation_sign);
  return 2.0 * g_theta + g_minus - g_triple;
}

}  // namespace qda
