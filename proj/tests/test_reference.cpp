#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qda/reference.hpp"

using namespace qda;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDegree = kPi / 180.0;
}  // namespace

TEST_CASE("reference curves at their landmark angles") {
  CHECK(qm_reference(ReferenceCurve::proton_singlet, 0.0) == doctest::Approx(-1.0));
  CHECK(std::abs(qm_reference(ReferenceCurve::proton_singlet, kPi / 2.0)) < 1e-15);
  CHECK(qm_reference(ReferenceCurve::proton_mixture, 0.0, 0.03) ==
        doctest::Approx(-0.94).epsilon(1e-14));
  CHECK(qm_reference(ReferenceCurve::photon_single, kPi / 4.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(qm_reference(ReferenceCurve::photon_single, kPi / 2.0) == doctest::Approx(-1.0));
  CHECK(qm_reference(ReferenceCurve::photon_four_angle, 22.5 * kDegree) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(qm_reference(ReferenceCurve::chsh_limit, 1.234) == 2.0);
}

TEST_CASE("four-angle curve equals its three-term construction everywhere") {
  for (int i = 0; i <= 1000; ++i) {
    const double theta = -kPi + 2.0 * kPi * i / 1000.0;
    const double composed = 2.0 * qm_reference(ReferenceCurve::photon_single, theta) +
                            qm_reference(ReferenceCurve::photon_single, -theta) -
                            qm_reference(ReferenceCurve::photon_single, 3.0 * theta);
    CHECK(std::abs(composed - qm_reference(ReferenceCurve::photon_four_angle, theta)) < 1e-12);
  }
}

TEST_CASE("channel-rule oracle lands on the closed-form curves") {
  const OracleSpec spec;
  // Perfect correlation at zero separation.
  CHECK(model_expectation_oracle(spec, 0.0, PairKind::photon_vector, 0.0,
                                 DecisionStrategy::deterministic) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(model_expectation_oracle(spec, 0.0, PairKind::singlet_spinor, 0.0,
                                 DecisionStrategy::deterministic) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  // Photon pairs at 30 degrees: cos(60 deg) = 1/2.
  CHECK(model_expectation_oracle(spec, 30.0 * kDegree, PairKind::photon_vector, 0.0,
                                 DecisionStrategy::deterministic) ==
        doctest::Approx(0.5).epsilon(1e-6));
  // Singlet at 90 degrees: zero correlation.
  CHECK(std::abs(model_expectation_oracle(spec, kPi / 2.0, PairKind::singlet_spinor, 0.0,
                                          DecisionStrategy::deterministic)) < 1e-6);

  for (int i = 0; i <= 24; ++i) {
    const double theta = i * kPi / 24.0;
    const double photon = model_expectation_oracle(spec, theta, PairKind::photon_vector, 0.0,
                                                   DecisionStrategy::deterministic);
    CHECK(photon == doctest::Approx(std::cos(2.0 * theta)).epsilon(1e-6));
    const double singlet = model_expectation_oracle(spec, theta, PairKind::singlet_spinor, 0.0,
                                                    DecisionStrategy::deterministic);
    CHECK(singlet == doctest::Approx(-std::cos(theta)).epsilon(1e-6));
    const double triplet = model_expectation_oracle(spec, theta, PairKind::triplet_spinor, 0.0,
                                                    DecisionStrategy::deterministic);
    CHECK(triplet == doctest::Approx(std::cos(theta)).epsilon(1e-6));
    const double mixture = model_expectation_oracle(spec, theta, PairKind::singlet_spinor, 0.03,
                                                    DecisionStrategy::deterministic);
    CHECK(mixture == doctest::Approx(-0.94 * std::cos(theta)).epsilon(1e-6));
  }
}

TEST_CASE("channel-rule oracle respects the rotation sign and angle parity") {
  const OracleSpec spec;
  for (int i = 0; i <= 8; ++i) {
    const double theta = i * kPi / 8.0;
    const double plus = model_expectation_oracle(spec, theta, PairKind::photon_vector, 0.0,
                                                 DecisionStrategy::deterministic, +1);
    const double minus = model_expectation_oracle(spec, theta, PairKind::photon_vector, 0.0,
                                                  DecisionStrategy::deterministic, -1);
    const double mirrored = model_expectation_oracle(spec, -theta, PairKind::photon_vector, 0.0,
                                                     DecisionStrategy::deterministic, +1);
    CHECK(plus == doctest::Approx(minus).epsilon(1e-9));
    CHECK(plus == doctest::Approx(mirrored).epsilon(1e-9));
  }
}

TEST_CASE("comparison-rule oracle gives half-amplitude curves") {
  const OracleSpec spec;
  for (int i = 0; i <= 24; ++i) {
    const double theta = i * kPi / 24.0;
    const double singlet = model_expectation_oracle(spec, theta, PairKind::singlet_spinor, 0.0,
                                                    DecisionStrategy::probabilistic);
    CHECK(singlet == doctest::Approx(-0.5 * std::cos(theta)).epsilon(1e-5));
    const double photon = model_expectation_oracle(spec, theta, PairKind::photon_vector, 0.0,
                                                   DecisionStrategy::probabilistic);
    CHECK(photon == doctest::Approx(0.5 * std::cos(2.0 * theta)).epsilon(1e-5));
  }
}

TEST_CASE("four-angle oracle peaks above the classical limit for the channel rule") {
  const OracleSpec spec;
  const double peak = four_angle_expectation_oracle(spec, 22.5 * kDegree,
                                                    PairKind::photon_vector, 0.0,
                                                    DecisionStrategy::deterministic);
  CHECK(peak == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
  const double comparison = four_angle_expectation_oracle(spec, 22.5 * kDegree,
                                                          PairKind::photon_vector, 0.0,
                                                          DecisionStrategy::probabilistic);
  CHECK(std::abs(comparison) < 2.0);
  CHECK(comparison == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("oracle rejects a base resolution below 64") {
  OracleSpec spec;
  spec.base_resolution = 32;
  CHECK_THROWS_AS(model_expectation_oracle(spec, 0.3, PairKind::photon_vector, 0.0,
                                           DecisionStrategy::deterministic),
                  std::invalid_argument);
}

TEST_CASE("an unattainable tolerance raises the non-convergence error") {
  OracleSpec spec;
  spec.tolerance = 0.0;  // nothing can move by less than zero
  spec.max_doublings = 3;
  CHECK_THROWS_AS(model_expectation_oracle(spec, 0.4, PairKind::photon_vector, 0.0,
                                           DecisionStrategy::probabilistic),
                  OracleError);
}
