#include "qda/eigcheck.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qda/rng.hpp"
#include "qda/stokes.hpp"

namespace qda {
namespace {

// Stokes components of a raw eigenvector, without going through angles.
StokesField<double> stokes_of_vector(const Eigen::Vector2cd& v) {
  StokesField<double> field;
  const std::complex<double> cross = std::conj(v[0]) * v[1];
  field.s[0] = std::norm(v[0]) + std::norm(v[1]);
  field.s[1] = std::norm(v[0]) - std::norm(v[1]);
  field.s[2] = 2.0 * cross.real();
  field.s[3] = 2.0 * cross.imag();
  field.s /= field.s[0];
  return field;
}

}  // namespace

EigcheckSummary run_eigcheck(std::uint64_t seed, std::uint64_t n_matrices) {
  if (n_matrices == 0) throw std::invalid_argument("run_eigcheck: n_matrices must be positive");
  EigcheckSummary summary;
  summary.matrices = n_matrices;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver;

  for (std::uint64_t i = 0; i < n_matrices; ++i) {
    HermitianParams<double> params;
    params.a = 5.0 * uniform_symmetric(seed, i, Substream::matrix_a);
    params.d = 5.0 * uniform_symmetric(seed, i, Substream::matrix_d);
    params.h = 5.0 * uniform01(seed, i, Substream::matrix_h);
    params.phi = uniform_angle(seed, i, Substream::matrix_phi);

    const auto [matrix, lambda] = matrix_stokes(params);
    solver.compute(params.matrix());
    // Eigen orders eigenvalues ascending: [0] pairs with the minus branch.
    const double gap = solver.eigenvalues()[1] - solver.eigenvalues()[0];
    summary.max_eigenvalue_gap_error =
        std::max(summary.max_eigenvalue_gap_error, std::abs(gap - matrix.p0()));
    summary.max_eigenvalue_gap_error = std::max(
        summary.max_eigenvalue_gap_error, std::abs(solver.eigenvalues()[1] - lambda.lambda_plus));
    summary.max_eigenvalue_gap_error = std::max(
        summary.max_eigenvalue_gap_error, std::abs(solver.eigenvalues()[0] - lambda.lambda_minus));

    const StokesField<double> plus_field = stokes_of_vector(solver.eigenvectors().col(1));
    const StokesField<double> minus_field = stokes_of_vector(solver.eigenvectors().col(0));
    const auto plus_residuals = eigencondition_residuals(plus_field, matrix, Branch::plus);
    const auto minus_residuals = eigencondition_residuals(minus_field, matrix, Branch::minus);
    summary.max_eq1_residual =
        std::max({summary.max_eq1_residual, plus_residuals[0], minus_residuals[0]});
    summary.max_eq2_residual =
        std::max({summary.max_eq2_residual, plus_residuals[1], minus_residuals[1]});
    summary.max_eq3_residual =
        std::max({summary.max_eq3_residual, plus_residuals[2], minus_residuals[2]});

    for (const auto& field : {plus_field, minus_field}) {
      const double linear = std::hypot(field.s2(), field.s3());
      if (linear > 0.0) {
        const double delta = std::atan2(field.s3(), field.s2());
        summary.max_sin_delta_phi =
            std::max(summary.max_sin_delta_phi, std::abs(std::sin(delta - params.phi)));
      }
    }

    const double antipodal = plus_field.direction().dot(minus_field.direction()) +
                             plus_field.s0() * minus_field.s0();
    summary.max_antipodal_error = std::max(summary.max_antipodal_error, std::abs(antipodal));
  }
  return summary;
}

}  // namespace qda
