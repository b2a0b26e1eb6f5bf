#pragma once

#include <cstdint>

// Random-matrix validation sweep: draws Hermitian analyzer matrices, gets
// their eigenvectors from a numerical diagonalization, and reports the worst
// residual of every Stokes eigenstate identity over the whole sweep.
namespace qda {

struct EigcheckSummary {
  std::uint64_t matrices = 0;
  double max_eq1_residual = 0.0;       // |p.s -/+ p0 s0|
  double max_eq2_residual = 0.0;       // |s3 p2 - s2 p3|
  double max_eq3_residual = 0.0;       // |s1 p1 -/+ p1^2 s0 / p0|
  double max_eigenvalue_gap_error = 0.0;  // |(lambda+ - lambda-) - p0|
  double max_sin_delta_phi = 0.0;      // |sin(delta - phi)| over both eigenvectors
  double max_antipodal_error = 0.0;    // |S . S' + s0 s0'| for the two eigenvectors
};

EigcheckSummary run_eigcheck(std::uint64_t seed, std::uint64_t n_matrices);

}  // namespace qda
