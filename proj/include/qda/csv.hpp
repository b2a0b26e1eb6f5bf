#pragma once

#include <string>
#include <vector>

#include "qda/eigcheck.hpp"
#include "qda/experiment.hpp"
#include "qda/run_config.hpp"

// CSV emission.  Every file starts with a "# qda <flags>" comment that
// reparses to the producing RunConfig, then a fixed header line.  Numbers are
// printed with %.17g so identical runs are byte-identical and values round-trip.
namespace qda {

struct OraclePoint {
  double theta_deg = 0.0;
  double expectation = 0.0;
  double qm_reference = 0.0;
};

inline constexpr const char* kCorrelationHeader =
    "theta_deg,n_pp,n_pm,n_mp,n_mm,n_degenerate,gamma,std_error,qm_reference";
inline constexpr const char* kFourAngleHeader =
    "theta_deg,n_pp,n_pm,n_mp,n_mm,n_degenerate,gamma,std_error,qm_reference,"
    "gamma4,gamma4_se,chsh_violation";
inline constexpr const char* kMalusHeader =
    "theta_deg,n_plus,n_minus,n_degenerate,transmission,std_error,reference";
inline constexpr const char* kIneq5Header =
    "a_deg,a_prime_deg,b_deg,b_prime_deg,n,gamma4,rhs,sign_change_fraction,n_degenerate";
inline constexpr const char* kEigcheckHeader =
    "matrices,max_eq1_residual,max_eq2_residual,max_eq3_residual,"
    "max_eigenvalue_gap_error,max_sin_delta_phi,max_antipodal_error";
inline constexpr const char* kOracleHeader = "theta_deg,expectation,qm_reference";

std::string format_csv_double(double value);

void write_correlation_csv(const std::string& path, const RunConfig& config,
                           const std::vector<CorrelationResult>& results);
void write_four_angle_csv(const std::string& path, const RunConfig& config,
                          const std::vector<FourAngleResult>& results);
void write_malus_csv(const std::string& path, const RunConfig& config,
                     const std::vector<MalusResult>& results);
void write_ineq5_csv(const std::string& path, const RunConfig& config, const Ineq5Report& report);
void write_eigcheck_csv(const std::string& path, const RunConfig& config,
                        const EigcheckSummary& summary);
void write_oracle_csv(const std::string& path, const RunConfig& config,
                      const std::vector<OraclePoint>& points);

}  // namespace qda
