#include "qda/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace qda {
namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void write_preamble(std::ofstream& out, const RunConfig& config, const char* header) {
  out << "# qda " << canonical_flags(config) << "\n" << header << "\n";
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// Snapped to 1e-12 degrees so grid angles round-trip through radians cleanly.
double degrees_of(double radians) {
  const double degrees = radians * 180.0 / std::numbers::pi;
  return std::round(degrees * 1e12) / 1e12;
}

}  // namespace

std::string format_csv_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_correlation_csv(const std::string& path, const RunConfig& config,
                           const std::vector<CorrelationResult>& results) {
  auto out = open_or_throw(path);
  write_preamble(out, config, kCorrelationHeader);
  for (const auto& r : results) {
    out << format_csv_double(degrees_of(r.theta)) << ',' << r.counts.n_pp << ',' << r.counts.n_pm
        << ',' << r.counts.n_mp << ',' << r.counts.n_mm << ',' << r.counts.n_degenerate << ','
        << format_csv_double(r.gamma) << ',' << format_csv_double(r.std_error) << ','
        << format_csv_double(r.qm_reference) << '\n';
  }
  finish(out, path);
}

void write_four_angle_csv(const std::string& path, const RunConfig& config,
                          const std::vector<FourAngleResult>& results) {
  auto out = open_or_throw(path);
  write_preamble(out, config, kFourAngleHeader);
  for (const auto& r : results) {
    const CorrelationResult& first = r.components.front();
    const ChshReport report = chsh_bound_check(r);
    out << format_csv_double(degrees_of(r.theta)) << ',' << first.counts.n_pp << ','
        << first.counts.n_pm << ',' << first.counts.n_mp << ',' << first.counts.n_mm << ','
        << first.counts.n_degenerate << ',' << format_csv_double(first.gamma) << ','
        << format_csv_double(first.std_error) << ',' << format_csv_double(first.qm_reference)
        << ',' << format_csv_double(r.gamma4) << ',' << format_csv_double(r.std_error) << ','
        << (report.violation ? "true" : "false") << '\n';
  }
  finish(out, path);
}

void write_malus_csv(const std::string& path, const RunConfig& config,
                     const std::vector<MalusResult>& results) {
  auto out = open_or_throw(path);
  write_preamble(out, config, kMalusHeader);
  for (const auto& r : results) {
    out << format_csv_double(degrees_of(r.theta)) << ',' << r.n_plus << ',' << r.n_minus << ','
        << r.n_degenerate << ',' << format_csv_double(r.fraction) << ','
        << format_csv_double(r.std_error) << ',' << format_csv_double(r.reference) << '\n';
  }
  finish(out, path);
}

void write_ineq5_csv(const std::string& path, const RunConfig& config, const Ineq5Report& report) {
  auto out = open_or_throw(path);
  write_preamble(out, config, kIneq5Header);
  out << format_csv_double(degrees_of(report.angle_a)) << ','
      << format_csv_double(degrees_of(report.angle_a_prime)) << ','
      << format_csv_double(degrees_of(report.angle_b)) << ','
      << format_csv_double(degrees_of(report.angle_b_prime)) << ',' << report.n << ','
      << format_csv_double(report.gamma4) << ',' << format_csv_double(report.rhs) << ','
      << format_csv_double(report.sign_change_fraction) << ',' << report.n_degenerate << '\n';
  finish(out, path);
}

void write_eigcheck_csv(const std::string& path, const RunConfig& config,
                        const EigcheckSummary& summary) {
  auto out = open_or_throw(path);
  write_preamble(out, config, kEigcheckHeader);
  out << summary.matrices << ',' << format_csv_double(summary.max_eq1_residual) << ','
      << format_csv_double(summary.max_eq2_residual) << ','
      << format_csv_double(summary.max_eq3_residual) << ','
      << format_csv_double(summary.max_eigenvalue_gap_error) << ','
      << format_csv_double(summary.max_sin_delta_phi) << ','
      << format_csv_double(summary.max_antipodal_error) << '\n';
  finish(out, path);
}

void write_oracle_csv(const std::string& path, const RunConfig& config,
                      const std::vector<OraclePoint>& points) {
  auto out = open_or_throw(path);
  write_preamble(out, config, kOracleHeader);
  for (const auto& p : points) {
    out << format_csv_double(p.theta_deg) << ',' << format_csv_double(p.expectation) << ','
        << format_csv_double(p.qm_reference) << '\n';
  }
  finish(out, path);
}

}  // namespace qda
