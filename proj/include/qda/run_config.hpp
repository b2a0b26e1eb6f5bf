#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qda/analyzer.hpp"
#include "qda/pair_source.hpp"

namespace qda {

enum class Mode { proton, photon, photon4, malus, ineq5, eigcheck, oracle };

// Bad flags or flag values; the driver maps this to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable/unwritable paths; the driver maps this to the I/O exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --help was requested; carries the help text to print.
struct HelpRequested {
  std::string text;
};

struct RunConfig {
  Mode mode = Mode::photon;
  std::uint64_t pairs = 10000;
  std::uint64_t seed = 1;
  double theta_start_deg = 0.0;
  double theta_end_deg = 90.0;
  double theta_step_deg = 7.5;
  double triplet_fraction = 0.0;
  DecisionStrategy strategy = DecisionStrategy::deterministic;
  int rotation_sign = +1;
  int threads = 1;
  std::string output_path = "qda_results.csv";
  bool plot = false;
  bool independent_settings = false;  // photon4: draw the doubled theta run twice
  bool independent_u_prime = false;   // ineq5: independent u' per counterfactual setting
  int prepared_s1 = +1;               // malus
  double angle_a_deg = 0.0;           // ineq5 analyzer settings
  double angle_a_prime_deg = -45.0;
  double angle_b_deg = -22.5;
  double angle_b_prime_deg = 22.5;
  std::uint64_t matrices = 10000;     // eigcheck
  PairKind oracle_kind = PairKind::photon_vector;
  double oracle_tolerance = 1e-6;

  bool operator==(const RunConfig&) const = default;

  std::vector<double> theta_grid_deg() const;
};

// Parses command-line flags (program name excluded).  Applies mode-dependent
// grid defaults, honors the QDA_SEED environment variable (an explicit --seed
// wins), and validates ranges.  Throws UsageError or HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);

// Canonical flag echo: parse_config(tokenized canonical_flags(c)) == c.
std::string canonical_flags(const RunConfig& config);

const char* mode_name(Mode mode);
const char* strategy_name(DecisionStrategy strategy);
const char* kind_name(PairKind kind);

}  // namespace qda
