#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qda/csv.hpp"
#include "qda/experiment.hpp"
#include "qda/plot.hpp"
#include "qda/run_config.hpp"

using namespace qda;

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

int run_binary(const std::string& flags) {
  const std::string command = std::string(QDA_CLI_BINARY) + " " + flags + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value) {
      setenv("QDA_SEED", value, 1);
    } else {
      unsetenv("QDA_SEED");
    }
  }
  ~EnvGuard() { unsetenv("QDA_SEED"); }
};

}  // namespace

TEST_CASE("defaults: photon sweep over 0..90 in 7.5-degree steps") {
  const EnvGuard guard(nullptr);
  const RunConfig config = parse_config({});
  CHECK(config.mode == Mode::photon);
  CHECK(config.pairs == 10000);
  CHECK(config.seed == 1);
  CHECK(config.theta_step_deg == 7.5);
  CHECK(config.theta_grid_deg().size() == 13);
  CHECK(config.theta_grid_deg().front() == 0.0);
  CHECK(config.theta_grid_deg().back() == 90.0);
}

TEST_CASE("proton and malus modes default to 15-degree steps") {
  const EnvGuard guard(nullptr);
  CHECK(parse_config({"--mode", "proton"}).theta_step_deg == 15.0);
  CHECK(parse_config({"--mode", "proton"}).theta_grid_deg().size() == 7);
  CHECK(parse_config({"--mode", "malus"}).theta_step_deg == 15.0);
  CHECK(parse_config({"--mode", "photon4"}).theta_step_deg == 7.5);
  // An explicit step always wins over the mode default.
  CHECK(parse_config({"--mode", "proton", "--theta-step", "5"}).theta_step_deg == 5.0);
}

TEST_CASE("grid construction handles non-dividing steps") {
  const EnvGuard guard(nullptr);
  const RunConfig config =
      parse_config({"--theta-start", "0", "--theta-end", "10", "--theta-step", "3"});
  const std::vector<double> grid = config.theta_grid_deg();
  REQUIRE(grid.size() == 4);
  CHECK(grid[3] == 9.0);
}

TEST_CASE("every documented flag parses into its field") {
  const EnvGuard guard(nullptr);
  const RunConfig config = parse_config(
      {"--mode", "ineq5", "--pairs", "500", "--seed", "77", "--strategy", "probabilistic",
       "--rotation-sign", "-1", "--threads", "3", "--output", "out.csv", "--plot",
       "--independent-uprime", "--angle-a", "10", "--angle-a-prime", "-30", "--angle-b", "20",
       "--angle-b-prime", "55", "--triplet-fraction", "0.25", "--prepared-s1", "-1",
       "--matrices", "123", "--kind", "triplet", "--tolerance", "1e-4"});
  CHECK(config.mode == Mode::ineq5);
  CHECK(config.pairs == 500);
  CHECK(config.seed == 77);
  CHECK(config.strategy == DecisionStrategy::probabilistic);
  CHECK(config.rotation_sign == -1);
  CHECK(config.threads == 3);
  CHECK(config.output_path == "out.csv");
  CHECK(config.plot);
  CHECK(config.independent_u_prime);
  CHECK(config.angle_a_deg == 10.0);
  CHECK(config.angle_a_prime_deg == -30.0);
  CHECK(config.angle_b_deg == 20.0);
  CHECK(config.angle_b_prime_deg == 55.0);
  CHECK(config.triplet_fraction == 0.25);
  CHECK(config.prepared_s1 == -1);
  CHECK(config.matrices == 123);
  CHECK(config.oracle_kind == PairKind::triplet_spinor);
  CHECK(config.oracle_tolerance == 1e-4);
}

TEST_CASE("bad flags and bad values raise the usage error") {
  const EnvGuard guard(nullptr);
  CHECK_THROWS_AS(parse_config({"--bogus"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--mode", "banana"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--pairs", "0"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--matrices", "0"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--theta-step", "-1"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--theta-start", "50", "--theta-end", "10"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--triplet-fraction", "1.5"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--rotation-sign", "2"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--prepared-s1", "0"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--threads", "0"}), UsageError);
  CHECK_THROWS_AS(parse_config({"--tolerance", "0"}), UsageError);
}

TEST_CASE("--help raises HelpRequested with the flag reference") {
  const EnvGuard guard(nullptr);
  try {
    parse_config({"--help"});
    FAIL("expected HelpRequested");
  } catch (const HelpRequested& help) {
    CHECK(help.text.find("--mode") != std::string::npos);
    CHECK(help.text.find("--seed") != std::string::npos);
  }
}

TEST_CASE("QDA_SEED feeds the seed unless --seed is explicit") {
  {
    const EnvGuard guard("424242");
    CHECK(parse_config({}).seed == 424242);
    CHECK(parse_config({"--seed", "9"}).seed == 9);
  }
  {
    const EnvGuard guard("not-a-number");
    CHECK_THROWS_AS(parse_config({}), UsageError);
    // An explicit seed makes the malformed environment irrelevant.
    CHECK(parse_config({"--seed", "9"}).seed == 9);
  }
}

TEST_CASE("canonical flag echo round-trips through the parser") {
  const EnvGuard guard(nullptr);
  std::vector<RunConfig> configs;
  configs.push_back(parse_config({}));
  configs.push_back(parse_config({"--mode", "proton", "--triplet-fraction", "0.03"}));
  configs.push_back(parse_config({"--mode", "photon4", "--independent-settings", "--plot"}));
  configs.push_back(parse_config({"--mode", "oracle", "--kind", "singlet", "--strategy",
                                  "probabilistic", "--tolerance", "1e-5"}));
  configs.push_back(parse_config({"--mode", "ineq5", "--independent-uprime", "--angle-a",
                                  "12.5", "--rotation-sign", "-1"}));
  configs.push_back(parse_config({"--mode", "malus", "--prepared-s1", "-1", "--theta-step",
                                  "4.5", "--pairs", "123456", "--seed", "987"}));
  for (const RunConfig& config : configs) {
    const RunConfig replayed = parse_config(tokenize(canonical_flags(config)));
    CHECK(replayed == config);
  }
}

TEST_CASE("CSV headers are the documented column lists") {
  CHECK(std::string(kCorrelationHeader) ==
        "theta_deg,n_pp,n_pm,n_mp,n_mm,n_degenerate,gamma,std_error,qm_reference");
  CHECK(std::string(kFourAngleHeader) ==
        "theta_deg,n_pp,n_pm,n_mp,n_mm,n_degenerate,gamma,std_error,qm_reference,"
        "gamma4,gamma4_se,chsh_violation");
  CHECK(std::string(kMalusHeader) ==
        "theta_deg,n_plus,n_minus,n_degenerate,transmission,std_error,reference");
  CHECK(std::string(kIneq5Header) ==
        "a_deg,a_prime_deg,b_deg,b_prime_deg,n,gamma4,rhs,sign_change_fraction,n_degenerate");
  CHECK(std::string(kEigcheckHeader) ==
        "matrices,max_eq1_residual,max_eq2_residual,max_eq3_residual,"
        "max_eigenvalue_gap_error,max_sin_delta_phi,max_antipodal_error");
  CHECK(std::string(kOracleHeader) == "theta_deg,expectation,qm_reference");
}

TEST_CASE("written CSV carries the canonical command line and the header") {
  const EnvGuard guard(nullptr);
  const RunConfig config = parse_config({"--mode", "photon", "--pairs", "4096"});
  const std::string path = "/tmp/qda_test_roundtrip.csv";
  const auto results = run_correlation_sweep(
      SourceConfig{PairKind::photon_vector, 0.0, config.seed},
      std::vector<double>{0.0, 0.7853981633974483}, config.pairs, {});
  write_correlation_csv(path, config, results);
  const std::vector<std::string> lines = lines_of(slurp(path));
  REQUIRE(lines.size() == 4);
  REQUIRE(lines[0].rfind("# qda ", 0) == 0);
  CHECK(lines[1] == kCorrelationHeader);
  // The comment line replays to the exact configuration that wrote the file.
  const RunConfig replayed = parse_config(tokenize(lines[0].substr(6)));
  CHECK(replayed == config);
  // Data rows: angle plus eight numeric fields.
  CHECK(lines[2].rfind("0,", 0) == 0);
  CHECK(lines[3].rfind("45,", 0) == 0);
}

TEST_CASE("plot scripts reference the CSV and the matching analytic curve") {
  const EnvGuard guard(nullptr);
  const std::string gp = "/tmp/qda_test_plot.gp";

  write_plot_script(gp, parse_config({"--mode", "photon"}), "data.csv");
  std::string text = slurp(gp);
  CHECK(text.find("set datafile separator ','") != std::string::npos);
  CHECK(text.find("'data.csv' using 1:7:8 with yerrorbars") != std::string::npos);
  CHECK(text.find("cos(2*x*pi/180)") != std::string::npos);

  write_plot_script(gp, parse_config({"--mode", "proton", "--triplet-fraction", "0.03"}),
                    "data.csv");
  text = slurp(gp);
  CHECK(text.find("-(1 - 2*0.03") != std::string::npos);

  write_plot_script(gp, parse_config({"--mode", "photon4"}), "data.csv");
  text = slurp(gp);
  CHECK(text.find("using 1:10:11") != std::string::npos);
  CHECK(text.find("3*cos(2*x*pi/180) - cos(6*x*pi/180)") != std::string::npos);
  CHECK(text.find("2 with lines dt 2") != std::string::npos);

  write_plot_script(gp, parse_config({"--mode", "malus", "--prepared-s1", "-1"}), "data.csv");
  text = slurp(gp);
  CHECK(text.find("sin(x*pi/180)**2") != std::string::npos);

  CHECK_THROWS_AS(write_plot_script(gp, parse_config({"--mode", "eigcheck"}), "data.csv"),
                  UsageError);
  CHECK_THROWS_AS(write_plot_script(gp, parse_config({"--mode", "ineq5"}), "data.csv"),
                  UsageError);
}

TEST_CASE("binary: success, usage, I/O, and oracle-convergence exit codes") {
  const EnvGuard guard(nullptr);
  CHECK(run_binary("--mode photon --pairs 2000 --output /tmp/qda_cli_ok.csv") == 0);
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("--no-such-flag") == 2);
  CHECK(run_binary("--mode photon --pairs 0") == 2);
  CHECK(run_binary("--mode photon --pairs 100 --output /no/such/dir/out.csv") == 3);
  CHECK(run_binary("--mode oracle --strategy probabilistic --kind singlet --theta-start 37.5 "
                   "--theta-end 37.5 --tolerance 1e-30 --output /tmp/qda_cli_noconv.csv") == 4);
}

TEST_CASE("binary: QDA_SEED environment changes the run, explicit seed overrides") {
  {
    const EnvGuard guard("123");
    CHECK(run_binary("--mode photon --pairs 500 --output /tmp/qda_cli_env.csv") == 0);
    CHECK(run_binary("--mode photon --pairs 500 --seed 123 --output /tmp/qda_cli_flag.csv") == 0);
  }
  const std::string env_text = slurp("/tmp/qda_cli_env.csv");
  const std::string flag_text = slurp("/tmp/qda_cli_flag.csv");
  // Same seed through either channel: identical rows after the comment line.
  const auto env_lines = lines_of(env_text);
  const auto flag_lines = lines_of(flag_text);
  REQUIRE(env_lines.size() == flag_lines.size());
  for (std::size_t i = 1; i < env_lines.size(); ++i) CHECK(env_lines[i] == flag_lines[i]);
}

TEST_CASE("binary: reruns and thread counts leave the CSV byte-identical") {
  const EnvGuard guard(nullptr);
  CHECK(run_binary("--mode photon4 --pairs 70000 --seed 4 --threads 1 "
                   "--output /tmp/qda_cli_t1.csv") == 0);
  CHECK(run_binary("--mode photon4 --pairs 70000 --seed 4 --threads 4 "
                   "--output /tmp/qda_cli_t4.csv") == 0);
  const std::string t1 = slurp("/tmp/qda_cli_t1.csv");
  std::string t4 = slurp("/tmp/qda_cli_t4.csv");
  // The canonical command line records the differing thread count; all
  // simulation output below it must match byte for byte.
  const auto t1_lines = lines_of(t1);
  const auto t4_lines = lines_of(t4);
  REQUIRE(t1_lines.size() == t4_lines.size());
  for (std::size_t i = 1; i < t1_lines.size(); ++i) CHECK(t1_lines[i] == t4_lines[i]);

  // Rerunning the identical command overwrites with identical bytes.
  CHECK(run_binary("--mode photon4 --pairs 70000 --seed 4 --threads 1 "
                   "--output /tmp/qda_cli_t1.csv") == 0);
  CHECK(slurp("/tmp/qda_cli_t1.csv") == t1);
}

TEST_CASE("binary: --plot writes a script next to the CSV") {
  const EnvGuard guard(nullptr);
  CHECK(run_binary("--mode photon --pairs 1000 --plot --output /tmp/qda_cli_plot.csv") == 0);
  const std::string text = slurp("/tmp/qda_cli_plot.gp");
  CHECK(text.find("'/tmp/qda_cli_plot.csv'") != std::string::npos);
}
