#include "qda/plot.hpp"

#include <cstdio>
#include <fstream>

#include "qda/csv.hpp"

namespace qda {
namespace {

// Compact numeric literal for gnuplot expressions; plot scripts are
// human-facing, so shortest-form %g beats the exact CSV formatting.
std::string plot_number(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%g", value);
  return buffer;
}

std::string reference_expression(const RunConfig& config) {
  switch (config.mode) {
    case Mode::proton:
      return "-(1 - 2*" + plot_number(config.triplet_fraction) + ")*cos(x*pi/180)";
    case Mode::photon:
      return "cos(2*x*pi/180)";
    case Mode::photon4:
      return "3*cos(2*x*pi/180) - cos(6*x*pi/180)";
    case Mode::malus:
      return config.prepared_s1 == 1 ? "cos(x*pi/180)**2" : "sin(x*pi/180)**2";
    default:
      return "";
  }
}

const char* ylabel(const RunConfig& config) {
  switch (config.mode) {
    case Mode::photon4: return "four-angle correlation";
    case Mode::malus: return "transmission fraction";
    case Mode::oracle: return "expected sign product";
    default: return "correlation";
  }
}

}  // namespace

void write_plot_script(const std::string& path, const RunConfig& config,
                       const std::string& csv_path, bool has_results) {
  if (config.mode == Mode::ineq5 || config.mode == Mode::eigcheck) {
    throw UsageError("plot: mode '" + std::string(mode_name(config.mode)) + "' has no sweep to plot");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);

  out << "# generated by qda; run: gnuplot -persist " << path << "\n";
  out << "set datafile separator ','\n";
  out << "set xlabel 'analyzer angle (degrees)'\n";
  out << "set ylabel '" << ylabel(config) << "'\n";
  out << "set xrange [" << plot_number(config.theta_start_deg) << ":"
      << plot_number(config.theta_end_deg) << "]\n";
  out << "set key outside bottom center\n";

  std::string data_series;
  if (has_results) {
    if (config.mode == Mode::photon4) {
      data_series = "'" + csv_path + "' using 1:10:11 with yerrorbars pt 7 title 'simulation', ";
    } else if (config.mode == Mode::malus) {
      data_series = "'" + csv_path + "' using 1:5:6 with yerrorbars pt 7 title 'simulation', ";
    } else if (config.mode == Mode::oracle) {
      data_series = "'" + csv_path + "' using 1:2 with points pt 7 title 'expectation oracle', ";
    } else {
      data_series = "'" + csv_path + "' using 1:7:8 with yerrorbars pt 7 title 'simulation', ";
    }
  }

  std::string reference;
  if (config.mode == Mode::oracle) {
    reference = "'" + csv_path + "' using 1:3 with lines lc 'black' title 'quantum mechanics'";
    if (!has_results) reference = "0 with lines lc 'black' title 'quantum mechanics'";
  } else {
    reference = reference_expression(config) + " with lines lc 'black' title 'quantum mechanics'";
  }

  out << "plot " << data_series << reference;
  if (config.mode == Mode::photon4) {
    out << ", \\\n     2 with lines dt 2 lc 'gray40' title 'CHSH limits'"
        << ", \\\n     -2 with lines dt 2 lc 'gray40' notitle";
  }
  out << "\n";
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace qda
