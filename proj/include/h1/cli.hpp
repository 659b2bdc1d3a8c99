#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "h1/report.hpp"

namespace h1::cli {

// Fully resolved invocation; the binary fills this from flags and an
// optional INI config file, tests construct it directly.
struct RunConfig {
  std::string subcommand;
  std::string format = "csv";  // csv | json
  std::uint64_t seed = 0x9E3779B97F4A7C15ull;
  bool strict = false;          // propagate module errors instead of
                                // recording them as failed rows
  bool with_wallclock = true;   // false => omit timestamp, zero runtimes

  int resolution = 12;  // base quadrature resolution
  int points = 50;      // sample count for pointwise identity checks

  std::vector<double> c2_values{1.0, -1.0, 2.0, -2.0};

  double bump_epsilon = 0.5;
  std::vector<double> decay_radii{4.0, 8.0, 16.0, 32.0, 64.0};

  std::vector<double> kappas{1.0, 2.0, 3.0, 4.0};
  int a1_stages = 3;

  std::vector<double> growth_radii{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  std::optional<double> mollify_epsilon;

  // Deterministic serialization of every field; hashed into the report
  // header so identical configs are recognizable across runs.
  std::string canonical() const;
};

// Throws ConfigError for out-of-range or inconsistent settings.
void validate(const RunConfig& cfg);

std::vector<ReportRow> build_rows(const RunConfig& cfg);

// Validates, builds rows, serializes to `report_out`, logs a one-line
// summary to `diag`.  Returns 0 if every row passes, 1 otherwise.
// ConfigError propagates to the caller (the binary maps it to exit 2).
int run(const RunConfig& cfg, std::ostream& report_out, std::ostream& diag);

}  // namespace h1::cli
