#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace h1::cli {

// Where a row's reference value comes from.  Every row must carry one of
// these tags; the serializers refuse anything outside the enum.
enum class Provenance : int { paper = 0, trivial = 1, derived_oracle = 2 };

std::string_view provenance_tag(Provenance p);

struct ReportRow {
  std::string id;       // stable identifier, e.g. "sublap-log-gauge/p07"
  std::string inputs;   // human-readable inputs, e.g. "x=1 y=0 t=2"
  double computed = 0.0;
  double reference = 0.0;
  Provenance provenance = Provenance::trivial;
  bool pass = false;
  double error = 0.0;       // achieved error (semantics per row family)
  double runtime_ms = 0.0;  // zeroed when wall-clock output is suppressed
};

struct ReportMeta {
  std::string subcommand;
  std::string config_digest;  // FNV-1a hash of the canonical config string
  std::uint64_t seed = 0;
  std::string tolerances;  // free-form summary of the tolerances in force
  std::vector<std::pair<std::string, std::string>> conventions;
  bool with_wallclock = true;
  std::string timestamp;  // ISO-8601 UTC; ignored when !with_wallclock
};

// Shortest round-trip-safe decimal form (17 significant digits).
std::string format_g17(double v);

std::string fnv1a_hex(std::string_view payload);

std::string iso8601_utc_now();

void write_csv(std::ostream& os, const ReportMeta& meta,
               std::span<const ReportRow> rows);
void write_json(std::ostream& os, const ReportMeta& meta,
                std::span<const ReportRow> rows);

}  // namespace h1::cli
