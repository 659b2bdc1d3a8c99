#include "h1/report.hpp"

#include <cstdio>
#include <ctime>
#include <ostream>

#include <json.hpp>

#include "h1/errors.hpp"

namespace h1::cli {

std::string_view provenance_tag(Provenance p) {
  switch (p) {
    case Provenance::paper:
      return "paper";
    case Provenance::trivial:
      return "trivial";
    case Provenance::derived_oracle:
      return "derived-oracle";
  }
  throw ConfigError("report row carries an untagged reference value");
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(std::string_view payload) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

// CSV field quoting: wrap in quotes when the value contains a comma, quote,
// or newline; embedded quotes are doubled.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const ReportMeta& meta,
               std::span<const ReportRow> rows) {
  os << "# subcommand: " << meta.subcommand << "\n";
  os << "# config: " << meta.config_digest << "\n";
  os << "# seed: " << meta.seed << "\n";
  if (!meta.tolerances.empty()) os << "# tolerances: " << meta.tolerances << "\n";
  for (const auto& [k, v] : meta.conventions) os << "# " << k << ": " << v << "\n";
  if (meta.with_wallclock) os << "# timestamp: " << meta.timestamp << "\n";
  os << "id,inputs,computed,reference,provenance,pass,error,runtime_ms\n";
  for (const ReportRow& r : rows) {
    os << csv_escape(r.id) << ',' << csv_escape(r.inputs) << ','
       << format_g17(r.computed) << ',' << format_g17(r.reference) << ','
       << provenance_tag(r.provenance) << ',' << (r.pass ? "pass" : "fail")
       << ',' << format_g17(r.error) << ','
       << format_g17(meta.with_wallclock ? r.runtime_ms : 0.0) << "\n";
  }
}

void write_json(std::ostream& os, const ReportMeta& meta,
                std::span<const ReportRow> rows) {
  nlohmann::json j;
  j["meta"] = {
      {"subcommand", meta.subcommand},
      {"config", meta.config_digest},
      {"seed", meta.seed},
      {"tolerances", meta.tolerances},
  };
  for (const auto& [k, v] : meta.conventions) j["meta"][k] = v;
  if (meta.with_wallclock) j["meta"]["timestamp"] = meta.timestamp;
  j["rows"] = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    j["rows"].push_back({
        {"id", r.id},
        {"inputs", r.inputs},
        {"computed", r.computed},
        {"reference", r.reference},
        {"provenance", std::string(provenance_tag(r.provenance))},
        {"pass", r.pass},
        {"error", r.error},
        {"runtime_ms", meta.with_wallclock ? r.runtime_ms : 0.0},
    });
  }
  os << j.dump(2) << "\n";
}

}  // namespace h1::cli
