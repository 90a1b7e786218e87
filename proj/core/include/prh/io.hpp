#pragma once

#include "prh/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace prh {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// FNV-1a 64-bit content hash.
uint64_t fnv1a64(std::string_view data);

/// 17 significant digits: value == parse(format_double(value)) exactly.
std::string format_double(double v);

/// Self-describing text profile: `key = value` header, one value per line,
/// hash footer covering header and values.  Load verifies the hash.
void save_profile(const std::filesystem::path& path,
                  const GroundStateResult& result);
GroundStateResult load_profile(const std::filesystem::path& path);

/// Series persistence: header with coefficients and metadata, base profile
/// then corrections as value blocks, hash footer.
void save_series(const std::filesystem::path& path, const ExpansionSeries& s);
ExpansionSeries load_series(const std::filesystem::path& path);

/// CSV: `# key = value` preamble, one row per c, fitted slopes as trailing
/// comments.  JSON mirrors the full report.  SVG is a log-log residual plot.
void save_report_csv(const std::filesystem::path& path, const SweepReport& rep);
void save_report_json(const std::filesystem::path& path, const SweepReport& rep);
std::string report_to_json(const SweepReport& rep);
void save_report_svg(const std::filesystem::path& path, const SweepReport& rep);

} // namespace prh
