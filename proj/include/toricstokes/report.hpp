#pragma once

// JSON form of a verification report. Everything except the "timings" block
// is a deterministic function of the fan and the config.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "toricstokes/pipeline.hpp"

namespace toricstokes {

nlohmann::ordered_json report_json(const VerificationReport& r, bool with_timings = true);
std::string report_text(const VerificationReport& r, bool with_timings = true);
void write_report(const VerificationReport& r, const std::filesystem::path& path);

/// Inverse of report_json for the fields needed by figures and reverify.
/// Throws ParseError.
VerificationReport report_from_json(const nlohmann::ordered_json& j);
VerificationReport load_report(const std::filesystem::path& path);

struct ReverifyResult {
  bool stokes_from_intersections = false;  // S = I - upper(C)
  bool skew = false;
  bool euler_recomputed = false;           // Euler matrix rebuilt from the fan
  bool certificate = false;                // certificate maps S onto E
  bool ok() const { return stokes_from_intersections && skew && euler_recomputed && certificate; }
};

/// Re-checks the stored matrices and certificate without any numerics.
ReverifyResult reverify(const VerificationReport& r);

}  // namespace toricstokes
