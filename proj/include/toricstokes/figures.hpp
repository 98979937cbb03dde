#pragma once

// Static figures from a report: SVG on a fixed canvas plus the raw CSV.

#include <filesystem>
#include <string>

#include "toricstokes/pipeline.hpp"

namespace toricstokes {

enum class FigureKind { CriticalValues, Cycles };

/// "critical-values" or "cycles"; throws ParseError otherwise.
FigureKind parse_figure_kind(const std::string& s);
std::string to_string(FigureKind k);

struct Figure {
  std::string svg;
  std::string csv;
};

/// Throws MissingStage when the report lacks the data for `kind`.
Figure render_figure(const VerificationReport& r, FigureKind kind);

/// Writes <surface>-<kind>.svg and .csv into out_dir; returns the SVG path.
std::filesystem::path export_figure(const VerificationReport& r, FigureKind kind, const std::filesystem::path& out_dir);

}  // namespace toricstokes
