#pragma once

// Self-contained SVG plots rendered directly from the same values the CSV
// writers serialize. No timestamps or external assets, so a given input
// always produces byte-identical markup.

#include "brakemc/analysis.hpp"

#include <string>

namespace brakemc {

/// Bar chart of a stopping-distance histogram.
std::string histogram_svg(const DistributionSummary& summary,
                          const std::string& title = "Stopping-distance distribution");

/// Exceedance curve P(stop distance > headway) with dashed risk-threshold
/// lines and headway annotations.
std::string risk_curve_svg(const RiskCurve& curve,
                           const std::string& title = "Collision probability vs headway");

} // namespace brakemc
