#pragma once

#include "fluxlde/hamiltonians.hpp"

#include <span>
#include <vector>

namespace fluxlde {

/// Gaps below this (rad/ns) mark the ground state as degenerate.
inline constexpr double degeneracy_tolerance = 1e-6;

struct GroundStateResult {
  double energy = 0.0;   ///< rad/ns
  StateVector state;
  double gap = 0.0;      ///< E_1 - E_0, rad/ns
  bool degenerate = false;
};

GroundStateResult ground_state(const Operator& h);

/// One point of a gap/concurrence sweep. Gap is reported as a linear frequency (GHz); a
/// degenerate point has gap 0 and NaN concurrence.
struct SweepRow {
  double control_ghz = 0.0;
  double gap_ghz = 0.0;
  double concurrence = 0.0;
};

enum class DcSweepVariable { tunneling, bias };

/// Dc chain swept over Delta (at epsilon = 0) or over epsilon (at the configured Delta).
/// The grid must be nonempty and ascending.
std::vector<SweepRow> sweep_dc_gap_concurrence(const DcChainConfig& cfg, DcSweepVariable var,
                                               std::span<const double> grid);

/// Effective XX model swept over the drive amplitude Omega.
std::vector<SweepRow> sweep_mw_gap_concurrence(const MwChainConfig& cfg, std::span<const double> grid);

/// `points` evenly spaced values from `from` to `to` inclusive (a single point yields `from`).
std::vector<double> linspace(double from, double to, int points);

}  // namespace fluxlde
