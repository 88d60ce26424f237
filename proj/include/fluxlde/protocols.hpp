#pragma once

#include "fluxlde/dynamics.hpp"
#include "fluxlde/hamiltonians.hpp"

#include <limits>
#include <string>
#include <vector>

namespace fluxlde {

struct TraceRow {
  double t_ns = 0.0;
  double control_ghz = 0.0;
  double fidelity = 0.0;        ///< NaN where the instantaneous ground state is degenerate
  double concurrence = 0.0;     ///< end-to-end, of the evolved state
  double norm_error = 0.0;      ///< | |psi| - 1 |
  double gs_concurrence = 0.0;  ///< end-to-end, of the instantaneous ground state
};

struct EvolutionTrace {
  std::vector<TraceRow> rows;
  /// Worst density-matrix invariant violation over every reduced state in the run.
  double worst_density_violation = 0.0;
  std::vector<std::string> warnings;

  const TraceRow& final() const { return rows.back(); }
  double min_fidelity() const;
  double max_concurrence() const;
  double max_norm_error() const;
};

struct ProtocolOptions {
  /// Run length; NaN selects 10 / (2 pi r).
  double t_final_ns = std::numeric_limits<double>::quiet_NaN();
  /// Samples after t = 0; the trace has n_samples + 1 rows (one row when t_final is 0).
  int n_samples = 200;
  IntegratorOptions integrator;
};

enum class MwModel { full, effective };

/// Adiabatic dc ramp epsilon(t) = epsilon_0 exp(-2 pi r t) from the ground state at epsilon_0.
EvolutionTrace run_protocol_dc(const DcChainConfig& cfg, const ProtocolOptions& opts = {});

/// Microwave protocol: initialize in the ground state at Omega = 0 with the staggered
/// initialization biases, then switch biases off and ramp Omega(t) = Omega_0 exp(-2 pi r t).
/// The full model evolves in the lab frame and its fidelity is taken against U_0 applied to the
/// rotating-frame ground state; the effective model evolves directly in the rotating frame.
EvolutionTrace run_protocol_mw(const MwChainConfig& cfg, MwModel model, const ProtocolOptions& opts = {});

/// Sample grid used by the protocols.
std::vector<double> sample_grid(double t_final_ns, int n_samples);

}  // namespace fluxlde
