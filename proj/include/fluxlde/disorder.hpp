#pragma once

#include "fluxlde/hamiltonians.hpp"
#include "fluxlde/protocols.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace fluxlde {

enum class Protocol { dc, mw };

struct DisorderStudyConfig {
  std::variant<DcChainConfig, MwChainConfig> base;
  double half_width = 0.05;  ///< delta_xi
  int realizations = 1000;
  std::uint64_t seed = 0;
  /// Time at which the final control value is read; unset selects 10 / (2 pi r).
  std::optional<double> t_final_ns;

  Protocol protocol() const { return std::holds_alternative<DcChainConfig>(base) ? Protocol::dc : Protocol::mw; }
  void validate() const;
};

struct RealizationResult {
  int index = 0;
  std::vector<double> xi;
  double concurrence = 0.0;  ///< NaN for excluded (degenerate) realizations
  bool included = true;
};

struct DisorderStudyResult {
  DisorderStudyConfig config;
  std::vector<RealizationResult> realizations;
  double mean = 0.0;
  int min_index = -1;  ///< index into `realizations`
  int max_index = -1;
  double baseline = 0.0;  ///< clean (xi = 0) value
  int excluded_count = 0;

  double min() const { return realizations.at(min_index).concurrence; }
  double max() const { return realizations.at(max_index).concurrence; }
  double spread() const { return max() - min(); }
};

/// n_sites uniform draws in [-half_width, half_width], a pure function of (seed, index).
DisorderRealization sample_xi(double half_width, int n_sites, std::uint64_t seed, std::uint64_t index);

/// Ground-state end-to-end concurrence of the disordered dc chain at epsilon(t_final).
DisorderStudyResult run_disorder_study_dc(const DisorderStudyConfig& cfg);

/// Ground-state end-to-end concurrence of H_eff(Omega(t_final)) + H_xi.
DisorderStudyResult run_disorder_study_mw(const DisorderStudyConfig& cfg);

DisorderStudyResult run_disorder_study(const DisorderStudyConfig& cfg);

struct ExtremeTraces {
  EvolutionTrace min;
  EvolutionTrace max;
};

/// Re-runs the protocol for the minimum and maximum realizations (full lab-frame model for mw).
ExtremeTraces evolve_extremes(const DisorderStudyResult& study, const ProtocolOptions& opts = {});

}  // namespace fluxlde
