#pragma once

#include "fluxlde/linalg.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fluxlde {

/// Per-site parameters of a flux-qubit chain, all linear frequencies in GHz.
/// `coupling_ghz[j]` is the bond between sites j+1 and j+2 (0-based storage).
struct SiteParams {
  std::vector<double> bias_ghz;
  std::vector<double> tunneling_ghz;
  std::vector<double> coupling_ghz;

  int n_sites() const { return static_cast<int>(bias_ghz.size()); }
};

/// Chain driven by dc bias currents: transverse-field Ising model with a uniform bulk and weak
/// end bonds/fields. Inputs are linear frequencies in GHz.
struct DcChainConfig {
  int n_sites = 4;
  double coupling_ghz = 5.0;       ///< bulk J, > 0 antiferromagnetic
  double end_bond_ratio = 0.2;     ///< lambda
  double end_field_ratio = 0.02;   ///< lambda_h
  double tunneling_ghz = 4.5;      ///< bulk Delta
  double bias0_ghz = 20.0;         ///< initial bias epsilon_0
  double ramp_rate_ghz = 0.04;     ///< r, control decays as exp(-2 pi r t)

  // Optional per-site overrides. `bias_pattern` multiplies the control epsilon; the tunneling
  // and coupling overrides replace the pattern values outright.
  std::vector<double> bias_pattern;
  std::vector<double> tunneling_override_ghz;
  std::vector<double> coupling_override_ghz;

  void validate() const;
};

/// Chain driven by microwaves at epsilon_j = 0, approximating an XX chain in the rotating frame.
struct MwChainConfig {
  int n_sites = 4;
  double coupling_ghz = 1.0;
  double end_bond_ratio = 0.2;
  double tunneling_ghz = 10.0;
  std::optional<double> drive_freq_ghz;   ///< omega / 2 pi; defaults to 2 Delta
  double drive_amp0_ghz = 2.0;            ///< Omega_0
  double ramp_rate_ghz = 0.02;
  std::vector<double> phases;             ///< phi_j in radians; default pi on odd sites, 0 on even
  std::vector<double> init_bias_ghz;      ///< initialization biases; default -/+100 GHz staggered
  std::vector<double> tunneling_override_ghz;
  bool allow_off_resonance = false;

  void validate() const;

  double drive_freq() const { return drive_freq_ghz.value_or(2.0 * tunneling_ghz); }
  std::vector<double> site_phases() const;
  std::vector<double> site_init_bias() const;
  std::vector<double> site_tunneling() const;
  std::vector<double> site_coupling() const;

  /// 4 Delta > 10 max(Omega_0, J/2).
  bool rwa_valid() const;
};

/// Uniform tunnel-splitting offsets xi_j, each within [-half_width, half_width].
struct DisorderRealization {
  std::vector<double> xi;
  double half_width = 0.0;

  void validate() const;
};

/// Pattern values for the dc chain at control bias `bias_ghz`. Even N only.
SiteParams dc_site_params(const DcChainConfig& cfg, double bias_ghz);

/// -sum_j [eps_j Z_j + Delta_j X_j] + sum_j J_j Z_j Z_{j+1}, in rad/ns. Any N, including odd.
Operator build_ising_chain(const SiteParams& p);

/// Dc-protocol Hamiltonian at control bias `bias_ghz`.
Operator build_dc(const DcChainConfig& cfg, double bias_ghz);

/// Lab-frame driven Hamiltonian at drive amplitude Omega and time t. `bias_ghz` are the static
/// per-site biases (empty means zero, as during the microwave stage).
Operator build_mw_full(const MwChainConfig& cfg, double drive_amp_ghz, double t_ns,
                       std::span<const double> bias_ghz = {});

/// H_0 = -(omega/2) sum_j X_j, rad/ns.
Operator build_h0(double drive_freq_ghz, int n_sites);

/// U_0(t) = exp(-i H_0 t), the product of single-site exp(i (omega t / 2) X).
Operator build_u0(double drive_freq_ghz, double t_ns, int n_sites);

/// Interaction-picture Hamiltonian U_0^dagger H U_0 - H_0, built from its closed-form expansion
/// (static part plus terms oscillating at omega and 2 omega).
Operator build_interaction_picture(const MwChainConfig& cfg, double drive_amp_ghz, double t_ns,
                                   std::span<const double> bias_ghz = {});

/// Rotating-wave effective XX Hamiltonian in the interaction picture.
Operator build_xx_effective(const MwChainConfig& cfg, double drive_amp_ghz);

/// Time-independent part of the interaction picture at zero bias: the XX model plus the
/// detuning residual -sum_j (Delta_j - omega/2) X_j. Equals build_xx_effective at resonance
/// with uniform Delta.
Operator build_rotating_frame_static(const MwChainConfig& cfg, double drive_amp_ghz);

/// Dc disorder: Delta_j -> Delta_j (1 + xi_j), applied on top of the pattern values.
std::vector<double> disordered_tunneling(const DcChainConfig& cfg, const DisorderRealization& real);

/// Mw disorder: Delta_j = Delta (1 + xi_j).
std::vector<double> disordered_tunneling(const MwChainConfig& cfg, const DisorderRealization& real);

DcChainConfig with_disorder(DcChainConfig cfg, const DisorderRealization& real);
MwChainConfig with_disorder(MwChainConfig cfg, const DisorderRealization& real);

/// H_xi = Delta sum_j xi_j X_j, rad/ns.
Operator build_h_xi(double tunneling_ghz, std::span<const double> xi);

}  // namespace fluxlde
