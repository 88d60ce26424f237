#pragma once

#include "fluxlde/linalg.hpp"

namespace fluxlde {

namespace si {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
}  // namespace si

/// Joint dispersive readout of the end qubits through one resonator.
struct ReadoutParams {
  double inductance_ph = 25.0;     ///< L_q
  double current_ua = 0.25;        ///< I_q, persistent current
  double coupling = 0.01;          ///< kappa
  double noise_temp_k = 5.0;       ///< T_N of the amplifier
  double resonator_ghz = 7.5;      ///< omega_r / 2 pi
  double quality = 75.0;           ///< Q

  /// kappa may be 0 (no coupling); everything else must be positive.
  void validate() const;

  /// L_q I_q^2 in joules.
  double inductive_energy_j() const;
  /// omega_r in rad/s.
  double resonator_rad_per_s() const;
};

/// R_ge = |<g|Z_a|e> - <g|Z_b|e>|^2 written out as the four-term matrix-element sum.
/// g and e must be unit-norm and orthogonal to 1e-8; sites are 1-based.
double r_ge(const StateVector& g, const StateVector& e, int site_a, int site_b);

/// Relative resonator shift kappa^2 R_ge L_q I_q^2 / (hbar Delta E), Delta E in rad/ns.
double dispersive_shift(const ReadoutParams& p, double r_ge_value, double gap_rad_per_ns);

/// Order-of-magnitude estimate max{ k_B T_N / (L_q I_q^2) / (kappa^2 Q^2 omega_r), Q / omega_r }
/// in ns. Infinite when kappa = 0.
double measurement_time(const ReadoutParams& p, double quality);
inline double measurement_time(const ReadoutParams& p) { return measurement_time(p, p.quality); }

/// Q at which the two branches of measurement_time cross: Q^3 = k_B T_N / (L_q I_q^2 kappa^2).
double crossover_q(const ReadoutParams& p);

/// Integer Q in [q_min, q_max] minimizing measurement_time. Throws std::domain_error when the
/// minimum sits on the range boundary (the range does not bracket the crossover).
int optimal_q(const ReadoutParams& p, int q_min = 1, int q_max = 10000);

}  // namespace fluxlde
