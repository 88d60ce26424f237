#include "fluxlde/readout.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fluxlde {

void ReadoutParams::validate() const
{
  if (!(inductance_ph > 0.0 && current_ua > 0.0 && noise_temp_k > 0.0 && resonator_ghz > 0.0 && quality > 0.0))
    throw std::invalid_argument("readout parameters L_q, I_q, T_N, omega_r and Q must be positive");
  if (!(coupling >= 0.0))
    throw std::invalid_argument("readout coupling kappa must be >= 0");
}

double ReadoutParams::inductive_energy_j() const
{
  const double current_a = current_ua * 1e-6;
  return inductance_ph * 1e-12 * current_a * current_a;
}

double ReadoutParams::resonator_rad_per_s() const { return angular(resonator_ghz) * 1e9; }

double r_ge(const StateVector& g, const StateVector& e, int site_a, int site_b)
{
  if (g.size() != e.size())
    throw std::invalid_argument("r_ge: state dimensions differ");
  if (std::abs(g.norm() - 1.0) > 1e-8 || std::abs(e.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("r_ge: states must be normalized");
  if (std::abs(g.dot(e)) > 1e-8)
    throw std::invalid_argument("r_ge: ground and excited states must be orthogonal");
  const int n = sites_from_dim(g.size());
  if (site_a == site_b)
    throw std::invalid_argument("r_ge: sites must differ");

  const Operator za = embed_site(sigma_z(), site_a, n);
  const Operator zb = embed_site(sigma_z(), site_b, n);
  const cplx ga_e = g.dot(za * e), ea_g = e.dot(za * g);
  const cplx gb_e = g.dot(zb * e), eb_g = e.dot(zb * g);
  const cplx value = ga_e * ea_g + gb_e * eb_g - ga_e * eb_g - gb_e * ea_g;
  if (std::abs(value.imag()) > 1e-10)
    throw std::runtime_error("r_ge: matrix element is not real (imaginary part " + std::to_string(value.imag()) + ")");
  return value.real();
}

double dispersive_shift(const ReadoutParams& p, double r_ge_value, double gap_rad_per_ns)
{
  p.validate();
  if (!(gap_rad_per_ns > 0.0))
    throw std::invalid_argument("dispersive_shift: energy gap must be > 0");
  const double gap_j = si::hbar * gap_rad_per_ns * 1e9;
  return p.coupling * p.coupling * r_ge_value * p.inductive_energy_j() / gap_j;
}

double measurement_time(const ReadoutParams& p, double quality)
{
  p.validate();
  if (!(quality > 0.0))
    throw std::invalid_argument("measurement_time: Q must be > 0");
  const double omega_r = p.resonator_rad_per_s();
  const double ringdown_s = quality / omega_r;
  if (p.coupling == 0.0)
    return std::numeric_limits<double>::infinity();
  const double noise_ratio = si::k_boltzmann * p.noise_temp_k / p.inductive_energy_j();
  const double noise_s = noise_ratio / (p.coupling * p.coupling * quality * quality * omega_r);
  return std::max(noise_s, ringdown_s) * 1e9;
}

double crossover_q(const ReadoutParams& p)
{
  p.validate();
  if (p.coupling == 0.0)
    return std::numeric_limits<double>::infinity();
  return std::cbrt(si::k_boltzmann * p.noise_temp_k / (p.inductive_energy_j() * p.coupling * p.coupling));
}

int optimal_q(const ReadoutParams& p, int q_min, int q_max)
{
  if (q_min < 1 || q_max <= q_min)
    throw std::invalid_argument("optimal_q: need 1 <= q_min < q_max");
  if (p.coupling == 0.0)
    throw std::domain_error("optimal_q: no minimum without qubit-resonator coupling");
  int best = q_min;
  double best_time = measurement_time(p, q_min);
  for (int q = q_min + 1; q <= q_max; ++q) {
    const double t = measurement_time(p, q);
    if (t < best_time) {
      best = q;
      best_time = t;
    }
  }
  if (best == q_min || best == q_max)
    throw std::domain_error("optimal_q: range [" + std::to_string(q_min) + ", " + std::to_string(q_max) +
                            "] does not bracket the minimum");
  return best;
}

}  // namespace fluxlde
