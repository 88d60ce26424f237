#include "fluxlde/protocols.hpp"

#include "fluxlde/metrics.hpp"
#include "fluxlde/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace fluxlde {

double EvolutionTrace::min_fidelity() const
{
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : rows)
    if (!std::isnan(r.fidelity))
      m = std::min(m, r.fidelity);
  return m;
}

double EvolutionTrace::max_concurrence() const
{
  double m = 0.0;
  for (const auto& r : rows)
    m = std::max(m, r.concurrence);
  return m;
}

double EvolutionTrace::max_norm_error() const
{
  double m = 0.0;
  for (const auto& r : rows)
    m = std::max(m, r.norm_error);
  return m;
}

std::vector<double> sample_grid(double t_final_ns, int n_samples)
{
  if (!(t_final_ns >= 0.0))
    throw std::invalid_argument("t_final must be >= 0");
  if (n_samples < 1)
    throw std::invalid_argument("n_samples must be >= 1");
  if (t_final_ns == 0.0)
    return {0.0};
  std::vector<double> grid(n_samples + 1);
  for (int i = 0; i <= n_samples; ++i)
    grid[i] = t_final_ns * static_cast<double>(i) / n_samples;
  grid.back() = t_final_ns;
  return grid;
}

namespace {

double resolve_duration(const ProtocolOptions& opts, const RampSchedule& ramp)
{
  return std::isnan(opts.t_final_ns) ? ramp.default_duration() : opts.t_final_ns;
}

// Fills the state-derived columns and tracks density-matrix hygiene.
void record(EvolutionTrace& trace, TraceRow row, const StateVector& psi, const GroundStateResult& gs,
            const StateVector& reference)
{
  const auto rho = end_pair_state(psi);
  trace.worst_density_violation = std::max(trace.worst_density_violation, validate_density_matrix(rho).worst());
  row.concurrence = concurrence(rho);
  row.norm_error = std::abs(psi.norm() - 1.0);
  if (gs.degenerate) {
    row.fidelity = std::numeric_limits<double>::quiet_NaN();
    row.gs_concurrence = std::numeric_limits<double>::quiet_NaN();
  } else {
    row.fidelity = instantaneous_fidelity(psi, reference);
    row.gs_concurrence = end_to_end_concurrence(gs.state);
  }
  trace.rows.push_back(row);
}

}  // namespace

EvolutionTrace run_protocol_dc(const DcChainConfig& cfg, const ProtocolOptions& opts)
{
  cfg.validate();
  const RampSchedule ramp{cfg.bias0_ghz, cfg.ramp_rate_ghz};
  const auto times = sample_grid(resolve_duration(opts, ramp), opts.n_samples);

  EvolutionTrace trace;
  if (std::abs(cfg.bias0_ghz) < 2.0 * cfg.tunneling_ghz)
    trace.warnings.push_back("initial bias is not much larger than Delta; the initial state is not polarized");

  // build_dc is affine in epsilon.
  const Operator h_zero = build_dc(cfg, 0.0);
  const Operator h_slope = build_dc(cfg, 1.0) - h_zero;
  DrivenHamiltonian h(h_zero);
  h.add_term(ramp, h_slope);

  const auto initial = ground_state(build_dc(cfg, ramp(0.0)));
  if (initial.degenerate)
    trace.warnings.push_back("initial ground state is degenerate");
  const auto states = evolve(h, initial.state, times, opts.integrator);

  for (std::size_t i = 0; i < times.size(); ++i) {
    const double bias = ramp(times[i]);
    const auto gs = ground_state(build_dc(cfg, bias));
    record(trace, TraceRow{times[i], bias}, states[i], gs, gs.state);
  }
  return trace;
}

EvolutionTrace run_protocol_mw(const MwChainConfig& cfg, MwModel model, const ProtocolOptions& opts)
{
  cfg.validate();
  const int n = cfg.n_sites;
  const RampSchedule ramp{cfg.drive_amp0_ghz, cfg.ramp_rate_ghz};
  const auto times = sample_grid(resolve_duration(opts, ramp), opts.n_samples);

  EvolutionTrace trace;
  if (!cfg.rwa_valid())
    trace.warnings.push_back("rotating-wave condition 4 Delta >> Omega_0, J/2 is not satisfied");

  const auto init_bias = cfg.site_init_bias();
  const auto initial = ground_state(build_mw_full(cfg, 0.0, 0.0, init_bias));
  if (initial.degenerate)
    trace.warnings.push_back("initialization ground state is degenerate");

  const Operator static_zero = build_rotating_frame_static(cfg, 0.0);
  const Operator static_slope = build_rotating_frame_static(cfg, 1.0) - static_zero;

  IntegratorOptions integrator = opts.integrator;
  std::vector<StateVector> states;
  if (model == MwModel::effective) {
    DrivenHamiltonian h(static_zero);
    h.add_term(ramp, static_slope);
    states = evolve(h, initial.state, times, integrator);
  } else {
    // Lab frame: static chain plus -2 Omega(t) cos(omega t + phi_j) Z_j.
    DrivenHamiltonian h(build_mw_full(cfg, 0.0, 0.0));
    const double omega = angular(cfg.drive_freq());
    const auto phases = cfg.site_phases();
    for (int j = 1; j <= n; ++j) {
      const double phi = phases[j - 1];
      h.add_term([ramp, omega, phi](double t) { return -2.0 * angular(ramp(t)) * std::cos(omega * t + phi); },
                 embed_site(sigma_z(), j, n));
    }
    integrator.resolve_frequency_ghz = std::max(integrator.resolve_frequency_ghz, 2.0 * cfg.drive_freq());
    states = evolve(h, initial.state, times, integrator);
  }

  for (std::size_t i = 0; i < times.size(); ++i) {
    const double amp = ramp(times[i]);
    const auto gs = ground_state(static_zero + amp * static_slope);
    StateVector reference = gs.state;
    if (model == MwModel::full)
      reference = build_u0(cfg.drive_freq(), times[i], n) * gs.state;
    record(trace, TraceRow{times[i], amp}, states[i], gs, reference);
  }
  return trace;
}

}  // namespace fluxlde
