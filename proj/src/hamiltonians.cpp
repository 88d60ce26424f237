#include "fluxlde/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fluxlde {

namespace {

void check_sites(int n)
{
  if (n < 2 || n > max_sites)
    throw std::invalid_argument("n_sites must be in [2, " + std::to_string(max_sites) + "], got " +
                                std::to_string(n));
}

void check_length(const std::vector<double>& v, std::size_t expected, const char* what)
{
  if (!v.empty() && v.size() != expected)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                " entries, got " + std::to_string(v.size()));
}

// (-1)^j for 1-based site j: antiferromagnetic stagger with site 1 negative.
double stagger(int site) { return site % 2 == 0 ? 1.0 : -1.0; }

bool is_end(int site, int n) { return site == 1 || site == n; }

// Weak end bonds lambda J, uniform bulk J.
std::vector<double> pattern_couplings(int n, double j_ghz, double lambda)
{
  std::vector<double> out(n - 1, j_ghz);
  out.front() = lambda * j_ghz;
  out.back() = lambda * j_ghz;
  return out;
}

Operator zz(int a, int b, int n)
{
  return embed_site(sigma_z(), a, n) * embed_site(sigma_z(), b, n);
}

Operator yy(int a, int b, int n)
{
  return embed_site(sigma_y(), a, n) * embed_site(sigma_y(), b, n);
}

}  // namespace

void DcChainConfig::validate() const
{
  check_sites(n_sites);
  if (!(coupling_ghz > 0.0))
    throw std::invalid_argument("J must be > 0 (antiferromagnetic)");
  if (!(end_bond_ratio > 0.0 && end_bond_ratio <= 1.0))
    throw std::invalid_argument("lambda must be in (0, 1]");
  if (!(end_field_ratio > 0.0 && end_field_ratio <= 1.0))
    throw std::invalid_argument("lambda_h must be in (0, 1]");
  if (!(ramp_rate_ghz > 0.0))
    throw std::invalid_argument("ramp rate r must be > 0");
  check_length(bias_pattern, n_sites, "bias_pattern");
  check_length(tunneling_override_ghz, n_sites, "tunneling override");
  check_length(coupling_override_ghz, n_sites - 1, "coupling override");
}

void MwChainConfig::validate() const
{
  check_sites(n_sites);
  if (n_sites % 2 != 0)
    throw std::invalid_argument("odd chains have a degenerate ground state; n_sites must be even");
  if (!(coupling_ghz > 0.0))
    throw std::invalid_argument("J must be > 0 (antiferromagnetic)");
  if (!(end_bond_ratio > 0.0 && end_bond_ratio <= 1.0))
    throw std::invalid_argument("lambda must be in (0, 1]");
  if (!(tunneling_ghz > 0.0))
    throw std::invalid_argument("Delta must be > 0");
  if (!(ramp_rate_ghz > 0.0))
    throw std::invalid_argument("ramp rate r must be > 0");
  if (drive_amp0_ghz < 0.0)
    throw std::invalid_argument("Omega_0 must be >= 0");
  if (!allow_off_resonance && std::abs(drive_freq() - 2.0 * tunneling_ghz) > 1e-12 * tunneling_ghz)
    throw std::invalid_argument("drive frequency must equal 2 Delta unless off-resonance is allowed");
  check_length(phases, n_sites, "phases");
  check_length(init_bias_ghz, n_sites, "init biases");
  check_length(tunneling_override_ghz, n_sites, "tunneling override");
}

std::vector<double> MwChainConfig::site_phases() const
{
  if (!phases.empty())
    return phases;
  std::vector<double> out(n_sites);
  for (int j = 1; j <= n_sites; ++j)
    out[j - 1] = j % 2 == 1 ? std::numbers::pi : 0.0;
  return out;
}

std::vector<double> MwChainConfig::site_init_bias() const
{
  if (!init_bias_ghz.empty())
    return init_bias_ghz;
  std::vector<double> out(n_sites);
  for (int j = 1; j <= n_sites; ++j)
    out[j - 1] = 100.0 * stagger(j);
  return out;
}

std::vector<double> MwChainConfig::site_tunneling() const
{
  if (!tunneling_override_ghz.empty())
    return tunneling_override_ghz;
  return std::vector<double>(n_sites, tunneling_ghz);
}

std::vector<double> MwChainConfig::site_coupling() const
{
  return pattern_couplings(n_sites, coupling_ghz, end_bond_ratio);
}

bool MwChainConfig::rwa_valid() const
{
  return 4.0 * tunneling_ghz > 10.0 * std::max(drive_amp0_ghz, coupling_ghz / 2.0);
}

void DisorderRealization::validate() const
{
  if (half_width < 0.0)
    throw std::invalid_argument("disorder half-width must be >= 0");
  for (double x : xi)
    if (std::abs(x) > half_width)
      throw std::invalid_argument("disorder offset outside [-half_width, half_width]");
}

SiteParams dc_site_params(const DcChainConfig& cfg, double bias_ghz)
{
  cfg.validate();
  const int n = cfg.n_sites;
  if (n % 2 != 0)
    throw std::invalid_argument("odd chains have a degenerate ground state; n_sites must be even");

  SiteParams p;
  p.bias_ghz.resize(n);
  p.tunneling_ghz.resize(n);
  for (int j = 1; j <= n; ++j) {
    const double scale = is_end(j, n) ? cfg.end_field_ratio : 1.0;
    const double pattern = cfg.bias_pattern.empty() ? scale * stagger(j) : cfg.bias_pattern[j - 1];
    p.bias_ghz[j - 1] = pattern * bias_ghz;
    p.tunneling_ghz[j - 1] = cfg.tunneling_override_ghz.empty() ? scale * cfg.tunneling_ghz
                                                                : cfg.tunneling_override_ghz[j - 1];
  }
  p.coupling_ghz = cfg.coupling_override_ghz.empty()
                       ? pattern_couplings(n, cfg.coupling_ghz, cfg.end_bond_ratio)
                       : cfg.coupling_override_ghz;
  return p;
}

Operator build_ising_chain(const SiteParams& p)
{
  const int n = p.n_sites();
  check_sites(n);
  if (static_cast<int>(p.tunneling_ghz.size()) != n || static_cast<int>(p.coupling_ghz.size()) != n - 1)
    throw std::invalid_argument("build_ising_chain: inconsistent site array lengths");

  Operator h = Operator::Zero(chain_dim(n), chain_dim(n));
  for (int j = 1; j <= n; ++j) {
    h -= angular(p.bias_ghz[j - 1]) * embed_site(sigma_z(), j, n);
    h -= angular(p.tunneling_ghz[j - 1]) * embed_site(sigma_x(), j, n);
  }
  for (int j = 1; j < n; ++j)
    h += angular(p.coupling_ghz[j - 1]) * zz(j, j + 1, n);
  return h;
}

Operator build_dc(const DcChainConfig& cfg, double bias_ghz)
{
  return build_ising_chain(dc_site_params(cfg, bias_ghz));
}

Operator build_mw_full(const MwChainConfig& cfg, double drive_amp_ghz, double t_ns,
                       std::span<const double> bias_ghz)
{
  cfg.validate();
  const int n = cfg.n_sites;
  SiteParams p;
  p.bias_ghz.assign(n, 0.0);
  if (!bias_ghz.empty()) {
    if (static_cast<int>(bias_ghz.size()) != n)
      throw std::invalid_argument("build_mw_full: bias array length mismatch");
    p.bias_ghz.assign(bias_ghz.begin(), bias_ghz.end());
  }
  p.tunneling_ghz = cfg.site_tunneling();
  p.coupling_ghz = cfg.site_coupling();
  Operator h = build_ising_chain(p);

  const double omega = angular(cfg.drive_freq());
  const auto phases = cfg.site_phases();
  for (int j = 1; j <= n; ++j)
    h -= 2.0 * angular(drive_amp_ghz) * std::cos(omega * t_ns + phases[j - 1]) * embed_site(sigma_z(), j, n);
  return h;
}

Operator build_h0(double drive_freq_ghz, int n_sites)
{
  check_sites(n_sites);
  Operator h = Operator::Zero(chain_dim(n_sites), chain_dim(n_sites));
  for (int j = 1; j <= n_sites; ++j)
    h -= 0.5 * angular(drive_freq_ghz) * embed_site(sigma_x(), j, n_sites);
  return h;
}

Operator build_u0(double drive_freq_ghz, double t_ns, int n_sites)
{
  if (n_sites < 1 || n_sites > max_sites)
    throw std::invalid_argument("build_u0: n_sites out of range");
  const double half_angle = 0.5 * angular(drive_freq_ghz) * t_ns;
  const Operator single = std::cos(half_angle) * identity2() + cplx{0.0, std::sin(half_angle)} * sigma_x();
  Operator u = single;
  for (int j = 2; j <= n_sites; ++j)
    u = kron(u, single);
  return u;
}

Operator build_interaction_picture(const MwChainConfig& cfg, double drive_amp_ghz, double t_ns,
                                   std::span<const double> bias_ghz)
{
  const int n = cfg.n_sites;
  Operator h = build_rotating_frame_static(cfg, drive_amp_ghz);

  // Under U_0: Z -> cos(wt) Z - sin(wt) Y.
  const double wt = angular(cfg.drive_freq()) * t_ns;
  const double amp = angular(drive_amp_ghz);
  const auto phases = cfg.site_phases();
  const auto coupling = cfg.site_coupling();
  if (!bias_ghz.empty() && static_cast<int>(bias_ghz.size()) != n)
    throw std::invalid_argument("build_interaction_picture: bias array length mismatch");

  for (int j = 1; j <= n; ++j) {
    const Operator z = embed_site(sigma_z(), j, n);
    const Operator y = embed_site(sigma_y(), j, n);
    const double phi = phases[j - 1];
    h -= amp * std::cos(2.0 * wt + phi) * z;
    h += amp * std::sin(2.0 * wt + phi) * y;
    if (!bias_ghz.empty()) {
      const double eps = angular(bias_ghz[j - 1]);
      h -= eps * (std::cos(wt) * z - std::sin(wt) * y);
    }
  }
  for (int j = 1; j < n; ++j) {
    const double half_j = 0.5 * angular(coupling[j - 1]);
    const Operator zy = embed_site(sigma_z(), j, n) * embed_site(sigma_y(), j + 1, n);
    const Operator yz = embed_site(sigma_y(), j, n) * embed_site(sigma_z(), j + 1, n);
    h += half_j * std::cos(2.0 * wt) * (zz(j, j + 1, n) - yy(j, j + 1, n));
    h -= half_j * std::sin(2.0 * wt) * (zy + yz);
  }
  return h;
}

Operator build_xx_effective(const MwChainConfig& cfg, double drive_amp_ghz)
{
  cfg.validate();
  const int n = cfg.n_sites;
  const double amp = angular(drive_amp_ghz);
  const auto phases = cfg.site_phases();
  const auto coupling = cfg.site_coupling();

  Operator h = Operator::Zero(chain_dim(n), chain_dim(n));
  for (int j = 1; j <= n; ++j) {
    const double phi = phases[j - 1];
    h -= amp * (std::cos(phi) * embed_site(sigma_z(), j, n) + std::sin(phi) * embed_site(sigma_y(), j, n));
  }
  for (int j = 1; j < n; ++j)
    h += 0.5 * angular(coupling[j - 1]) * (yy(j, j + 1, n) + zz(j, j + 1, n));
  return h;
}

Operator build_rotating_frame_static(const MwChainConfig& cfg, double drive_amp_ghz)
{
  Operator h = build_xx_effective(cfg, drive_amp_ghz);
  const auto tunneling = cfg.site_tunneling();
  const double half_drive = 0.5 * cfg.drive_freq();
  for (int j = 1; j <= cfg.n_sites; ++j) {
    const double detuning = tunneling[j - 1] - half_drive;
    if (detuning != 0.0)
      h -= angular(detuning) * embed_site(sigma_x(), j, cfg.n_sites);
  }
  return h;
}

std::vector<double> disordered_tunneling(const DcChainConfig& cfg, const DisorderRealization& real)
{
  real.validate();
  if (static_cast<int>(real.xi.size()) != cfg.n_sites)
    throw std::invalid_argument("disorder realization length does not match n_sites");
  auto tunneling = dc_site_params(cfg, 0.0).tunneling_ghz;
  for (int j = 0; j < cfg.n_sites; ++j)
    tunneling[j] *= 1.0 + real.xi[j];
  return tunneling;
}

std::vector<double> disordered_tunneling(const MwChainConfig& cfg, const DisorderRealization& real)
{
  real.validate();
  if (static_cast<int>(real.xi.size()) != cfg.n_sites)
    throw std::invalid_argument("disorder realization length does not match n_sites");
  std::vector<double> tunneling(cfg.n_sites);
  for (int j = 0; j < cfg.n_sites; ++j)
    tunneling[j] = cfg.tunneling_ghz * (1.0 + real.xi[j]);
  return tunneling;
}

DcChainConfig with_disorder(DcChainConfig cfg, const DisorderRealization& real)
{
  cfg.tunneling_override_ghz = disordered_tunneling(cfg, real);
  return cfg;
}

MwChainConfig with_disorder(MwChainConfig cfg, const DisorderRealization& real)
{
  // The drive stays at the nominal 2 Delta while the splittings move.
  cfg.drive_freq_ghz = cfg.drive_freq();
  cfg.tunneling_override_ghz = disordered_tunneling(cfg, real);
  return cfg;
}

Operator build_h_xi(double tunneling_ghz, std::span<const double> xi)
{
  const int n = static_cast<int>(xi.size());
  check_sites(n);
  Operator h = Operator::Zero(chain_dim(n), chain_dim(n));
  for (int j = 1; j <= n; ++j)
    if (xi[j - 1] != 0.0)
      h += angular(tunneling_ghz) * xi[j - 1] * embed_site(sigma_x(), j, n);
  return h;
}

}  // namespace fluxlde
