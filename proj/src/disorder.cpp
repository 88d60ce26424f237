#include "fluxlde/disorder.hpp"

#include "fluxlde/metrics.hpp"
#include "fluxlde/parallel.hpp"
#include "fluxlde/spectral.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace fluxlde {

void DisorderStudyConfig::validate() const
{
  if (!(half_width >= 0.0))
    throw std::invalid_argument("delta_xi must be >= 0");
  if (realizations < 1)
    throw std::invalid_argument("realizations must be >= 1");
  if (t_final_ns && !(*t_final_ns >= 0.0))
    throw std::invalid_argument("t_final must be >= 0");
  std::visit([](const auto& c) { c.validate(); }, base);
}

DisorderRealization sample_xi(double half_width, int n_sites, std::uint64_t seed, std::uint64_t index)
{
  if (half_width < 0.0)
    throw std::invalid_argument("sample_xi: half-width must be >= 0");
  // One independent stream per (seed, index); seed_seq and mt19937_64 are fully specified by
  // the standard, so the draws are identical on every platform.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 engine(seq);

  DisorderRealization out;
  out.half_width = half_width;
  out.xi.resize(n_sites);
  for (auto& x : out.xi) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;  // [0, 1)
    x = half_width * (2.0 * u - 1.0);
  }
  return out;
}

namespace {

using ConcurrenceOf = std::function<double(const DisorderRealization&)>;

double gs_concurrence_or_nan(const Operator& h)
{
  const auto gs = ground_state(h);
  return gs.degenerate ? std::numeric_limits<double>::quiet_NaN() : end_to_end_concurrence(gs.state);
}

DisorderStudyResult run_study(const DisorderStudyConfig& cfg, int n_sites, const ConcurrenceOf& concurrence_of)
{
  DisorderStudyResult out;
  out.config = cfg;
  out.baseline = concurrence_of(DisorderRealization{std::vector<double>(n_sites, 0.0), 0.0});
  out.realizations.resize(cfg.realizations);

  parallel_for(out.realizations.size(), [&](std::size_t i) {
    auto real = sample_xi(cfg.half_width, n_sites, cfg.seed, i);
    auto& slot = out.realizations[i];
    slot.index = static_cast<int>(i);
    slot.concurrence = concurrence_of(real);
    slot.included = !std::isnan(slot.concurrence);
    slot.xi = std::move(real.xi);
  });

  // Deterministic reduction in index order.
  double sum = 0.0;
  int included = 0;
  for (const auto& r : out.realizations) {
    if (!r.included) {
      ++out.excluded_count;
      continue;
    }
    sum += r.concurrence;
    ++included;
    if (out.min_index < 0 || r.concurrence < out.realizations[out.min_index].concurrence)
      out.min_index = r.index;
    if (out.max_index < 0 || r.concurrence > out.realizations[out.max_index].concurrence)
      out.max_index = r.index;
  }
  if (included == 0)
    throw std::runtime_error("disorder study: every realization was degenerate");
  out.mean = sum / included;
  return out;
}

double final_time(const DisorderStudyConfig& cfg, const RampSchedule& ramp)
{
  return cfg.t_final_ns.value_or(ramp.default_duration());
}

}  // namespace

DisorderStudyResult run_disorder_study_dc(const DisorderStudyConfig& cfg)
{
  cfg.validate();
  if (cfg.protocol() != Protocol::dc)
    throw std::invalid_argument("run_disorder_study_dc: study is not configured for the dc protocol");
  const auto& base = std::get<DcChainConfig>(cfg.base);
  const RampSchedule ramp{base.bias0_ghz, base.ramp_rate_ghz};
  const double bias = ramp(final_time(cfg, ramp));
  return run_study(cfg, base.n_sites, [&](const DisorderRealization& real) {
    return gs_concurrence_or_nan(build_dc(with_disorder(base, real), bias));
  });
}

DisorderStudyResult run_disorder_study_mw(const DisorderStudyConfig& cfg)
{
  cfg.validate();
  if (cfg.protocol() != Protocol::mw)
    throw std::invalid_argument("run_disorder_study_mw: study is not configured for the mw protocol");
  const auto& base = std::get<MwChainConfig>(cfg.base);
  const RampSchedule ramp{base.drive_amp0_ghz, base.ramp_rate_ghz};
  const Operator h_eff = build_xx_effective(base, ramp(final_time(cfg, ramp)));
  return run_study(cfg, base.n_sites, [&](const DisorderRealization& real) {
    return gs_concurrence_or_nan(h_eff + build_h_xi(base.tunneling_ghz, real.xi));
  });
}

DisorderStudyResult run_disorder_study(const DisorderStudyConfig& cfg)
{
  return cfg.protocol() == Protocol::dc ? run_disorder_study_dc(cfg) : run_disorder_study_mw(cfg);
}

ExtremeTraces evolve_extremes(const DisorderStudyResult& study, const ProtocolOptions& opts)
{
  const auto& cfg = study.config;
  auto run = [&](int index) {
    const DisorderRealization real{study.realizations.at(index).xi, cfg.half_width};
    if (cfg.protocol() == Protocol::dc)
      return run_protocol_dc(with_disorder(std::get<DcChainConfig>(cfg.base), real), opts);
    return run_protocol_mw(with_disorder(std::get<MwChainConfig>(cfg.base), real), MwModel::full, opts);
  };
  ExtremeTraces out;
  std::vector<EvolutionTrace> traces(2);
  parallel_for(2, [&](std::size_t k) { traces[k] = run(k == 0 ? study.min_index : study.max_index); });
  out.min = std::move(traces[0]);
  out.max = std::move(traces[1]);
  return out;
}

}  // namespace fluxlde
