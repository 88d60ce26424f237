#include "fluxlde/spectral.hpp"

#include "fluxlde/metrics.hpp"
#include "fluxlde/parallel.hpp"

#include <cmath>
#include <limits>

namespace fluxlde {

GroundStateResult ground_state(const Operator& h)
{
  const auto eig = eigh(h);
  GroundStateResult out;
  out.energy = eig.values(0);
  out.state = eig.vector(0);
  out.gap = eig.size() > 1 ? std::max(0.0, eig.values(1) - eig.values(0)) : 0.0;
  out.degenerate = eig.size() > 1 && out.gap < degeneracy_tolerance;
  return out;
}

namespace {

void check_grid(std::span<const double> grid)
{
  if (grid.empty())
    throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] < grid[i - 1])
      throw std::invalid_argument("sweep grid must be ascending");
}

SweepRow sweep_point(double control, const Operator& h)
{
  const auto gs = ground_state(h);
  if (gs.degenerate)
    return {control, 0.0, std::numeric_limits<double>::quiet_NaN()};
  return {control, linear(gs.gap), end_to_end_concurrence(gs.state)};
}

}  // namespace

std::vector<SweepRow> sweep_dc_gap_concurrence(const DcChainConfig& cfg, DcSweepVariable var,
                                               std::span<const double> grid)
{
  check_grid(grid);
  cfg.validate();
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    DcChainConfig point = cfg;
    double bias = grid[i];
    if (var == DcSweepVariable::tunneling) {
      point.tunneling_ghz = grid[i];
      bias = 0.0;
    }
    rows[i] = sweep_point(grid[i], build_dc(point, bias));
  });
  return rows;
}

std::vector<SweepRow> sweep_mw_gap_concurrence(const MwChainConfig& cfg, std::span<const double> grid)
{
  check_grid(grid);
  cfg.validate();
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { rows[i] = sweep_point(grid[i], build_xx_effective(cfg, grid[i])); });
  return rows;
}

std::vector<double> linspace(double from, double to, int points)
{
  if (points < 1)
    throw std::invalid_argument("linspace: need at least one point");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i)
    out[i] = points == 1 ? from : from + (to - from) * static_cast<double>(i) / (points - 1);
  return out;
}

}  // namespace fluxlde
