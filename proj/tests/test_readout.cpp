#include <doctest.h>

#include "fluxlde/readout.hpp"
#include "fluxlde/spectral.hpp"

#include <cmath>

using namespace fluxlde;

namespace {

StateVector basis(Eigen::Index k)
{
  StateVector v = StateVector::Zero(16);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("default parameters give a nanosecond-scale measurement near Q = 75")
{
  const ReadoutParams p;
  CHECK(p.inductive_energy_j() == doctest::Approx(1.5625e-24));
  CHECK(crossover_q(p) == doctest::Approx(76.163).epsilon(1e-4));
  const int q = optimal_q(p);
  CHECK(q >= 70);
  CHECK(q <= 80);
  CHECK(measurement_time(p, q) == doctest::Approx(1.62).epsilon(0.01));
}

TEST_CASE("measurement time branches")
{
  const ReadoutParams p;
  const double low = measurement_time(p, 10.0);
  const double high = measurement_time(p, 1000.0);
  // Below the crossover the noise branch dominates and falls as 1/Q^2; above it t = Q / omega_r.
  CHECK(low == doctest::Approx(si::k_boltzmann * 5.0 / (1.5625e-24 * 1e-4 * 100.0 * p.resonator_rad_per_s()) * 1e9));
  CHECK(high == doctest::Approx(1000.0 / p.resonator_rad_per_s() * 1e9));
  ReadoutParams off = p;
  off.coupling = 0.0;
  CHECK(std::isinf(measurement_time(off)));
  CHECK_THROWS_AS(optimal_q(off), std::domain_error);
}

TEST_CASE("optimal Q scales with noise temperature and coupling")
{
  ReadoutParams p;
  const double base = crossover_q(p);
  ReadoutParams hot = p;
  hot.noise_temp_k *= 8.0;
  CHECK(crossover_q(hot) == doctest::Approx(2.0 * base));
  ReadoutParams strong = p;
  strong.coupling *= 2.0;
  CHECK(crossover_q(strong) == doctest::Approx(base / std::pow(2.0, 2.0 / 3.0)));
  CHECK(std::abs(optimal_q(hot) - 2.0 * base) <= 1.0);
}

TEST_CASE("optimal Q must be bracketed by the scan range")
{
  CHECK_THROWS_AS(optimal_q(ReadoutParams{}, 1, 50), std::domain_error);
  CHECK_THROWS_AS(optimal_q(ReadoutParams{}, 100, 200), std::domain_error);
}

TEST_CASE("parameter validation")
{
  ReadoutParams p;
  p.inductance_ph = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.coupling = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.coupling = 0.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("R_ge on computational states")
{
  // |RRRR> and |LRRR> differ on site 1: <g|Z_1|e> = 0 because they are orthogonal.
  CHECK(r_ge(basis(0), basis(8), 1, 4) == doctest::Approx(0.0));
  // Superpositions: g, e = (|RRRR> +/- |LRRL>)/sqrt2 give <g|Z_1|e> = <g|Z_4|e> = 1, so R_ge = 0.
  const StateVector g = (basis(0) + basis(9)) / std::sqrt(2.0);
  const StateVector e = (basis(0) - basis(9)) / std::sqrt(2.0);
  CHECK(r_ge(g, e, 1, 4) == doctest::Approx(0.0).epsilon(1e-12));
  // (|RRRR> +/- |LRRR>)/sqrt2: <g|Z_1|e> = 1, <g|Z_4|e> = 0, so R_ge = 1.
  const StateVector g1 = (basis(0) + basis(8)) / std::sqrt(2.0);
  const StateVector e1 = (basis(0) - basis(8)) / std::sqrt(2.0);
  CHECK(r_ge(g1, e1, 1, 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(r_ge(g1, g1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(r_ge(2.0 * g1, e1, 1, 4), std::invalid_argument);
}

TEST_CASE("dispersive shift of the dc chain")
{
  const auto e = eigh(build_dc(DcChainConfig{}, 0.0));
  const double gap = e.values(1) - e.values(0);
  const double r = r_ge(e.vector(0), e.vector(1), 1, 4);
  CHECK(r > 0.0);
  const double shift = dispersive_shift(ReadoutParams{}, r, gap);
  const double expected = 1e-4 * r * 1.5625e-24 / (si::hbar * gap * 1e9);
  CHECK(shift == doctest::Approx(expected));
}
