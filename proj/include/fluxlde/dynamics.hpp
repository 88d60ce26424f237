#pragma once

#include "fluxlde/linalg.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace fluxlde {

/// H(t) = H_static + sum_k c_k(t) H_k. Diagonal H_k are stored as vectors.
class DrivenHamiltonian {
 public:
  using Coefficient = std::function<double(double)>;

  explicit DrivenHamiltonian(Operator static_part);

  void add_term(Coefficient coeff, const Operator& op);

  Eigen::Index dim() const { return static_.rows(); }

  Operator at(double t) const;

  /// out = -i H(t) psi.
  void derivative(double t, const StateVector& psi, StateVector& out) const;

  /// Upper bound on the spectral radius of H(t) (max absolute row sum), rad/ns.
  double norm_bound(double t) const;

 private:
  struct Term {
    Coefficient coeff;
    Operator dense;
    Eigen::VectorXcd diagonal;
    bool is_diagonal = false;
  };

  Operator static_;
  std::vector<Term> terms_;
  mutable StateVector scratch_;
  mutable Eigen::VectorXcd diag_scratch_;
};

enum class IntegratorMethod { rk4, adaptive };

struct IntegratorOptions {
  IntegratorMethod method = IntegratorMethod::rk4;
  /// Fixed-step RK4: step h <= 1 / (steps_per_cycle * nu_max), nu_max the largest linear
  /// frequency (GHz). RK4 loses norm as (h |E|)^6 / 72 per step, so the cycle count sets the
  /// drift budget over a run.
  int steps_per_cycle = 400;
  /// Extra frequency (GHz) that must be resolved besides the energy scale, e.g. omega/pi for
  /// terms oscillating at 2 omega.
  double resolve_frequency_ghz = 0.0;
  /// Adaptive Dormand-Prince: per-step error relative to |psi|.
  double rel_tol = 1e-8;
  double min_step_ns = 1e-12;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double at) : std::runtime_error(what), time_ns(at) {}
  double time_ns;
};

/// Integrates i d/dt psi = H(t) psi from t = 0 and returns the state at each sample time
/// (ascending, >= 0). The state is never renormalized. Throws IntegrationError when the
/// adaptive step underflows.
std::vector<StateVector> evolve(const DrivenHamiltonian& h, const StateVector& psi0,
                                std::span<const double> sample_times, const IntegratorOptions& opts = {});

/// |<phi|psi>|^2.
double instantaneous_fidelity(const StateVector& psi, const StateVector& phi);

/// x(t) = x0 exp(-2 pi r t), x0 and r in GHz, t in ns.
struct RampSchedule {
  double initial_ghz = 0.0;
  double rate_ghz = 0.0;

  double operator()(double t_ns) const;
  /// Time at which the control has decayed by e^-10.
  double default_duration() const;
};

}  // namespace fluxlde
