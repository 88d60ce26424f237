#include "fluxlde/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fluxlde {

DrivenHamiltonian::DrivenHamiltonian(Operator static_part) : static_(std::move(static_part))
{
  if (static_.rows() != static_.cols())
    throw std::invalid_argument("DrivenHamiltonian: static part is not square");
}

void DrivenHamiltonian::add_term(Coefficient coeff, const Operator& op)
{
  if (op.rows() != dim() || op.cols() != dim())
    throw std::invalid_argument("DrivenHamiltonian: term dimension mismatch");
  Term term;
  term.coeff = std::move(coeff);
  const Operator off = op - Operator(op.diagonal().asDiagonal());
  term.is_diagonal = off.cwiseAbs().maxCoeff() == 0.0;
  if (term.is_diagonal)
    term.diagonal = op.diagonal();
  else
    term.dense = op;
  terms_.push_back(std::move(term));
}

Operator DrivenHamiltonian::at(double t) const
{
  Operator h = static_;
  for (const auto& term : terms_) {
    const double c = term.coeff(t);
    if (term.is_diagonal)
      h.diagonal() += c * term.diagonal;
    else
      h += c * term.dense;
  }
  return h;
}

void DrivenHamiltonian::derivative(double t, const StateVector& psi, StateVector& out) const
{
  out.noalias() = static_ * psi;
  bool any_diagonal = false;
  diag_scratch_.setZero(dim());
  for (const auto& term : terms_) {
    const double c = term.coeff(t);
    if (term.is_diagonal) {
      diag_scratch_ += c * term.diagonal;
      any_diagonal = true;
    } else {
      scratch_.noalias() = term.dense * psi;
      out += c * scratch_;
    }
  }
  if (any_diagonal)
    out += diag_scratch_.cwiseProduct(psi);
  out *= cplx{0.0, -1.0};
}

double DrivenHamiltonian::norm_bound(double t) const
{
  return at(t).cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

class Rk4 {
 public:
  explicit Rk4(Eigen::Index dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  void step(const DrivenHamiltonian& h, double t, double dt, StateVector& psi)
  {
    h.derivative(t, psi, k1_);
    tmp_ = psi + (0.5 * dt) * k1_;
    h.derivative(t + 0.5 * dt, tmp_, k2_);
    tmp_ = psi + (0.5 * dt) * k2_;
    h.derivative(t + 0.5 * dt, tmp_, k3_);
    tmp_ = psi + dt * k3_;
    h.derivative(t + dt, tmp_, k4_);
    psi += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  StateVector k1_, k2_, k3_, k4_, tmp_;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class DormandPrince {
 public:
  DormandPrince(Eigen::Index dim, const IntegratorOptions& opts)
      : opts_(opts), k1_(dim), k2_(dim), k3_(dim), k4_(dim), k5_(dim), k6_(dim), k7_(dim), tmp_(dim), next_(dim)
  {
  }

  // Advances psi from t to t_end; `dt` carries the step-size guess across calls.
  void advance(const DrivenHamiltonian& h, double t, double t_end, double& dt, StateVector& psi)
  {
    h.derivative(t, psi, k1_);
    while (t < t_end) {
      const bool last = t + dt >= t_end;
      const double step = last ? t_end - t : dt;
      if (step < opts_.min_step_ns && !last)
        throw IntegrationError("adaptive step underflow at t = " + std::to_string(t) + " ns", t);

      tmp_ = psi + step * a21 * k1_;
      h.derivative(t + c2 * step, tmp_, k2_);
      tmp_ = psi + step * (a31 * k1_ + a32 * k2_);
      h.derivative(t + c3 * step, tmp_, k3_);
      tmp_ = psi + step * (a41 * k1_ + a42 * k2_ + a43 * k3_);
      h.derivative(t + c4 * step, tmp_, k4_);
      tmp_ = psi + step * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
      h.derivative(t + c5 * step, tmp_, k5_);
      tmp_ = psi + step * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
      h.derivative(t + step, tmp_, k6_);
      next_ = psi + step * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
      h.derivative(t + step, next_, k7_);

      const double err =
          (step * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_)).norm() / psi.norm();
      const double ratio = err > 0.0 ? opts_.rel_tol / err : 1e10;
      const double factor = std::clamp(0.9 * std::pow(ratio, 0.2), 0.2, 5.0);
      if (err <= opts_.rel_tol) {
        t = last ? t_end : t + step;
        psi = next_;
        k1_ = k7_;
        if (!last)
          dt = step * factor;
      } else {
        dt = step * factor;
        if (dt < opts_.min_step_ns)
          throw IntegrationError("adaptive step underflow at t = " + std::to_string(t) + " ns", t);
      }
    }
  }

 private:
  IntegratorOptions opts_;
  StateVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, next_;
};

}  // namespace

std::vector<StateVector> evolve(const DrivenHamiltonian& h, const StateVector& psi0,
                                std::span<const double> sample_times, const IntegratorOptions& opts)
{
  if (psi0.size() != h.dim())
    throw std::invalid_argument("evolve: state dimension does not match the Hamiltonian");
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("evolve: initial state is not normalized");
  for (std::size_t i = 0; i < sample_times.size(); ++i)
    if (sample_times[i] < 0.0 || (i > 0 && sample_times[i] < sample_times[i - 1]))
      throw std::invalid_argument("evolve: sample times must be ascending and >= 0");
  if (opts.steps_per_cycle < 1)
    throw std::invalid_argument("evolve: steps_per_cycle must be >= 1");

  std::vector<StateVector> out;
  out.reserve(sample_times.size());
  StateVector psi = psi0;
  double t = 0.0;

  if (opts.method == IntegratorMethod::rk4) {
    double bound = h.norm_bound(0.0);
    for (double s : sample_times)
      bound = std::max(bound, h.norm_bound(s));
    const double nu_max = std::max(linear(bound), opts.resolve_frequency_ghz);
    const double h_max = nu_max > 0.0 ? 1.0 / (opts.steps_per_cycle * nu_max) : 0.0;

    Rk4 rk(h.dim());
    for (double target : sample_times) {
      const double span = target - t;
      if (span > 0.0 && nu_max > 0.0) {
        const auto steps = static_cast<long long>(std::ceil(span / h_max));
        const double dt = span / static_cast<double>(steps);
        for (long long k = 0; k < steps; ++k)
          rk.step(h, t + static_cast<double>(k) * dt, dt, psi);
      }
      t = target;
      out.push_back(psi);
    }
  } else {
    DormandPrince dp(h.dim(), opts);
    const double bound = std::max(h.norm_bound(0.0), angular(opts.resolve_frequency_ghz));
    double dt = bound > 0.0 ? 0.1 / bound : 1.0;
    for (double target : sample_times) {
      if (target > t)
        dp.advance(h, t, target, dt, psi);
      t = target;
      out.push_back(psi);
    }
  }
  return out;
}

double instantaneous_fidelity(const StateVector& psi, const StateVector& phi)
{
  return std::norm(phi.dot(psi));
}

double RampSchedule::operator()(double t_ns) const { return initial_ghz * std::exp(-angular(rate_ghz) * t_ns); }

double RampSchedule::default_duration() const { return 10.0 / angular(rate_ghz); }

}  // namespace fluxlde
