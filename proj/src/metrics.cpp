#include "fluxlde/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace fluxlde {

double DensityDiagnostics::worst() const
{
  return std::max({hermiticity_residual, trace_deviation, std::max(0.0, -min_eigenvalue)});
}

TwoQubitDensityMatrix partial_trace_pair(const StateVector& psi, int site_a, int site_b)
{
  const int n = sites_from_dim(psi.size());
  if (site_a < 1 || site_b > n || site_a >= site_b)
    throw std::out_of_range("partial_trace_pair: need 1 <= a < b <= " + std::to_string(n));

  // Bit positions counted from the least significant end.
  const int bit_a = n - site_a;
  const int bit_b = n - site_b;
  const Eigen::Index mask = (Eigen::Index{1} << bit_a) | (Eigen::Index{1} << bit_b);

  TwoQubitDensityMatrix rho = TwoQubitDensityMatrix::Zero();
  for (Eigen::Index env = 0; env < psi.size(); ++env) {
    if (env & mask)
      continue;
    std::array<cplx, 4> amp;
    for (int k = 0; k < 4; ++k) {
      Eigen::Index idx = env;
      if (k & 2)
        idx |= Eigen::Index{1} << bit_a;
      if (k & 1)
        idx |= Eigen::Index{1} << bit_b;
      amp[k] = psi(idx);
    }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        rho(r, c) += amp[r] * std::conj(amp[c]);
  }
  return rho;
}

DensityDiagnostics validate_density_matrix(const TwoQubitDensityMatrix& rho)
{
  DensityDiagnostics d;
  d.hermiticity_residual = hermiticity_residual(rho);
  d.trace_deviation = std::abs(rho.trace() - cplx{1.0, 0.0});
  const TwoQubitDensityMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<TwoQubitDensityMatrix> solver(sym, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

double concurrence(const TwoQubitDensityMatrix& rho, double tol)
{
  const auto diag = validate_density_matrix(rho);
  if (!diag.passes(tol))
    throw InvalidDensityMatrix("concurrence: input is not a valid density matrix (worst violation " +
                                   std::to_string(diag.worst()) + ")",
                               diag);

  // With rho = F F^dagger, the spectrum of rho rho~ is that of t^dagger t for t = F^T (Y⊗Y) F, so
  // the l_i are the singular values of t. Taking square roots of tiny eigenvalues of rho rho~
  // instead would turn 1e-16 round-off into 1e-8 errors on nearly pure states.
  const TwoQubitDensityMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<TwoQubitDensityMatrix> eig(sym);
  const Eigen::Vector4d weights = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd factor = eig.eigenvectors() * weights.cast<cplx>().asDiagonal();
  const Eigen::Matrix4cd yy = kron(sigma_y(), sigma_y());
  const Eigen::Matrix4cd t = factor.transpose() * yy * factor;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(t);

  // Singular values come sorted in decreasing order.
  const Eigen::Vector4d lambda = svd.singularValues();
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

TwoQubitDensityMatrix end_pair_state(const StateVector& psi)
{
  const int n = sites_from_dim(psi.size());
  return partial_trace_pair(psi / psi.norm(), 1, n);
}

double end_to_end_concurrence(const StateVector& psi) { return concurrence(end_pair_state(psi)); }

}  // namespace fluxlde
