#pragma once

#include "fluxlde/linalg.hpp"

#include <stdexcept>

namespace fluxlde {

/// 4x4 reduced state of a qubit pair; the first site of the pair is the more significant qubit.
using TwoQubitDensityMatrix = Eigen::Matrix4cd;

struct DensityDiagnostics {
  double hermiticity_residual = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;

  /// Largest violation of the three invariants (negativity counts only below zero).
  double worst() const;
  bool passes(double tol) const { return worst() <= tol; }
};

class InvalidDensityMatrix : public std::domain_error {
 public:
  InvalidDensityMatrix(const std::string& what, DensityDiagnostics diag)
      : std::domain_error(what), diagnostics(diag) {}
  DensityDiagnostics diagnostics;
};

/// Reduced density matrix of sites (a, b), 1 <= a < b <= N. The trace equals |psi|^2.
TwoQubitDensityMatrix partial_trace_pair(const StateVector& psi, int site_a, int site_b);

DensityDiagnostics validate_density_matrix(const TwoQubitDensityMatrix& rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the descending square roots of the
/// spectrum of rho * (Y⊗Y) rho^* (Y⊗Y). Throws InvalidDensityMatrix when `rho` violates
/// hermiticity, unit trace or positivity by more than `tol`.
double concurrence(const TwoQubitDensityMatrix& rho, double tol = 1e-9);

/// Reduced state of the two end sites of the normalized `psi`.
TwoQubitDensityMatrix end_pair_state(const StateVector& psi);

/// Concurrence between site 1 and site N of the normalized `psi`.
double end_to_end_concurrence(const StateVector& psi);

}  // namespace fluxlde
