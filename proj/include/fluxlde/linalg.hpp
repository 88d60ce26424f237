#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fluxlde {

using cplx = std::complex<double>;

/// Dense complex operator on the 2^N-dimensional chain space (rad/ns when it is a Hamiltonian).
using Operator = Eigen::MatrixXcd;

/// Pure chain state. Basis index bit for site j is 0 for |R>, 1 for |L>; site 1 is the most
/// significant bit.
using StateVector = Eigen::VectorXcd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Largest chain the dense builders accept (4096-dimensional).
inline constexpr int max_sites = 12;

/// Linear frequency in GHz to angular frequency in rad/ns.
constexpr double angular(double ghz) noexcept { return two_pi * ghz; }

/// Angular frequency in rad/ns to linear frequency in GHz.
constexpr double linear(double rad_per_ns) noexcept { return rad_per_ns / two_pi; }

// Pauli matrices in the (|R>, |L>) basis: sigma_z|R> = +|R>.
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator identity2();

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::kroneckerProduct(a.eval(), b.eval());
  return out;
}

/// Hilbert-space dimension of an n-site chain.
inline Eigen::Index chain_dim(int n_sites) { return Eigen::Index{1} << n_sites; }

/// Number of sites of a chain state/operator of dimension `dim`; throws unless dim is 2^N, N >= 1.
int sites_from_dim(Eigen::Index dim);

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with `op` on `site` (1-based, site 1 leftmost).
template <typename Derived>
auto embed_site(const Eigen::MatrixBase<Derived>& op, int site, int n_sites)
{
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (op.rows() != 2 || op.cols() != 2)
    throw std::invalid_argument("embed_site: operator must be 2x2");
  if (n_sites < 1 || n_sites > max_sites)
    throw std::invalid_argument("embed_site: n_sites must be in [1, " + std::to_string(max_sites) + "]");
  if (site < 1 || site > n_sites)
    throw std::out_of_range("embed_site: site " + std::to_string(site) + " outside 1.." + std::to_string(n_sites));
  const Mat left = Mat::Identity(chain_dim(site - 1), chain_dim(site - 1));
  const Mat right = Mat::Identity(chain_dim(n_sites - site), chain_dim(n_sites - site));
  return kron(kron(left, op), right);
}

/// max_ij |M - M^dagger|_ij.
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermiticity_residual: matrix is not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12)
{
  return hermiticity_residual(m) <= tol;
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
  return (a - b).cwiseAbs().maxCoeff();
}

/// Ascending eigenvalues with column-aligned orthonormal eigenvectors.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Operator vectors;

  Eigen::Index size() const { return values.size(); }
  StateVector vector(Eigen::Index k) const { return vectors.col(k); }
};

/// Hermitian eigendecomposition. The input must be Hermitian to `tol` relative to its largest
/// entry; it is symmetrized before decomposition. Each eigenvector's phase is fixed so that
/// its largest-magnitude component is real and positive.
EigenDecomposition eigh(const Operator& h, double tol = 1e-10);

}  // namespace fluxlde
