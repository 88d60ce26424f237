#include "fluxlde/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace fluxlde {

Operator sigma_x()
{
  Operator m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Operator sigma_y()
{
  const cplx i{0.0, 1.0};
  Operator m(2, 2);
  m << 0.0, -i, i, 0.0;
  return m;
}

Operator sigma_z()
{
  Operator m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Operator identity2() { return Operator::Identity(2, 2); }

int sites_from_dim(Eigen::Index dim)
{
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim)
    ++n;
  return n;
}

EigenDecomposition eigh(const Operator& h, double tol)
{
  if (h.rows() != h.cols())
    throw std::invalid_argument("eigh: matrix is not square");
  if (h.size() == 0)
    throw std::invalid_argument("eigh: empty matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double residual = hermiticity_residual(h);
  if (residual > tol * scale)
    throw std::invalid_argument("eigh: matrix is not Hermitian (residual " + std::to_string(residual) + ")");

  const Operator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver did not converge");

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    Eigen::Index pivot = 0;
    out.vectors.col(k).cwiseAbs().maxCoeff(&pivot);
    const cplx c = out.vectors(pivot, k);
    out.vectors.col(k) *= std::conj(c) / std::abs(c);
  }
  return out;
}

}  // namespace fluxlde
