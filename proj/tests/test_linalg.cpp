#include <doctest.h>

#include "fluxlde/linalg.hpp"
#include "oracle.hpp"

#include <random>

using namespace fluxlde;

TEST_CASE("pauli algebra")
{
  const cplx i(0.0, 1.0);
  CHECK(max_abs_diff(sigma_x() * sigma_x(), identity2()) == 0.0);
  CHECK(max_abs_diff(sigma_y() * sigma_y(), identity2()) == 0.0);
  CHECK(max_abs_diff(sigma_z() * sigma_z(), identity2()) == 0.0);
  CHECK(max_abs_diff(sigma_x() * sigma_y(), i * sigma_z()) == 0.0);
  // |R> is index 0 with eigenvalue +1.
  CHECK(sigma_z()(0, 0) == cplx(1.0));
  CHECK(sigma_z()(1, 1) == cplx(-1.0));
}

TEST_CASE("kron matches the index-loop oracle")
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator a = oracle::random_unitary(2 + trial % 3, rng);
    const Operator b = oracle::random_unitary(3, rng);
    CHECK(max_abs_diff(kron(a, b), oracle::kron(a, b)) < 1e-15);
  }
}

TEST_CASE("embed_site places site 1 on the most significant bit")
{
  const Operator z1 = embed_site(sigma_z(), 1, 3);
  CHECK(z1.rows() == 8);
  // Basis index 4 = 0b100 has site 1 in |L>.
  CHECK(z1(4, 4) == cplx(-1.0));
  CHECK(z1(3, 3) == cplx(1.0));
  const Operator z3 = embed_site(sigma_z(), 3, 3);
  CHECK(z3(1, 1) == cplx(-1.0));
  CHECK_THROWS_AS(embed_site(sigma_z(), 0, 3), std::out_of_range);
  CHECK_THROWS_AS(embed_site(sigma_z(), 4, 3), std::out_of_range);
  CHECK_THROWS_AS(embed_site(Operator::Identity(3, 3), 1, 3), std::invalid_argument);
}

TEST_CASE("embedded operators on different sites commute")
{
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      const Operator x = embed_site(sigma_x(), a, 4);
      const Operator y = embed_site(sigma_y(), b, 4);
      CHECK(max_abs_diff(x * y, y * x) == 0.0);
    }
}

TEST_CASE("sites_from_dim")
{
  CHECK(sites_from_dim(16) == 4);
  CHECK(sites_from_dim(2) == 1);
  CHECK_THROWS(sites_from_dim(12));
  CHECK_THROWS(sites_from_dim(1));
}

TEST_CASE("eigh reconstructs and orders")
{
  std::mt19937_64 rng(5);
  const Operator u = oracle::random_unitary(8, rng);
  Eigen::VectorXd d(8);
  d << 3, -1, 0.5, 2, -4, 7, 0, 1;
  const Operator h = u * d.cast<cplx>().asDiagonal() * u.adjoint();
  const auto e = eigh(h);
  for (Eigen::Index k = 1; k < e.size(); ++k)
    CHECK(e.values(k) >= e.values(k - 1));
  CHECK(e.values(0) == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(max_abs_diff(e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint(), h) < 1e-12);
  CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, Operator::Identity(8, 8)) < 1e-12);
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    Eigen::Index idx;
    e.vectors.col(k).cwiseAbs().maxCoeff(&idx);
    CHECK(std::abs(e.vectors(idx, k).imag()) < 1e-14);
    CHECK(e.vectors(idx, k).real() > 0.0);
  }
}

TEST_CASE("eigh rejects non-hermitian and non-square input")
{
  Operator h = Operator::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(h), std::invalid_argument);
  CHECK_THROWS_AS(eigh(Operator::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("unit conversion")
{
  CHECK(angular(1.0) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(linear(angular(0.058)) == doctest::Approx(0.058));
}
