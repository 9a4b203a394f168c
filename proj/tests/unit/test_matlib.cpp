#include <cmath>
#include <limits>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace swivel;
using swivel::testing::diag;
using swivel::testing::max_diff;

namespace {

Matrix random_matrix(int r, int c, std::uint64_t seed) {
  Rng rng(seed);
  return ginibre(r, c, rng);
}

Matrix random_hermitian(int d, std::uint64_t seed) {
  const Matrix g = random_matrix(d, d, seed);
  return 0.5 * (g + g.adjoint());
}

// Index-loop partial trace over the last factor of d1 ⊗ d2.
Matrix trace_second(const Matrix& m, int d1, int d2) {
  Matrix out = Matrix::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j)
      for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
  return out;
}

Matrix trace_first(const Matrix& m, int d1, int d2) {
  Matrix out = Matrix::Zero(d2, d2);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
  return out;
}

}  // namespace

TEST_CASE("eig_hermitian textbook spectra") {
  const SpectralDecomposition id = eig_hermitian(identity(2));
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(id.support_rank == 2);

  const SpectralDecomposition d = eig_hermitian(diag({1.0, 3.0}));
  CHECK(d.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(std::abs(d.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.eigenvectors(0, 1)) == doctest::Approx(1.0));

  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const SpectralDecomposition px = eig_hermitian(x);
  CHECK(px.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(px.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(px.support_rank == 2);
}

TEST_CASE("eig_hermitian residuals, ordering and determinism") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int d = 2 + static_cast<int>(s % 6);
    const Matrix m = random_hermitian(d, s);
    const SpectralDecomposition e = eig_hermitian(m);
    const Matrix& v = e.eigenvectors;
    CHECK(max_diff(v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint(), m) <= kReconstructionTol);
    CHECK(max_diff(v.adjoint() * v, identity(d)) <= kReconstructionTol);
    for (int i = 0; i + 1 < d; ++i) CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
    const SpectralDecomposition again = eig_hermitian(m);
    CHECK(again.eigenvectors == e.eigenvectors);
    CHECK(again.eigenvalues == e.eigenvalues);

    // Re-decomposing the reconstruction gives the same spectrum.
    const Matrix rec = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    const SpectralDecomposition e2 = eig_hermitian(rec);
    CHECK((e2.eigenvalues - e.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("support rank follows the relative cutoff") {
  const SpectralDecomposition e = eig_hermitian(diag({1.0, 1e-11, 0.0, 1e-9}));
  CHECK(e.support_rank == 2);
  CHECK(eig_hermitian(Matrix::Zero(3, 3)).support_rank == 0);
}

TEST_CASE("HermitianOperator rejects non-Hermitian input") {
  Matrix m = diag({1.0, 2.0});
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(HermitianOperator{m}, Error);
  try {
    HermitianOperator bad(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  m(0, 1) = 1e-12;
  const HermitianOperator ok(m);
  CHECK(ok.matrix()(0, 1) == std::conj(ok.matrix()(1, 0)));
}

TEST_CASE("functions on the support") {
  CHECK(max_diff(power(HermitianOperator(diag({4.0, 0.0})), 0.5), diag({2.0, 0.0})) <= 1e-14);
  CHECK(max_diff(power(HermitianOperator(diag({4.0, 0.0})), -0.5), diag({0.5, 0.0})) <= 1e-14);
  CHECK(max_diff(log_support(HermitianOperator(diag({std::exp(1.0), 1.0, 0.0}))), diag({1.0, 0.0, 0.0})) <= 1e-14);
  CHECK(max_diff(power(HermitianOperator(diag({4.0, 0.0, 2.0})), 0.0), diag({1.0, 0.0, 1.0})) <= 1e-14);

  for (std::uint64_t s = 0; s < 10; ++s) {
    const Matrix g = random_matrix(4, 2, 100 + s);
    const HermitianOperator m(Matrix(g * g.adjoint()));  // rank 2
    const Matrix proj = support_projector(m);
    CHECK(max_diff(power(m, 1.0), proj * m.matrix() * proj) <= 1e-10);
    CHECK(max_diff(power(m, 0.5) * power(m, 0.5), m.matrix()) <= 1e-10);
    CHECK(max_diff(power(m, -1.0) * m.matrix(), proj) <= 1e-9);
    CHECK(std::abs(proj.trace().real() - 2.0) <= 1e-12);
  }
}

TEST_CASE("fractional powers and log reject negative eigenvalues") {
  const HermitianOperator m(diag({1.0, -0.5}));
  CHECK_THROWS_AS(power(m, 0.5), Error);
  CHECK_THROWS_AS(log_support(m), Error);
  try {
    power(m, -1.0);
    FAIL("expected NegativeEigenvalue");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeEigenvalue);
  }
  // Integer powers of indefinite operators are fine.
  CHECK(max_diff(power(m, 2.0), diag({1.0, 0.25})) <= 1e-14);
}

TEST_CASE("imaginary powers are unitary on the support") {
  const HermitianOperator w(diag({0.5, 0.25, 0.0}));
  const Matrix u = imaginary_power(w, 0.7);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, 0.7 * std::log(0.5))) <= 1e-14);
  CHECK(std::abs(u(2, 2)) == 0.0);
  CHECK(max_diff(u * u.adjoint(), support_projector(w)) <= 1e-14);
}

TEST_CASE("Schatten norms") {
  CHECK(schatten(identity(4), 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(schatten(identity(4), std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
  Vector v = random_matrix(3, 1, 5).col(0);
  v.normalize();
  const Matrix rank1 = v * v.adjoint();
  for (double p : {0.5, 1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
    CHECK(schatten(rank1, p) == doctest::Approx(1.0).epsilon(1e-12));
  }

  for (std::uint64_t s = 0; s < 10; ++s) {
    const Matrix a = random_matrix(3, 3, 11 + s), b = random_matrix(3, 3, 40 + s);
    const Matrix ab = a * b;
    // The 2-norm is the Frobenius norm.
    CHECK(std::abs(std::pow(schatten(ab, 2), 2) - (ab.adjoint() * ab).trace().real()) <= 1e-10 * ab.squaredNorm());
    for (double p : {0.5, 1.0, 1.5, 3.0}) {
      const double lhs = std::pow(schatten(b.adjoint() * a.adjoint() * a * b, p), p);
      const double rhs = std::pow(schatten(ab, 2 * p), 2 * p);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
    }
    // Independent path: eigenvalues of A†A.
    Eigen::SelfAdjointEigenSolver<Matrix> es(ab.adjoint() * ab);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += std::pow(std::max(es.eigenvalues()[i], 0.0), 1.5);
    CHECK(schatten(ab, 3.0) == doctest::Approx(std::pow(acc, 1.0 / 3.0)).epsilon(1e-10));
    CHECK(schatten_from_gram(es.eigenvalues(), 3.0) == doctest::Approx(schatten(ab, 3.0)).epsilon(1e-10));
  }
}

TEST_CASE("partial trace") {
  Vector phi = Vector::Zero(4);
  phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
  const int d22[2] = {2, 2};
  const int second[1] = {1};
  const int first[1] = {0};
  CHECK(max_diff(partial_trace(phi * phi.adjoint(), d22, second), 0.5 * identity(2)) <= 1e-15);

  const Matrix rho = random_density(3, 3, 1).matrix();
  const Matrix sigma = random_density(2, 2, 2).matrix();
  const int d32[2] = {3, 2};
  CHECK(max_diff(partial_trace(kron(rho, sigma), d32, second), rho) <= 1e-14);

  const int d31[2] = {3, 1};
  CHECK(max_diff(partial_trace(rho, d31, second), rho) <= 1e-15);

  const Matrix m = random_matrix(6, 6, 9);
  CHECK(max_diff(partial_trace(m, d32, second), trace_second(m, 3, 2)) <= 1e-13);
  CHECK(max_diff(partial_trace(m, d32, first), trace_first(m, 3, 2)) <= 1e-13);

  const int d4[1] = {5};
  CHECK_THROWS_AS(partial_trace(m, d4, first), Error);

  // Tracing {1,2} at once equals tracing 2 and then 1.
  const Matrix big = random_density(12, 12, 4).matrix();
  const int d223[3] = {2, 2, 3};
  const int t12[2] = {1, 2};
  const int t2[1] = {2};
  const Matrix once = partial_trace(big, d223, t12);
  const Matrix step = partial_trace(partial_trace(big, d223, t2), d22, second);
  CHECK(max_diff(once, step) <= 1e-12);
  CHECK(std::abs(partial_trace(big, d223, std::vector<int>{0, 1, 2})(0, 0) - 1.0) <= 1e-12);
}

TEST_CASE("embed and permute_systems") {
  const Matrix a = random_matrix(2, 2, 1), c = random_matrix(3, 3, 2);
  const int dims[3] = {2, 2, 3};
  const int sys0[1] = {0};
  const int sys2[1] = {2};
  CHECK(max_diff(embed(a, dims, sys0), kron(a, identity(6))) <= 1e-15);
  CHECK(max_diff(embed(c, dims, sys2), kron(identity(4), c)) <= 1e-15);

  const Matrix ac = kron(a, c);
  const int sys02[2] = {0, 2};
  CHECK(max_diff(embed(ac, dims, sys02), kron(kron(a, identity(2)), c)) <= 1e-14);
  const int sys20[2] = {2, 0};
  CHECK(max_diff(embed(kron(c, a), dims, sys20), kron(kron(a, identity(2)), c)) <= 1e-14);

  const Matrix b = random_matrix(2, 2, 3);
  const int perm[3] = {2, 0, 1};
  CHECK(max_diff(permute_systems(kron(kron(a, b), c), dims, perm), kron(kron(c, a), b)) <= 1e-14);
  CHECK(product(dims) == 12);
}
