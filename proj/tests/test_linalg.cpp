#include "bcast/linalg.hpp"

#include "doctest.h"
#include "random_states.hpp"

using namespace bcast;
using bcast::testing::random_density;
using bcast::testing::random_hermitian;

namespace {

CMatrix bell_phi_plus() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return projector(v);
}

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("tensor: identities and basis projectors") {
  CHECK(approx_equal(tensor(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)), CMatrix::Identity(4, 4), 0.0));
  CHECK(approx_equal(tensor(diag({1, 0}), diag({0, 1})), diag({0, 1, 0, 0}), 0.0));

  // |0><0| ⊗ |0><0| is |00><00|
  CHECK(approx_equal(tensor(diag({1, 0}), diag({1, 0})), diag({1, 0, 0, 0}), 0.0));
}

TEST_CASE("tensor: first factor varies slowest") {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const Eigen::MatrixXd k = tensor(a, b);
  CHECK(k(0, 1) == 5);   // a(0,0) * b(0,1)
  CHECK(k(1, 2) == 12);  // a(0,1) * b(1,0)
  CHECK(k(3, 3) == 28);  // a(1,1) * b(1,1)
}

TEST_CASE("tensor is associative on integer matrices") {
  Eigen::MatrixXd a(2, 2), b(3, 3), c(2, 2);
  a << 1, -2, 3, 0;
  b << 2, 0, 1, -1, 4, 5, 7, 1, 0;
  c << 0, 1, 1, 3;
  CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
}

TEST_CASE("partial_trace: examples") {
  const CMatrix ket00 = diag({1, 0, 0, 0});
  CHECK(approx_equal(partial_trace(ket00, {2, 2}, {0}), diag({1, 0}), 0.0));

  const CMatrix reduced = partial_trace(bell_phi_plus(), {2, 2}, {0});
  CHECK(approx_equal(reduced, CMatrix::Identity(2, 2) / 2.0, 1e-15));
}

TEST_CASE("partial_trace: kept subsystems keep their original order") {
  const CMatrix a = random_density(2, 2), b = random_density(3, 2), c = random_density(2, 3);
  const CMatrix abc = tensor(tensor(a, b), c);
  CHECK(approx_equal(partial_trace(abc, {2, 3, 2}, {2, 0}), tensor(a, c), 1e-13));
  CHECK(approx_equal(partial_trace(abc, {2, 3, 2}, {1}), b, 1e-13));
}

TEST_CASE("partial_trace: dimension mismatch names expected and actual") {
  const CMatrix m = CMatrix::Identity(4, 4);
  try {
    partial_trace(m, {2, 3}, {0});
    FAIL("expected DimensionMismatch");
  } catch (const DimensionMismatch& e) {
    CHECK(e.expected() == 6);
    CHECK(e.actual() == 4);
  }
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {2}), std::out_of_range);
}

TEST_CASE("partial_trace(a ⊗ b) keeping the first factor is a·tr(b)") {
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = random_hermitian(2), b = random_hermitian(3);
    const CMatrix reduced = partial_trace(tensor(a, b), {2, 3}, {0});
    CHECK(approx_equal(reduced, a * b.trace(), 1e-12));
  }
}

TEST_CASE("partial_trace preserves trace") {
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix rho = random_density(8, 3);
    CHECK(std::abs(partial_trace(rho, {2, 2, 2}, {1}).trace() - rho.trace()) <= 1e-12);
  }
}

TEST_CASE("partial_transpose: examples") {
  const CMatrix mixed = CMatrix::Identity(4, 4) / 4.0;
  CHECK(approx_equal(partial_transpose(mixed), mixed, 0.0));

  const auto ev = hermitian_eigenvalues(partial_transpose(bell_phi_plus()));
  CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_THROWS_AS(partial_transpose(CMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("partial_transpose follows rho^{T2}_{m mu, n nu} = rho_{m nu, n mu}") {
  const CMatrix rho = random_density(4, 2);
  const Eigen::Matrix4cd pt = partial_transpose(rho);
  for (int m = 0; m < 2; ++m)
    for (int mu = 0; mu < 2; ++mu)
      for (int n = 0; n < 2; ++n)
        for (int nu = 0; nu < 2; ++nu) CHECK(pt(2 * m + mu, 2 * n + nu) == rho(2 * m + nu, 2 * n + mu));
}

TEST_CASE("partial_transpose: involution, trace, Hermiticity, T1/T2 spectra") {
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix rho = random_density(4, 1 + trial % 4);
    const Eigen::Matrix4cd t2 = partial_transpose(rho);
    CHECK(approx_equal(partial_transpose(t2), rho, 0.0));
    CHECK(std::abs(t2.trace() - rho.trace()) <= 1e-15);
    CHECK(max_hermitian_deviation(t2) <= 1e-15);
    const auto s1 = hermitian_eigenvalues(partial_transpose(rho, 0));
    const auto s2 = hermitian_eigenvalues(t2);
    CHECK((s1 - s2).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("hermitian_eigenvalues: ascending, sums to trace, rejects non-Hermitian") {
  const auto ev = hermitian_eigenvalues(diag({3, 1, 2}));
  CHECK(ev(0) == doctest::Approx(1.0));
  CHECK(ev(1) == doctest::Approx(2.0));
  CHECK(ev(2) == doctest::Approx(3.0));

  const auto bell = hermitian_eigenvalues(partial_transpose(bell_phi_plus()));
  const Eigen::Vector4d expected(-0.5, 0.5, 0.5, 0.5);
  CHECK((bell - expected).cwiseAbs().maxCoeff() <= 1e-12);

  for (int trial = 0; trial < 30; ++trial) {
    const CMatrix h = random_hermitian(4);
    CHECK(std::abs(hermitian_eigenvalues(h).sum() - h.trace().real()) <= 1e-10);
  }

  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), NotHermitian);
}

TEST_CASE("DensityMatrix records trace and spectrum without renormalizing") {
  const Density twice(CMatrix::Identity(2, 2));
  CHECK(twice.trace() == doctest::Approx(2.0));
  CHECK(twice.trace_deviation() == doctest::Approx(1.0));
  CHECK(twice(0, 0) == Complex(1.0, 0.0));

  const Density indefinite(diag({1.2, -0.2}));
  CHECK(indefinite.trace_deviation() <= 1e-15);
  CHECK(indefinite.min_eigenvalue() == doctest::Approx(-0.2));
  CHECK_FALSE(indefinite.is_positive());

  CMatrix skew = CMatrix::Zero(2, 2);
  skew(0, 1) = 1e-9;
  CHECK_THROWS_AS(Density{skew}, NotHermitian);
}
