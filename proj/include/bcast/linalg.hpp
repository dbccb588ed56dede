// linalg.hpp: small dense complex matrices for qubit systems
//
// Basis convention (used by every module): a multi-qubit basis index is the
// big-endian number formed by the subsystem indices, so two qubits are ordered
// |00>, |01>, |10>, |11> and the first Kronecker factor varies slowest.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcast {

using Index = Eigen::Index;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using Complex = std::complex<double>;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, Index expected, Index actual)
      : std::invalid_argument(what + ": expected dimension " + std::to_string(expected) +
                              ", got " + std::to_string(actual)),
        expected_(expected),
        actual_(actual) {}

  Index expected() const { return expected_; }
  Index actual() const { return actual_; }

 private:
  Index expected_;
  Index actual_;
};

class NotHermitian : public std::invalid_argument {
 public:
  explicit NotHermitian(double deviation)
      : std::invalid_argument("matrix is not Hermitian (max |m - m^H| = " +
                              std::to_string(deviation) + ")"),
        deviation_(deviation) {}

  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

template <typename Derived>
typename Derived::RealScalar max_hermitian_deviation(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("max_hermitian_deviation", m.rows(), m.cols());
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Largest entrywise absolute difference; infinite when shapes differ.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar max_abs_difference(const Eigen::MatrixBase<DerivedA>& a,
                                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Real = typename DerivedA::RealScalar;
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<Real>::infinity();
  if (a.size() == 0) return 0;
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  typename DerivedA::RealScalar tol) {
  return max_abs_difference(a, b) <= tol;
}

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

/// Traces out every subsystem not listed in `keep`. Kept subsystems stay in
/// their original order regardless of the order given in `keep`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, std::span<const Index> dims, std::span<const Index> keep) {
  using Result = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (rho.rows() != rho.cols()) throw DimensionMismatch("partial_trace: square input", rho.rows(), rho.cols());
  if (dims.empty()) throw std::invalid_argument("partial_trace: no subsystem dimensions");
  Index total = 1;
  for (Index d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (total != rho.rows()) throw DimensionMismatch("partial_trace: product of dims", total, rho.rows());
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be nonempty");

  const auto n_sub = static_cast<Index>(dims.size());
  std::vector<bool> kept(dims.size(), false);
  for (Index k : keep) {
    if (k < 0 || k >= n_sub) throw std::out_of_range("partial_trace: subsystem index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }

  // Split every full index into (kept part, traced part), both big-endian.
  std::vector<Index> kept_index(static_cast<std::size_t>(total));
  std::vector<Index> traced_index(static_cast<std::size_t>(total));
  Index kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) kept_dim *= dims[s];
  for (Index i = 0; i < total; ++i) {
    Index rem = i, stride = total, k = 0, t = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      stride /= dims[s];
      const Index digit = rem / stride;
      rem %= stride;
      if (kept[s])
        k = k * dims[s] + digit;
      else
        t = t * dims[s] + digit;
    }
    kept_index[static_cast<std::size_t>(i)] = k;
    traced_index[static_cast<std::size_t>(i)] = t;
  }

  Result out = Result::Zero(kept_dim, kept_dim);
  for (Index j = 0; j < total; ++j) {
    const Index tj = traced_index[static_cast<std::size_t>(j)];
    const Index kj = kept_index[static_cast<std::size_t>(j)];
    for (Index i = 0; i < total; ++i) {
      if (traced_index[static_cast<std::size_t>(i)] == tj) out(kept_index[static_cast<std::size_t>(i)], kj) += rho(i, j);
    }
  }
  return out;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, std::initializer_list<Index> dims, std::initializer_list<Index> keep) {
  return partial_trace(rho, std::span<const Index>(dims.begin(), dims.size()),
                       std::span<const Index>(keep.begin(), keep.size()));
}

/// Partial transpose of a two-qubit operator. With `subsystem == 1` (default)
/// this is rho^{T2}_{m mu, n nu} = rho_{m nu, n mu}; `subsystem == 0`
/// transposes the first qubit instead.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 4, 4> partial_transpose(const Eigen::MatrixBase<Derived>& rho,
                                                                int subsystem = 1) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("partial_transpose", 4, rho.rows());
  if (subsystem != 0 && subsystem != 1) throw std::out_of_range("partial_transpose: subsystem must be 0 or 1");
  Eigen::Matrix<typename Derived::Scalar, 4, 4> out;
  for (int m = 0; m < 2; ++m)
    for (int mu = 0; mu < 2; ++mu)
      for (int n = 0; n < 2; ++n)
        for (int nu = 0; nu < 2; ++nu) {
          const int row = 2 * m + mu, col = 2 * n + nu;
          out(row, col) = subsystem == 1 ? rho(2 * m + nu, 2 * n + mu) : rho(2 * n + mu, 2 * m + nu);
        }
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix (tridiagonal QR iteration).
template <typename Derived>
RealVector<typename Derived::RealScalar> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m,
                                                               typename Derived::RealScalar tol = 1e-10) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto dev = max_hermitian_deviation(m);
  if (dev > tol) throw NotHermitian(static_cast<double>(dev));
  Eigen::SelfAdjointEigenSolver<Plain> solver(Plain(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

/// A Hermitian matrix meant to describe a quantum state. Trace and spectrum
/// are measured once at construction; nothing is renormalized or clipped, so
/// matrices produced by formulas that break positivity or trace stay visible.
template <typename Scalar>
class DensityMatrix {
 public:
  using Matrix = ComplexMatrix<Scalar>;

  static constexpr Scalar kHermitianTolerance = Scalar(1e-12);

  explicit DensityMatrix(Matrix m) : matrix_(std::move(m)) {
    const Scalar dev = max_hermitian_deviation(matrix_);
    if (dev > kHermitianTolerance) throw NotHermitian(static_cast<double>(dev));
    trace_ = matrix_.trace().real();
    eigenvalues_ = hermitian_eigenvalues(matrix_, kHermitianTolerance);
  }

  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  std::complex<Scalar> operator()(Index r, Index c) const { return matrix_(r, c); }

  Scalar trace() const { return trace_; }
  Scalar trace_deviation() const { return std::abs(trace_ - Scalar(1)); }
  const RealVector<Scalar>& eigenvalues() const { return eigenvalues_; }
  Scalar min_eigenvalue() const { return eigenvalues_(0); }
  bool is_positive(Scalar tol = Scalar(1e-10)) const { return min_eigenvalue() >= -tol; }

 private:
  Matrix matrix_;
  Scalar trace_{};
  RealVector<Scalar> eigenvalues_;
};

using Density = DensityMatrix<double>;

/// |v><v| for a state vector.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> projector(
    const Eigen::MatrixBase<Derived>& v) {
  return v * v.adjoint();
}

}  // namespace bcast
