// cloner.hpp: state-dependent 1 -> 2 qubit cloning machine
//
//   |0>|Σ>|Q> -> |00>|Q0> + (|01> + |10>)|Y0>
//   |1>|Σ>|Q> -> |11>|Q1> + (|01> + |10>)|Y1>
//
// The machine states enter only through their inner products:
//   <Y0|Y0> = <Y1|Y1> = λ,  <Q_i|Q_i> = 1 - 2λ,  <Q0|Y1> = <Q1|Y0> = μ/2,
// every other pair orthogonal, and μ = 1 - 2λ.

#pragma once

#include "bcast/linalg.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace bcast {

class InfeasibleMachine : public std::domain_error {
 public:
  InfeasibleMachine(double lambda, double min_eigenvalue);

  double lambda() const { return lambda_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double lambda_;
  double min_eigenvalue_;
};

class MachineParams {
 public:
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  bool is_universal() const { return universal_; }

  friend MachineParams make_machine(double lambda);

 private:
  MachineParams(double lambda, double mu, bool universal) : lambda_(lambda), mu_(mu), universal_(universal) {}

  double lambda_;
  double mu_;
  bool universal_;
};

/// Throws std::out_of_range unless 0 < lambda < 1/2.
MachineParams make_machine(double lambda);

/// α|0> + β|1> with real α.
class PureQubit {
 public:
  PureQubit(double alpha, Complex beta);
  static PureQubit from_alpha2(double alpha2);

  double alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  Eigen::Vector2cd vector() const { return {Complex(alpha_, 0.0), beta_}; }

 private:
  double alpha_;
  Complex beta_;
};

/// Gram matrix of the machine states, basis order (Q0, Q1, Y0, Y1).
Eigen::Matrix4d gram_matrix(const MachineParams& p);

/// Smallest Gram eigenvalue. Nonnegative exactly when the machine states can
/// be realised as vectors, i.e. when λ >= 1/6.
double gram_feasibility(const MachineParams& p);

/// Determinant of either 2x2 Gram block, (1-2λ)(6λ-1)/4.
double gram_block_determinant(double lambda);

/// Columns are the images of |0> and |1> in copy_a ⊗ copy_b ⊗ machine, with
/// the machine space kept at its full dimension 4.
class ClonerIsometry {
 public:
  static constexpr Index kCopyDim = 2;
  static constexpr Index kMachineDim = 4;
  static constexpr Index kOutputDim = kCopyDim * kCopyDim * kMachineDim;

  using Map = Eigen::Matrix<Complex, kOutputDim, 2>;

  ClonerIsometry(MachineParams params, Eigen::Matrix4d machine_vectors);

  const MachineParams& params() const { return params_; }
  const Map& map() const { return map_; }
  /// Column k holds the realised machine state (Q0, Q1, Y0, Y1)[k].
  const Eigen::Matrix4d& machine_vectors() const { return machine_vectors_; }

  /// max |<image_i|image_j> - δ_ij|
  double orthonormality_error() const;

  Eigen::Matrix<Complex, kOutputDim, 1> apply(const PureQubit& psi) const;

 private:
  MachineParams params_;
  Eigen::Matrix4d machine_vectors_;
  Map map_;
};

/// Realises the machine states by factoring the Gram matrix. Eigenvalues in
/// [-1e-12, 0) are treated as zero; anything more negative is infeasible.
ClonerIsometry build_isometry(const MachineParams& p);

/// Closed-form single-copy output state.
Density clone_reduced(const PureQubit& psi, const MachineParams& p);

/// Single-copy output obtained by applying the isometry and tracing out the
/// other copy and the machine.
Density clone_reduced(const PureQubit& psi, const ClonerIsometry& iso);

/// Both copies together, machine traced out.
Density clone_pair(const PureQubit& psi, const ClonerIsometry& iso);

/// Single-copy distortion Tr(ρ_out - ρ_ideal)^2 in its general (λ, μ) form.
double distortion_a(double alpha2, double lambda, double mu);
double distortion_a(double alpha2, const MachineParams& p);

/// Two-copy distortion with μ = 1 - 2λ substituted.
double distortion_ab(double alpha2, double lambda);

/// Argmin of distortion_ab over λ at fixed α², 3α²(1-α²)/4.
double optimal_lambda(double alpha2);

/// Round half away from zero to `digits` decimals.
double round_half_up(double x, int digits);

struct Table1Row {
  double x;                      // first column value as printed
  double lambda_alpha_reading;   // x read as α
  double lambda_rounded;         // the above to three decimals
  double lambda_alpha2_reading;  // x read as α²
  double d_a;                    // 2λ² with the unrounded α reading
  double d_a_rounded_lambda;     // 2λ² with the three-decimal λ
  double universal_lambda;
  double universal_d_a;
  double printed_lambda;
  double printed_d_a;
};

std::vector<Table1Row> table1();

}  // namespace bcast
