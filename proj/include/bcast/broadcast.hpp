// broadcast.hpp: local cloning of a shared two-qubit state
//
// Alice holds qubit A, Bob holds B. Each clones locally, producing A' and B'.
// The nonlocal pairs are (A, B') and (A', B); the local pairs are (A, A') and
// (B, B'). Closed forms below cover the general real state
// α|00> + β|11> + γ|10> + δ|01> and the Schmidt family α|00> + β|11>.

#pragma once

#include "bcast/cloner.hpp"
#include "bcast/separability.hpp"

namespace bcast {

/// α|00> + β|11> + γ|10> + δ|01>. Only β may be complex.
class PureTwoQubit {
 public:
  PureTwoQubit(double a00, Complex a11, double a10, double a01);

  /// α = sqrt(alpha1_sq), β = sqrt(1 - alpha1_sq).
  static PureTwoQubit schmidt(double alpha1_sq);

  double a00() const { return a00_; }
  Complex a11() const { return a11_; }
  double a10() const { return a10_; }
  double a01() const { return a01_; }

  bool is_real() const { return a11_.imag() == 0.0; }
  bool is_schmidt() const { return a10_ == 0.0 && a01_ == 0.0; }

  /// Amplitudes in basis order |00>, |01>, |10>, |11>.
  Eigen::Vector4cd vector() const;

 private:
  double a00_;
  Complex a11_;
  double a10_;
  double a01_;
};

/// rho_AB' (= rho_A'B) from the sixteen C-coefficients. Real amplitudes only.
Density nonlocal_output_general(const PureTwoQubit& chi, const MachineParams& p);

/// rho_AB' for α|00> + β|11>.
Density nonlocal_output_schmidt(double alpha1, Complex beta1, const MachineParams& p);
Density nonlocal_output_schmidt(double alpha1_sq, const MachineParams& p);

/// rho_AA' (= rho_BB') for α|00> + β|11>.
Density local_output_schmidt(double alpha1, Complex beta1, const MachineParams& p);
Density local_output_schmidt(double alpha1_sq, const MachineParams& p);

struct LocalOutputs {
  Density aa;  // rho_AA'
  Density bb;  // rho_BB'
};

/// rho_AA' and rho_BB' from the K / K' coefficients exactly as they are
/// written. For states with α δ + β γ != 0 these have trace 1 + 2(αδ + βγ);
/// the trace is recorded, not corrected. Real amplitudes only.
LocalOutputs local_outputs_general(const PureTwoQubit& chi, const MachineParams& p);

struct BuzekOutputs {
  Density local;
  Density nonlocal;
};

/// Outputs of the universal (λ = 1/6) machine in their own closed form.
BuzekOutputs buzek_outputs(double alpha1_sq);

/// Every two-qubit marginal of the joint state obtained by running the cloner
/// isometry on both sides.
struct OracleOutputs {
  Density ab_prime;        // rho_AB'
  Density a_prime_b;       // rho_A'B
  Density aa_prime;        // rho_AA'
  Density bb_prime;        // rho_BB'
  Density ab;              // rho_AB
  Density a_prime_b_prime; // rho_A'B'
};

/// Builds the 256-dimensional joint state over
/// copyA ⊗ copyA' ⊗ machineA ⊗ copyB ⊗ copyB' ⊗ machineB and reduces it.
/// Throws InfeasibleMachine when λ < 1/6.
OracleOutputs broadcast_oracle(const PureTwoQubit& chi, const MachineParams& p);

struct BroadcastReport {
  Density rho_nonlocal;
  Density rho_local_a;
  Density rho_local_b;
  SeparabilityVerdict nonlocal_verdict;
  SeparabilityVerdict local_a_verdict;
  SeparabilityVerdict local_b_verdict;
  bool broadcast_success;
};

/// Success means the nonlocal pair is inseparable and both local pairs are separable.
BroadcastReport assess_broadcast(Density nonlocal, Density local_a, Density local_b,
                                 double threshold = kDefaultSeparabilityThreshold);

struct MatrixComparison {
  double max_abs_difference;
  bool agrees;
};

/// Closed-form outputs checked against the oracle.
struct OracleComparison {
  MatrixComparison nonlocal;
  MatrixComparison local_a;
  MatrixComparison local_b;
  MatrixComparison nonlocal_pair_symmetry;  // rho_AB' against rho_A'B
};

OracleComparison compare_with_oracle(const Density& nonlocal, const LocalOutputs& local, const OracleOutputs& oracle,
                                     double tol = 1e-10);

}  // namespace bcast
