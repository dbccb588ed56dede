// separability.hpp: Peres-Horodecki test for two-qubit states

#pragma once

#include "bcast/linalg.hpp"

#include <string_view>

namespace bcast {

enum class Verdict { separable, inseparable };

std::string_view to_string(Verdict v);

/// Leading principal minors of the partially transposed matrix rho^{T2}:
/// W2 is the 2x2 minor, W3 the 3x3 minor and W4 the full determinant.
struct WDeterminants {
  double w2;
  double w3;
  double w4;
};

struct SeparabilityVerdict {
  WDeterminants w;
  double min_pt_eigenvalue;
  Verdict verdict;
  bool input_valid;  // the input itself is PSD within 1e-10
  bool boundary;     // |min_pt_eigenvalue| within the decision threshold
};

inline constexpr double kDefaultSeparabilityThreshold = 1e-10;

WDeterminants w_determinants(const CMatrix& rho);

inline constexpr double kDeterminantTolerance = 1e-14;

/// The determinant formulation: inseparable iff (W3 < 0 or W4 < 0) and W2 >= 0.
/// Each comparison is made against `tol` so that a minor which is exactly zero
/// in theory (W2 of any pure state) is not decided by rounding.
bool determinant_rule_inseparable(const WDeterminants& w, double tol = kDeterminantTolerance);

/// Inseparable iff the smallest eigenvalue of rho^{T2} is below -threshold.
/// Requires a 4x4 Hermitian matrix with unit trace (within 1e-8). Inputs that
/// are not positive semidefinite are still classified, with input_valid unset.
SeparabilityVerdict separability_test(const Density& rho, double threshold = kDefaultSeparabilityThreshold);

}  // namespace bcast
