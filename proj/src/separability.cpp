#include "bcast/separability.hpp"

#include <string>

namespace bcast {

std::string_view to_string(Verdict v) { return v == Verdict::separable ? "separable" : "inseparable"; }

WDeterminants w_determinants(const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("w_determinants", 4, rho.rows());
  const Eigen::Matrix4cd pt = partial_transpose(rho);
  // Principal minors of a Hermitian matrix are real; drop the rounding residue.
  return {pt.topLeftCorner<2, 2>().determinant().real(), pt.topLeftCorner<3, 3>().determinant().real(),
          pt.determinant().real()};
}

bool determinant_rule_inseparable(const WDeterminants& w, double tol) {
  return (w.w3 < -tol || w.w4 < -tol) && w.w2 >= -tol;
}

SeparabilityVerdict separability_test(const Density& rho, double threshold) {
  if (rho.dim() != 4) throw DimensionMismatch("separability_test", 4, rho.dim());
  if (std::abs(rho.trace() - 1.0) > 1e-8)
    throw std::domain_error("separability_test: trace must be 1 within 1e-8, got " + std::to_string(rho.trace()));

  const Eigen::Matrix4cd pt = partial_transpose(rho.matrix());
  const double min_pt = hermitian_eigenvalues(pt, 1e-10)(0);

  SeparabilityVerdict out{};
  out.w = w_determinants(rho.matrix());
  out.min_pt_eigenvalue = min_pt;
  out.verdict = min_pt < -threshold ? Verdict::inseparable : Verdict::separable;
  out.input_valid = rho.is_positive(1e-10);
  out.boundary = std::abs(min_pt) <= threshold;
  return out;
}

}  // namespace bcast
