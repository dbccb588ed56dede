#include "bcast/broadcast.hpp"

#include <array>
#include <cmath>
#include <string>

namespace bcast {

namespace {

// Two-qubit basis positions.
constexpr int k00 = 0, k01 = 1, k10 = 2, k11 = 3;

void require_real(const PureTwoQubit& chi, const char* where) {
  if (!chi.is_real()) throw std::invalid_argument(std::string(where) + ": requires real amplitudes");
}

void require_alpha2(double alpha1_sq) {
  if (!(alpha1_sq >= 0.0 && alpha1_sq <= 1.0)) throw std::out_of_range("alpha1^2 must lie in [0, 1]");
}

void put_symmetric(Eigen::Matrix4cd& m, int r, int c, double v) {
  m(r, c) = v;
  m(c, r) = v;
}

}  // namespace

PureTwoQubit::PureTwoQubit(double a00, Complex a11, double a10, double a01)
    : a00_(a00), a11_(a11), a10_(a10), a01_(a01) {
  const double norm = a00 * a00 + std::norm(a11) + a10 * a10 + a01 * a01;
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("two-qubit amplitudes not normalized: sum of squares = " + std::to_string(norm));
}

PureTwoQubit PureTwoQubit::schmidt(double alpha1_sq) {
  require_alpha2(alpha1_sq);
  return PureTwoQubit(std::sqrt(alpha1_sq), Complex(std::sqrt(1.0 - alpha1_sq), 0.0), 0.0, 0.0);
}

Eigen::Vector4cd PureTwoQubit::vector() const { return {Complex(a00_, 0.0), Complex(a01_, 0.0), Complex(a10_, 0.0), a11_}; }

Density nonlocal_output_general(const PureTwoQubit& chi, const MachineParams& p) {
  require_real(chi, "nonlocal_output_general");
  const double a = chi.a00(), b = chi.a11().real(), g = chi.a10(), d = chi.a01();
  const double l = p.lambda(), mu = p.mu(), s = 1.0 - l;

  const double c11 = a * a * s * s + b * b * l * l + l * s * (d * d + g * g);
  const double c22 = d * d * s * s + g * g * l * l + l * s * (a * a + b * b);
  const double c33 = g * g * s * s + d * d * l * l + l * s * (a * a + b * b);
  const double c44 = a * a * l * l + b * b * s * s + l * s * (d * d + g * g);
  const double c12 = b * g * l * mu + d * a * mu * s;
  const double c13 = b * d * l * mu + a * g * mu * s;
  const double c14 = mu * mu * d * g;
  const double c23 = mu * mu * a * b;
  const double c24 = a * g * l * mu + b * d * mu * s;
  const double c34 = d * a * mu * l + b * g * mu * s;

  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(k00, k00) = c11;
  m(k01, k01) = c22;
  m(k10, k10) = c33;
  m(k11, k11) = c44;
  put_symmetric(m, k00, k11, c23);
  put_symmetric(m, k00, k01, c12);
  put_symmetric(m, k00, k10, c13);
  put_symmetric(m, k01, k10, c14);
  put_symmetric(m, k01, k11, c24);
  put_symmetric(m, k10, k11, c34);
  return Density(m);
}

Density nonlocal_output_schmidt(double alpha1, Complex beta1, const MachineParams& p) {
  const PureTwoQubit chi(alpha1, beta1, 0.0, 0.0);  // normalization check
  const double l = p.lambda(), mu = p.mu();
  const double a2 = alpha1 * alpha1, b2 = std::norm(beta1);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(k00, k00) = a2 * (1.0 - 2.0 * l) + l * l;
  m(k01, k01) = l * (1.0 - l);
  m(k10, k10) = l * (1.0 - l);
  m(k11, k11) = b2 * (1.0 - 2.0 * l) + l * l;
  m(k00, k11) = alpha1 * std::conj(beta1) * mu * mu;
  m(k11, k00) = alpha1 * beta1 * mu * mu;
  return Density(m);
}

Density nonlocal_output_schmidt(double alpha1_sq, const MachineParams& p) {
  require_alpha2(alpha1_sq);
  return nonlocal_output_schmidt(std::sqrt(alpha1_sq), Complex(std::sqrt(1.0 - alpha1_sq), 0.0), p);
}

Density local_output_schmidt(double alpha1, Complex beta1, const MachineParams& p) {
  const PureTwoQubit chi(alpha1, beta1, 0.0, 0.0);
  const double l = p.lambda();
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(k00, k00) = alpha1 * alpha1 * (1.0 - 2.0 * l);
  m(k11, k11) = std::norm(beta1) * (1.0 - 2.0 * l);
  m(k01, k01) = m(k10, k10) = m(k01, k10) = m(k10, k01) = l;
  return Density(m);
}

Density local_output_schmidt(double alpha1_sq, const MachineParams& p) {
  require_alpha2(alpha1_sq);
  return local_output_schmidt(std::sqrt(alpha1_sq), Complex(std::sqrt(1.0 - alpha1_sq), 0.0), p);
}

LocalOutputs local_outputs_general(const PureTwoQubit& chi, const MachineParams& p) {
  require_real(chi, "local_outputs_general");
  const double a = chi.a00(), b = chi.a11().real(), g = chi.a10(), d = chi.a01();
  const double l = p.lambda(), mu = p.mu();

  // Both local operators share one placement pattern; only the coefficients differ.
  auto assemble = [](double first, double off, double middle, double last) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(k00, k00) = first;
    m(k11, k11) = last;
    m(k01, k01) = m(k10, k10) = m(k01, k10) = m(k10, k01) = middle;
    put_symmetric(m, k00, k01, off);
    put_symmetric(m, k00, k10, off);
    put_symmetric(m, k01, k11, off);
    put_symmetric(m, k10, k11, off);
    return m;
  };

  const Eigen::Matrix4cd aa = assemble((1.0 - 2.0 * l) * (a + d) * (a + d), (mu / 2.0) * (a + d) * (b + g),
                                       l + 2.0 * l * (b * g + d * a), (1.0 - 2.0 * l) * (b + g) * (b + g));
  const Eigen::Matrix4cd bb = assemble((1.0 - 2.0 * l) * (a + g) * (a + g), (mu / 2.0) * (a + g) * (b + d),
                                       l + 2.0 * l * (a * g + d * b), (1.0 - 2.0 * l) * (b + d) * (b + d));
  return {Density(aa), Density(bb)};
}

BuzekOutputs buzek_outputs(double alpha1_sq) {
  require_alpha2(alpha1_sq);
  const double a2 = alpha1_sq, b2 = 1.0 - alpha1_sq;
  const double ab = std::sqrt(a2) * std::sqrt(b2);

  Eigen::Vector4cd plus = Eigen::Vector4cd::Zero();
  plus(k01) = plus(k10) = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd local = (1.0 / 3.0) * plus * plus.adjoint();
  local(k00, k00) += 2.0 * a2 / 3.0;
  local(k11, k11) += 2.0 * b2 / 3.0;

  Eigen::Matrix4cd nonlocal = Eigen::Matrix4cd::Zero();
  nonlocal(k00, k00) = (24.0 * a2 + 1.0) / 36.0;
  nonlocal(k11, k11) = (24.0 * b2 + 1.0) / 36.0;
  nonlocal(k01, k01) = nonlocal(k10, k10) = 5.0 / 36.0;
  nonlocal(k00, k11) = nonlocal(k11, k00) = 4.0 * ab / 9.0;
  return {Density(local), Density(nonlocal)};
}

OracleOutputs broadcast_oracle(const PureTwoQubit& chi, const MachineParams& p) {
  const ClonerIsometry iso = build_isometry(p);
  const CMatrix u = iso.map();
  // (U ⊗ U) acting on chi in |a b> order lands in copyA copyA' mA copyB copyB' mB order.
  const CVector joint = tensor(u, u) * chi.vector();
  const CMatrix rho = projector(joint);

  constexpr Index m = ClonerIsometry::kMachineDim;
  const std::array<Index, 6> dims{2, 2, m, 2, 2, m};
  constexpr Index A = 0, Ap = 1, B = 3, Bp = 4;
  auto reduce = [&](Index first, Index second) {
    const std::array<Index, 2> keep{first, second};
    return Density(partial_trace(rho, dims, keep));
  };
  return {reduce(A, Bp), reduce(Ap, B), reduce(A, Ap), reduce(B, Bp), reduce(A, B), reduce(Ap, Bp)};
}

BroadcastReport assess_broadcast(Density nonlocal, Density local_a, Density local_b, double threshold) {
  const SeparabilityVerdict vn = separability_test(nonlocal, threshold);
  const SeparabilityVerdict va = separability_test(local_a, threshold);
  const SeparabilityVerdict vb = separability_test(local_b, threshold);
  const bool success = vn.verdict == Verdict::inseparable && va.verdict == Verdict::separable &&
                       vb.verdict == Verdict::separable;
  return {std::move(nonlocal), std::move(local_a), std::move(local_b), vn, va, vb, success};
}

OracleComparison compare_with_oracle(const Density& nonlocal, const LocalOutputs& local, const OracleOutputs& oracle,
                                     double tol) {
  auto cmp = [tol](const Density& x, const Density& y) {
    const double d = max_abs_difference(x.matrix(), y.matrix());
    return MatrixComparison{d, d <= tol};
  };
  return {cmp(nonlocal, oracle.ab_prime), cmp(local.aa, oracle.aa_prime), cmp(local.bb, oracle.bb_prime),
          cmp(oracle.ab_prime, oracle.a_prime_b)};
}

}  // namespace bcast
