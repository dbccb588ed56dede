#include "bcast/cloner.hpp"

#include <cmath>
#include <string>

namespace bcast {

namespace {

constexpr double kGramClipTolerance = 1e-12;
constexpr double kUniversalLambda = 1.0 / 6.0;

// Printed reference column values for the nine rows.
constexpr std::array<double, 9> kTable1PrintedLambda = {0.007, 0.029, 0.061, 0.101, 0.141,
                                                        0.173, 0.187, 0.173, 0.115};
constexpr std::array<double, 9> kTable1PrintedDa = {0.000098, 0.001682, 0.007442, 0.020402, 0.039762,
                                                    0.059858, 0.069938, 0.059858, 0.026450};

}  // namespace

InfeasibleMachine::InfeasibleMachine(double lambda, double min_eigenvalue)
    : std::domain_error("infeasible cloning machine at lambda=" + std::to_string(lambda) +
                        ": Gram matrix has minimum eigenvalue " + std::to_string(min_eigenvalue)),
      lambda_(lambda),
      min_eigenvalue_(min_eigenvalue) {}

MachineParams make_machine(double lambda) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw std::out_of_range("machine parameter lambda must lie in (0, 1/2), got " + std::to_string(lambda));
  return MachineParams(lambda, 1.0 - 2.0 * lambda, std::abs(lambda - kUniversalLambda) <= 1e-12);
}

PureQubit::PureQubit(double alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  const double norm = alpha * alpha + std::norm(beta);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("qubit amplitudes not normalized: |alpha|^2+|beta|^2 = " + std::to_string(norm));
}

PureQubit PureQubit::from_alpha2(double alpha2) {
  if (alpha2 < 0.0 || alpha2 > 1.0) throw std::out_of_range("alpha^2 must lie in [0, 1]");
  return PureQubit(std::sqrt(alpha2), Complex(std::sqrt(1.0 - alpha2), 0.0));
}

Eigen::Matrix4d gram_matrix(const MachineParams& p) {
  const double l = p.lambda();
  const double half_mu = p.mu() / 2.0;
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g.diagonal() << 1.0 - 2.0 * l, 1.0 - 2.0 * l, l, l;
  g(0, 3) = g(3, 0) = half_mu;  // <Q0|Y1>
  g(1, 2) = g(2, 1) = half_mu;  // <Q1|Y0>
  return g;
}

double gram_feasibility(const MachineParams& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(gram_matrix(p), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double gram_block_determinant(double lambda) { return (1.0 - 2.0 * lambda) * (6.0 * lambda - 1.0) / 4.0; }

ClonerIsometry::ClonerIsometry(MachineParams params, Eigen::Matrix4d machine_vectors)
    : params_(params), machine_vectors_(std::move(machine_vectors)), map_(Map::Zero()) {
  const auto q0 = machine_vectors_.col(0), q1 = machine_vectors_.col(1);
  const auto y0 = machine_vectors_.col(2), y1 = machine_vectors_.col(3);
  // Output index = copy_a * 8 + copy_b * 4 + machine.
  auto put = [this](int column, int copy_a, int copy_b, const auto& v) {
    for (Index m = 0; m < kMachineDim; ++m) map_(copy_a * 8 + copy_b * 4 + m, column) += v(m);
  };
  put(0, 0, 0, q0);
  put(0, 0, 1, y0);
  put(0, 1, 0, y0);
  put(1, 1, 1, q1);
  put(1, 0, 1, y1);
  put(1, 1, 0, y1);
}

double ClonerIsometry::orthonormality_error() const {
  const Eigen::Matrix2cd overlaps = map_.adjoint() * map_;
  return (overlaps - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

Eigen::Matrix<Complex, ClonerIsometry::kOutputDim, 1> ClonerIsometry::apply(const PureQubit& psi) const {
  return map_ * psi.vector();
}

ClonerIsometry build_isometry(const MachineParams& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(gram_matrix(p));
  Eigen::Vector4d w = solver.eigenvalues();
  if (w(0) < -kGramClipTolerance) throw InfeasibleMachine(p.lambda(), w(0));
  w = w.cwiseMax(0.0);
  // G = V diag(w) V^T = L^T L with L = diag(sqrt w) V^T; columns of L are the states.
  const Eigen::Matrix4d factor = w.cwiseSqrt().asDiagonal() * solver.eigenvectors().transpose();
  ClonerIsometry iso(p, factor);
  const double err = iso.orthonormality_error();
  if (err > 1e-12) throw std::runtime_error("cloner isometry columns not orthonormal, error " + std::to_string(err));
  return iso;
}

Density clone_reduced(const PureQubit& psi, const MachineParams& p) {
  const double a = psi.alpha();
  const Complex b = psi.beta();
  const double a2 = a * a, b2 = std::norm(b);
  const double shift = p.lambda() * (b2 - a2);
  CMatrix rho(2, 2);
  rho(0, 0) = a2 + shift;
  rho(1, 1) = b2 - shift;
  rho(0, 1) = a * std::conj(b) * p.mu();
  rho(1, 0) = a * b * p.mu();
  return Density(std::move(rho));
}

Density clone_reduced(const PureQubit& psi, const ClonerIsometry& iso) {
  const CVector out = iso.apply(psi);
  const std::array<Index, 3> dims{2, 2, ClonerIsometry::kMachineDim};
  const std::array<Index, 1> keep{0};
  return Density(partial_trace(projector(out), dims, keep));
}

Density clone_pair(const PureQubit& psi, const ClonerIsometry& iso) {
  const CVector out = iso.apply(psi);
  const std::array<Index, 3> dims{2, 2, ClonerIsometry::kMachineDim};
  const std::array<Index, 2> keep{0, 1};
  return Density(partial_trace(projector(out), dims, keep));
}

double distortion_a(double alpha2, double lambda, double mu) {
  const double a4 = alpha2 * alpha2;
  return 2.0 * lambda * lambda * (4.0 * a4 - 4.0 * alpha2 + 1.0) +
         2.0 * alpha2 * (1.0 - alpha2) * (mu - 1.0) * (mu - 1.0);
}

double distortion_a(double alpha2, const MachineParams& p) { return distortion_a(alpha2, p.lambda(), p.mu()); }

double distortion_ab(double alpha2, double lambda) {
  const double a = alpha2, b = 1.0 - alpha2, mu = 1.0 - 2.0 * lambda;
  const auto sq = [](double v) { return v * v; };
  return sq(a * a - a * mu) + 4.0 * a * b * sq(a - mu / 2.0) + 2.0 * a * a * b * b +
         sq(2.0 * a * b - 2.0 * lambda) + 4.0 * a * b * sq(b - mu / 2.0) + b * b * sq(2.0 * lambda - a);
}

double optimal_lambda(double alpha2) { return 3.0 * alpha2 * (1.0 - alpha2) / 4.0; }

double round_half_up(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  // The nudge keeps values such as 0.0288 (stored as 0.02879999...) from rounding down.
  const double scaled = std::abs(x) * scale * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  return std::copysign(std::floor(scaled + 0.5) / scale, x);
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  rows.reserve(kTable1PrintedLambda.size());
  for (std::size_t i = 0; i < kTable1PrintedLambda.size(); ++i) {
    const double x = 0.1 * static_cast<double>(i + 1);
    Table1Row r{};
    r.x = x;
    r.lambda_alpha_reading = optimal_lambda(x * x);
    r.lambda_rounded = round_half_up(r.lambda_alpha_reading, 3);
    r.lambda_alpha2_reading = optimal_lambda(x);
    r.d_a = 2.0 * r.lambda_alpha_reading * r.lambda_alpha_reading;
    r.d_a_rounded_lambda = 2.0 * r.lambda_rounded * r.lambda_rounded;
    r.universal_lambda = kUniversalLambda;
    r.universal_d_a = 2.0 * kUniversalLambda * kUniversalLambda;
    r.printed_lambda = kTable1PrintedLambda[i];
    r.printed_d_a = kTable1PrintedDa[i];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace bcast
