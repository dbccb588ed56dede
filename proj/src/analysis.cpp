#include "bcast/analysis.hpp"

#include <cmath>
#include <string>

namespace bcast {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw std::out_of_range("machine parameter lambda must lie in (0, 1/2), got " + std::to_string(lambda));
}

// Intervals of the form 1/2 ± half_width, empty when the radicand is negative.
Interval symmetric_interval(double radicand, double denominator) {
  if (radicand < 0.0) return Interval::none();
  const double half = std::sqrt(radicand) / denominator;
  return Interval::make(0.5 - half, 0.5 + half);
}

}  // namespace

Interval intersect(const Interval& a, const Interval& b) {
  if (a.empty || b.empty) return Interval::none();
  const double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi) return Interval::none();
  return Interval::make(lo, hi);
}

Interval nonlocal_interval(double lambda) {
  require_lambda(lambda);
  const double mu2 = (1.0 - 2.0 * lambda) * (1.0 - 2.0 * lambda);
  const double flip = lambda * (1.0 - lambda);
  return symmetric_interval(mu2 * mu2 - 4.0 * flip * flip, 2.0 * mu2);
}

Interval local_interval(double lambda) {
  require_lambda(lambda);
  return symmetric_interval(1.0 - 4.0 * lambda, 2.0 * (1.0 - 2.0 * lambda));
}

IntervalReport broadcast_interval(double lambda) {
  const Interval i1 = nonlocal_interval(lambda);
  const Interval i2 = local_interval(lambda);
  const double g = gram_feasibility(make_machine(lambda));
  return {lambda, i1, i2, intersect(i1, i2), g >= -1e-12, g};
}

Interval scan_interval(double lambda, int grid_size, double threshold) {
  if (grid_size < 101) throw std::invalid_argument("scan_interval: grid_size must be at least 101");
  const MachineParams p = make_machine(lambda);
  Interval found = Interval::none();
  for (int i = 0; i < grid_size; ++i) {
    const double a2 = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const auto nonlocal = separability_test(nonlocal_output_schmidt(a2, p), threshold);
    if (nonlocal.verdict != Verdict::inseparable) continue;
    const auto local = separability_test(local_output_schmidt(a2, p), threshold);
    if (local.verdict != Verdict::separable) continue;
    if (found.empty) found = Interval::make(a2, a2);
    found.hi = a2;
  }
  return found;
}

std::string_view to_string(WidthComparison c) {
  switch (c) {
    case WidthComparison::wider: return "wider";
    case WidthComparison::narrower: return "narrower";
    case WidthComparison::equal: return "equal";
  }
  return "?";
}

double universal_interval_length() { return std::sqrt(39.0) / 8.0; }

WidthComparison compare_with_universal(double lambda) {
  const double diff = nonlocal_interval(lambda).length() - universal_interval_length();
  if (std::abs(diff) <= 1e-12) return WidthComparison::equal;
  return diff > 0.0 ? WidthComparison::wider : WidthComparison::narrower;
}

std::vector<double> equal_width_crossovers(int samples) {
  const double upper = (3.0 - std::sqrt(3.0)) / 6.0;
  auto f = [](double l) { return nonlocal_interval(l).length() - universal_interval_length(); };
  std::vector<double> roots;
  double prev_l = upper / samples, prev_f = f(prev_l);
  for (int i = 2; i < samples; ++i) {
    const double l = upper * i / samples;
    const double fl = f(l);
    if ((prev_f > 0.0) != (fl > 0.0)) {
      double lo = prev_l, hi = l, flo = prev_f;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_l = l;
    prev_f = fl;
  }
  return roots;
}

double fidelity(double alpha1_sq, double lambda) {
  return (1.0 - lambda) * (1.0 - lambda) - 4.0 * alpha1_sq * (1.0 - alpha1_sq) * lambda * (1.0 - 2.0 * lambda);
}

double fidelity_overlap(double alpha1_sq, const MachineParams& p) {
  const Eigen::Vector4cd chi = PureTwoQubit::schmidt(alpha1_sq).vector();
  const Density rho = nonlocal_output_schmidt(alpha1_sq, p);
  return (chi.adjoint() * rho.matrix() * chi)(0, 0).real();
}

double average_fidelity(double lambda) { return (7.0 * lambda * lambda - 8.0 * lambda + 3.0) / 3.0; }

double average_fidelity_trapezoid(double lambda, int points) {
  if (points < 2) throw std::invalid_argument("average_fidelity_trapezoid: need at least two points");
  const double h = 1.0 / (points - 1);
  double sum = 0.5 * (fidelity(0.0, lambda) + fidelity(1.0, lambda));
  for (int i = 1; i < points - 1; ++i) sum += fidelity(i * h, lambda);
  return sum * h;
}

double universal_average_fidelity() { return 67.0 / 108.0; }

DominanceRange dominance_range() {
  // (7λ² - 8λ + 3)/3 > 67/108  <=>  7λ² - 8λ + 41/36 > 0
  const double a = 7.0, b = -8.0, c = 3.0 - 3.0 * universal_average_fidelity();
  const double q = -0.5 * (b - std::sqrt(b * b - 4.0 * a * c));
  const double r_small = c / q, r_large = q / a;
  return {Interval::make(0.0, r_small), r_small, r_large};
}

std::vector<IntervalReport> table2() {
  std::vector<IntervalReport> rows;
  rows.reserve(kTable2Lambdas.size());
  for (double l : kTable2Lambdas) rows.push_back(broadcast_interval(l));
  return rows;
}

}  // namespace bcast
