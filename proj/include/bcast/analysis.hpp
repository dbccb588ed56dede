// analysis.hpp: broadcastability intervals in α1², broadcast fidelity, and
// the comparison against the universal cloner.

#pragma once

#include "bcast/broadcast.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace bcast {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  static Interval make(double lo, double hi) { return {lo, hi, false}; }
  static Interval none() { return {}; }

  double length() const { return empty ? 0.0 : hi - lo; }
  bool contains(double x) const { return !empty && x >= lo && x <= hi; }
  bool contains(const Interval& other) const { return other.empty || (!empty && other.lo >= lo && other.hi <= hi); }
};

Interval intersect(const Interval& a, const Interval& b);

struct IntervalReport {
  double lambda;
  Interval nonlocal_inseparable;  // I1
  Interval local_separable;       // I2
  Interval broadcastable;         // I1 ∩ I2
  bool feasible;                  // Gram matrix PSD
  double min_gram_eigenvalue;
};

/// α1² for which rho_AB' is entangled. Empty once λ >= (3 - √3)/6.
Interval nonlocal_interval(double lambda);

/// α1² for which rho_AA' is separable. Empty once λ > 1/4.
Interval local_interval(double lambda);

IntervalReport broadcast_interval(double lambda);

/// Numeric counterpart of broadcast_interval: sweeps α1² over `grid_size`
/// uniform points in [0, 1] and runs the separability test on the closed-form
/// outputs at each point.
Interval scan_interval(double lambda, int grid_size, double threshold = kDefaultSeparabilityThreshold);

enum class WidthComparison { wider, narrower, equal };

std::string_view to_string(WidthComparison c);

/// Width of the universal machine's broadcasting interval, √39/8.
double universal_interval_length();

WidthComparison compare_with_universal(double lambda);

/// λ values in (0, (3-√3)/6) where the nonlocal interval is exactly as wide as
/// the universal one, located by sign-change scan and bisection.
std::vector<double> equal_width_crossovers(int samples = 2000);

/// <χ|rho_AB'|χ> in closed form.
double fidelity(double alpha1_sq, double lambda);

/// <χ|rho_AB'|χ> evaluated as a quadratic form on the closed-form matrix.
double fidelity_overlap(double alpha1_sq, const MachineParams& p);

/// Average of fidelity over α1² ∈ [0, 1], (7λ² - 8λ + 3)/3.
double average_fidelity(double lambda);

/// Composite trapezoid estimate of the same average.
double average_fidelity_trapezoid(double lambda, int points = 10001);

/// Average fidelity of the universal machine, 67/108.
double universal_average_fidelity();

struct DominanceRange {
  Interval lambda_range;  // admissible λ with higher average fidelity
  double lower_root;      // 1/6
  double rejected_root;   // 41/42, outside (0, 1/2)
};

DominanceRange dominance_range();

inline constexpr std::array<double, 9> kTable2Lambdas = {0.007, 0.029, 0.061, 0.101, 0.115,
                                                         0.141, 0.159, 0.173, 0.187};

std::vector<IntervalReport> table2();

}  // namespace bcast
