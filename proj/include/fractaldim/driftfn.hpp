#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fractaldim/carpet.hpp"

namespace fractaldim {

/// Exact rational in [0,1]; used so dividing-line points have exact digits.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Dyadic (base-m) bracket around a drift value; hi - lo = m^-depth.
struct Bracket {
  double lo = 0;
  double hi = 0;
  double mid() const { return 0.5 * (lo + hi); }
};

/// The base-n digit path taken while evaluating f, including the label
/// before each step.
struct DigitTrace {
  std::vector<int> x_digits;
  std::vector<int> y_digits;
  std::vector<int> labels;  // length k+1, labels[0] = root
};

/// The 6x2 two-label system whose attractor is the graph of the drift f.
LabeledSystem ab_system();

/// Digit evaluation of the drift function: returns the partial sum of
/// y_i m^-i through depth k and that plus m^-k. Uses the terminating
/// (infinite-zeros) base-n expansion of x. Requires a function-graph system.
Bracket eval_f(const LabeledSystem& s, Rational x, int depth);
Bracket eval_f(const LabeledSystem& s, double x, int depth);

/// Same evaluation on an explicit base-n digit sequence (padded with zeros
/// past its end); the workhorse behind the dual-representation checks.
Bracket eval_digits(const LabeledSystem& s, const std::vector<int>& x_digits, int depth,
                    DigitTrace* trace = nullptr);

/// Exact value of f at the base-n grid point num/n^level (terminating
/// expansion), using the closed-form value of the all-zeros tail per label.
double eval_f_grid_exact(const LabeledSystem& s, std::int64_t num, int level);

/// Bracket midpoints (t_i, f(t_i)) at t_i = i/points for i = 0..points.
std::vector<std::pair<double, double>> sample_drift_grid(const LabeledSystem& s, int points,
                                                         int depth);

struct HolderReport {
  double max_ratio = 0;      // max |f(x)-f(x')| / |x-x'|^theta over adjacent pairs
  double witness_ratio = 0;  // same max; kept separate for reporting symmetry
  int witness_level = 0;
  std::int64_t witness_index = 0;
};

/// Scans all adjacent base-n grid pairs at every level j <= depth.
HolderReport holder_check(const LabeledSystem& s, int depth);

struct WellDefinedReport {
  bool pass = false;
  double worst_gap = 0;
  double tolerance = 0;  // 2 m^-depth
  int worst_level = 0;
  std::int64_t worst_index = 0;  // x = index * n^-level
};

/// Evaluates f at every dividing point via both base-n representations.
WellDefinedReport well_defined_check(const LabeledSystem& s, int depth);

}  // namespace fractaldim
