#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fractaldim/carpet.hpp"

namespace fractaldim {

struct ScaleEntry {
  double delta = 0;
  std::int64_t count = 0;
};

struct ScaleCounts {
  std::vector<ScaleEntry> entries;  // deltas strictly decreasing
  std::string source;
};

/// Throws validation_error unless deltas strictly decrease and counts never
/// decrease as delta shrinks.
void validate_scale_counts(const ScaleCounts& sc);

/// A level-k parabolic rectangle: fixes floor(theta k / H) base-n digits of
/// x and k base-m digits of y; delta = m^(-k/H), so height = delta^H exactly
/// and width/delta lies in [1, n).
struct CanonicalRect {
  int k = 1;
  std::vector<int> x_prefix;
  std::vector<int> y_prefix;
  double delta = 0;
};

double canonical_delta(const LabeledSystem& s, double hurst, int k);

/// Exact digit-path search: does some x-digit extension inside the rect's
/// column produce the rect's y-prefix?
bool canonical_admissible(const LabeledSystem& s, double hurst, const CanonicalRect& rect);

struct DimReport {
  double estimate = 0;
  double std_error = 0;
  double r_squared = 0;
  bool degenerate = false;  // all counts equal: slope pinned to 0
  std::string method;
  ScaleCounts scales;
};

/// Occupied cells of the axis-aligned delta-grid. Boundary points belong to
/// the lower-left cell.
std::int64_t box_count_points(const std::vector<std::pair<double, double>>& points, double delta);

/// Same with delta (time) by delta^H (space) rectangles.
std::int64_t parabolic_box_count_points(const std::vector<std::pair<double, double>>& points,
                                        double delta, double hurst);

/// Exact number of n^(-j)-grid squares meeting the attractor graph: each
/// generation-j rectangle owns one x-column and contributes the squares its
/// y-interval meets (shared horizontal boundaries resolved lower-left).
std::int64_t carpet_box_count_exact(const LabeledSystem& s, int j,
                                    std::int64_t budget = kDefaultCellBudget);

/// Unweighted OLS of log(count) on log(1/delta); needs >= 3 scales.
DimReport fit_dimension(const ScaleCounts& sc);

/// Minimal sum of delta^beta over antichain covers drawn from canonical
/// rectangles of levels 0..k (level 0 = unit square), covering every
/// admissible level-k rectangle; entry [k-1] of the result uses leaves at
/// level k, for k = 1..max_level. Tree DP, exact.
std::vector<double> parabolic_content_dp(const LabeledSystem& s, double hurst, double beta,
                                         int max_level, std::int64_t budget = kDefaultCellBudget);

/// Max over admissible level-k rectangles of mu(rect) / delta_k^beta, where
/// mu puts the dimension-maximizing cell weights on digits; entry [k-1] for
/// k = 1..max_level. Bounded ratios certify positive content at these scales.
std::vector<double> mass_ratio_bound(const LabeledSystem& s, double hurst, double beta,
                                     int max_level, std::int64_t budget = kDefaultCellBudget);

struct BracketReport {
  double beta_lo = 0;  // largest grid beta whose mass ratio stays within
                       // factor 2 from level ceil(K/2) to level K
  double beta_hi = 0;  // smallest grid beta whose content halves from level
                       // ceil(K/2) to level K
  double step = 0;
  int levels = 0;
  bool inverted = false;    // beta_lo > beta_hi: diagnostic failure
  double formula = 0;       // closed-form parabolic dimension
  bool consistent = false;  // formula in [beta_lo - step, beta_hi + step]
};

BracketReport parabolic_dim_bracket(const LabeledSystem& s, double hurst, int max_level,
                                    double step, std::int64_t budget = kDefaultCellBudget);

enum class CountMode { euclidean, parabolic };

/// Box-count fit for a sampled graph: per delta-column, counts the cells
/// spanned by the column's value range (height delta, or delta^H in
/// parabolic mode), so fine scales are not starved by point sparsity.
DimReport empirical_dim_graph(const std::vector<std::pair<double, double>>& points,
                              const std::vector<double>& scales, double hurst, CountMode mode);

// CSV/JSON serialization for the external formats.
std::string scale_counts_to_csv(const ScaleCounts& sc);
ScaleCounts scale_counts_from_csv(const std::string& text);
std::string dim_report_to_json(const DimReport& report);

}  // namespace fractaldim
