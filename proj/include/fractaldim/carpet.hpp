#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fractaldim/errors.hpp"

namespace fractaldim {

/// One chosen cell of a pattern. `col` is the base-n digit of x (0 = leftmost
/// column), `row` the base-m digit of y (0 = bottom row).
struct Cell {
  int col = 0;
  int row = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A McMullen-Bedford pattern: an n-by-m grid with a chosen subset of cells.
struct Pattern {
  int n = 0;
  int m = 0;
  std::vector<Cell> cells;
};

struct ValidationReport {
  bool valid = false;
  std::vector<std::string> errors;
  bool function_graph = false;  // exactly one cell per column
  bool rows_nonempty = false;   // r(j) >= 1 for all j
};

/// A cell of a labeled system: pattern cell plus the label of the child
/// system used inside that cell at the next generation.
struct SystemCell {
  int col = 0;
  int row = 0;
  int child = 0;  // index into LabeledSystem::labels
  friend bool operator==(const SystemCell&, const SystemCell&) = default;
};

/// Patterns with per-cell child labels. A bare Pattern is the one-label
/// special case where every cell points back at the single label.
struct LabeledSystem {
  int n = 0;
  int m = 0;
  std::vector<std::string> labels;
  int root = 0;
  std::vector<std::vector<SystemCell>> cells;  // per label, sorted by (col,row)

  static LabeledSystem from_pattern(const Pattern& p, const std::string& label = "P");

  Pattern pattern_of(int label) const;
  int label_index(const std::string& name) const;
  std::size_t num_labels() const { return labels.size(); }

  bool is_function_graph() const;  // every pattern: exactly one cell per column

  /// Sorted per-row cell counts must agree across all patterns for the
  /// closed-form dimension operations; throws hypothesis_error otherwise.
  void require_uniform_row_counts() const;

  /// Cells of `label` lying in `row`.
  std::vector<SystemCell> cells_in_row(int label, int row) const;
};

/// A generation-k rectangle [p n^-k, (p+1) n^-k] x [q m^-k, (q+1) m^-k].
struct GenRect {
  int k = 0;
  std::int64_t col = 0;  // p in [0, n^k)
  std::int64_t row = 0;  // q in [0, m^k)
  int label = 0;
};

ValidationReport validate_pattern(const Pattern& p);

/// Throws validation_error listing the first violated invariant.
void require_valid(const Pattern& p);

/// r(j) = number of chosen cells in row j, j = 0..m-1.
std::vector<int> row_counts(const Pattern& p);

/// dim K(D) = log_m( sum_j r(j)^{log_n m} ), with 0^s = 0.
double hausdorff_dim_carpet(const Pattern& p);

/// dim_M K(D) = 1 + log_n(|D| / m); requires every row nonempty.
double minkowski_dim_carpet(const Pattern& p);

/// dim_psi K(D) = H log_m( sum_j r(j)^{log_n(m)/H} ); requires log_n m < H.
double parabolic_dim_carpet(const Pattern& p, double hurst);

/// Dimension-maximizing cell weights p(d) = r(row(d))^{theta/H - 1} / Z,
/// Z = sum_j r(j)^{theta/H}; aligned with p.cells.
std::vector<double> frostman_weights(const Pattern& p, double hurst);

/// min(alpha/H, alpha + d(1-H)).
double graph_dim_from_alpha(double alpha, double hurst, int d);

/// min(alpha/H, d).
double image_dim_from_alpha(double alpha, double hurst, int d);

/// 1 - H + H log_m( sum_j r(j)^{log_n(m)/H} ); requires log_n m < H and a
/// function-graph pattern.
double perturbed_graph_dim_carpet(const Pattern& p, double hurst);

/// 1 + log_n(n/m); requires n > m^2, all rows nonempty, one cell per column.
double minkowski_dim_perturbed(const Pattern& p);

struct DimensionComparison {
  double dim_gr_f = 0;     // Hausdorff dim of the carpet graph
  double dim_gr_B = 0;     // 2 - H, graph of the noise itself
  double dim_gr_Bf = 0;    // Hausdorff dim of the perturbed graph
  double dimM_gr_f = 0;    // Minkowski dim of the carpet graph
  double dimM_gr_Bf = 0;   // Minkowski dim of the perturbed graph
  bool strict_lower = false;  // max(dim_gr_B, dim_gr_f) < dim_gr_Bf
  bool strict_upper = false;  // dim_gr_Bf < dimM_gr_Bf
  bool rows_equal = false;    // all r(j) equal: both inequalities collapse
};

/// Requires n > m^2, one cell per column, all rows nonempty.
DimensionComparison dimension_comparison(const Pattern& p, double hurst = 0.5);

inline constexpr std::int64_t kDefaultCellBudget = 100'000'000;

/// Emits all generation-k rectangles with labels in column-major order.
/// Throws budget_error if the rectangle count would exceed `budget`.
void generation_cells(const LabeledSystem& s, int k,
                      const std::function<void(const GenRect&)>& emit,
                      std::int64_t budget = kDefaultCellBudget);

std::vector<GenRect> generation_cells(const LabeledSystem& s, int k,
                                      std::int64_t budget = kDefaultCellBudget);

std::int64_t generation_count(const LabeledSystem& s, int k,
                              std::int64_t budget = kDefaultCellBudget);

// System-level wrappers for the closed-form calculators; they validate that
// all patterns share one row-count multiset and then evaluate on the root
// pattern.
double hausdorff_dim_carpet(const LabeledSystem& s);
double minkowski_dim_carpet(const LabeledSystem& s);
double parabolic_dim_carpet(const LabeledSystem& s, double hurst);
double perturbed_graph_dim_carpet(const LabeledSystem& s, double hurst);
double minkowski_dim_perturbed(const LabeledSystem& s);
DimensionComparison dimension_comparison(const LabeledSystem& s, double hurst = 0.5);

// JSON pattern/system file I/O (schema documented in the README).
LabeledSystem system_from_json(const std::string& json_text);
std::string system_to_json(const LabeledSystem& s);
LabeledSystem load_system(const std::string& path);
void save_system(const LabeledSystem& s, const std::string& path);

}  // namespace fractaldim
