#include "fractaldim/dimest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "fractaldim/format.hpp"

namespace fractaldim {

namespace {

double theta_of(const LabeledSystem& s) { return std::log(double(s.m)) / std::log(double(s.n)); }

void require_parabolic(const LabeledSystem& s, double hurst) {
  if (!(hurst > 0 && hurst < 1)) throw validation_error("hurst must lie in (0,1)");
  if (!(theta_of(s) < hurst)) {
    throw hypothesis_error("parabolic operations require log_n(m) < H");
  }
}

int q_level(double theta, double hurst, int k) { return int(std::floor(theta * k / hurst)); }

// Grid index under the lower-left tie rule: a boundary point belongs to the
// cell with the smaller index.
std::int64_t grid_index(double v, double h) {
  auto i = std::int64_t(std::ceil(v / h)) - 1;
  return i < 0 ? 0 : i;
}

void require_unit_square(const std::vector<std::pair<double, double>>& points) {
  for (const auto& [x, y] : points) {
    if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) {
      throw validation_error("points must lie in [0,1]^2");
    }
  }
}

std::int64_t count_cells(const std::vector<std::pair<double, double>>& points, double dx,
                         double dy) {
  std::unordered_set<std::uint64_t> cells;
  cells.reserve(points.size());
  for (const auto& [x, y] : points) {
    auto ix = std::uint64_t(grid_index(x, dx));
    auto iy = std::uint64_t(grid_index(y, dy));
    cells.insert((ix << 32) | iy);
  }
  return std::int64_t(cells.size());
}

// Realizability of a pending y-digit queue from a given label, memoized.
struct Reachability {
  const LabeledSystem& s;
  std::map<std::pair<int, std::vector<int>>, bool> memo;

  bool check(int label, const std::vector<int>& pending) {
    if (pending.empty()) return true;
    auto key = std::make_pair(label, pending);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo.emplace(key, false);  // cycle guard; queues shrink, so cycles cannot succeed
    std::vector<int> rest(pending.begin() + 1, pending.end());
    bool ok = false;
    for (const SystemCell& c : s.cells[std::size_t(label)]) {
      if (c.row == pending.front() && check(c.child, rest)) {
        ok = true;
        break;
      }
    }
    memo[key] = ok;
    return ok;
  }
};

// Tree DP for the minimal canonical-cover content, leaf level fixed.
struct ContentDp {
  const LabeledSystem& s;
  double hurst, beta, theta;
  int leaf;
  std::int64_t budget;
  std::int64_t work = 0;
  Reachability& reach;
  std::map<std::tuple<int, int, std::vector<int>>, double> memo;

  double delta(int k) const { return std::pow(double(s.m), -double(k) / hurst); }

  double cost(int k, int label, const std::vector<int>& pending) {
    if (++work > budget) throw budget_error("content DP exceeded its state budget");
    if (k == leaf) return std::pow(delta(k), beta);
    auto key = std::make_tuple(k, label, pending);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    // Consume q_{k+1} - q_k x-digits (with multiplicity), then append the
    // next y digit; children sharing a state share one subtree cost.
    int dq = q_level(theta, hurst, k + 1) - q_level(theta, hurst, k);
    std::map<std::pair<int, std::vector<int>>, double> paths;
    paths[{label, pending}] = 1.0;
    for (int step = 0; step < dq; ++step) {
      std::map<std::pair<int, std::vector<int>>, double> next;
      for (const auto& [state, mult] : paths) {
        const auto& [lab, pend] = state;
        std::vector<int> rest(pend.begin() + 1, pend.end());
        for (const SystemCell& c : s.cells[std::size_t(lab)]) {
          if (c.row == pend.front()) next[{c.child, rest}] += mult;
        }
      }
      paths = std::move(next);
      if (++work > budget) throw budget_error("content DP exceeded its state budget");
    }
    double total = 0;
    for (const auto& [state, mult] : paths) {
      const auto& [lab, pend] = state;
      for (int y = 0; y < s.m; ++y) {
        std::vector<int> child = pend;
        child.push_back(y);
        if (reach.check(lab, child)) total += mult * cost(k + 1, lab, child);
      }
    }
    double result = std::min(std::pow(delta(k), beta), total);
    memo[key] = result;
    return result;
  }
};

}  // namespace

void validate_scale_counts(const ScaleCounts& sc) {
  for (std::size_t i = 0; i < sc.entries.size(); ++i) {
    const auto& e = sc.entries[i];
    if (!(e.delta > 0 && e.delta < 1 + 1e-12)) {
      throw validation_error("scale deltas must lie in (0,1]");
    }
    if (e.count < 1) throw validation_error("scale counts must be positive");
    if (i > 0) {
      if (!(e.delta < sc.entries[i - 1].delta)) {
        throw validation_error("scale deltas must strictly decrease");
      }
      if (e.count < sc.entries[i - 1].count) {
        throw validation_error("counts must not decrease as delta shrinks");
      }
    }
  }
}

double canonical_delta(const LabeledSystem& s, double hurst, int k) {
  require_parabolic(s, hurst);
  return std::pow(double(s.m), -double(k) / hurst);
}

bool canonical_admissible(const LabeledSystem& s, double hurst, const CanonicalRect& rect) {
  require_parabolic(s, hurst);
  double theta = theta_of(s);
  int q = q_level(theta, hurst, rect.k);
  if (int(rect.x_prefix.size()) != q || int(rect.y_prefix.size()) != rect.k) {
    throw validation_error("canonical rect has digit prefixes of the wrong length");
  }
  int label = s.root;
  for (int i = 0; i < q; ++i) {
    bool found = false;
    for (const SystemCell& c : s.cells[std::size_t(label)]) {
      if (c.col == rect.x_prefix[std::size_t(i)] && c.row == rect.y_prefix[std::size_t(i)]) {
        label = c.child;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  Reachability reach{s, {}};
  std::vector<int> pending(rect.y_prefix.begin() + q, rect.y_prefix.end());
  return reach.check(label, pending);
}

std::int64_t box_count_points(const std::vector<std::pair<double, double>>& points, double delta) {
  if (!(delta > 0 && delta <= 1)) throw validation_error("delta must lie in (0,1]");
  require_unit_square(points);
  return count_cells(points, delta, delta);
}

std::int64_t parabolic_box_count_points(const std::vector<std::pair<double, double>>& points,
                                        double delta, double hurst) {
  if (!(delta > 0 && delta <= 1)) throw validation_error("delta must lie in (0,1]");
  if (!(hurst > 0 && hurst <= 1)) throw validation_error("hurst must lie in (0,1]");
  require_unit_square(points);
  return count_cells(points, delta, std::pow(delta, hurst));
}

std::int64_t carpet_box_count_exact(const LabeledSystem& s, int j, std::int64_t budget) {
  if (!s.is_function_graph()) {
    throw hypothesis_error("exact graph counts require a function-graph system");
  }
  std::int64_t npj = 1, mpj = 1;
  for (int i = 0; i < j; ++i) {
    npj *= s.n;
    mpj *= s.m;
  }
  std::int64_t total = 0;
  generation_cells(
      s, j,
      [&](const GenRect& r) {
        // The rect owns one n^-j column; count the squares its y-interval
        // [row m^-j, (row+1) m^-j] meets, open at the top boundary so that
        // vertically flush neighbours never share a square.
        std::int64_t lo = (r.row * npj) / mpj;
        std::int64_t hi = ((r.row + 1) * npj - 1) / mpj;
        total += hi - lo + 1;
      },
      budget);
  return total;
}

DimReport fit_dimension(const ScaleCounts& sc) {
  if (sc.entries.size() < 3) throw validation_error("need at least 3 scales to fit");
  std::size_t n = sc.entries.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sc.entries[i].delta > 0 && sc.entries[i].count > 0)) {
      throw validation_error("scales need positive delta and count");
    }
    xs[i] = std::log(1.0 / sc.entries[i].delta);
    ys[i] = std::log(double(sc.entries[i].count));
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0)) throw validation_error("scales are degenerate (equal deltas)");

  DimReport rep;
  rep.scales = sc;
  rep.method = "ols-loglog";
  if (syy == 0) {
    rep.estimate = 0;
    rep.std_error = 0;
    rep.r_squared = 1;
    rep.degenerate = true;
    return rep;
  }
  double slope = sxy / sxx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double resid = (ys[i] - my) - slope * (xs[i] - mx);
    sse += resid * resid;
  }
  rep.estimate = slope;
  rep.std_error = n > 2 ? std::sqrt(std::max(sse, 0.0) / double(n - 2) / sxx) : 0;
  rep.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
  return rep;
}

std::vector<double> parabolic_content_dp(const LabeledSystem& s, double hurst, double beta,
                                         int max_level, std::int64_t budget) {
  require_parabolic(s, hurst);
  if (max_level < 1) throw validation_error("max_level must be >= 1");
  if (beta < 0) throw validation_error("beta must be >= 0");
  Reachability reach{s, {}};
  std::vector<double> out;
  out.reserve(std::size_t(max_level));
  for (int leaf = 1; leaf <= max_level; ++leaf) {
    ContentDp dp{s, hurst, beta, theta_of(s), leaf, budget, 0, reach, {}};
    out.push_back(dp.cost(0, s.root, {}));
  }
  return out;
}

std::vector<double> mass_ratio_bound(const LabeledSystem& s, double hurst, double beta,
                                     int max_level, std::int64_t budget) {
  require_parabolic(s, hurst);
  s.require_uniform_row_counts();
  if (max_level < 1) throw validation_error("max_level must be >= 1");
  double theta = theta_of(s);
  double rr = theta / hurst;
  std::vector<int> rc = row_counts(s.pattern_of(s.root));
  double z = 0;
  for (int r : rc) {
    if (r > 0) z += std::pow(double(r), rr);
  }
  std::vector<double> pw(std::size_t(s.m), 0.0);
  for (int y = 0; y < s.m; ++y) {
    if (rc[std::size_t(y)] > 0) pw[std::size_t(y)] = std::pow(double(rc[std::size_t(y)]), rr - 1) / z;
  }

  std::int64_t work = 0;
  std::vector<double> out;
  out.reserve(std::size_t(max_level));
  for (int k = 1; k <= max_level; ++k) {
    int q = q_level(theta, hurst, k);
    double best = 0;
    // Weights depend only on the y digits (uniform row counts), so labels
    // enter through realizability alone.
    auto rec = [&](auto&& self, int label, int level, double acc) -> void {
      if (++work > budget) throw budget_error("mass-ratio scan exceeded its budget");
      if (level > k) {
        best = std::max(best, acc);
        return;
      }
      for (int y = 0; y < s.m; ++y) {
        if (rc[std::size_t(y)] == 0) continue;
        double w = pw[std::size_t(y)] * (level > q ? double(rc[std::size_t(y)]) : 1.0);
        std::unordered_set<int> children;
        for (const SystemCell& c : s.cells[std::size_t(label)]) {
          if (c.row == y) children.insert(c.child);
        }
        for (int child : children) self(self, child, level + 1, acc * w);
      }
    };
    rec(rec, s.root, 1, 1.0);
    out.push_back(best / std::pow(canonical_delta(s, hurst, k), beta));
  }
  return out;
}

BracketReport parabolic_dim_bracket(const LabeledSystem& s, double hurst, int max_level,
                                    double step, std::int64_t budget) {
  require_parabolic(s, hurst);
  if (max_level < 2) throw validation_error("bracket needs max_level >= 2");
  if (!(step > 0 && step < 1)) throw validation_error("step must lie in (0,1)");
  int k_ref = (max_level + 1) / 2;

  BracketReport rep;
  rep.step = step;
  rep.levels = max_level;
  rep.formula = parabolic_dim_carpet(s, hurst);
  rep.beta_lo = 0;
  rep.beta_hi = 0;
  const double kBetaMax = 2.5;
  bool have_lo = false, have_hi = false;
  for (double beta = step; beta <= kBetaMax + 1e-9; beta += step) {
    auto mass = mass_ratio_bound(s, hurst, beta, max_level, budget);
    if (mass[std::size_t(max_level - 1)] <= 2.0 * mass[std::size_t(k_ref - 1)]) {
      rep.beta_lo = beta;  // survives: mass ratio stays within factor 2
      have_lo = true;
    }
    auto content = parabolic_content_dp(s, hurst, beta, max_level, budget);
    if (!have_hi && content[std::size_t(max_level - 1)] <= 0.5 * content[std::size_t(k_ref - 1)]) {
      rep.beta_hi = beta;  // first beta whose content halves
      have_hi = true;
    }
  }
  if (!have_lo || !have_hi) {
    rep.inverted = true;
    rep.consistent = false;
    return rep;
  }
  rep.inverted = rep.beta_lo > rep.beta_hi;
  rep.consistent =
      rep.formula >= rep.beta_lo - step - 1e-12 && rep.formula <= rep.beta_hi + step + 1e-12;
  return rep;
}

DimReport empirical_dim_graph(const std::vector<std::pair<double, double>>& points,
                              const std::vector<double>& scales, double hurst, CountMode mode) {
  if (scales.size() < 3) throw validation_error("need at least 3 scales");
  if (!(hurst > 0 && hurst < 1)) throw validation_error("hurst must lie in (0,1)");
  require_unit_square(points);
  std::vector<double> sorted = scales;
  std::sort(sorted.rbegin(), sorted.rend());

  ScaleCounts sc;
  sc.source = mode == CountMode::euclidean ? "column-range euclidean" : "column-range parabolic";
  for (double delta : sorted) {
    if (!(delta > 0 && delta <= 1)) throw validation_error("delta must lie in (0,1]");
    double h = mode == CountMode::euclidean ? delta : std::pow(delta, hurst);
    std::unordered_map<std::int64_t, std::pair<double, double>> columns;
    for (const auto& [x, y] : points) {
      auto [it, fresh] = columns.try_emplace(grid_index(x, delta), std::make_pair(y, y));
      if (!fresh) {
        it->second.first = std::min(it->second.first, y);
        it->second.second = std::max(it->second.second, y);
      }
    }
    std::int64_t count = 0;
    for (const auto& [col, range] : columns) {
      count += grid_index(range.second, h) - grid_index(range.first, h) + 1;
    }
    sc.entries.push_back({delta, count});
  }
  return fit_dimension(sc);
}

std::string scale_counts_to_csv(const ScaleCounts& sc) {
  std::string out = "delta,count\n";
  for (const auto& e : sc.entries) {
    out += fmt17(e.delta);
    out += ',';
    out += std::to_string(e.count);
    out += '\n';
  }
  return out;
}

ScaleCounts scale_counts_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ScaleCounts sc;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("delta", 0) == 0) continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) throw io_error("scale CSV rows need two columns");
    try {
      sc.entries.push_back({std::stod(line.substr(0, comma)),
                            std::stoll(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw io_error("scale CSV has a malformed number: " + line);
    }
  }
  return sc;
}

std::string dim_report_to_json(const DimReport& report) {
  std::string out = "{";
  out += "\"estimate\": " + fmt15(report.estimate);
  out += ", \"stderr\": " + fmt15(report.std_error);
  out += ", \"r2\": " + fmt15(report.r_squared);
  out += ", \"degenerate\": " + std::string(report.degenerate ? "true" : "false");
  out += ", \"method\": \"" + report.method + "\"";
  out += ", \"source\": \"" + report.scales.source + "\"";
  out += ", \"scales\": [";
  for (std::size_t i = 0; i < report.scales.entries.size(); ++i) {
    if (i) out += ", ";
    out += "{\"delta\": " + fmt15(report.scales.entries[i].delta) +
           ", \"count\": " + std::to_string(report.scales.entries[i].count) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace fractaldim
