#include "fractaldim/driftfn.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace fractaldim {

namespace {

void require_function_graph(const LabeledSystem& s) {
  if (!s.is_function_graph()) {
    throw hypothesis_error("drift evaluation requires a function-graph system");
  }
}

// Unique cell in column `col` of pattern `label` (function-graph systems).
const SystemCell& column_cell(const LabeledSystem& s, int label, int col) {
  for (const SystemCell& c : s.cells[label]) {
    if (c.col == col) return c;
  }
  throw validation_error("function-graph pattern misses a column");
}

// Value of f under the constant digit tail `digit` seen from each label:
// t(L) = (row_L(digit) + t(child_L(digit))) / m. The label path under a
// constant tail is eventually periodic, so solve by following the cycle.
std::vector<double> tail_values(const LabeledSystem& s, int digit) {
  std::size_t L = s.num_labels();
  std::vector<int> next(L), row(L);
  for (std::size_t l = 0; l < L; ++l) {
    const SystemCell& c = column_cell(s, int(l), digit);
    next[l] = c.child;
    row[l] = c.row;
  }
  std::vector<double> t(L, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t start = 0; start < L; ++start) {
    if (!std::isnan(t[start])) continue;
    // Walk until a label repeats or a solved value is reached.
    std::vector<int> path;
    std::vector<char> on_path(L, 0);
    int cur = int(start);
    while (std::isnan(t[cur]) && !on_path[cur]) {
      on_path[cur] = 1;
      path.push_back(cur);
      cur = next[cur];
    }
    if (std::isnan(t[cur])) {
      // Found a cycle starting at cur: t on the cycle solves a linear fixed point.
      std::vector<int> cycle;
      int c2 = cur;
      do {
        cycle.push_back(c2);
        c2 = next[c2];
      } while (c2 != cur);
      double num = 0, scale = 1;
      for (int l : cycle) {
        scale /= s.m;
        num += row[l] * scale;
      }
      t[cur] = num / (1.0 - scale);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (std::isnan(t[*it])) t[*it] = (row[*it] + t[next[*it]]) / s.m;
    }
  }
  return t;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

LabeledSystem ab_system() {
  LabeledSystem s;
  s.n = 6;
  s.m = 2;
  s.labels = {"A", "B"};
  s.root = 0;
  const int A = 0, B = 1;
  s.cells = {
      {{0, 0, A}, {1, 0, B}, {2, 0, A}, {3, 0, B}, {4, 0, A}, {5, 1, A}},
      {{0, 1, B}, {1, 0, B}, {2, 0, A}, {3, 0, B}, {4, 0, A}, {5, 0, B}},
  };
  return s;
}

Bracket eval_digits(const LabeledSystem& s, const std::vector<int>& x_digits, int depth,
                    DigitTrace* trace) {
  require_function_graph(s);
  if (depth < 0) throw validation_error("depth must be >= 0");
  int label = s.root;
  double y = 0.0, scale = 1.0;
  if (trace) {
    trace->x_digits.clear();
    trace->y_digits.clear();
    trace->labels = {label};
  }
  for (int j = 0; j < depth; ++j) {
    int d = j < int(x_digits.size()) ? x_digits[j] : 0;
    if (d < 0 || d >= s.n) throw validation_error("digit out of range");
    const SystemCell& c = column_cell(s, label, d);
    scale /= s.m;
    y += c.row * scale;
    label = c.child;
    if (trace) {
      trace->x_digits.push_back(d);
      trace->y_digits.push_back(c.row);
      trace->labels.push_back(label);
    }
  }
  return Bracket{y, y + scale};
}

Bracket eval_f(const LabeledSystem& s, Rational x, int depth) {
  if (x.den <= 0 || x.num < 0 || x.num > x.den) {
    throw validation_error("x must be a rational in [0,1]");
  }
  if (x.den > std::numeric_limits<std::int64_t>::max() / s.n) {
    throw validation_error("rational denominator too large");
  }
  // Terminating expansion: x = 1 is the digit string (n-1)(n-1)... per the
  // series; handle it as all (n-1)s so f(1) evaluates the top-right path.
  std::vector<int> digits;
  digits.reserve(std::size_t(depth));
  std::int64_t num = x.num % x.den;
  bool is_one = (x.num == x.den);
  for (int j = 0; j < depth; ++j) {
    if (is_one) {
      digits.push_back(s.n - 1);
      continue;
    }
    num *= s.n;
    digits.push_back(int(num / x.den));
    num %= x.den;
  }
  return eval_digits(s, digits, depth);
}

Bracket eval_f(const LabeledSystem& s, double x, int depth) {
  if (!(x >= 0.0 && x <= 1.0)) throw validation_error("x must lie in [0,1]");
  // Doubles are dyadic rationals; convert exactly when the denominator fits.
  int exp = 0;
  double frac = std::frexp(x, &exp);  // x = frac * 2^exp, frac in [0.5,1)
  int shift = 53 - exp;
  if (x == 0.0) return eval_f(s, Rational{0, 1}, depth);
  if (x == 1.0) return eval_f(s, Rational{1, 1}, depth);
  if (shift >= 0 && shift < 120) {
    // Exact base-n digit peel of mantissa / 2^shift via 128-bit remainders.
    unsigned __int128 rem = (unsigned __int128)std::uint64_t(std::ldexp(frac, 53));
    std::vector<int> digits;
    digits.reserve(std::size_t(depth));
    for (int j = 0; j < depth; ++j) {
      rem *= (unsigned __int128)std::uint64_t(s.n);
      int d = int(rem >> shift);
      rem -= (unsigned __int128)std::uint64_t(d) << shift;
      digits.push_back(d);
    }
    return eval_digits(s, digits, depth);
  }
  // Denormal-scale x: peel digits in floating point.
  std::vector<int> digits;
  double xx = x;
  for (int j = 0; j < depth; ++j) {
    xx *= s.n;
    int d = std::min(int(xx), s.n - 1);
    digits.push_back(d);
    xx -= d;
  }
  return eval_digits(s, digits, depth);
}

double eval_f_grid_exact(const LabeledSystem& s, std::int64_t num, int level) {
  require_function_graph(s);
  std::vector<double> tails = tail_values(s, 0);
  std::int64_t denom = ipow(s.n, level);
  if (num < 0 || num > denom) throw validation_error("grid index out of range");
  if (num == denom) return tail_values(s, s.n - 1)[s.root];  // x = 1
  int label = s.root;
  double y = 0.0, scale = 1.0;
  for (int j = level - 1; j >= 0; --j) {
    int d = int((num / ipow(s.n, j)) % s.n);
    const SystemCell& c = column_cell(s, label, d);
    scale /= s.m;
    y += c.row * scale;
    label = c.child;
  }
  return y + scale * tails[label];
}

std::vector<std::pair<double, double>> sample_drift_grid(const LabeledSystem& s, int points,
                                                         int depth) {
  require_function_graph(s);
  if (points < 2) throw validation_error("need at least 2 grid points");
  std::vector<std::pair<double, double>> out;
  out.reserve(std::size_t(points) + 1);
  for (int i = 0; i <= points; ++i) {
    double t = double(i) / points;
    out.emplace_back(t, eval_f(s, Rational{i, points}, depth).mid());
  }
  return out;
}

HolderReport holder_check(const LabeledSystem& s, int depth) {
  require_function_graph(s);
  std::vector<double> tail0 = tail_values(s, 0);
  double theta = std::log(double(s.m)) / std::log(double(s.n));
  HolderReport rep;
  for (int j = 1; j <= depth; ++j) {
    double denom = std::pow(std::pow(double(s.n), -j), theta);
    // One DFS over all length-j digit strings; grid values arrive in order.
    double prev = tail0[s.root];
    std::int64_t index = 0;
    auto visit = [&](auto&& self, int label, double y, double scale, int left) -> void {
      if (left == 0) {
        double cur = y + scale * tail0[std::size_t(label)];
        if (index > 0) {
          double ratio = std::abs(cur - prev) / denom;
          if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.witness_level = j;
            rep.witness_index = index - 1;
          }
        }
        prev = cur;
        ++index;
        return;
      }
      for (int d = 0; d < s.n; ++d) {
        const SystemCell& c = column_cell(s, label, d);
        self(self, c.child, y + c.row * scale / s.m, scale / s.m, left - 1);
      }
    };
    visit(visit, s.root, 0.0, 1.0, j);
    // Close with the right endpoint x = 1.
    double last = eval_f_grid_exact(s, 1, 0);
    double ratio = std::abs(last - prev) / denom;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.witness_level = j;
      rep.witness_index = ipow(s.n, j) - 1;
    }
  }
  rep.witness_ratio = rep.max_ratio;
  return rep;
}

WellDefinedReport well_defined_check(const LabeledSystem& s, int depth) {
  require_function_graph(s);
  WellDefinedReport rep;
  rep.tolerance = 2.0 * std::pow(double(s.m), -depth);
  rep.pass = true;
  for (int j = 1; j <= depth; ++j) {
    std::int64_t grid = ipow(s.n, j);
    for (std::int64_t l = 1; l < grid; ++l) {
      if (l % s.n == 0) continue;  // handled at a coarser level
      // Representation 1: digits of l, then zeros.
      std::vector<int> d1(std::size_t(j), 0);
      for (int t = 0; t < j; ++t) d1[std::size_t(t)] = int((l / ipow(s.n, j - 1 - t)) % s.n);
      // Representation 2: digits of l-1, then all (n-1)s.
      std::vector<int> d2(std::size_t(depth), s.n - 1);
      for (int t = 0; t < j; ++t) d2[std::size_t(t)] = int(((l - 1) / ipow(s.n, j - 1 - t)) % s.n);
      double v1 = eval_digits(s, d1, depth).lo;
      double v2 = eval_digits(s, d2, depth).lo;
      double gap = std::abs(v1 - v2);
      if (gap > rep.worst_gap) {
        rep.worst_gap = gap;
        rep.worst_level = j;
        rep.worst_index = l;
      }
    }
  }
  rep.pass = rep.worst_gap <= rep.tolerance;
  return rep;
}

}  // namespace fractaldim
