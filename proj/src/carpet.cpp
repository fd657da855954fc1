#include "fractaldim/carpet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fractaldim {

namespace {

double theta_of(int n, int m) { return std::log(double(m)) / std::log(double(n)); }

double log_base(double b, double x) { return std::log(x) / std::log(b); }

// sum_j r(j)^s with the 0^s = 0 convention.
double row_power_sum(const std::vector<int>& r, double s) {
  double acc = 0.0;
  for (int rj : r) {
    if (rj > 0) acc += std::pow(double(rj), s);
  }
  return acc;
}

void require_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw validation_error("hurst must lie in (0,1)");
  }
}

void require_parabolic_hypothesis(const Pattern& p, double hurst) {
  require_hurst(hurst);
  if (!(theta_of(p.n, p.m) < hurst)) {
    std::ostringstream os;
    os << "hypothesis log_n(m) < H violated: log_" << p.n << "(" << p.m
       << ") = " << theta_of(p.n, p.m) << " >= " << hurst;
    throw hypothesis_error(os.str());
  }
}

std::vector<int> sorted_row_counts(const Pattern& p) {
  auto r = row_counts(p);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

ValidationReport validate_pattern(const Pattern& p) {
  ValidationReport rep;
  if (!(p.m >= 2)) rep.errors.push_back("requires m >= 2");
  if (!(p.n > p.m)) rep.errors.push_back("requires n > m");
  if (p.cells.empty()) rep.errors.push_back("cells must be nonempty");
  std::set<std::pair<int, int>> seen;
  for (const Cell& c : p.cells) {
    if (c.col < 0 || c.col >= p.n || c.row < 0 || c.row >= p.m) {
      std::ostringstream os;
      os << "cell out of bounds: (" << c.col << "," << c.row << ")";
      rep.errors.push_back(os.str());
      continue;
    }
    if (!seen.insert({c.col, c.row}).second) {
      std::ostringstream os;
      os << "duplicate cell: (" << c.col << "," << c.row << ")";
      rep.errors.push_back(os.str());
    }
  }
  rep.valid = rep.errors.empty();
  if (rep.valid) {
    std::vector<int> per_col(p.n, 0);
    for (const Cell& c : p.cells) per_col[c.col]++;
    rep.function_graph =
        std::all_of(per_col.begin(), per_col.end(), [](int k) { return k == 1; });
    auto r = row_counts(p);
    rep.rows_nonempty = std::all_of(r.begin(), r.end(), [](int k) { return k >= 1; });
  }
  return rep;
}

void require_valid(const Pattern& p) {
  auto rep = validate_pattern(p);
  if (!rep.valid) throw validation_error(rep.errors.front());
}

std::vector<int> row_counts(const Pattern& p) {
  std::vector<int> r(p.m, 0);
  for (const Cell& c : p.cells) {
    if (c.row >= 0 && c.row < p.m) r[c.row]++;
  }
  return r;
}

double hausdorff_dim_carpet(const Pattern& p) {
  require_valid(p);
  double s = row_power_sum(row_counts(p), theta_of(p.n, p.m));
  return log_base(double(p.m), s);
}

double minkowski_dim_carpet(const Pattern& p) {
  require_valid(p);
  auto r = row_counts(p);
  if (std::any_of(r.begin(), r.end(), [](int k) { return k == 0; })) {
    throw hypothesis_error("minkowski_dim_carpet requires every row nonempty");
  }
  return 1.0 + log_base(double(p.n), double(p.cells.size()) / double(p.m));
}

double parabolic_dim_carpet(const Pattern& p, double hurst) {
  require_valid(p);
  require_parabolic_hypothesis(p, hurst);
  double s = row_power_sum(row_counts(p), theta_of(p.n, p.m) / hurst);
  return hurst * log_base(double(p.m), s);
}

std::vector<double> frostman_weights(const Pattern& p, double hurst) {
  require_valid(p);
  require_parabolic_hypothesis(p, hurst);
  auto r = row_counts(p);
  double s = theta_of(p.n, p.m) / hurst;
  double z = row_power_sum(r, s);
  std::vector<double> w;
  w.reserve(p.cells.size());
  for (const Cell& c : p.cells) {
    w.push_back(std::pow(double(r[c.row]), s - 1.0) / z);
  }
  return w;
}

double graph_dim_from_alpha(double alpha, double hurst, int d) {
  require_hurst(hurst);
  if (alpha < 0 || d < 1) throw validation_error("requires alpha >= 0 and d >= 1");
  return std::min(alpha / hurst, alpha + d * (1.0 - hurst));
}

double image_dim_from_alpha(double alpha, double hurst, int d) {
  require_hurst(hurst);
  if (alpha < 0 || d < 1) throw validation_error("requires alpha >= 0 and d >= 1");
  return std::min(alpha / hurst, double(d));
}

double perturbed_graph_dim_carpet(const Pattern& p, double hurst) {
  auto rep = validate_pattern(p);
  if (!rep.valid) throw validation_error(rep.errors.front());
  if (!rep.function_graph) {
    throw hypothesis_error("perturbed_graph_dim_carpet requires a function-graph pattern");
  }
  require_parabolic_hypothesis(p, hurst);
  double s = row_power_sum(row_counts(p), theta_of(p.n, p.m) / hurst);
  return 1.0 - hurst + hurst * log_base(double(p.m), s);
}

double minkowski_dim_perturbed(const Pattern& p) {
  auto rep = validate_pattern(p);
  if (!rep.valid) throw validation_error(rep.errors.front());
  if (!(p.n > p.m * p.m)) throw hypothesis_error("requires n > m^2");
  if (!rep.rows_nonempty) throw hypothesis_error("requires every row nonempty");
  if (!rep.function_graph) throw hypothesis_error("requires exactly one cell per column");
  return 1.0 + log_base(double(p.n), double(p.n) / double(p.m));
}

DimensionComparison dimension_comparison(const Pattern& p, double hurst) {
  DimensionComparison out;
  out.dimM_gr_Bf = minkowski_dim_perturbed(p);  // checks the section-4 hypotheses
  out.dimM_gr_f = minkowski_dim_carpet(p);
  out.dim_gr_f = hausdorff_dim_carpet(p);
  out.dim_gr_B = 2.0 - hurst;
  out.dim_gr_Bf = perturbed_graph_dim_carpet(p, hurst);
  auto r = row_counts(p);
  out.rows_equal = std::all_of(r.begin(), r.end(), [&](int k) { return k == r[0]; });
  out.strict_lower = std::max(out.dim_gr_B, out.dim_gr_f) < out.dim_gr_Bf;
  out.strict_upper = out.dim_gr_Bf < out.dimM_gr_Bf;
  return out;
}

LabeledSystem LabeledSystem::from_pattern(const Pattern& p, const std::string& label) {
  require_valid(p);
  LabeledSystem s;
  s.n = p.n;
  s.m = p.m;
  s.labels = {label};
  s.root = 0;
  s.cells.resize(1);
  for (const Cell& c : p.cells) s.cells[0].push_back({c.col, c.row, 0});
  std::sort(s.cells[0].begin(), s.cells[0].end(), [](const SystemCell& a, const SystemCell& b) {
    return std::tie(a.col, a.row) < std::tie(b.col, b.row);
  });
  return s;
}

Pattern LabeledSystem::pattern_of(int label) const {
  Pattern p;
  p.n = n;
  p.m = m;
  for (const SystemCell& c : cells.at(label)) p.cells.push_back({c.col, c.row});
  return p;
}

int LabeledSystem::label_index(const std::string& name) const {
  auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) throw validation_error("unknown label: " + name);
  return int(it - labels.begin());
}

bool LabeledSystem::is_function_graph() const {
  for (std::size_t l = 0; l < cells.size(); ++l) {
    if (!validate_pattern(pattern_of(int(l))).function_graph) return false;
  }
  return true;
}

void LabeledSystem::require_uniform_row_counts() const {
  auto ref = sorted_row_counts(pattern_of(root));
  for (std::size_t l = 0; l < cells.size(); ++l) {
    if (sorted_row_counts(pattern_of(int(l))) != ref) {
      throw hypothesis_error(
          "closed-form dimensions need all patterns to share one row-count multiset");
    }
  }
}

std::vector<SystemCell> LabeledSystem::cells_in_row(int label, int row) const {
  std::vector<SystemCell> out;
  for (const SystemCell& c : cells.at(label)) {
    if (c.row == row) out.push_back(c);
  }
  return out;
}

namespace {

void validate_system(const LabeledSystem& s) {
  if (s.labels.empty() || s.cells.size() != s.labels.size()) {
    throw validation_error("system needs one pattern per label");
  }
  if (s.root < 0 || std::size_t(s.root) >= s.labels.size()) {
    throw validation_error("root label out of range");
  }
  for (std::size_t l = 0; l < s.cells.size(); ++l) {
    require_valid(s.pattern_of(int(l)));
    for (const SystemCell& c : s.cells[l]) {
      if (c.child < 0 || std::size_t(c.child) >= s.labels.size()) {
        throw validation_error("child label out of range in pattern " + s.labels[l]);
      }
    }
  }
}

void gen_rec(const LabeledSystem& s, int depth, int k, int label, std::int64_t p,
             std::int64_t q, const std::function<void(const GenRect&)>& emit) {
  if (depth == k) {
    emit(GenRect{k, p, q, label});
    return;
  }
  for (const SystemCell& c : s.cells[label]) {
    gen_rec(s, depth + 1, k, c.child, p * s.n + c.col, q * s.m + c.row, emit);
  }
}

}  // namespace

std::int64_t generation_count(const LabeledSystem& s, int k, std::int64_t budget) {
  validate_system(s);
  if (k < 0) throw validation_error("generation k must be >= 0");
  // Count via label multiplicities; overflow-checked against the budget.
  std::vector<double> mult(s.labels.size(), 0.0);
  std::vector<std::int64_t> exact(s.labels.size(), 0);
  mult[s.root] = 1.0;
  exact[s.root] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<double> nm(s.labels.size(), 0.0);
    std::vector<std::int64_t> ne(s.labels.size(), 0);
    for (std::size_t l = 0; l < s.labels.size(); ++l) {
      for (const SystemCell& c : s.cells[l]) {
        nm[c.child] += mult[l];
        ne[c.child] += exact[l];
      }
    }
    mult = std::move(nm);
    exact = std::move(ne);
    double total = 0;
    for (double v : mult) total += v;
    if (total > double(budget)) {
      throw budget_error("generation enumeration exceeds cell budget");
    }
  }
  std::int64_t total = 0;
  for (std::int64_t v : exact) total += v;
  return total;
}

void generation_cells(const LabeledSystem& s, int k,
                      const std::function<void(const GenRect&)>& emit,
                      std::int64_t budget) {
  generation_count(s, k, budget);  // validates and enforces the budget
  gen_rec(s, 0, k, s.root, 0, 0, emit);
}

std::vector<GenRect> generation_cells(const LabeledSystem& s, int k, std::int64_t budget) {
  std::vector<GenRect> out;
  out.reserve(std::size_t(std::min<std::int64_t>(generation_count(s, k, budget), 1 << 20)));
  generation_cells(s, k, [&](const GenRect& r) { out.push_back(r); }, budget);
  return out;
}

double hausdorff_dim_carpet(const LabeledSystem& s) {
  validate_system(s);
  s.require_uniform_row_counts();
  return hausdorff_dim_carpet(s.pattern_of(s.root));
}

double minkowski_dim_carpet(const LabeledSystem& s) {
  validate_system(s);
  s.require_uniform_row_counts();
  return minkowski_dim_carpet(s.pattern_of(s.root));
}

double parabolic_dim_carpet(const LabeledSystem& s, double hurst) {
  validate_system(s);
  s.require_uniform_row_counts();
  return parabolic_dim_carpet(s.pattern_of(s.root), hurst);
}

double perturbed_graph_dim_carpet(const LabeledSystem& s, double hurst) {
  validate_system(s);
  s.require_uniform_row_counts();
  if (!s.is_function_graph()) {
    throw hypothesis_error("perturbed_graph_dim_carpet requires a function-graph system");
  }
  return perturbed_graph_dim_carpet(s.pattern_of(s.root), hurst);
}

double minkowski_dim_perturbed(const LabeledSystem& s) {
  validate_system(s);
  s.require_uniform_row_counts();
  if (!s.is_function_graph()) {
    throw hypothesis_error("minkowski_dim_perturbed requires a function-graph system");
  }
  return minkowski_dim_perturbed(s.pattern_of(s.root));
}

DimensionComparison dimension_comparison(const LabeledSystem& s, double hurst) {
  validate_system(s);
  s.require_uniform_row_counts();
  return dimension_comparison(s.pattern_of(s.root), hurst);
}

LabeledSystem system_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("bad JSON: ") + e.what());
  }
  try {
    LabeledSystem s;
    s.n = j.at("n").get<int>();
    s.m = j.at("m").get<int>();
    const auto& pats = j.at("patterns");
    for (auto it = pats.begin(); it != pats.end(); ++it) s.labels.push_back(it.key());
    std::sort(s.labels.begin(), s.labels.end());
    s.cells.resize(s.labels.size());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < s.labels.size(); ++i) index[s.labels[i]] = int(i);
    for (auto it = pats.begin(); it != pats.end(); ++it) {
      int l = index[it.key()];
      for (const auto& cell : it.value().at("cells")) {
        if (!cell.is_array() || cell.size() != 3) {
          throw validation_error("each cell must be [column, row, childLabel]");
        }
        std::string child = cell.at(2).get<std::string>();
        if (!index.count(child)) throw validation_error("unknown child label: " + child);
        s.cells[l].push_back({cell.at(0).get<int>(), cell.at(1).get<int>(), index[child]});
      }
      std::sort(s.cells[l].begin(), s.cells[l].end(),
                [](const SystemCell& a, const SystemCell& b) {
                  return std::tie(a.col, a.row) < std::tie(b.col, b.row);
                });
    }
    std::string root = j.at("root").get<std::string>();
    if (!index.count(root)) throw validation_error("unknown root label: " + root);
    s.root = index[root];
    validate_system(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("bad system file: ") + e.what());
  }
}

std::string system_to_json(const LabeledSystem& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["m"] = s.m;
  j["root"] = s.labels.at(s.root);
  nlohmann::json pats = nlohmann::json::object();
  for (std::size_t l = 0; l < s.labels.size(); ++l) {
    nlohmann::json cells = nlohmann::json::array();
    for (const SystemCell& c : s.cells[l]) {
      cells.push_back({c.col, c.row, s.labels.at(c.child)});
    }
    pats[s.labels[l]] = {{"cells", cells}};
  }
  j["patterns"] = pats;
  return j.dump(2);
}

LabeledSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return system_from_json(buf.str());
}

void save_system(const LabeledSystem& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << system_to_json(s) << "\n";
}

}  // namespace fractaldim
