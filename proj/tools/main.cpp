#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fractaldim/carpet.hpp"
#include "fractaldim/dimest.hpp"
#include "fractaldim/driftfn.hpp"
#include "fractaldim/fbm.hpp"
#include "fractaldim/format.hpp"

namespace fd = fractaldim;

namespace {

// Exit codes: 0 ok, 1 reproduction failure, 2 invalid input,
// 3 hypothesis violation, 4 I/O or budget failure.
constexpr int kExitReproduce = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitIo = 4;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fd::io_error("cannot open output file: " + out_path);
  out << text;
  if (!out) throw fd::io_error("write failed: " + out_path);
}

std::string json_field(const std::string& name, std::optional<double> value,
                       const std::string& reason) {
  std::string out = "\"" + name + "\": {";
  if (value) {
    out += "\"value\": " + fd::fmt15(*value) + ", \"status\": \"ok\"";
  } else {
    out += "\"value\": null, \"status\": \"hypothesis-violated\", \"reason\": \"" + reason + "\"";
  }
  return out + "}";
}

int cmd_dims(const std::string& file, double hurst, const std::string& out_path) {
  fd::LabeledSystem s = fd::load_system(file);
  bool hurst_violation = false;

  auto attempt = [&](auto&& fn) -> std::pair<std::optional<double>, std::string> {
    try {
      return {fn(), ""};
    } catch (const fd::hypothesis_error& e) {
      return {std::nullopt, e.what()};
    }
  };

  auto hausdorff = attempt([&] { return fd::hausdorff_dim_carpet(s); });
  auto minkowski = attempt([&] { return fd::minkowski_dim_carpet(s); });
  auto parabolic = attempt([&] { return fd::parabolic_dim_carpet(s, hurst); });
  auto perturbed = attempt([&] { return fd::perturbed_graph_dim_carpet(s, hurst); });
  auto perturbed_mink = attempt([&] { return fd::minkowski_dim_perturbed(s); });
  auto image = attempt(
      [&] { return fd::image_dim_from_alpha(fd::parabolic_dim_carpet(s, hurst), hurst, 1); });

  double theta = std::log(double(s.m)) / std::log(double(s.n));
  if (theta >= hurst) hurst_violation = true;  // parabolic family undefined at this H

  std::string out = "{\n";
  out += "  \"file\": \"" + file + "\",\n";
  out += "  \"hurst\": " + fd::fmt15(hurst) + ",\n";
  out += "  " + json_field("hausdorff", hausdorff.first, hausdorff.second) + ",\n";
  out += "  " + json_field("minkowski", minkowski.first, minkowski.second) + ",\n";
  out += "  " + json_field("parabolic", parabolic.first, parabolic.second) + ",\n";
  out += "  " + json_field("perturbed_graph", perturbed.first, perturbed.second) + ",\n";
  out += "  " + json_field("perturbed_minkowski", perturbed_mink.first, perturbed_mink.second) +
         ",\n";
  out += "  " + json_field("image", image.first, image.second) + ",\n";
  try {
    fd::DimensionComparison c = fd::dimension_comparison(s, hurst);
    out += "  \"comparison\": {\"dim_gr_f\": " + fd::fmt15(c.dim_gr_f) +
           ", \"dim_gr_noise\": " + fd::fmt15(c.dim_gr_B) +
           ", \"dim_gr_perturbed\": " + fd::fmt15(c.dim_gr_Bf) +
           ", \"minkowski_gr_f\": " + fd::fmt15(c.dimM_gr_f) +
           ", \"minkowski_gr_perturbed\": " + fd::fmt15(c.dimM_gr_Bf) +
           ", \"strict_lower\": " + (c.strict_lower ? "true" : "false") +
           ", \"strict_upper\": " + (c.strict_upper ? "true" : "false") +
           ", \"rows_equal\": " + (c.rows_equal ? "true" : "false") + "}\n";
  } catch (const fd::hypothesis_error& e) {
    out += "  \"comparison\": {\"status\": \"hypothesis-violated\", \"reason\": \"" +
           std::string(e.what()) + "\"}\n";
  }
  out += "}\n";
  write_output(out, out_path);
  return hurst_violation ? kExitHypothesis : 0;
}

int cmd_eval(const std::string& file, const std::string& x_text, int depth,
             const std::string& out_path) {
  fd::LabeledSystem s = file.empty() ? fd::ab_system() : fd::load_system(file);
  fd::Bracket b;
  auto slash = x_text.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      long long num = std::stoll(x_text.substr(0, slash), &used);
      if (used != slash) throw fd::validation_error("malformed rational: " + x_text);
      std::size_t used2 = 0;
      std::string den_text = x_text.substr(slash + 1);
      long long den = std::stoll(den_text, &used2);
      if (used2 != den_text.size()) throw fd::validation_error("malformed rational: " + x_text);
      b = fd::eval_f(s, fd::Rational{num, den}, depth);
    } else {
      double x = std::stod(x_text, &used);
      if (used != x_text.size()) throw fd::validation_error("malformed number: " + x_text);
      b = fd::eval_f(s, x, depth);
    }
  } catch (const std::logic_error&) {
    throw fd::validation_error("cannot parse --x value: " + x_text);
  }
  std::string out = "{\"x\": \"" + x_text + "\", \"depth\": " + std::to_string(depth) +
                    ", \"lo\": " + fd::fmt15(b.lo) + ", \"hi\": " + fd::fmt15(b.hi) +
                    ", \"mid\": " + fd::fmt15(b.mid()) + "}\n";
  write_output(out, out_path);
  return 0;
}

int cmd_sample(double hurst, int points, std::uint64_t seed, const std::string& method,
               const std::string& drift_file, bool drift_is_ab, bool drift_only, int depth,
               const std::string& out_path) {
  fd::FbmMethod m =
      method == "dense" ? fd::FbmMethod::dense : fd::FbmMethod::circulant;
  if (method != "dense" && method != "circulant") {
    throw fd::validation_error("method must be dense or circulant");
  }
  std::string csv;
  bool with_drift = drift_is_ab || !drift_file.empty();
  if (!with_drift) {
    fd::FbmPath path = fd::sample_fbm(hurst, points, seed, m);
    csv = "t,x\n";
    for (std::size_t i = 0; i < path.times.size(); ++i) {
      csv += fd::fmt17(path.times[i]) + "," + fd::fmt17(path.values[i]) + "\n";
    }
  } else if (drift_only) {
    fd::LabeledSystem s = drift_file.empty() ? fd::ab_system() : fd::load_system(drift_file);
    auto drift = fd::sample_drift_grid(s, points, depth);
    csv = "t,f\n";
    for (const auto& [t, f] : drift) csv += fd::fmt17(t) + "," + fd::fmt17(f) + "\n";
  } else {
    fd::LabeledSystem s = drift_file.empty() ? fd::ab_system() : fd::load_system(drift_file);
    auto drift = fd::sample_drift_grid(s, points, depth);
    std::vector<double> noise(drift.size(), 0.0);
    fd::FbmPath path = fd::sample_fbm(hurst, points, seed, m);
    noise = path.values;
    csv = "t,x,f,x+f\n";
    for (std::size_t i = 0; i < drift.size(); ++i) {
      csv += fd::fmt17(drift[i].first) + "," + fd::fmt17(noise[i]) + "," +
             fd::fmt17(drift[i].second) + "," + fd::fmt17(noise[i] + drift[i].second) + "\n";
    }
  }
  write_output(csv, out_path);
  return 0;
}

std::vector<std::pair<double, double>> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fd::io_error("cannot open points file: " + path);
  std::vector<std::pair<double, double>> pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.find_first_not_of("0123456789.,+-eE \t") != std::string::npos) {
      first = false;
      continue;  // header
    }
    first = false;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) {
      throw fd::validation_error("points CSV rows need at least two columns");
    }
    try {
      pts.emplace_back(std::stod(a), std::stod(b));
    } catch (const std::logic_error&) {
      throw fd::validation_error("points CSV has a malformed number: " + line);
    }
  }
  return pts;
}

int cmd_estimate(const std::string& in_file, const std::string& system_file, int levels,
                 const std::string& mode, const std::string& scales_text, double hurst,
                 const std::string& out_path) {
  fd::DimReport rep;
  if (!system_file.empty()) {
    fd::LabeledSystem s = fd::load_system(system_file);
    if (levels < 3) throw fd::validation_error("need at least 3 generations (--levels >= 3)");
    fd::ScaleCounts sc;
    sc.source = "exact carpet counts";
    for (int j = 1; j <= levels; ++j) {
      sc.entries.push_back({std::pow(double(s.n), -j), fd::carpet_box_count_exact(s, j)});
    }
    rep = fd::fit_dimension(sc);
  } else if (!in_file.empty()) {
    auto pts = read_points_csv(in_file);
    std::vector<double> scales;
    std::istringstream ss(scales_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        scales.push_back(std::stod(tok));
      } catch (const std::logic_error&) {
        throw fd::validation_error("malformed scale: " + tok);
      }
    }
    if (scales.size() < 3) throw fd::validation_error("need at least 3 scales");
    fd::CountMode m = mode == "parabolic" ? fd::CountMode::parabolic : fd::CountMode::euclidean;
    if (mode != "euclidean" && mode != "parabolic") {
      throw fd::validation_error("mode must be euclidean or parabolic");
    }
    rep = fd::empirical_dim_graph(pts, scales, hurst, m);
  } else {
    throw fd::validation_error("estimate needs --in or --system");
  }
  write_output(fd::dim_report_to_json(rep) + "\n", out_path);
  return 0;
}

struct CheckTable {
  bool all_pass = true;
  void row(const std::string& name, double computed, const std::string& relation, double expected,
           double tol, bool pass) {
    std::printf("%-34s computed=%.10f %s %.10f (tol %.1e) %s\n", name.c_str(), computed,
                relation.c_str(), expected, tol, pass ? "PASS" : "FAIL");
    all_pass = all_pass && pass;
  }
};

int reproduce_cor15() {
  fd::LabeledSystem s = fd::ab_system();
  double theta = std::log(2.0) / std::log(6.0);
  double hausdorff = fd::hausdorff_dim_carpet(s);
  double perturbed = fd::perturbed_graph_dim_carpet(s, 0.5);
  double minkowski = fd::minkowski_dim_perturbed(s);

  // Internal cross-checks of the closed forms, precision 1e-12.
  double hausdorff_direct = std::log2(std::pow(5.0, theta) + 1.0);
  double perturbed_direct = 0.5 * (1.0 + std::log2(std::pow(5.0, 2 * theta) + 1.0));
  double minkowski_direct = 1.0 + std::log(3.0) / std::log(6.0);

  CheckTable t;
  t.row("graph dim internal precision", hausdorff, "==", hausdorff_direct, 1e-12,
        std::abs(hausdorff - hausdorff_direct) < 1e-12);
  t.row("perturbed dim internal precision", perturbed, "==", perturbed_direct, 1e-12,
        std::abs(perturbed - perturbed_direct) < 1e-12);
  t.row("box dim internal precision", minkowski, "==", minkowski_direct, 1e-12,
        std::abs(minkowski - minkowski_direct) < 1e-12);
  t.row("perturbed dim printed digits", perturbed, "~=", 1.5807, 5e-5,
        std::abs(perturbed - 1.5807) <= 5e-5);
  t.row("box dim printed digits", minkowski, "~=", 1.6131, 5e-5,
        std::abs(minkowski - 1.6131) <= 5e-5);
  t.row("chain: perturbed > graph dim", perturbed, ">", hausdorff, 0, perturbed > hausdorff);
  t.row("chain: perturbed > 3/2", perturbed, ">", 1.5, 0, perturbed > 1.5);
  t.row("chain: perturbed < box dim", perturbed, "<", minkowski, 0, perturbed < minkowski);
  return t.all_pass ? 0 : kExitReproduce;
}

int reproduce_remark16() {
  fd::LabeledSystem s = fd::ab_system();
  double perturbed = fd::perturbed_graph_dim_carpet(s, 0.5);
  double minkowski = fd::minkowski_dim_perturbed(s);
  CheckTable t;
  t.row("box dim printed digits", minkowski, "~=", 1.6131, 5e-5,
        std::abs(minkowski - 1.6131) <= 5e-5);
  t.row("hausdorff printed digits", perturbed, "~=", 1.5807, 5e-5,
        std::abs(perturbed - 1.5807) <= 5e-5);
  t.row("strict gap: box > hausdorff", minkowski, ">", perturbed, 0, minkowski > perturbed);
  return t.all_pass ? 0 : kExitReproduce;
}

int reproduce_strict_chain() {
  CheckTable t;
  fd::DimensionComparison ab = fd::dimension_comparison(fd::ab_system(), 0.5);
  t.row("ab: lower strict", std::max(ab.dim_gr_B, ab.dim_gr_f), "<", ab.dim_gr_Bf, 0,
        ab.strict_lower);
  t.row("ab: upper strict", ab.dim_gr_Bf, "<", ab.dimM_gr_Bf, 0, ab.strict_upper);
  t.row("ab: rows differ", ab.rows_equal ? 1 : 0, "==", 0, 0, !ab.rows_equal);

  // Equal row counts collapse both inequalities to equalities.
  fd::Pattern equal_rows{6, 2, {{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 1}, {5, 1}}};
  fd::DimensionComparison eq = fd::dimension_comparison(equal_rows, 0.5);
  t.row("equal rows: collapse detected", eq.rows_equal ? 1 : 0, "==", 1, 0, eq.rows_equal);
  t.row("equal rows: lower not strict", std::max(eq.dim_gr_B, eq.dim_gr_f), "==", eq.dim_gr_Bf,
        1e-12, !eq.strict_lower && std::abs(std::max(eq.dim_gr_B, eq.dim_gr_f) - eq.dim_gr_Bf) < 1e-12);
  t.row("equal rows: upper not strict", eq.dim_gr_Bf, "==", eq.dimM_gr_Bf, 1e-12,
        !eq.strict_upper && std::abs(eq.dim_gr_Bf - eq.dimM_gr_Bf) < 1e-12);
  return t.all_pass ? 0 : kExitReproduce;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    double f = count == 1 ? 0.0 : double(i) / (count - 1);
    out.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
  }
  return out;
}

std::vector<double> lin_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(lo + (hi - lo) * (count == 1 ? 0.0 : double(i) / (count - 1)));
  }
  return out;
}

int reproduce_kernel_regimes() {
  CheckTable t;
  struct Config {
    double hurst, gamma;
    int d;
  };
  for (Config cfg : {Config{0.5, 1.3, 1}, Config{0.5, 0.7, 1}, Config{0.7, 1.5, 1}}) {
    auto coarse = fd::kernel_regime_check(cfg.hurst, cfg.d, cfg.gamma,
                                          log_spaced(std::exp(-8.0), std::exp(-1.0), 8),
                                          lin_spaced(0.0, 2.0, 9));
    auto fine = fd::kernel_regime_check(cfg.hurst, cfg.d, cfg.gamma,
                                        log_spaced(std::exp(-8.0), std::exp(-1.0), 15),
                                        lin_spaced(0.0, 2.0, 17));
    for (std::size_t r = 0; r < coarse.regimes.size(); ++r) {
      const auto& c = coarse.regimes[r];
      const auto& f = fine.regimes[r];
      std::string base = "H=" + fd::fmt15(cfg.hurst) + " gamma=" + fd::fmt15(cfg.gamma) + " " +
                         c.name;
      bool finite = std::isfinite(f.max_ratio) && f.max_ratio > 0;
      t.row(base + " finite", f.max_ratio, ">", 0, 0, finite);
      t.row(base + " stable", f.max_ratio, "<=", 1.1 * c.max_ratio, 0,
            f.max_ratio <= 1.1 * c.max_ratio);
    }
  }
  return t.all_pass ? 0 : kExitReproduce;
}

int cmd_reproduce(const std::string& target) {
  if (target == "cor15") return reproduce_cor15();
  if (target == "remark16") return reproduce_remark16();
  if (target == "strict-chain") return reproduce_strict_chain();
  if (target == "kernel-regimes") return reproduce_kernel_regimes();
  throw fd::validation_error("unknown reproduce target: " + target);
}

std::string svg_header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
}

std::string svg_rect(double x, double y, double w, double h, const std::string& fill) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"%s\"/>\n", x, y,
                w, h, fill.c_str());
  return buf;
}

int cmd_figure(const std::string& target, const std::string& system_file, int gen,
               std::uint64_t seed, double hurst, int points, const std::string& out_path) {
  fd::LabeledSystem s = system_file.empty() ? fd::ab_system() : fd::load_system(system_file);
  std::string svg = svg_header();
  if (target == "patterns") {
    // One n-by-m grid per label, stacked with gaps; y flipped (SVG is top-down).
    double band = 1000.0 / double(s.num_labels());
    for (std::size_t l = 0; l < s.num_labels(); ++l) {
      double cw = 1000.0 / s.n;
      double ch = band * 0.8 / s.m;
      double top = band * double(l) + band * 0.1;
      for (int col = 0; col < s.n; ++col) {
        for (int row = 0; row < s.m; ++row) {
          bool filled = false;
          for (const fd::SystemCell& c : s.cells[l]) {
            filled = filled || (c.col == col && c.row == row);
          }
          svg += svg_rect(cw * col, top + ch * (s.m - 1 - row), cw * 0.98, ch * 0.96,
                          filled ? "#336" : "#eee");
        }
      }
    }
  } else if (target == "carpet") {
    double npow = std::pow(double(s.n), gen);
    double mpow = std::pow(double(s.m), gen);
    fd::generation_cells(s, gen, [&](const fd::GenRect& r) {
      svg += svg_rect(1000.0 * double(r.col) / npow, 1000.0 * (1.0 - double(r.row + 1) / mpow),
                      1000.0 / npow, 1000.0 / mpow, "#336");
    });
  } else if (target == "path") {
    auto noise = fd::sample_fbm(hurst, points, seed, fd::FbmMethod::circulant);
    auto perturbed = fd::sample_perturbed_graph(s, hurst, points, seed, 24);
    double lo = 0, hi = 1;
    for (std::size_t i = 0; i < noise.values.size(); ++i) {
      lo = std::min({lo, noise.values[i], perturbed[i].second});
      hi = std::max({hi, noise.values[i], perturbed[i].second});
    }
    auto polyline = [&](auto&& value_at, const std::string& color) {
      std::string pts;
      for (std::size_t i = 0; i < noise.times.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f ", 1000.0 * noise.times[i],
                      1000.0 * (hi - value_at(i)) / (hi - lo));
        pts += buf;
      }
      return "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1\" points=\"" +
             pts + "\"/>\n";
    };
    svg += polyline([&](std::size_t i) { return noise.values[i]; }, "#888");
    svg += polyline([&](std::size_t i) { return perturbed[i].second; }, "#070");
  } else {
    throw fd::validation_error("unknown figure target: " + target);
  }
  svg += "</svg>\n";
  write_output(svg, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carpet-drift fractal dimension toolkit"};
  app.require_subcommand(1);

  std::string file, out_path, x_text = "0", method = "circulant", drift_file, mode = "euclidean";
  std::string scales_text, in_file, system_file, target;
  double hurst = 0.5;
  int depth = 16, points = 256, levels = 8, gen = 1;
  std::uint64_t seed = 0;
  bool drift_ab = false, drift_only = false;
  bool seed_given = false;

  auto* dims = app.add_subcommand("dims", "Closed-form dimension report for a pattern file");
  dims->add_option("file", file, "pattern/system JSON file")->required();
  dims->add_option("--hurst", hurst, "Hurst index in (0,1)");
  dims->add_option("--out", out_path, "output path (stdout if absent)");

  auto* evalf = app.add_subcommand("eval-f", "Evaluate the drift function at a point");
  evalf->add_option("--system", file, "system JSON file (built-in two-label system if absent)");
  evalf->add_option("--x", x_text, "point in [0,1], decimal or p/q")->required();
  evalf->add_option("--depth", depth, "digit depth");
  evalf->add_option("--out", out_path, "output path");

  auto* sample = app.add_subcommand("sample", "Sample a noise path, optionally drift-perturbed");
  sample->add_option("--hurst", hurst, "Hurst index");
  sample->add_option("--points", points, "grid points N (path has N+1 rows)");
  auto* seed_opt = sample->add_option("--seed", seed, "RNG seed");
  sample->add_option("--method", method, "dense | circulant");
  sample->add_option("--drift", drift_file, "drift system JSON file");
  sample->add_flag("--drift-ab", drift_ab, "use the built-in two-label drift");
  sample->add_flag("--drift-only", drift_only, "suppress the noise term");
  sample->add_option("--depth", depth, "drift digit depth");
  sample->add_option("--out", out_path, "output CSV path");

  auto* estimate = app.add_subcommand("estimate", "Fit a box dimension from counts");
  estimate->add_option("--in", in_file, "points CSV (t,x)");
  estimate->add_option("--system", system_file, "system JSON for exact generation counts");
  estimate->add_option("--levels", levels, "generations 1..levels for --system");
  estimate->add_option("--mode", mode, "euclidean | parabolic (for --in)");
  estimate->add_option("--scales", scales_text, "comma-separated deltas (for --in)");
  estimate->add_option("--hurst", hurst, "Hurst index (parabolic mode)");
  estimate->add_option("--out", out_path, "output JSON path");

  auto* reproduce = app.add_subcommand("reproduce", "Re-derive the headline numbers");
  reproduce->add_option("target", target, "cor15 | remark16 | strict-chain | kernel-regimes")
      ->required();

  auto* figure = app.add_subcommand("figure", "Emit a deterministic SVG");
  figure->add_option("target", target, "patterns | carpet | path")->required();
  figure->add_option("--system", system_file, "system JSON (built-in if absent)");
  figure->add_option("--gen", gen, "generation for carpet target");
  auto* fig_seed = figure->add_option("--seed", seed, "RNG seed for path target");
  figure->add_option("--hurst", hurst, "Hurst index for path target");
  figure->add_option("--points", points, "grid points for path target");
  figure->add_option("--out", out_path, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (dims->parsed()) return cmd_dims(file, hurst, out_path);
    if (evalf->parsed()) return cmd_eval(file, x_text, depth, out_path);
    if (sample->parsed()) {
      seed_given = seed_opt->count() > 0;
      if (!seed_given && !drift_only) {
        throw fd::validation_error("--seed is required for stochastic sampling");
      }
      return cmd_sample(hurst, points, seed, method, drift_file, drift_ab, drift_only, depth,
                        out_path);
    }
    if (estimate->parsed()) {
      return cmd_estimate(in_file, system_file, levels, mode, scales_text, hurst, out_path);
    }
    if (reproduce->parsed()) return cmd_reproduce(target);
    if (figure->parsed()) {
      if (target == "path" && fig_seed->count() == 0) {
        throw fd::validation_error("--seed is required for the path figure");
      }
      return cmd_figure(target, system_file, gen, seed, hurst, points, out_path);
    }
  } catch (const fd::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const fd::hypothesis_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const fd::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fd::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
