#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fractaldim/carpet.hpp"
#include "fractaldim/dimest.hpp"
#include "fractaldim/driftfn.hpp"
#include "fractaldim/fbm.hpp"

namespace py = pybind11;
using namespace fractaldim;

namespace {

FbmMethod method_from_string(const std::string& name) {
  if (name == "dense") return FbmMethod::dense;
  if (name == "circulant") return FbmMethod::circulant;
  throw validation_error("method must be dense or circulant");
}

Rational rational_from_pair(std::int64_t num, std::int64_t den) { return Rational{num, den}; }

}  // namespace

PYBIND11_MODULE(_fractaldim, m) {
  m.doc() = "Self-affine carpet dimension formulas, drift evaluation, fBm sampling, "
            "and covering-number estimators";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<hypothesis_error>(m, "HypothesisError", PyExc_ArithmeticError);
  py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<io_error>(m, "IoError", PyExc_OSError);

  py::class_<Cell>(m, "Cell")
      .def(py::init<>())
      .def(py::init([](int col, int row) { return Cell{col, row}; }), py::arg("col"),
           py::arg("row"))
      .def_readwrite("col", &Cell::col)
      .def_readwrite("row", &Cell::row);

  py::class_<Pattern>(m, "Pattern")
      .def(py::init<>())
      .def(py::init([](int n, int mm, const std::vector<std::pair<int, int>>& cells) {
             Pattern p{n, mm, {}};
             for (auto [c, r] : cells) p.cells.push_back({c, r});
             return p;
           }),
           py::arg("n"), py::arg("m"), py::arg("cells"))
      .def_readwrite("n", &Pattern::n)
      .def_readwrite("m", &Pattern::m)
      .def_readwrite("cells", &Pattern::cells);

  py::class_<LabeledSystem>(m, "LabeledSystem")
      .def(py::init<>())
      .def_readonly("n", &LabeledSystem::n)
      .def_readonly("m", &LabeledSystem::m)
      .def_readonly("labels", &LabeledSystem::labels)
      .def_readonly("root", &LabeledSystem::root)
      .def("is_function_graph", &LabeledSystem::is_function_graph)
      .def_static("from_pattern", &LabeledSystem::from_pattern, py::arg("pattern"),
                  py::arg("label") = "P");

  m.def("ab_system", &ab_system);
  m.def("system_from_json", &system_from_json, py::arg("text"));
  m.def("system_to_json", &system_to_json, py::arg("system"));
  m.def("load_system", &load_system, py::arg("path"));
  m.def("save_system", &save_system, py::arg("system"), py::arg("path"));

  m.def("row_counts", &row_counts, py::arg("pattern"));
  m.def("hausdorff_dim", py::overload_cast<const LabeledSystem&>(&hausdorff_dim_carpet));
  m.def("hausdorff_dim", py::overload_cast<const Pattern&>(&hausdorff_dim_carpet));
  m.def("minkowski_dim", py::overload_cast<const LabeledSystem&>(&minkowski_dim_carpet));
  m.def("minkowski_dim", py::overload_cast<const Pattern&>(&minkowski_dim_carpet));
  m.def("parabolic_dim", py::overload_cast<const LabeledSystem&, double>(&parabolic_dim_carpet),
        py::arg("system"), py::arg("hurst"));
  m.def("perturbed_graph_dim",
        py::overload_cast<const LabeledSystem&, double>(&perturbed_graph_dim_carpet),
        py::arg("system"), py::arg("hurst"));
  m.def("minkowski_dim_perturbed",
        py::overload_cast<const LabeledSystem&>(&minkowski_dim_perturbed));
  m.def("graph_dim_from_alpha", &graph_dim_from_alpha, py::arg("alpha"), py::arg("hurst"),
        py::arg("d"));
  m.def("image_dim_from_alpha", &image_dim_from_alpha, py::arg("alpha"), py::arg("hurst"),
        py::arg("d"));
  m.def(
      "dimension_comparison",
      [](const LabeledSystem& s, double hurst) {
        DimensionComparison c = dimension_comparison(s, hurst);
        py::dict d;
        d["dim_gr_f"] = c.dim_gr_f;
        d["dim_gr_noise"] = c.dim_gr_B;
        d["dim_gr_perturbed"] = c.dim_gr_Bf;
        d["minkowski_gr_f"] = c.dimM_gr_f;
        d["minkowski_gr_perturbed"] = c.dimM_gr_Bf;
        d["strict_lower"] = c.strict_lower;
        d["strict_upper"] = c.strict_upper;
        d["rows_equal"] = c.rows_equal;
        return d;
      },
      py::arg("system"), py::arg("hurst") = 0.5);

  m.def(
      "eval_f",
      [](const LabeledSystem& s, double x, int depth) {
        Bracket b = eval_f(s, x, depth);
        return std::make_pair(b.lo, b.hi);
      },
      py::arg("system"), py::arg("x"), py::arg("depth"));
  m.def(
      "eval_f_rational",
      [](const LabeledSystem& s, std::int64_t num, std::int64_t den, int depth) {
        Bracket b = eval_f(s, rational_from_pair(num, den), depth);
        return std::make_pair(b.lo, b.hi);
      },
      py::arg("system"), py::arg("num"), py::arg("den"), py::arg("depth"));
  m.def("sample_drift_grid", &sample_drift_grid, py::arg("system"), py::arg("points"),
        py::arg("depth"));
  m.def(
      "holder_check",
      [](const LabeledSystem& s, int depth) {
        HolderReport r = holder_check(s, depth);
        py::dict d;
        d["max_ratio"] = r.max_ratio;
        d["witness_ratio"] = r.witness_ratio;
        d["witness_level"] = r.witness_level;
        d["witness_index"] = r.witness_index;
        return d;
      },
      py::arg("system"), py::arg("depth"));
  m.def(
      "well_defined_check",
      [](const LabeledSystem& s, int depth) {
        WellDefinedReport r = well_defined_check(s, depth);
        py::dict d;
        d["pass"] = r.pass;
        d["worst_gap"] = r.worst_gap;
        d["tolerance"] = r.tolerance;
        d["worst_level"] = r.worst_level;
        d["worst_index"] = r.worst_index;
        return d;
      },
      py::arg("system"), py::arg("depth"));

  m.def("fbm_cov", &fbm_cov, py::arg("s"), py::arg("t"), py::arg("hurst"));
  m.def(
      "sample_fbm",
      [](double hurst, int points, std::uint64_t seed, const std::string& method) {
        FbmPath p = sample_fbm(hurst, points, seed, method_from_string(method));
        py::dict d;
        d["hurst"] = p.hurst;
        d["times"] = p.times;
        d["values"] = p.values;
        d["seed"] = p.seed;
        d["method"] = p.method == FbmMethod::dense ? "dense" : "circulant";
        d["eigenvalue_clamped"] = p.eigenvalue_clamped;
        return d;
      },
      py::arg("hurst"), py::arg("points"), py::arg("seed"), py::arg("method") = "circulant");
  m.def(
      "sample_perturbed_graph",
      [](const LabeledSystem& s, double hurst, int points, std::uint64_t seed, int depth,
         const std::string& method, bool noise) {
        return sample_perturbed_graph(s, hurst, points, seed, depth, method_from_string(method),
                                      noise);
      },
      py::arg("system"), py::arg("hurst"), py::arg("points"), py::arg("seed"), py::arg("depth"),
      py::arg("method") = "circulant", py::arg("noise") = true);
  m.def(
      "kernel_I",
      [](double t, double u, double gamma, double hurst, int d, const std::string& method,
         std::uint64_t seed, std::int64_t samples) {
        KernelQuery q{t, u, gamma, hurst, d};
        KernelValue v = method == "monte-carlo" ? kernel_I_monte_carlo(q, seed, samples)
                                                : kernel_I_quadrature(q);
        return std::make_pair(v.value, v.error);
      },
      py::arg("t"), py::arg("u"), py::arg("gamma"), py::arg("hurst"), py::arg("d") = 1,
      py::arg("method") = "quadrature", py::arg("seed") = 0, py::arg("samples") = 100000);
  m.def(
      "kernel_regime_check",
      [](double hurst, int d, double gamma, const std::vector<double>& t_grid,
         const std::vector<double>& u_grid, double threshold_c) {
        RegimeReport r = kernel_regime_check(hurst, d, gamma, t_grid, u_grid, threshold_c);
        py::list regimes;
        for (const RegimeStat& st : r.regimes) {
          py::dict e;
          e["name"] = st.name;
          e["bound"] = st.bound;
          e["cells"] = st.cells;
          e["max_ratio"] = st.max_ratio;
          regimes.append(e);
        }
        py::dict d2;
        d2["hurst"] = r.hurst;
        d2["gamma"] = r.gamma;
        d2["d"] = r.d;
        d2["threshold_c"] = r.threshold_c;
        d2["regimes"] = regimes;
        return d2;
      },
      py::arg("hurst"), py::arg("d"), py::arg("gamma"), py::arg("t_grid"), py::arg("u_grid"),
      py::arg("threshold_c") = 2.0);

  m.def("box_count_points", &box_count_points, py::arg("points"), py::arg("delta"));
  m.def("parabolic_box_count_points", &parabolic_box_count_points, py::arg("points"),
        py::arg("delta"), py::arg("hurst"));
  m.def("carpet_box_count_exact", &carpet_box_count_exact, py::arg("system"), py::arg("level"),
        py::arg("budget") = kDefaultCellBudget);
  m.def(
      "fit_dimension",
      [](const std::vector<std::pair<double, std::int64_t>>& scales) {
        ScaleCounts sc;
        for (auto [delta, count] : scales) sc.entries.push_back({delta, count});
        DimReport r = fit_dimension(sc);
        py::dict d;
        d["estimate"] = r.estimate;
        d["stderr"] = r.std_error;
        d["r2"] = r.r_squared;
        d["degenerate"] = r.degenerate;
        return d;
      },
      py::arg("scales"));
  m.def("parabolic_content_dp", &parabolic_content_dp, py::arg("system"), py::arg("hurst"),
        py::arg("beta"), py::arg("max_level"), py::arg("budget") = kDefaultCellBudget);
  m.def("mass_ratio_bound", &mass_ratio_bound, py::arg("system"), py::arg("hurst"),
        py::arg("beta"), py::arg("max_level"), py::arg("budget") = kDefaultCellBudget);
  m.def(
      "parabolic_dim_bracket",
      [](const LabeledSystem& s, double hurst, int max_level, double step) {
        BracketReport r = parabolic_dim_bracket(s, hurst, max_level, step);
        py::dict d;
        d["beta_lo"] = r.beta_lo;
        d["beta_hi"] = r.beta_hi;
        d["step"] = r.step;
        d["levels"] = r.levels;
        d["inverted"] = r.inverted;
        d["formula"] = r.formula;
        d["consistent"] = r.consistent;
        return d;
      },
      py::arg("system"), py::arg("hurst"), py::arg("max_level"), py::arg("step"));
  m.def(
      "empirical_dim_graph",
      [](const std::vector<std::pair<double, double>>& points, const std::vector<double>& scales,
         double hurst, const std::string& mode) {
        CountMode cm = mode == "parabolic" ? CountMode::parabolic : CountMode::euclidean;
        if (mode != "euclidean" && mode != "parabolic") {
          throw validation_error("mode must be euclidean or parabolic");
        }
        DimReport r = empirical_dim_graph(points, scales, hurst, cm);
        py::dict d;
        d["estimate"] = r.estimate;
        d["stderr"] = r.std_error;
        d["r2"] = r.r_squared;
        d["degenerate"] = r.degenerate;
        return d;
      },
      py::arg("points"), py::arg("scales"), py::arg("hurst"), py::arg("mode") = "euclidean");
}
