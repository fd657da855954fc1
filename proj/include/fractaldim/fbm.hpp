#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fractaldim/carpet.hpp"
#include "fractaldim/driftfn.hpp"

namespace fractaldim {

/// Counter-based uniform/Gaussian stream: draw i is a pure function of
/// (seed, i), so parallel chunking and replay give identical values.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  /// Uniform draw in (0,1), never exactly 0 or 1.
  double uniform();
  /// Standard normal via inverse-CDF on uniform().
  double gaussian();
  /// Derived sub-seed for chunk `index` of a parallel run.
  static std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Inverse standard normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

/// (s^2H + t^2H - |t-s|^2H) / 2.
double fbm_cov(double s, double t, double hurst);

enum class FbmMethod { dense, circulant };

struct FbmPath {
  double hurst = 0.5;
  std::vector<double> times;   // i/N, i = 0..N
  std::vector<double> values;  // values[0] = 0
  std::uint64_t seed = 0;
  FbmMethod method = FbmMethod::dense;
  bool eigenvalue_clamped = false;  // circulant embedding had tiny negatives
};

inline constexpr int kDenseCap = 1 << 13;

/// Exact-in-distribution fractional Brownian motion on the grid i/N,
/// i = 0..N. Dense Cholesky factorization for N <= kDenseCap; circulant
/// (Davies-Harte) embedding requires N to be a power of two.
FbmPath sample_fbm(double hurst, int points, std::uint64_t seed, FbmMethod method);

/// (t_i, X_{t_i} + f(t_i)) on the uniform grid, f evaluated to `depth`
/// base-n digits. `noise` toggles the X term (off = drift grid alone).
std::vector<std::pair<double, double>> sample_perturbed_graph(const LabeledSystem& s, double hurst,
                                                              int points, std::uint64_t seed,
                                                              int depth,
                                                              FbmMethod method = FbmMethod::circulant,
                                                              bool noise = true);

/// E[ (|t^H Z + u|^2 + t^2)^{-gamma/2} ], Z standard normal (d = 1).
struct KernelQuery {
  double t = 0;      // in (0, 1/e]
  double u = 0;      // offset
  double gamma = 0;  // > 0
  double hurst = 0.5;
  int d = 1;
};

struct KernelValue {
  double value = 0;
  double error = 0;  // quadrature abs-error estimate or MC standard error
};

/// Adaptive quadrature, absolute tolerance ~1e-11 (d = 1 only).
KernelValue kernel_I_quadrature(const KernelQuery& q);

/// Monte Carlo with chunked counter sub-seeds; result independent of
/// chunk size for a fixed total sample count.
KernelValue kernel_I_monte_carlo(const KernelQuery& q, std::uint64_t seed, std::int64_t samples);

/// One regime of the three-case kernel bound.
struct RegimeStat {
  std::string name;      // "far-u", "near-u-small-d", "near-u-large-d"
  std::string bound;     // human-readable bound expression
  int cells = 0;         // grid cells classified into this regime
  double max_ratio = 0;  // max I / bound over those cells
};

struct RegimeReport {
  double hurst = 0;
  double gamma = 0;
  int d = 1;
  double threshold_c = 2.0;  // u > C t^H sqrt(|log t|) selects the far regime
  std::vector<double> t_grid;
  std::vector<double> u_grid;
  std::vector<RegimeStat> regimes;
};

/// Evaluates kernel_I over the (t,u) grid and reports the max ratio to the
/// applicable bound per regime. gamma == d is rejected (the two-branch
/// small-u bound is undefined there).
RegimeReport kernel_regime_check(double hurst, int d, double gamma,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& u_grid, double threshold_c = 2.0);

}  // namespace fractaldim
