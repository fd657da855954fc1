#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fractaldim/driftfn.hpp"
#include "fractaldim/fbm.hpp"

using namespace fractaldim;

namespace {

LabeledSystem zero_drift_system() {
  Pattern p{6, 2, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}};
  return LabeledSystem::from_pattern(p);
}

}  // namespace

TEST_CASE("fbm covariance") {
  CHECK(fbm_cov(1, 1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fbm_cov(0.25, 0.75, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  for (double t : {0.1, 0.37, 0.9}) {
    for (double h : {0.2, 0.5, 0.8}) {
      CHECK(fbm_cov(t, t, h) == doctest::Approx(std::pow(t, 2 * h)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(fbm_cov(-1, 1, 0.5), validation_error);
}

TEST_CASE("counter rng and inverse normal cdf") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(inverse_normal_cdf(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), validation_error);

  CounterRng a(42), b(42), c(43);
  std::vector<double> va, vb;
  for (int i = 0; i < 32; ++i) {
    va.push_back(a.uniform());
    vb.push_back(b.uniform());
  }
  CHECK(va == vb);
  CHECK(va[0] != c.uniform());
  for (double u : va) CHECK((u > 0 && u < 1));
}

TEST_CASE("fbm sampler contract") {
  for (FbmMethod method : {FbmMethod::dense, FbmMethod::circulant}) {
    FbmPath p = sample_fbm(0.5, 64, 9, method);
    REQUIRE(p.times.size() == 65);
    REQUIRE(p.values.size() == 65);
    CHECK(p.values[0] == 0.0);
    CHECK(p.times[64] == doctest::Approx(1.0));
    FbmPath q = sample_fbm(0.5, 64, 9, method);
    CHECK(p.values == q.values);  // deterministic per (seed, method, N, H)
  }

  FbmPath tiny = sample_fbm(0.5, 2, 5, FbmMethod::circulant);
  REQUIRE(tiny.values.size() == 3);
  CHECK(tiny.values[0] == 0.0);

  CHECK_THROWS_AS(sample_fbm(0.5, 1 << 20, 1, FbmMethod::dense), validation_error);
  CHECK_THROWS_AS(sample_fbm(0.5, 100, 1, FbmMethod::circulant), validation_error);
  CHECK_THROWS_AS(sample_fbm(1.5, 64, 1, FbmMethod::circulant), validation_error);
  CHECK_THROWS_AS(sample_fbm(0.5, 1, 1, FbmMethod::dense), validation_error);
}

TEST_CASE("fbm statistics at desk scale") {
  // X_1 over many seeds is standard normal for any H; check mean/variance.
  const int reps = 4000;
  for (double h : {0.3, 0.7}) {
    double sum = 0, sq = 0;
    for (int r = 0; r < reps; ++r) {
      FbmPath p = sample_fbm(h, 64, 5000 + std::uint64_t(r), FbmMethod::circulant);
      sum += p.values[64];
      sq += p.values[64] * p.values[64];
    }
    double mean = sum / reps;
    double var = sq / reps - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(double(reps)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.08));
  }

  // Stationary increments: pooled Var(X_{(i+1)/N} - X_{i/N}) = N^(-2H).
  const int n = 64;
  double pooled = 0;
  int count = 0;
  for (int r = 0; r < 500; ++r) {
    FbmPath p = sample_fbm(0.5, n, 9000 + std::uint64_t(r), FbmMethod::circulant);
    for (int i = 0; i < n; ++i) {
      double d = p.values[std::size_t(i) + 1] - p.values[std::size_t(i)];
      pooled += d * d;
      ++count;
    }
  }
  CHECK(pooled / count == doctest::Approx(1.0 / n).epsilon(0.05));
}

TEST_CASE("dense and circulant agree in distribution") {
  // Two-sample Kolmogorov-Smirnov on X_1 across methods, 1% level.
  const int reps = 800;
  std::vector<double> a, b;
  for (int r = 0; r < reps; ++r) {
    a.push_back(sample_fbm(0.6, 32, 100 + std::uint64_t(r), FbmMethod::dense).values[32]);
    b.push_back(sample_fbm(0.6, 64, 7000 + std::uint64_t(r), FbmMethod::circulant).values[64]);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(double(i) / double(a.size()) - double(j) / double(b.size())));
  }
  double threshold = 1.628 * std::sqrt(2.0 / reps);
  CHECK(d < threshold);
}

TEST_CASE("holder diagnostic does not explode with resolution") {
  const double zeta = 0.05, hurst = 0.5;
  double worst = 0;
  for (int logn : {10, 12, 14}) {
    int n = 1 << logn;
    FbmPath p = sample_fbm(hurst, n, 77, FbmMethod::circulant);
    double dt = 1.0 / n;
    double m = 0;
    for (int i = 0; i < n; ++i) {
      m = std::max(m, std::abs(p.values[std::size_t(i) + 1] - p.values[std::size_t(i)]));
    }
    worst = std::max(worst, m / std::pow(dt, hurst - zeta));
  }
  CHECK(worst < 10.0);
}

TEST_CASE("perturbed graph composition") {
  LabeledSystem zero = zero_drift_system();
  FbmPath p = sample_fbm(0.5, 128, 3, FbmMethod::circulant);
  auto perturbed = sample_perturbed_graph(zero, 0.5, 128, 3, 30);
  REQUIRE(perturbed.size() == 129);
  for (std::size_t i = 0; i < perturbed.size(); ++i) {
    CHECK(perturbed[i].second == doctest::Approx(p.values[i]).epsilon(1e-8));
  }

  LabeledSystem ab = ab_system();
  auto drift_only = sample_perturbed_graph(ab, 0.5, 128, 3, 30, FbmMethod::circulant, false);
  auto grid = sample_drift_grid(ab, 128, 30);
  CHECK(drift_only == grid);
}

TEST_CASE("kernel values") {
  double t = std::exp(-1.0);
  CHECK(kernel_I_quadrature({t, 0.0, 0.0, 0.5, 1}).value == doctest::Approx(1.0).epsilon(1e-10));

  // Far-offset limit: I ~ |u|^-gamma.
  for (double u : {20.0, 60.0}) {
    KernelQuery q{std::exp(-6.0), u, 1.3, 0.5, 1};
    CHECK(kernel_I_quadrature(q).value * std::pow(u, 1.3) == doctest::Approx(1.0).epsilon(0.01));
  }

  // Quadrature and Monte Carlo agree within 3 standard errors.
  KernelQuery q{t, 0.0, 1.3, 0.5, 1};
  KernelValue quad = kernel_I_quadrature(q);
  KernelValue mc = kernel_I_monte_carlo(q, 11, 1000000);
  CHECK(std::abs(quad.value - mc.value) < 3 * mc.error);
  KernelValue mc2 = kernel_I_monte_carlo(q, 11, 1000000);
  CHECK(mc.value == mc2.value);  // counter-based draws are replayable

  // Monotone in |u| at fixed t.
  double at_zero = quad.value;
  double prev = at_zero;
  for (double u : {0.3, 0.8, 1.7}) {
    double v = kernel_I_quadrature({t, u, 1.3, 0.5, 1}).value;
    CHECK(v <= at_zero + 1e-12);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }

  CHECK_THROWS_AS(kernel_I_quadrature({0.9, 0.0, 1.3, 0.5, 1}), validation_error);
  CHECK_THROWS_AS(kernel_I_quadrature({t, 0.0, 3.5, 0.5, 1}), validation_error);
}

TEST_CASE("kernel regime report") {
  std::vector<double> ts, us;
  for (int i = 0; i < 6; ++i) ts.push_back(std::exp(-8.0 + i * 7.0 / 5));
  for (int i = 0; i <= 8; ++i) us.push_back(i * 0.25);

  RegimeReport big = kernel_regime_check(0.5, 1, 1.3, ts, us);
  REQUIRE(big.regimes.size() == 2);
  CHECK(big.regimes[0].name == "far-u");
  CHECK(big.regimes[1].name == "near-u-small-d");  // d = 1 < gamma
  CHECK(big.regimes[0].cells + big.regimes[1].cells == int(ts.size() * us.size()));
  for (const RegimeStat& r : big.regimes) {
    CHECK(std::isfinite(r.max_ratio));
    CHECK(r.max_ratio > 0);
  }

  RegimeReport small = kernel_regime_check(0.5, 1, 0.7, ts, us);
  CHECK(small.regimes[1].name == "near-u-large-d");  // d = 1 > gamma

  // Doubling the far/near threshold must not destabilize the report.
  RegimeReport doubled = kernel_regime_check(0.5, 1, 1.3, ts, us, 4.0);
  CHECK(doubled.regimes[0].max_ratio <= big.regimes[0].max_ratio + 1e-9);
  CHECK(std::isfinite(doubled.regimes[1].max_ratio));

  CHECK_THROWS_AS(kernel_regime_check(0.5, 1, 1.0, ts, us), validation_error);
}
