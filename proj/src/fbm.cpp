#include "fractaldim/fbm.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_fft_halfcomplex.h>
#include <gsl/gsl_fft_real.h>
#include <gsl/gsl_integration.h>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace fractaldim {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Fractional Gaussian noise autocovariance at unit spacing.
double fgn_cov(std::int64_t k, double hurst) {
  double a = double(k);
  double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(std::abs(a + 1), h2) - 2.0 * std::pow(std::abs(a), h2) +
                std::pow(std::abs(a - 1), h2));
}

void ensure_gsl_handler_off() {
  static const gsl_error_handler_t* prev = gsl_set_error_handler_off();
  (void)prev;
}

}  // namespace

double CounterRng::uniform() {
  std::uint64_t x = mix64(seed_ ^ mix64(counter_++));
  return (double(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double CounterRng::gaussian() { return inverse_normal_cdf(uniform()); }

std::uint64_t CounterRng::sub_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

// Wichura's AS 241 (PPND16): relative error below 1e-15 on (0,1).
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw validation_error("inverse_normal_cdf needs p in (0,1)");
  double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = q < 0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) *
                   r +
               1.27045825245236838258e0) *
                  r +
              3.64784832476320460504e0) *
                 r +
             5.76949722146069140550e0) *
                r +
            4.63033784615654529590e0) *
               r +
           1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) *
                   r +
               1.48103976427480074590e-1) *
                  r +
              6.89767334985100004550e-1) *
                 r +
             1.67638483018380384940e0) *
                r +
            2.05319162663775882187e0) *
               r +
           1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) *
                   r +
               2.65321895265761230930e-2) *
                  r +
              2.96560571828504891230e-1) *
                 r +
             1.78482653991729133580e0) *
                r +
            5.46378491116411436990e0) *
               r +
           6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) *
                   r +
               7.86869131145613259100e-4) *
                  r +
              1.48753612908506148525e-2) *
                 r +
             1.36929880922735805310e-1) *
                r +
            5.99832206555887937690e-1) *
               r +
           1.0);
  }
  return q < 0 ? -val : val;
}

double fbm_cov(double s, double t, double hurst) {
  if (!(s >= 0 && t >= 0)) throw validation_error("fbm_cov needs s, t >= 0");
  if (!(hurst > 0 && hurst < 1)) throw validation_error("hurst must lie in (0,1)");
  double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

namespace {

FbmPath sample_fbm_dense(double hurst, int n, std::uint64_t seed) {
  if (n > kDenseCap) {
    throw validation_error("dense factorization capped at N = 8192; use the circulant method");
  }
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double c = fbm_cov(double(i + 1) / n, double(j + 1) / n, hurst);
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    // Round-off can nudge the smallest eigenvalue negative; retry jittered.
    cov.diagonal().array() += 1e-12 * cov.diagonal().maxCoeff();
    llt.compute(cov);
    if (llt.info() != Eigen::Success) {
      throw hypothesis_error("covariance matrix is not positive definite");
    }
  }
  CounterRng rng(seed);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = rng.gaussian();
  Eigen::VectorXd x = llt.matrixL() * z;

  FbmPath path;
  path.hurst = hurst;
  path.seed = seed;
  path.method = FbmMethod::dense;
  path.times.resize(std::size_t(n) + 1);
  path.values.resize(std::size_t(n) + 1);
  path.times[0] = 0;
  path.values[0] = 0;
  for (int i = 0; i < n; ++i) {
    path.times[std::size_t(i) + 1] = double(i + 1) / n;
    path.values[std::size_t(i) + 1] = x(i);
  }
  return path;
}

// Davies-Harte: embed the fGn covariance in a circulant of size 2N, draw in
// the spectral domain, transform back, and prefix-sum the noise.
FbmPath sample_fbm_circulant(double hurst, int n, std::uint64_t seed) {
  if (!is_power_of_two(n)) {
    throw validation_error("circulant method requires N to be a power of two");
  }
  std::size_t m = 2 * std::size_t(n);
  std::vector<double> lam(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t k = std::min(j, m - j);
    lam[j] = fgn_cov(std::int64_t(k), hurst);
  }
  ensure_gsl_handler_off();
  gsl_fft_real_radix2_transform(lam.data(), 1, m);
  // Symmetric input: eigenvalues are lam[k] for k <= N, mirrored above.
  bool clamped = false;
  auto eigenvalue = [&](std::size_t k) {
    double v = lam[std::min(k, m - k)];
    if (v < -1e-8) throw hypothesis_error("circulant embedding is not positive semidefinite");
    if (v < 0) {
      clamped = true;
      v = 0;
    }
    return v;
  };

  CounterRng rng(seed);
  std::vector<double> a(std::size_t(n) + 1), b(std::size_t(n) + 1);
  for (std::size_t k = 0; k <= std::size_t(n); ++k) {
    a[k] = rng.gaussian();
    b[k] = rng.gaussian();
  }

  // Half-complex spectrum of a Hermitian sequence; backward FFT is real.
  std::vector<double> h(m, 0.0);
  double dm = double(m);
  h[0] = std::sqrt(eigenvalue(0) / dm) * a[0];
  h[m / 2] = std::sqrt(eigenvalue(m / 2) / dm) * a[m / 2];
  for (std::size_t k = 1; k < m / 2; ++k) {
    double coef = std::sqrt(eigenvalue(k) / (2.0 * dm));
    h[k] = coef * a[k];
    h[m - k] = coef * b[k];
  }
  gsl_fft_halfcomplex_radix2_backward(h.data(), 1, m);

  FbmPath path;
  path.hurst = hurst;
  path.seed = seed;
  path.method = FbmMethod::circulant;
  path.eigenvalue_clamped = clamped;
  path.times.resize(std::size_t(n) + 1);
  path.values.resize(std::size_t(n) + 1);
  path.times[0] = 0;
  path.values[0] = 0;
  double scale = std::pow(double(n), -hurst);
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    acc += h[std::size_t(i)];
    path.times[std::size_t(i) + 1] = double(i + 1) / n;
    path.values[std::size_t(i) + 1] = scale * acc;
  }
  return path;
}

}  // namespace

FbmPath sample_fbm(double hurst, int points, std::uint64_t seed, FbmMethod method) {
  if (!(hurst > 0 && hurst < 1)) throw validation_error("hurst must lie in (0,1)");
  if (points < 2) throw validation_error("need at least 2 points");
  if (method == FbmMethod::dense) return sample_fbm_dense(hurst, points, seed);
  try {
    return sample_fbm_circulant(hurst, points, seed);
  } catch (const hypothesis_error&) {
    // Embedding failed; fall back when the dense path can handle N.
    if (points > kDenseCap) throw;
    FbmPath path = sample_fbm_dense(hurst, points, seed);
    path.eigenvalue_clamped = true;
    return path;
  }
}

std::vector<std::pair<double, double>> sample_perturbed_graph(const LabeledSystem& s, double hurst,
                                                              int points, std::uint64_t seed,
                                                              int depth, FbmMethod method,
                                                              bool noise) {
  auto drift = sample_drift_grid(s, points, depth);
  std::vector<std::pair<double, double>> out(drift.size());
  if (noise) {
    FbmPath path = sample_fbm(hurst, points, seed, method);
    for (std::size_t i = 0; i < drift.size(); ++i) {
      out[i] = {drift[i].first, drift[i].second + path.values[i]};
    }
  } else {
    out = drift;
  }
  return out;
}

namespace {

struct KernelIntegrand {
  double th;  // t^H
  double u;
  double t2;  // t^2
  double gamma;
};

double kernel_integrand(double z, void* params) {
  const auto* p = static_cast<const KernelIntegrand*>(params);
  double w = p->th * z + p->u;
  double phi = std::exp(-0.5 * z * z) * 0.3989422804014326779;
  return phi * std::pow(w * w + p->t2, -0.5 * p->gamma);
}

void validate_query(const KernelQuery& q) {
  if (!(q.t > 0 && q.t <= std::exp(-1.0) * (1 + 1e-12))) {
    throw validation_error("kernel query needs t in (0, 1/e]");
  }
  if (!(q.gamma >= 0 && q.gamma < q.d + 2)) {
    throw validation_error("kernel query needs 0 <= gamma < d + 2");
  }
  if (!(q.hurst > 0 && q.hurst < 1)) throw validation_error("hurst must lie in (0,1)");
}

}  // namespace

KernelValue kernel_I_quadrature(const KernelQuery& q) {
  validate_query(q);
  if (q.d != 1) throw validation_error("quadrature supports d = 1 only");
  ensure_gsl_handler_off();

  KernelIntegrand params{std::pow(q.t, q.hurst), q.u, q.t * q.t, q.gamma};
  gsl_function f;
  f.function = &kernel_integrand;
  f.params = &params;

  // Gaussian weight makes the tail beyond |z| = 12 negligible (< 1e-32
  // relative); split at the integrand's peak z = -u / t^H when interior.
  const double kLim = 12.0;
  std::vector<double> pts{-kLim};
  double peak = -q.u / params.th;
  if (peak > -kLim && peak < kLim) pts.push_back(peak);
  pts.push_back(kLim);

  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
  double value = 0, abserr = 0;
  int status = gsl_integration_qagp(&f, pts.data(), pts.size(), 1e-11, 1e-10, 4000, ws, &value,
                                    &abserr);
  gsl_integration_workspace_free(ws);
  if (status != GSL_SUCCESS && status != GSL_EROUND) {
    throw hypothesis_error(std::string("kernel quadrature failed: ") + gsl_strerror(status));
  }
  return {value, abserr};
}

KernelValue kernel_I_monte_carlo(const KernelQuery& q, std::uint64_t seed, std::int64_t samples) {
  validate_query(q);
  if (samples < 2) throw validation_error("need at least 2 samples");
  double th = std::pow(q.t, q.hurst);
  double t2 = q.t * q.t;
  double sum = 0, sumsq = 0;
  const std::int64_t chunk = 4096;
  std::int64_t done = 0;
  for (std::uint64_t c = 0; done < samples; ++c) {
    CounterRng rng(CounterRng::sub_seed(seed, c));
    std::int64_t take = std::min(chunk, samples - done);
    for (std::int64_t i = 0; i < take; ++i) {
      double norm2 = 0;
      for (int k = 0; k < q.d; ++k) {
        double w = th * rng.gaussian() + (k == 0 ? q.u : 0.0);
        norm2 += w * w;
      }
      double v = std::pow(norm2 + t2, -0.5 * q.gamma);
      sum += v;
      sumsq += v * v;
    }
    done += take;
  }
  double mean = sum / double(samples);
  double var = (sumsq - double(samples) * mean * mean) / double(samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / double(samples))};
}

RegimeReport kernel_regime_check(double hurst, int d, double gamma,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& u_grid, double threshold_c) {
  if (gamma == d) throw validation_error("regime bounds need gamma != d");
  RegimeReport rep;
  rep.hurst = hurst;
  rep.gamma = gamma;
  rep.d = d;
  rep.threshold_c = threshold_c;
  rep.t_grid = t_grid;
  rep.u_grid = u_grid;
  RegimeStat far{"far-u", "|u|^-gamma", 0, 0.0};
  RegimeStat near;
  if (d < gamma) {
    near = {"near-u-small-d", "t^(d(1-H)-gamma)", 0, 0.0};
  } else {
    near = {"near-u-large-d", "t^(-gamma H)", 0, 0.0};
  }
  for (double t : t_grid) {
    double cutoff = threshold_c * std::pow(t, hurst) * std::sqrt(std::abs(std::log(t)));
    for (double u : u_grid) {
      double value = kernel_I_quadrature({t, u, gamma, hurst, d}).value;
      if (u > cutoff) {
        far.cells += 1;
        far.max_ratio = std::max(far.max_ratio, value * std::pow(std::abs(u), gamma));
      } else {
        near.cells += 1;
        double bound = d < gamma ? std::pow(t, d * (1 - hurst) - gamma)
                                 : std::pow(t, -gamma * hurst);
        near.max_ratio = std::max(near.max_ratio, value / bound);
      }
    }
  }
  rep.regimes = {far, near};
  return rep;
}

}  // namespace fractaldim
