#include <doctest.h>

#include <cmath>
#include <random>

#include "fractaldim/carpet.hpp"
#include "fractaldim/driftfn.hpp"

using namespace fractaldim;

namespace {

// Single pattern sending every column to row 0: f == 0.
LabeledSystem constant_zero_system() {
  Pattern p{6, 2, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}};
  return LabeledSystem::from_pattern(p);
}

// The text variant with pattern B's top-row cell at column 1 instead of 0;
// inconsistent at dividing points.
LabeledSystem claim_text_variant() {
  LabeledSystem s = ab_system();
  s.cells[1] = {{0, 0, 1}, {1, 1, 1}, {2, 0, 0}, {3, 0, 1}, {4, 0, 0}, {5, 0, 1}};
  return s;
}

}  // namespace

TEST_CASE("ab system construction") {
  LabeledSystem s = ab_system();
  CHECK(s.labels == std::vector<std::string>{"A", "B"});
  CHECK(s.is_function_graph());
  CHECK(row_counts(s.pattern_of(0)) == std::vector<int>{5, 1});
  CHECK(row_counts(s.pattern_of(1)) == std::vector<int>{5, 1});
}

TEST_CASE("eval_f at distinguished points") {
  LabeledSystem s = ab_system();
  for (int k : {1, 4, 8, 20}) {
    Bracket zero = eval_f(s, Rational{0, 1}, k);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(std::pow(2.0, -k)).epsilon(1e-15));

    Bracket one = eval_f(s, Rational{1, 1}, k);
    CHECK(one.hi == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.lo == doctest::Approx(1.0 - std::pow(2.0, -k)).epsilon(1e-15));
  }

  // f(1/6) = 1/2 under both base-6 representations.
  Bracket terminating = eval_f(s, Rational{1, 6}, 12);
  CHECK(terminating.hi == doctest::Approx(0.5).epsilon(1e-15));
  std::vector<int> repeating{0, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5};
  Bracket alt = eval_digits(s, repeating, 12);
  CHECK(alt.hi == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_f_grid_exact(s, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(eval_f(s, Rational{7, 6}, 4), validation_error);
  CHECK_THROWS_AS(eval_f(s, -0.25, 4), validation_error);

  Pattern not_graph{6, 2, {{0, 0}, {0, 1}, {1, 0}}};
  CHECK_THROWS_AS(eval_f(LabeledSystem::from_pattern(not_graph), 0.5, 4), hypothesis_error);
}

TEST_CASE("digit trace matches the label rules") {
  LabeledSystem s = ab_system();
  DigitTrace trace;
  eval_digits(s, {5, 0, 1}, 3, &trace);
  CHECK(trace.labels == std::vector<int>{0, 0, 0, 1});  // A -> A(col5) -> A(col0) -> B(col1)
  CHECK(trace.y_digits == std::vector<int>{1, 0, 0});
}

TEST_CASE("bracket nesting") {
  LabeledSystem s = ab_system();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double x = unif(rng);
    Bracket coarse = eval_f(s, x, 6);
    Bracket fine = eval_f(s, x, 7);
    CHECK(fine.lo >= coarse.lo - 1e-15);
    CHECK(fine.hi <= coarse.hi + 1e-15);
  }
}

TEST_CASE("drift grid sampling") {
  LabeledSystem s = ab_system();
  auto grid = sample_drift_grid(s, 7, 30);
  REQUIRE(grid.size() == 8);
  CHECK(grid.front().first == 0.0);
  CHECK(grid.front().second == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(grid.back().first == 1.0);
  CHECK(grid.back().second == doctest::Approx(1.0).epsilon(1e-8));

  for (auto [t, f] : sample_drift_grid(constant_zero_system(), 16, 30)) {
    CHECK(f == doctest::Approx(0.0).epsilon(1e-8));
  }

  auto tight = sample_drift_grid(s, 2, 30);
  Bracket b = eval_f(s, Rational{1, 2}, 30);
  CHECK(b.hi - b.lo == doctest::Approx(std::pow(2.0, -30)).epsilon(1e-12));
  CHECK(tight[1].second == doctest::Approx(b.mid()));
}

TEST_CASE("graph sits inside generation rectangles") {
  LabeledSystem s = ab_system();
  const int k = 4;
  auto rects = generation_cells(s, k);
  double w = std::pow(6.0, -k), h = std::pow(2.0, -k);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double t = unif(rng);
    double f = eval_f(s, t, 24).mid();
    bool covered = false;
    for (const GenRect& r : rects) {
      double x0 = double(r.col) * w, y0 = double(r.row) * h;
      if (t >= x0 - 1e-12 && t <= x0 + w + 1e-12 && f >= y0 - h && f <= y0 + 2 * h) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("holder bound and sharpness") {
  LabeledSystem s = ab_system();
  HolderReport rep = holder_check(s, 8);
  CHECK(rep.max_ratio <= 2.0 + 1e-12);
  CHECK(rep.witness_ratio >= 1.0 - 1e-12);

  HolderReport flat = holder_check(constant_zero_system(), 6);
  CHECK(flat.max_ratio == doctest::Approx(0.0));

  // Not Hoelder for any exponent above theta: the adjacent pair at columns
  // 4,5 of an all-A prefix has |f(x)-f(u)| = 2^-k, and 2^-k / 6^(-k t)
  // diverges once t > theta.
  double tprime = std::log(2.0) / std::log(6.0) + 0.05;
  double prev = 0;
  for (int k : {2, 6, 10, 14, 18}) {
    double diff = std::abs(eval_f_grid_exact(s, 5, k) - eval_f_grid_exact(s, 4, k));
    CHECK(diff == doctest::Approx(std::pow(2.0, -k)).epsilon(1e-12));
    double ratio = diff / std::pow(std::pow(6.0, -k), tprime);
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 4.0);
}

TEST_CASE("well-definedness at dividing points") {
  CHECK(well_defined_check(ab_system(), 8).pass);
  CHECK(well_defined_check(ab_system(), 1).pass);

  WellDefinedReport bad = well_defined_check(claim_text_variant(), 6);
  CHECK(!bad.pass);
  CHECK(bad.worst_level == 1);
  CHECK(bad.worst_index == 1);  // x = 1/6 disagrees between representations
}
