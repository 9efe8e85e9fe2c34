#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dlab/boundary.hpp"

using namespace dlab;

namespace {

constexpr double kPi = std::numbers::pi;

GeneralDirichletSeries identity_hook() {
  Eigen::ArrayXd lambda(1);
  lambda << 1.0;
  Eigen::ArrayXcd a(1);
  a << Complex(1.0, 0.0);
  return make_series(lambda, a, false, "identity");
}

GeneralDirichletSeries small_finite() {
  Eigen::ArrayXd lambda(3);
  lambda << 0.5, 1.0, 2.0;
  Eigen::ArrayXcd a(3);
  a << Complex(1.0, 0.0), Complex(0.0, -0.5), Complex(0.25, 0.25);
  return make_series(lambda, a, true);
}

}  // namespace

TEST_CASE("nt_limit recovers continuous boundary values") {
  const auto report = nt_limit(identity_hook(), 1.0, kPi / 4.0, 0.5, 1e-10);
  CHECK(report.status == ConvergenceStatus::converged);
  CHECK(std::abs(report.limit - Complex(0.0, 1.0)) <= 1e-10);
  CHECK(report.error_estimate <= 1e-10);
}

TEST_CASE("nt_limit at the geometric boundary point and pole") {
  const auto geo = make_geometric(40);
  const auto at_pi = nt_limit(geo, kPi, kPi / 4.0, 0.25, 1e-10);
  CHECK(at_pi.status == ConvergenceStatus::converged);
  CHECK(std::abs(at_pi.limit - Complex(-0.5, 0.0)) <= 1e-8);

  const auto at_pole = nt_limit(geo, 0.0, kPi / 4.0, 0.25, 1e-6);
  CHECK(at_pole.status == ConvergenceStatus::diverged);
  CHECK_FALSE(at_pole.diagnostic.empty());
}

TEST_CASE("nt_limit surfaces uncertifiable evaluations") {
  // force the truncated-summation route: prefix far too short near sigma = 0
  const auto zeta = make_zeta_shifted(100, 1.0);
  const auto f = make_series_evaluator(zeta);
  const auto report = nt_limit(f, 0.5, kPi / 4.0, 0.5, 1e-6);
  CHECK(report.status == ConvergenceStatus::undecided);
  CHECK(report.diagnostic.find("certification") != std::string::npos);
}

TEST_CASE("nt_limit validates its arguments") {
  const auto geo = make_geometric(10);
  CHECK_THROWS_AS(nt_limit(geo, 0.0, 0.0, 0.5, 1e-8), std::domain_error);
  CHECK_THROWS_AS(nt_limit(geo, 0.0, kPi / 4.0, -1.0, 1e-8), std::domain_error);
}

TEST_CASE("subsequence limits at boundary points") {
  const auto geo = make_geometric(40);
  const auto even = SubsequenceSelector::even(40);

  const auto at_pi = subsequence_limit_at(geo, even, kPi, 1e-10);
  CHECK(at_pi.status == ConvergenceStatus::converged);
  CHECK(std::abs(at_pi.limit) <= 1e-12);

  const auto at_half_pi = subsequence_limit_at(geo, even, kPi / 2.0, 1e-10);
  CHECK(at_half_pi.status == ConvergenceStatus::diverged);

  const auto fin = small_finite();
  const auto full = SubsequenceSelector::full(3);
  for (double t : {-1.0, 0.0, 2.0}) {
    const auto r = subsequence_limit_at(fin, full, t, 1e-12);
    CHECK(r.status == ConvergenceStatus::converged);
    CHECK(std::abs(r.limit - partial_sum(fin, 3, Complex(0.0, t))) == 0.0);
  }
}

TEST_CASE("theorem1 on a finite series gives exact agreement") {
  const auto fin = small_finite();
  const auto full = SubsequenceSelector::full(3);
  const std::vector<double> grid = {-0.5, 0.0, 0.5, 1.0};
  const auto scan = theorem1_compare(fin, full, grid, kPi / 4.0, 1e-9);
  CHECK(scan.both_converged_count == 4);
  for (const auto& p : scan.points) {
    CHECK(p.both_converged);
    CHECK_FALSE(p.anomaly);
  }
  CHECK(scan.comparison_max <= 1e-9);
}

TEST_CASE("theorem1 flags the measure-zero counterexample point as isolated") {
  const auto geo = make_geometric(60);
  const auto even = SubsequenceSelector::even(60);
  const std::vector<double> grid = {kPi - 0.1, kPi, kPi + 0.1};
  const auto scan = theorem1_compare(geo, even, grid, kPi / 4.0, 1e-8);

  const auto& at_pi = scan.points[1];
  CHECK(at_pi.subsequence.status == ConvergenceStatus::converged);
  CHECK(std::abs(at_pi.subsequence.limit) <= 1e-12);
  CHECK(at_pi.nontangential.status == ConvergenceStatus::converged);
  CHECK(std::abs(at_pi.nontangential.limit - Complex(-0.5, 0.0)) <= 1e-7);
  CHECK(at_pi.both_converged);
  CHECK(at_pi.mismatch == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(at_pi.anomaly);
  CHECK(at_pi.isolated);

  // neighbours oscillate on the subsequence side, so E cap F is just {pi}
  CHECK_FALSE(scan.points[0].both_converged);
  CHECK_FALSE(scan.points[2].both_converged);
  CHECK(scan.comparison_max == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("converged verdicts move at most by the old error estimate") {
  const auto geo = make_geometric(40);
  const auto even = SubsequenceSelector::even(40);
  const auto coarse = subsequence_limit_at(geo, even, kPi, 1e-6);
  const auto fine = subsequence_limit_at(geo, even, kPi, 1e-10);
  REQUIRE(coarse.status == ConvergenceStatus::converged);
  REQUIRE(fine.status == ConvergenceStatus::converged);
  CHECK(std::abs(coarse.limit - fine.limit) <= coarse.error_estimate + 1e-15);
}

TEST_CASE("theorem3 positive instance on the factorial-lacunary series") {
  const auto lac = make_factorial_lacunary(30);
  const auto sel = SubsequenceSelector::full(30);
  const ApproachRegion region = HalfDiscRegion{0.0, 0.5};
  const auto report =
      theorem3_run(lac, sel, 0.0, {-0.5, 0.5}, region, 1e-8);
  CHECK(report.status == ConvergenceStatus::converged);
  CHECK(report.gap_ratios_increasing);
  CHECK(report.gap_ratios.back() == doctest::Approx(30.0));
  CHECK(report.region_is_fat);
  CHECK(report.settled_at >= 0);
  CHECK(report.conclusion_gaps.back().second < 1e-8);
  CHECK(report.interval_sup < 1.0);
  CHECK(report.derivative_region_sup < 2.0);
  CHECK(report.boundary_value.status == ConvergenceStatus::converged);
  // the boundary value is exp(1/2) - 1 by direct summation
  CHECK(std::abs(report.boundary_value.limit - (std::exp(0.5) - 1.0)) <= 1e-8);
}

TEST_CASE("theorem3 reproduces the geometric counterexample") {
  const auto geo = make_geometric(40);
  const auto even = SubsequenceSelector::even(40);
  const ApproachRegion region = HalfDiscRegion{kPi, 1.0};
  const auto report = theorem3_run(geo, even, kPi,
                                   {kPi / 2.0 + 0.1, 3.0 * kPi / 2.0 - 0.1},
                                   region, 1e-8);
  CHECK(report.status == ConvergenceStatus::diverged);
  CHECK_FALSE(report.gap_ratios_increasing);  // (2k+1)/(2k) decreases to 1
  CHECK(report.gap_ratios.back() < 1.05);
  CHECK(report.conclusion_gaps.back().second == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(report.interval_sup <= std::sqrt(2.0) + 1e-12);
}

TEST_CASE("theorem3 on a finite series with the full selector is trivial") {
  const auto fin = small_finite();
  const auto full = SubsequenceSelector::full(3);
  const ApproachRegion region = StolzRegion{0.0, kPi / 4.0, 0.5};
  const auto report = theorem3_run(fin, full, 0.0, {-1.0, 1.0}, region, 1e-8);
  CHECK(report.status == ConvergenceStatus::converged);
  CHECK(report.conclusion_gaps.back().second <= 1e-8);
}

TEST_CASE("theorem3 aborts with a diagnostic when nt_limit is undecided") {
  const auto zeta = make_zeta_shifted(200, 1.5);  // no closed form registered
  const auto sel = SubsequenceSelector::full(200);
  const ApproachRegion region = HalfDiscRegion{0.5, 0.25};
  Theorem3Options opts;
  opts.prefer_closed_form = false;
  const auto report =
      theorem3_run(zeta, sel, 0.5, {0.0, 1.0}, region, 1e-10, opts);
  CHECK(report.status == ConvergenceStatus::undecided);
  CHECK_FALSE(report.diagnostic.empty());
}

TEST_CASE("theorem2 probe stabilizes for bounded functions") {
  const auto geo = make_geometric(40);
  const auto even = SubsequenceSelector::even(40);
  const std::array<ApproachRegion, 2> regions = {
      ApproachRegion{HalfDiscRegion{kPi / 2.0, 0.4}},
      ApproachRegion{HalfDiscRegion{3.0 * kPi / 2.0, 0.4}}};
  const auto mu = make_measure({}, {}, {});
  const auto report = theorem2_probe(geo, even, kPi / 2.0, 3.0 * kPi / 2.0,
                                     regions, mu, 0.2, 0.05);
  CHECK(report.stabilized);
  CHECK(report.final_sup < 1.0);
  CHECK(report.interval_sup < 3.0);
  CHECK(report.rectangle_ladder.size() == 8);

  // pole inside the shrunk rectangle: the ladder keeps growing
  const std::array<ApproachRegion, 2> pole_regions = {
      ApproachRegion{HalfDiscRegion{-0.5, 0.2}},
      ApproachRegion{HalfDiscRegion{0.5, 0.2}}};
  const auto bad = theorem2_probe(geo, even, -0.5, 0.5, pole_regions, mu, 0.1,
                                  0.05);
  CHECK_FALSE(bad.stabilized);
  CHECK(bad.final_sup > 10.0);

  CHECK_THROWS_AS(
      theorem2_probe(geo, even, 0.5, -0.5, regions, mu, 0.1, 0.05),
      std::domain_error);
  CHECK_THROWS_AS(
      theorem2_probe(geo, even, -0.5, 0.5, regions, mu, 0.6, 0.05),
      std::domain_error);
}

TEST_CASE("corollary6 bridges lacunary Taylor series") {
  // coefficients supported on factorial degrees, c_{k!} = 2^{-k}/k!
  std::vector<Complex> coeffs(121, Complex(0.0, 0.0));
  double pw = 1.0, fact = 1.0;
  std::vector<Index> degrees;
  for (int k = 1; k <= 5; ++k) {
    pw *= 0.5;
    fact *= k;
    coeffs[static_cast<std::size_t>(fact)] = pw / fact;
    degrees.push_back(static_cast<Index>(fact));
  }
  const ApproachRegion region = HalfDiscRegion{0.0, 0.4};
  const auto report = corollary6_run(coeffs, Complex(1.0, 0.0),
                                     SubsequenceSelector::from(degrees),
                                     {-0.5, 0.5}, region, 1e-6, 2.0);
  CHECK_FALSE(report.gaps.pairs.empty());
  CHECK(report.inner.status == ConvergenceStatus::converged);
  // T_{p_k}(1) approaches sum 2^{-k}/k! = exp(1/2) - 1
  double target = 0.0;
  double p2 = 1.0, f2 = 1.0;
  for (int k = 1; k <= 5; ++k) {
    p2 *= 0.5;
    f2 *= k;
    target += p2 / f2;
  }
  CHECK(std::abs(report.inner.boundary_value.limit - target) <= 1e-6);
  CHECK(report.inner.conclusion_gaps.back().second <= 1e-6);
}

TEST_CASE("corollary6 trivial and error cases") {
  // f(z) = z at w = i
  const std::vector<Complex> linear = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
  const ApproachRegion region = HalfDiscRegion{0.0, 0.4};
  const auto triv = corollary6_run(linear, Complex(0.0, 1.0),
                                   SubsequenceSelector::from({1}), {-0.5, 0.5},
                                   region, 1e-8);
  CHECK(triv.gaps.pairs.empty());
  CHECK(triv.inner.status == ConvergenceStatus::converged);
  CHECK(std::abs(triv.inner.boundary_value.limit - Complex(0.0, 1.0)) <= 1e-8);

  // constant f converges at every w; degree 0 selectors skip from()
  const std::vector<Complex> constant = {Complex(2.0, -1.0)};
  SubsequenceSelector deg0;
  deg0.indices = {0};
  const auto cst = corollary6_run(constant, Complex(1.0, 0.0), deg0,
                                  {-0.5, 0.5}, region, 1e-8);
  CHECK(cst.inner.status == ConvergenceStatus::converged);

  // gaps present but below the ratio threshold
  const std::vector<Complex> thin = {Complex(1.0, 0.0), Complex(1.0, 0.0),
                                     Complex(0.0, 0.0), Complex(1.0, 0.0)};
  CHECK_THROWS_AS(corollary6_run(thin, Complex(1.0, 0.0),
                                 SubsequenceSelector::from({1}), {-0.5, 0.5},
                                 region, 1e-8, 5.0),
                  std::domain_error);
}

TEST_CASE("counterexample table reproduces the known values") {
  const auto table = counterexample_reproduce(200, 20);
  REQUIRE(table.rows.size() == 20);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row.value_at_pi) <= 1e-12);
    CHECK(row.sup_on_mesh <= table.bound + 1e-12);
  }
  CHECK(table.nt_at_pi.status == ConvergenceStatus::converged);
  CHECK(std::abs(table.nt_at_pi.limit - Complex(-0.5, 0.0)) <= 1e-8);
  CHECK_FALSE(table.gap_hypothesis_holds);
  CHECK(table.conclusion_fails);
  CHECK(table.derivative_sup < 100.0);

  const auto again = counterexample_reproduce(200, 20);
  CHECK(again.values == table.values);  // deterministic, bit for bit
}

TEST_CASE("detector limits agree with registered closed forms") {
  const auto geo = make_geometric(60);
  const auto f = evaluator_for(geo);
  for (double t0 : {2.0, kPi, 4.5}) {
    const auto nt = nt_limit(f, t0, kPi / 4.0, 0.25, 1e-9);
    REQUIRE(nt.status == ConvergenceStatus::converged);
    const Complex closed = 1.0 / (std::exp(Complex(0.0, t0)) - 1.0);
    CHECK(std::abs(nt.limit - closed) <= nt.error_estimate + 1e-9);
  }
}
