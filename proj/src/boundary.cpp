#include "dlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dlab {

namespace {

constexpr double kPi = std::numbers::pi;

double window_diameter_rows(const std::vector<std::array<Complex, 3>>& rows,
                            std::size_t window) {
  const std::size_t n = rows.size();
  const std::size_t lo = n > window ? n - window : 0;
  double diameter = 0.0;
  for (std::size_t i = lo; i < n; ++i)
    for (int a = 0; a < 3; ++a)
      for (std::size_t j = i; j < n; ++j)
        for (int b = 0; b < 3; ++b)
          diameter = std::max(diameter, std::abs(rows[i][a] - rows[j][b]));
  return diameter;
}

}  // namespace

ConvergenceReport nt_limit(const Evaluator& f, double t0, double delta,
                           double r0, double tol, int max_halvings) {
  if (!(delta > 0.0) || delta >= kPi / 2.0)
    throw std::domain_error("nt_limit: delta must lie in (0, pi/2)");
  if (!(r0 > 0.0) || !(tol > 0.0))
    throw std::domain_error("nt_limit: r0 and tol must be positive");

  const double aperture = kPi / 2.0 - delta;
  const std::array<double, 3> angles = {-aperture, 0.0, aperture};
  const double eval_tol = tol / 10.0;

  ConvergenceReport report;
  report.status = ConvergenceStatus::undecided;
  std::vector<std::array<Complex, 3>> rows;

  double r = r0;
  for (int j = 0; j <= max_halvings; ++j, r *= 0.5) {
    std::array<Complex, 3> row;
    for (int a = 0; a < 3; ++a) {
      const Complex s(r * std::cos(angles[a]), t0 + r * std::sin(angles[a]));
      const EvalSample sample = f(s, eval_tol);
      if (!sample.reliable) {
        report.diagnostic = "evaluation lost certification at r=" +
                            std::to_string(r) + "; refine the series prefix";
        return report;
      }
      row[a] = sample.value;
    }
    rows.push_back(row);
    report.samples.emplace_back(r, row[1]);

    if (rows.size() >= 4) {
      const double diameter = window_diameter_rows(rows, 4);
      if (diameter <= tol) {
        report.status = ConvergenceStatus::converged;
        report.limit = rows.back()[1];
        report.error_estimate = diameter;
        return report;
      }
    }
  }

  const double diameter = window_diameter_rows(rows, 4);
  report.error_estimate = diameter;
  if (diameter >= 10.0 * tol) {
    report.status = ConvergenceStatus::diverged;
    report.diagnostic = "ray window diameter " + std::to_string(diameter) +
                        " after " + std::to_string(max_halvings) + " halvings";
  } else {
    report.diagnostic = "window diameter " + std::to_string(diameter) +
                        " inconclusive at tolerance " + std::to_string(tol);
  }
  return report;
}

ConvergenceReport nt_limit(const GeneralDirichletSeries& series, double t0,
                           double delta, double r0, double tol,
                           int max_halvings) {
  return nt_limit(evaluator_for(series), t0, delta, r0, tol, max_halvings);
}

ConvergenceReport subsequence_limit_at(const GeneralDirichletSeries& series,
                                       const SubsequenceSelector& sel, double t,
                                       double tol, Acceleration accel) {
  sel.validate_for(series);
  const std::vector<Complex> sums = partial_sums_at(series, sel, Complex(0.0, t));
  std::vector<std::pair<double, Complex>> samples;
  samples.reserve(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k)
    samples.emplace_back(static_cast<double>(sel.indices[k]), sums[k]);
  if (series.finite && sel.indices.back() == series.size()) {
    // the full prefix is the function itself, no detection needed
    ConvergenceReport report;
    report.status = ConvergenceStatus::converged;
    report.limit = sums.back();
    report.error_estimate = 0.0;
    report.samples = std::move(samples);
    return report;
  }
  if (accel == Acceleration::shanks) {
    // dense selectors feed the extrapolator dyadic checkpoints S_{2^j} so the
    // epsilon table stays tiny and sees a consistent index ratio
    std::vector<std::pair<double, Complex>> dyadic;
    for (Index m = 32; m <= sel.indices.back(); m *= 2) {
      const auto it =
          std::lower_bound(sel.indices.begin(), sel.indices.end(), m);
      if (it == sel.indices.end() || *it != m) continue;
      const auto k = static_cast<std::size_t>(it - sel.indices.begin());
      dyadic.emplace_back(static_cast<double>(m), sums[k]);
    }
    if (dyadic.size() >= 8) return detect_limit_accelerated(dyadic, tol);
    return detect_limit_accelerated(samples, tol);
  }
  return detect_limit(samples, tol);
}

BoundaryScan subsequence_limits(const GeneralDirichletSeries& series,
                                const SubsequenceSelector& sel,
                                std::span<const double> grid, double tol,
                                Acceleration accel) {
  BoundaryScan scan;
  scan.tol = tol;
  scan.points.reserve(grid.size());
  for (double t : grid) {
    BoundaryPointReport point;
    point.t = t;
    point.subsequence = subsequence_limit_at(series, sel, t, tol, accel);
    scan.points.push_back(std::move(point));
  }
  return scan;
}

BoundaryScan theorem1_compare(const GeneralDirichletSeries& series,
                              const SubsequenceSelector& sel,
                              std::span<const double> grid, double delta,
                              double tol, Acceleration accel,
                              bool prefer_closed_form) {
  BoundaryScan scan = subsequence_limits(series, sel, grid, tol, accel);
  const Evaluator f = evaluator_for(series, prefer_closed_form);

  double mismatch_sum = 0.0;
  for (BoundaryPointReport& point : scan.points) {
    point.nontangential = nt_limit(f, point.t, delta, 0.5, tol);
    point.both_converged =
        point.subsequence.status == ConvergenceStatus::converged &&
        point.nontangential.status == ConvergenceStatus::converged;
    if (!point.both_converged) continue;
    point.mismatch = std::abs(point.subsequence.limit - point.nontangential.limit);
    point.anomaly = point.mismatch > 10.0 * tol;
    ++scan.both_converged_count;
    mismatch_sum += point.mismatch;
    scan.comparison_max = std::max(scan.comparison_max, point.mismatch);
  }
  if (scan.both_converged_count > 0)
    scan.comparison_mean = mismatch_sum / scan.both_converged_count;

  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    if (!scan.points[i].anomaly) continue;
    bool neighbour_ok = true;
    if (i > 0 && scan.points[i - 1].both_converged && scan.points[i - 1].anomaly)
      neighbour_ok = false;
    if (i + 1 < scan.points.size() && scan.points[i + 1].both_converged &&
        scan.points[i + 1].anomaly)
      neighbour_ok = false;
    scan.points[i].isolated = neighbour_ok;
  }
  return scan;
}

Theorem3Report theorem3_run(const GeneralDirichletSeries& series,
                            const SubsequenceSelector& sel, double t0,
                            std::pair<double, double> interval,
                            const ApproachRegion& region, double tol,
                            const Theorem3Options& opts) {
  sel.validate_for(series);
  if (!(interval.first < t0 && t0 < interval.second))
    throw std::domain_error("theorem3_run: t0 must be interior to the interval");

  Theorem3Report report;
  report.tol = tol;
  {
    SubsequenceSelector ratio_sel;
    for (Index m : sel.indices)
      if (m < series.size() && series.exponents[m - 1] > 0.0)
        ratio_sel.indices.push_back(m);
    if (!ratio_sel.indices.empty())
      report.gap_ratios = gap_ratio_sequence(series, ratio_sel);
  }
  report.gap_ratios_increasing = true;
  for (std::size_t i = 1; i < report.gap_ratios.size(); ++i)
    if (report.gap_ratios[i] < report.gap_ratios[i - 1])
      report.gap_ratios_increasing = false;
  report.region_is_fat = is_fat(region);

  const double span = interval.second - interval.first;
  const int steps = std::max(2, static_cast<int>(std::floor(span / opts.mesh)));
  for (int i = 1; i < steps; ++i) {
    const double t = interval.first + span * i / steps;
    for (const Complex& v : partial_sums_at(series, sel, Complex(0.0, t)))
      report.interval_sup = std::max(report.interval_sup, std::abs(v));
  }

  const GeneralDirichletSeries deriv = derivative(series);
  const Evaluator fp = evaluator_for(deriv, opts.prefer_closed_form);
  report.derivative_region_sup = region_sup(
      [&fp](Complex s) { return fp(s, 1e-8).value; }, region, opts.mesh);

  const Evaluator f = evaluator_for(series, opts.prefer_closed_form);
  report.boundary_value = nt_limit(f, t0, opts.nt_delta, opts.nt_r0, tol);
  if (report.boundary_value.status != ConvergenceStatus::converged) {
    report.status = ConvergenceStatus::undecided;
    report.diagnostic = "boundary value at t0 not resolved: " +
                        (report.boundary_value.diagnostic.empty()
                             ? to_string(report.boundary_value.status)
                             : report.boundary_value.diagnostic);
    return report;
  }

  const std::vector<Complex> sums =
      partial_sums_at(series, sel, Complex(0.0, t0));
  report.conclusion_gaps.reserve(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k)
    report.conclusion_gaps.emplace_back(
        sel.indices[k], std::abs(sums[k] - report.boundary_value.limit));

  Index settled = -1;
  for (Index k = static_cast<Index>(sums.size()) - 1; k >= 0; --k) {
    if (report.conclusion_gaps[static_cast<std::size_t>(k)].second < tol)
      settled = k;
    else
      break;
  }
  report.settled_at = settled;
  if (settled >= 0) {
    report.status = ConvergenceStatus::converged;
  } else {
    report.status = ConvergenceStatus::diverged;
    report.diagnostic = "final subsequence gap " +
                        std::to_string(report.conclusion_gaps.back().second) +
                        " exceeds tolerance";
  }
  return report;
}

Theorem2Report theorem2_probe(const GeneralDirichletSeries& series,
                              const SubsequenceSelector& sel, double t1,
                              double t2,
                              const std::array<ApproachRegion, 2>& regions,
                              const BoundaryMeasure& h_measure, double rect_eps,
                              double mesh, const Theorem2Options& opts) {
  sel.validate_for(series);
  if (!(t1 < t2)) throw std::domain_error("theorem2_probe: need t1 < t2");
  if (!(rect_eps > 0.0) || 2.0 * rect_eps >= t2 - t1)
    throw std::domain_error("theorem2_probe: rect_eps too large for (t1, t2)");

  Theorem2Report report;
  const Evaluator f = evaluator_for(series, opts.prefer_closed_form);

  for (int r = 0; r < 2; ++r) {
    report.weighted_region_sup[r] = region_sup(
        [&](Complex s) {
          const double h = poisson_integral(h_measure, s);
          return f(s, opts.eval_tol).value * std::exp(-h);
        },
        regions[r], mesh);
  }

  {
    const double lo = t1 - rect_eps;
    const double hi = t2 + rect_eps;
    const int steps = std::max(2, static_cast<int>(std::floor((hi - lo) / mesh)));
    for (int i = 0; i <= steps; ++i) {
      const double t = lo + (hi - lo) * i / steps;
      for (const Complex& v : partial_sums_at(series, sel, Complex(0.0, t)))
        report.interval_sup = std::max(report.interval_sup, std::abs(v));
    }
  }

  const double ta = t1 + rect_eps;
  const double tb = t2 - rect_eps;
  for (int j = 1; j <= opts.ladder_steps; ++j) {
    const double sigma_min = std::ldexp(1.0, -j);
    double sup = 0.0;
    for (double sigma = sigma_min; sigma < 1.0; sigma += mesh) {
      const int tsteps =
          std::max(2, static_cast<int>(std::floor((tb - ta) / mesh)));
      for (int i = 0; i <= tsteps; ++i) {
        const double t = ta + (tb - ta) * i / tsteps;
        sup = std::max(sup, std::abs(f(Complex(sigma, t), opts.eval_tol).value));
      }
    }
    report.rectangle_ladder.emplace_back(sigma_min, sup);
  }

  const std::size_t n = report.rectangle_ladder.size();
  report.final_sup = report.rectangle_ladder.back().second;
  if (n >= 2) {
    const double prev = report.rectangle_ladder[n - 2].second;
    report.stabilized = std::abs(report.final_sup - prev) <=
                        0.01 * std::max(1.0, report.final_sup);
  }
  return report;
}

Corollary6Report corollary6_run(std::span<const Complex> taylor_coeffs,
                                Complex w, const SubsequenceSelector& sel,
                                std::pair<double, double> arc,
                                const ApproachRegion& region, double tol,
                                double ratio_min, const Theorem3Options& opts) {
  if (taylor_coeffs.empty())
    throw std::domain_error("corollary6_run: empty coefficient list");

  Corollary6Report report;
  if (taylor_coeffs.size() > 1) {
    const std::span<const Complex> positive = taylor_coeffs.subspan(1);
    bool has_zero_run = false;
    for (const Complex& c : positive)
      if (std::abs(c) == 0.0) has_zero_run = true;
    if (has_zero_run) {
      report.gaps = detect_pure_ostrowski(positive, ratio_min);
      if (report.gaps.pairs.empty())
        throw std::domain_error(
            "corollary6_run: no Ostrowski gaps at the requested ratio");
    }
  }

  SubsequenceSelector bridged;
  bridged.indices.reserve(sel.indices.size());
  for (Index p : sel.indices) {
    if (p < 0 || p >= static_cast<Index>(taylor_coeffs.size()))
      throw std::domain_error("corollary6_run: selector degree out of range");
    bridged.indices.push_back(p + 1);  // T_p keeps coefficients c_0..c_p
  }

  const GeneralDirichletSeries series = from_taylor(taylor_coeffs, w);
  report.inner =
      theorem3_run(series, bridged, 0.0, arc, region, tol, opts);
  return report;
}

CounterexampleTable counterexample_reproduce(int mesh_points, int pairs) {
  if (mesh_points < 2 || pairs < 1)
    throw std::domain_error("counterexample_reproduce: bad table shape");

  CounterexampleTable table;
  table.bound = std::sqrt(2.0);

  const GeneralDirichletSeries series = make_geometric(2 * pairs);
  table.mesh.resize(static_cast<std::size_t>(mesh_points));
  for (int i = 0; i < mesh_points; ++i)
    table.mesh[static_cast<std::size_t>(i)] =
        kPi / 2.0 + kPi * (i + 1) / (mesh_points + 1);

  SubsequenceSelector even;
  for (int k = 1; k <= pairs; ++k) even.indices.push_back(2 * k);

  table.values.resize(pairs, mesh_points);
  for (int i = 0; i < mesh_points; ++i) {
    const std::vector<Complex> sums = partial_sums_at(
        series, even, Complex(0.0, table.mesh[static_cast<std::size_t>(i)]));
    for (int k = 0; k < pairs; ++k)
      table.values(k, i) = sums[static_cast<std::size_t>(k)];
  }

  table.rows.reserve(static_cast<std::size_t>(pairs));
  const std::vector<Complex> at_pi =
      partial_sums_at(series, even, Complex(0.0, kPi));
  for (int k = 0; k < pairs; ++k) {
    CounterexampleRow row;
    row.m = 2 * (k + 1);
    row.sup_on_mesh = table.values.row(k).cwiseAbs().maxCoeff();
    row.value_at_pi = at_pi[static_cast<std::size_t>(k)];
    table.rows.push_back(row);
    table.max_sup = std::max(table.max_sup, row.sup_on_mesh);
  }

  const Evaluator fp = evaluator_for(derivative(series), true);
  const ApproachRegion half_disc = HalfDiscRegion{kPi, kPi / 2.0};
  table.derivative_sup = region_sup(
      [&fp](Complex s) { return fp(s, 1e-8).value; }, half_disc, 0.05);

  SubsequenceSelector ratio_sel;
  for (int k = 1; k < pairs; ++k) ratio_sel.indices.push_back(2 * k);
  const std::vector<double> ratios = gap_ratio_sequence(series, ratio_sel);
  table.last_gap_ratio = ratios.back();
  table.gap_hypothesis_holds = table.last_gap_ratio > 2.0;

  const Evaluator f = evaluator_for(series, true);
  table.nt_at_pi = nt_limit(f, kPi, kPi / 4.0, 0.25, 1e-10);
  if (table.nt_at_pi.status == ConvergenceStatus::converged) {
    const double gap = std::abs(at_pi.back() - table.nt_at_pi.limit);
    table.conclusion_fails = gap > 0.4;
  }
  return table;
}

}  // namespace dlab
