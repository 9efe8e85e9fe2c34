#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlab/geometry.hpp"
#include "dlab/potential.hpp"
#include "dlab/sequence.hpp"
#include "dlab/series.hpp"
#include "dlab/special.hpp"

namespace dlab {

// Nontangential limit at i t0: samples f along the three Stolz rays at radii
// r0 * 2^{-j} with per-point tolerance tol/10; converged when the last four
// radii agree within tol across all rays. Unreliable evaluations (truncated
// prefix exhausted) end the scan with an undecided verdict.
ConvergenceReport nt_limit(const Evaluator& f, double t0, double delta,
                           double r0, double tol, int max_halvings = 48);
ConvergenceReport nt_limit(const GeneralDirichletSeries& series, double t0,
                           double delta, double r0, double tol,
                           int max_halvings = 48);

enum class Acceleration { none, shanks };

// Limit of S_{m_k}(it) over the selector; exact finite summation on the
// boundary. With Acceleration::shanks, geometrically thinned checkpoints are
// extrapolated by the Wynn epsilon algorithm before the windowed test.
ConvergenceReport subsequence_limit_at(const GeneralDirichletSeries& series,
                                       const SubsequenceSelector& sel, double t,
                                       double tol,
                                       Acceleration accel = Acceleration::none);

struct BoundaryPointReport {
  double t = 0.0;
  ConvergenceReport subsequence;     // the E-side
  ConvergenceReport nontangential;   // the F-side (empty in E-only scans)
  bool both_converged = false;
  double mismatch = 0.0;             // |S - f| where both converged
  bool anomaly = false;              // mismatch > 10 * tol
  bool isolated = false;             // anomalous with non-anomalous neighbours
};

struct BoundaryScan {
  std::vector<BoundaryPointReport> points;
  int both_converged_count = 0;
  double comparison_max = 0.0;   // over the empirical E cap F
  double comparison_mean = 0.0;
  double tol = 0.0;
};

// E-side only: per-grid-point subsequence limits.
BoundaryScan subsequence_limits(const GeneralDirichletSeries& series,
                                const SubsequenceSelector& sel,
                                std::span<const double> grid, double tol,
                                Acceleration accel = Acceleration::none);

// Joins the subsequence scan with nontangential limits and compares them on
// the empirically detected E cap F. Points exceeding 10 * tol are flagged,
// and marked isolated when their converged neighbours agree with the theorem.
BoundaryScan theorem1_compare(const GeneralDirichletSeries& series,
                              const SubsequenceSelector& sel,
                              std::span<const double> grid, double delta,
                              double tol,
                              Acceleration accel = Acceleration::none,
                              bool prefer_closed_form = true);

struct Theorem3Options {
  double mesh = 0.01;
  bool prefer_closed_form = true;
  double nt_delta = 0.7853981633974483;  // pi/4
  double nt_r0 = 0.25;
};

struct Theorem3Report {
  std::vector<double> gap_ratios;
  bool gap_ratios_increasing = false;
  double interval_sup = 0.0;            // sup_k sup_t |S_{m_k}(it)| on the interval
  double derivative_region_sup = 0.0;   // empirical sup of |f'| on the region
  bool region_is_fat = false;
  ConvergenceReport boundary_value;     // f(i t0) from nt_limit
  std::vector<std::pair<Index, double>> conclusion_gaps;  // (m_k, |S_{m_k} - f|)
  Index settled_at = -1;  // first selector position with all later gaps < tol
  ConvergenceStatus status = ConvergenceStatus::undecided;
  std::string diagnostic;
  double tol = 0.0;
};

// Hypothesis audit plus conclusion check for the gap-condition theorem.
Theorem3Report theorem3_run(const GeneralDirichletSeries& series,
                            const SubsequenceSelector& sel, double t0,
                            std::pair<double, double> interval,
                            const ApproachRegion& region, double tol,
                            const Theorem3Options& opts = {});

struct Theorem2Options {
  double mesh = 0.02;
  int ladder_steps = 8;
  bool prefer_closed_form = true;
  double eval_tol = 1e-6;
};

struct Theorem2Report {
  std::array<double, 2> weighted_region_sup{};  // sup e^{-h}|f| on the two regions
  double interval_sup = 0.0;                    // sup |S_{m_k}| on the covering interval
  std::vector<std::pair<double, double>> rectangle_ladder;  // (sigma_min, sup |f|)
  bool stabilized = false;
  double final_sup = 0.0;
};

// Boundedness probe on the shrunk rectangle with a dyadic sigma_min ladder;
// reports a growth trend, not a certificate.
Theorem2Report theorem2_probe(const GeneralDirichletSeries& series,
                              const SubsequenceSelector& sel, double t1,
                              double t2,
                              const std::array<ApproachRegion, 2>& regions,
                              const BoundaryMeasure& h_measure, double rect_eps,
                              double mesh, const Theorem2Options& opts = {});

struct Corollary6Report {
  OstrowskiGapReport gaps;
  Theorem3Report inner;  // bridged run at t0 = 0
};

// Bridges a Taylor series (coefficients from degree 0) through z = w e^{-s}
// and delegates to theorem3_run at t0 = 0. `sel` holds Taylor degrees p_k;
// `arc` is the boundary interval in the bridged t coordinate (contains 0).
Corollary6Report corollary6_run(std::span<const Complex> taylor_coeffs,
                                Complex w, const SubsequenceSelector& sel,
                                std::pair<double, double> arc,
                                const ApproachRegion& region, double tol,
                                double ratio_min = 2.0,
                                const Theorem3Options& opts = {});

struct CounterexampleRow {
  Index m;              // 2k
  double sup_on_mesh;   // max_t |S_m(it)| over the mesh
  Complex value_at_pi;  // S_m(i pi), exactly zero in theory
};

struct CounterexampleTable {
  std::vector<CounterexampleRow> rows;  // k = 1..20
  std::vector<double> mesh;             // interior mesh of (pi/2, 3 pi/2)
  Eigen::MatrixXcd values;              // pairs x mesh: S_{2k}(it)
  double bound = 0.0;                   // sqrt(2)
  double max_sup = 0.0;
  double derivative_sup = 0.0;          // |f'| on the half-disc at i pi
  double last_gap_ratio = 0.0;          // lambda_{m+1}/lambda_m stays near 1
  ConvergenceReport nt_at_pi;           // -1/2
  bool gap_hypothesis_holds = false;    // false: ratios do not diverge
  bool conclusion_fails = false;        // |S_{m_k}(i pi) - f(i pi)| stays ~ 1/2
};

// The explicit failure of the gap theorem for f(s) = 1/(e^s - 1) with the
// even partial sums at i pi. Deterministic; no randomness anywhere.
CounterexampleTable counterexample_reproduce(int mesh_points = 1000,
                                             int pairs = 20);

}  // namespace dlab
