#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dlab {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// A general Dirichlet series sum a_n exp(-lambda_n s) stored as a finite
// prefix. `finite` marks whether the prefix IS the series or truncates an
// infinite one; certified tail bounds apply only to the finite case.
struct GeneralDirichletSeries {
  Eigen::ArrayXd exponents;     // lambda_1 < lambda_2 < ..., lambda_1 >= 0
  Eigen::ArrayXcd coefficients; // a_1 ... a_N
  bool finite = true;
  std::string closed_form;      // registry tag for oracle cross-checks, or ""

  Index size() const { return exponents.size(); }
};

// Validates the invariants (equal lengths, N >= 1, strictly increasing
// nonnegative exponents, all entries finite) and throws std::invalid_argument.
GeneralDirichletSeries make_series(Eigen::ArrayXd exponents,
                                   Eigen::ArrayXcd coefficients,
                                   bool finite = true,
                                   std::string closed_form = {});

// Strictly increasing partial-sum indices m_1 < m_2 < ... (1-based).
struct SubsequenceSelector {
  std::vector<Index> indices;

  static SubsequenceSelector full(Index n);        // 1, 2, ..., n
  static SubsequenceSelector even(Index n);        // 2, 4, ..., <= n
  static SubsequenceSelector from(std::vector<Index> indices);
  Index count() const { return static_cast<Index>(indices.size()); }
  void validate_for(const GeneralDirichletSeries& series) const;
};

struct EvaluationResult {
  Complex value;
  Index terms_used = 0;
  double tail_bound = 0.0;
  bool tol_met = false;
  bool certified = false;  // false when the series is a truncated prefix
};

struct OstrowskiGapReport {
  std::vector<std::pair<Index, Index>> pairs;  // (p_k, q_k)
  std::vector<double> ratios;                  // q_k / p_k
};

// S_m(s) = sum_{n=1}^m a_n exp(-lambda_n s), summed in increasing-n order
// with compensated accumulation. Requires 1 <= m <= N.
Complex partial_sum(const GeneralDirichletSeries& series, Index m, Complex s);

// Partial sums at every selector index in one incremental pass.
std::vector<Complex> partial_sums_at(const GeneralDirichletSeries& series,
                                     const SubsequenceSelector& sel, Complex s);

// B(m, sigma, eps) = exp(lambda_{m+1} (eps - sigma)) * sum_{n>m} |a_n| exp(-lambda_n eps).
// For a finite series this bounds |f - S_m| on the whole line Re s = sigma.
// Requires 0 < eps < sigma; returns 0 when m = N.
double tail_bound(const GeneralDirichletSeries& series, Index m, double sigma,
                  double eps);

// Truncated evaluation at Re s > 0: smallest stored m whose tail bound with
// eps = sigma/2 meets tol. For a truncated prefix the bound only covers the
// stored tail, so the result carries certified = false.
EvaluationResult evaluate(const GeneralDirichletSeries& series, Complex s,
                          double tol);

// Termwise derivative: a_n -> -lambda_n a_n over the same exponents.
GeneralDirichletSeries derivative(const GeneralDirichletSeries& series);

// Taylor bridge z = w e^{-s}, |w| = 1: coefficient c_{n} of z^n becomes the
// Dirichlet coefficient c_n w^n with exponent n (n = 0, 1, ...).
GeneralDirichletSeries from_taylor(std::span<const Complex> coeffs, Complex w,
                                   bool finite = true);

// (lambda_{m_k + 1} / lambda_{m_k})_k; requires m_k < N and lambda_{m_k} > 0.
std::vector<double> gap_ratio_sequence(const GeneralDirichletSeries& series,
                                       const SubsequenceSelector& sel);

// (inf_n lambda_{n+1}/lambda_n over the prefix, inf > 1). Requires lambda_1 > 0.
std::pair<double, bool> high_indices_check(const GeneralDirichletSeries& series);

// Maximal zero-runs of a coefficient sequence indexed from n = 1, reported as
// (p_k, q_k) with a_n = 0 for p_k + 1 <= n <= q_k, filtered by q/p >= ratio_min.
// Exact zeros only. Throws if every coefficient is zero.
OstrowskiGapReport detect_pure_ostrowski(std::span<const Complex> coeffs,
                                         double ratio_min);

// Prefix estimate of the absolute-convergence diagnostic
// limsup log(sum_{n<=m} |a_n|) / lambda_m (max over the stored upper half).
double convergence_abscissa_estimate(const GeneralDirichletSeries& series);

// ---- catalog of builtin series used by the CLI and experiments ----

// a_n = 1, lambda_n = n; f(s) = 1/(e^s - 1).
GeneralDirichletSeries make_geometric(Index terms);
// a_n = n^{-power}, lambda_n = log n; f(s) = zeta(s + power).
GeneralDirichletSeries make_zeta_shifted(Index terms, double power);
// a_k = 2^{-k}/k!, lambda_k = k!.
GeneralDirichletSeries make_factorial_lacunary(Index terms);
// a_n = 3^{-n}, lambda_n = 2^n.
GeneralDirichletSeries make_high_indices(Index terms);

}  // namespace dlab
