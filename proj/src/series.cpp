#include "dlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlab/kahan.hpp"

namespace dlab {

namespace {

Complex term(const GeneralDirichletSeries& series, Index n, Complex s) {
  return series.coefficients[n] * std::exp(-series.exponents[n] * s);
}

}  // namespace

GeneralDirichletSeries make_series(Eigen::ArrayXd exponents,
                                   Eigen::ArrayXcd coefficients, bool finite,
                                   std::string closed_form) {
  const Index n = exponents.size();
  if (n < 1) throw std::invalid_argument("series needs at least one term");
  if (coefficients.size() != n)
    throw std::invalid_argument("exponents and coefficients differ in length");
  if (!(exponents[0] >= 0.0))
    throw std::invalid_argument("lambda_1 must be >= 0");
  for (Index i = 0; i + 1 < n; ++i) {
    if (!(exponents[i] < exponents[i + 1]))
      throw std::invalid_argument("exponents must be strictly increasing at index " +
                                  std::to_string(i + 1));
  }
  if (!exponents.isFinite().all())
    throw std::invalid_argument("exponents must be finite");
  if (!coefficients.real().isFinite().all() ||
      !coefficients.imag().isFinite().all())
    throw std::invalid_argument("coefficients must be finite");
  return GeneralDirichletSeries{std::move(exponents), std::move(coefficients),
                                finite, std::move(closed_form)};
}

SubsequenceSelector SubsequenceSelector::full(Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  return {std::move(idx)};
}

SubsequenceSelector SubsequenceSelector::even(Index n) {
  std::vector<Index> idx;
  for (Index m = 2; m <= n; m += 2) idx.push_back(m);
  return {std::move(idx)};
}

SubsequenceSelector SubsequenceSelector::from(std::vector<Index> indices) {
  SubsequenceSelector sel{std::move(indices)};
  if (sel.indices.empty())
    throw std::invalid_argument("selector must not be empty");
  if (sel.indices.front() < 1)
    throw std::invalid_argument("selector indices start at 1");
  for (std::size_t i = 0; i + 1 < sel.indices.size(); ++i) {
    if (!(sel.indices[i] < sel.indices[i + 1]))
      throw std::invalid_argument("selector indices must be strictly increasing");
  }
  return sel;
}

void SubsequenceSelector::validate_for(const GeneralDirichletSeries& series) const {
  if (indices.empty()) throw std::invalid_argument("selector must not be empty");
  if (indices.back() > series.size())
    throw std::out_of_range("selector index exceeds stored prefix");
}

Complex partial_sum(const GeneralDirichletSeries& series, Index m, Complex s) {
  if (m < 1 || m > series.size())
    throw std::out_of_range("partial_sum: m out of range");
  KahanComplex acc;
  for (Index n = 0; n < m; ++n) acc += term(series, n, s);
  return acc.value();
}

std::vector<Complex> partial_sums_at(const GeneralDirichletSeries& series,
                                     const SubsequenceSelector& sel, Complex s) {
  sel.validate_for(series);
  std::vector<Complex> out;
  out.reserve(sel.indices.size());
  KahanComplex acc;
  Index n = 0;
  for (Index m : sel.indices) {
    for (; n < m; ++n) acc += term(series, n, s);
    out.push_back(acc.value());
  }
  return out;
}

double tail_bound(const GeneralDirichletSeries& series, Index m, double sigma,
                  double eps) {
  if (m < 1 || m > series.size())
    throw std::out_of_range("tail_bound: m out of range");
  if (!(eps > 0.0) || !(eps < sigma))
    throw std::domain_error("tail_bound requires 0 < eps < sigma");
  if (m == series.size()) return 0.0;
  KahanReal acc;
  for (Index n = m; n < series.size(); ++n)
    acc += std::abs(series.coefficients[n]) * std::exp(-series.exponents[n] * eps);
  return std::exp(series.exponents[m] * (eps - sigma)) * acc.value();
}

EvaluationResult evaluate(const GeneralDirichletSeries& series, Complex s,
                          double tol) {
  const double sigma = s.real();
  if (!(sigma > 0.0)) throw std::domain_error("evaluate requires Re s > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("evaluate requires tol > 0");
  const double eps = 0.5 * sigma;
  const Index n = series.size();

  // suffix[m] = sum_{j >= m} |a_j| exp(-lambda_j eps), 0-based
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 0.0);
  {
    KahanReal acc;
    for (Index j = n - 1; j >= 0; --j) {
      acc += std::abs(series.coefficients[j]) * std::exp(-series.exponents[j] * eps);
      suffix[static_cast<std::size_t>(j)] = acc.value();
    }
  }

  const auto bound_at = [&](Index m) {  // m is 1-based, m < n
    return std::exp(series.exponents[m] * (eps - sigma)) *
           suffix[static_cast<std::size_t>(m)];
  };

  EvaluationResult res;
  res.certified = series.finite;
  // The stored-tail bound at m = N is trivially 0; for a truncated prefix
  // that says nothing about the true tail, so the scan stops at N - 1 there.
  const Index last_bounded = series.finite ? n : n - 1;
  for (Index m = 1; m <= last_bounded; ++m) {
    const double b = (m == n) ? 0.0 : bound_at(m);
    if (b <= tol) {
      res.value = partial_sum(series, m, s);
      res.terms_used = m;
      res.tail_bound = b;
      res.tol_met = true;
      return res;
    }
  }
  // prefix exhausted (truncated series only): report the full stored sum
  res.value = partial_sum(series, n, s);
  res.terms_used = n;
  res.tail_bound = (n > 1) ? bound_at(n - 1) : 0.0;
  res.tol_met = false;
  return res;
}

GeneralDirichletSeries derivative(const GeneralDirichletSeries& series) {
  GeneralDirichletSeries out = series;
  out.coefficients = -series.exponents.cast<Complex>() * series.coefficients;
  if (series.closed_form == "geometric")
    out.closed_form = "geometric_derivative";
  else
    out.closed_form.clear();
  return out;
}

GeneralDirichletSeries from_taylor(std::span<const Complex> coeffs, Complex w,
                                   bool finite) {
  if (coeffs.empty()) throw std::domain_error("from_taylor: empty coefficients");
  if (std::abs(std::abs(w) - 1.0) > 1e-12)
    throw std::domain_error("from_taylor requires |w| = 1");
  const Index n = static_cast<Index>(coeffs.size());
  Eigen::ArrayXd lambda(n);
  Eigen::ArrayXcd a(n);
  Complex wpow = 1.0;
  for (Index k = 0; k < n; ++k) {
    lambda[k] = static_cast<double>(k);
    a[k] = coeffs[static_cast<std::size_t>(k)] * wpow;
    wpow *= w;
  }
  return make_series(std::move(lambda), std::move(a), finite);
}

std::vector<double> gap_ratio_sequence(const GeneralDirichletSeries& series,
                                       const SubsequenceSelector& sel) {
  std::vector<double> out;
  out.reserve(sel.indices.size());
  for (std::size_t k = 0; k < sel.indices.size(); ++k) {
    const Index m = sel.indices[k];
    if (m >= series.size())
      throw std::out_of_range("gap_ratio_sequence: m_k must be < N");
    const double lam = series.exponents[m - 1];
    if (!(lam > 0.0))
      throw std::domain_error("gap_ratio_sequence: lambda_{m_k} = 0 at k = " +
                              std::to_string(k + 1));
    out.push_back(series.exponents[m] / lam);
  }
  return out;
}

std::pair<double, bool> high_indices_check(const GeneralDirichletSeries& series) {
  if (!(series.exponents[0] > 0.0))
    throw std::domain_error("high_indices_check requires lambda_1 > 0");
  double inf = std::numeric_limits<double>::infinity();
  for (Index n = 0; n + 1 < series.size(); ++n)
    inf = std::min(inf, series.exponents[n + 1] / series.exponents[n]);
  // a strict margin so slowly-collapsing ratios (e.g. lambda_n = log n)
  // read as failing the condition on long prefixes
  return {inf, inf > 1.0 + 1e-6};
}

OstrowskiGapReport detect_pure_ostrowski(std::span<const Complex> coeffs,
                                         double ratio_min) {
  if (!(ratio_min > 1.0))
    throw std::invalid_argument("detect_pure_ostrowski requires ratio_min > 1");
  const auto is_zero = [&](std::size_t i) { return coeffs[i] == Complex{0.0, 0.0}; };
  bool any_nonzero = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!is_zero(i)) { any_nonzero = true; break; }
  if (!any_nonzero)
    throw std::domain_error("detect_pure_ostrowski: series is trivial (all zero)");

  OstrowskiGapReport report;
  std::size_t i = 0;
  while (i < coeffs.size()) {
    if (!is_zero(i)) { ++i; continue; }
    const std::size_t run_start = i;  // 0-based; coefficient index n = i + 1
    while (i < coeffs.size() && is_zero(i)) ++i;
    if (run_start == 0) continue;  // leading zeros carry no (p, q) pair
    const Index p = static_cast<Index>(run_start);  // last nonzero index, 1-based
    const Index q = static_cast<Index>(i);          // last zero index, 1-based
    const double ratio = static_cast<double>(q) / static_cast<double>(p);
    if (ratio >= ratio_min) {
      report.pairs.emplace_back(p, q);
      report.ratios.push_back(ratio);
    }
  }
  return report;
}

double convergence_abscissa_estimate(const GeneralDirichletSeries& series) {
  KahanReal acc;
  double best = -std::numeric_limits<double>::infinity();
  const Index n = series.size();
  for (Index m = 0; m < n; ++m) {
    acc += std::abs(series.coefficients[m]);
    if (m < n / 2) continue;  // limsup surrogate: upper half of the prefix
    const double lam = series.exponents[m];
    if (lam > 0.0) best = std::max(best, std::log(acc.value()) / lam);
  }
  return best;
}

GeneralDirichletSeries make_geometric(Index terms) {
  Eigen::ArrayXd lambda = Eigen::ArrayXd::LinSpaced(terms, 1.0, static_cast<double>(terms));
  Eigen::ArrayXcd a = Eigen::ArrayXcd::Ones(terms);
  return make_series(std::move(lambda), std::move(a), false, "geometric");
}

GeneralDirichletSeries make_zeta_shifted(Index terms, double power) {
  Eigen::ArrayXd lambda(terms);
  Eigen::ArrayXcd a(terms);
  for (Index n = 0; n < terms; ++n) {
    const double nn = static_cast<double>(n + 1);
    lambda[n] = std::log(nn);
    a[n] = std::pow(nn, -power);
  }
  std::string tag = (power == 1.0) ? "zeta_plus_1" : (power == 2.0) ? "zeta_plus_2" : "";
  return make_series(std::move(lambda), std::move(a), false, std::move(tag));
}

GeneralDirichletSeries make_factorial_lacunary(Index terms) {
  if (terms > 170) throw std::invalid_argument("factorial exponents overflow past 170 terms");
  Eigen::ArrayXd lambda(terms);
  Eigen::ArrayXcd a(terms);
  double fact = 1.0;
  double pow2 = 1.0;
  for (Index k = 0; k < terms; ++k) {
    fact *= static_cast<double>(k + 1);  // (k+1)!
    pow2 *= 0.5;                         // 2^{-(k+1)}
    lambda[k] = fact;
    a[k] = pow2 / fact;
  }
  return make_series(std::move(lambda), std::move(a), false, "exp_half_minus_one");
}

GeneralDirichletSeries make_high_indices(Index terms) {
  if (terms > 1000) throw std::invalid_argument("2^n exponents overflow");
  Eigen::ArrayXd lambda(terms);
  Eigen::ArrayXcd a(terms);
  double lam = 1.0, coef = 1.0;
  for (Index n = 0; n < terms; ++n) {
    lam *= 2.0;
    coef /= 3.0;
    lambda[n] = lam;
    a[n] = coef;
  }
  return make_series(std::move(lambda), std::move(a), false, "high_indices_demo");
}

}  // namespace dlab
