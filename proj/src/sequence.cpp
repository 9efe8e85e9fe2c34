#include "dlab/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

std::string to_string(ConvergenceStatus status) {
  switch (status) {
    case ConvergenceStatus::converged: return "converged";
    case ConvergenceStatus::diverged: return "diverged";
    default: return "undecided";
  }
}

namespace {

double window_diameter(std::span<const std::pair<double, Complex>> samples,
                       std::size_t window) {
  const std::size_t n = samples.size();
  const std::size_t from = n - window;
  double diam = 0.0;
  for (std::size_t i = from; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      diam = std::max(diam, std::abs(samples[i].second - samples[j].second));
  return diam;
}

std::vector<std::pair<double, Complex>> thin_samples(
    std::span<const std::pair<double, Complex>> samples, std::size_t cap = 64) {
  std::vector<std::pair<double, Complex>> out;
  if (samples.size() <= cap) {
    out.assign(samples.begin(), samples.end());
    return out;
  }
  const std::size_t stride = (samples.size() + cap - 1) / cap;
  for (std::size_t i = 0; i < samples.size(); i += stride) out.push_back(samples[i]);
  if (out.back() != samples.back()) out.push_back(samples.back());
  return out;
}

}  // namespace

ConvergenceReport detect_limit(
    std::span<const std::pair<double, Complex>> samples, double tol,
    std::size_t window) {
  ConvergenceReport report;
  report.samples = thin_samples(samples);
  if (samples.size() < window) {
    report.diagnostic = "too few samples for the window";
    return report;
  }
  const double diam = window_diameter(samples, window);
  report.error_estimate = diam;
  if (diam <= tol) {
    report.status = ConvergenceStatus::converged;
    report.limit = samples.back().second;
  } else if (diam >= 10.0 * tol) {
    report.status = ConvergenceStatus::diverged;
    report.diagnostic = "window oscillation " + std::to_string(diam) +
                        " exceeds 10x tolerance";
  } else {
    report.diagnostic = "window spread between tol and 10x tol";
  }
  return report;
}

std::optional<std::pair<Complex, double>> wynn_epsilon(
    std::span<const Complex> sequence) {
  const std::size_t n = sequence.size();
  if (n < 3) return std::nullopt;
  // an exactly stabilized tail needs no extrapolation (and would produce
  // zero denominators below)
  if (std::abs(sequence[n - 1] - sequence[n - 2]) < 1e-300 &&
      std::abs(sequence[n - 2] - sequence[n - 3]) < 1e-300)
    return std::make_pair(sequence[n - 1], 0.0);

  std::vector<Complex> prev(n + 1, Complex{0.0, 0.0});  // eps_{-1}
  std::vector<Complex> curr(sequence.begin(), sequence.end());  // eps_0

  Complex best = curr.back();
  Complex best_prev = curr[curr.size() - 2];
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Complex> next(curr.size() - 1);
    bool degenerate = false;
    for (std::size_t j = 0; j + 1 < curr.size(); ++j) {
      const Complex d = curr[j + 1] - curr[j];
      if (std::abs(d) < 1e-300) {
        degenerate = true;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / d;
    }
    if (degenerate) break;  // keep the last completed even column
    prev = std::move(curr);
    curr = std::move(next);
    if (k % 2 == 0 && curr.size() >= 2) {
      best = curr.back();
      best_prev = curr[curr.size() - 2];
    }
    if (curr.size() < 2) break;
  }
  return std::make_pair(best, std::abs(best - best_prev));
}

ConvergenceReport detect_limit_accelerated(
    std::span<const std::pair<double, Complex>> checkpoints, double tol) {
  std::vector<Complex> values;
  values.reserve(checkpoints.size());
  for (const auto& [p, v] : checkpoints) values.push_back(v);

  const auto extrapolated = wynn_epsilon(values);
  if (checkpoints.size() >= 4 && extrapolated && extrapolated->second <= tol) {
    ConvergenceReport report;
    report.samples = thin_samples(checkpoints);
    report.status = ConvergenceStatus::converged;
    report.limit = extrapolated->first;
    report.error_estimate = extrapolated->second;
    report.accelerated = true;
    return report;
  }
  ConvergenceReport report = detect_limit(checkpoints, tol);
  report.diagnostic = report.diagnostic.empty()
                          ? "extrapolation did not stabilize"
                          : report.diagnostic;
  return report;
}

}  // namespace dlab
