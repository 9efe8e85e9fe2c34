#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlab/series.hpp"

namespace dlab {

enum class ConvergenceStatus { converged, diverged, undecided };

std::string to_string(ConvergenceStatus status);

// Verdict of a limit detector. `samples` keeps an audit trail of
// (parameter, value) pairs; long runs are thinned to a bounded count.
struct ConvergenceReport {
  ConvergenceStatus status = ConvergenceStatus::undecided;
  Complex limit;
  double error_estimate = 0.0;
  std::vector<std::pair<double, Complex>> samples;
  bool accelerated = false;
  std::string diagnostic;
};

// Windowed Cauchy test: converged when the last `window` values agree within
// tol, diverged when their spread has reached 10x tol at the end of the run.
ConvergenceReport detect_limit(std::span<const std::pair<double, Complex>> samples,
                               double tol, std::size_t window = 4);

// Wynn epsilon (iterated Shanks) extrapolation of a sequence; returns the
// deepest even-column value and the magnitude of its last correction.
// Length >= 3 required for any extrapolation to happen.
std::optional<std::pair<Complex, double>> wynn_epsilon(
    std::span<const Complex> sequence);

// Acceleration-aware detector: extrapolates geometrically thinned checkpoints
// and reports converged when the deepest extrapolation column stabilizes
// within tol. Falls back to the raw windowed test when extrapolation fails.
ConvergenceReport detect_limit_accelerated(
    std::span<const std::pair<double, Complex>> checkpoints, double tol);

}  // namespace dlab
