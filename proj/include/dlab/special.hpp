#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dlab/series.hpp"

namespace dlab {

// Riemann zeta by Euler-Maclaurin summation; valid for Re s > 0, s != 1.
Complex zeta_euler_maclaurin(Complex s);

using ClosedForm = std::function<Complex(Complex)>;

// Known closed forms for catalog series, keyed by closed_form tag.
//   geometric              -> 1/(e^s - 1)
//   geometric_derivative   -> -e^s/(e^s - 1)^2
//   zeta_plus_1 / _2       -> zeta(s + 1), zeta(s + 2)
//   exp_half_minus_one     -> (no closed form; absent)
//   identity               -> s  (evaluator hook used by tests)
std::optional<ClosedForm> closed_form_lookup(const std::string& tag);

// A point evaluation with a reliability flag (false when a truncated prefix
// could not certify the requested tolerance).
struct EvalSample {
  Complex value;
  bool reliable = true;
  double error_bound = 0.0;
};

using Evaluator = std::function<EvalSample(Complex s, double tol)>;

Evaluator make_series_evaluator(const GeneralDirichletSeries& series);
Evaluator make_closed_form_evaluator(ClosedForm f);

// Closed-form evaluator when the tag is registered and preferred, else the
// truncated-summation evaluator. The series is copied into the closure.
Evaluator evaluator_for(const GeneralDirichletSeries& series,
                        bool prefer_closed_form = true);

}  // namespace dlab
