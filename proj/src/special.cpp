#include "dlab/special.hpp"

#include <cmath>
#include <stdexcept>

#include "dlab/kahan.hpp"

namespace dlab {

Complex zeta_euler_maclaurin(Complex s) {
  if (!(s.real() > 0.0)) throw std::domain_error("zeta_euler_maclaurin: Re s <= 0");
  if (std::abs(s - Complex{1.0, 0.0}) < 1e-14)
    throw std::domain_error("zeta_euler_maclaurin: pole at s = 1");

  // B_{2k} for k = 1..12
  static const double kBernoulli[] = {
      1.0 / 6,      -1.0 / 30,      1.0 / 42,      -1.0 / 30,
      5.0 / 66,     -691.0 / 2730,  7.0 / 6,       -3617.0 / 510,
      43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

  const int cutoff = 64;
  KahanComplex acc;
  for (int n = 1; n < cutoff; ++n)
    acc += std::exp(-s * std::log(static_cast<double>(n)));
  const double N = static_cast<double>(cutoff);
  const Complex Npow = std::exp(-s * std::log(N));  // N^{-s}
  Complex result = acc.value() + N * Npow / (s - 1.0) + 0.5 * Npow;

  // correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  Complex rising = s;           // product of (s + j), j = 0..2k-2
  double factorial = 2.0;       // (2k)!
  Complex Nfactor = Npow / N;   // N^{-s-2k+1}
  for (int k = 1; k <= 12; ++k) {
    result += kBernoulli[k - 1] / factorial * rising * Nfactor;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    factorial *= static_cast<double>(2 * k + 1) * static_cast<double>(2 * k + 2);
    Nfactor /= N * N;
  }
  return result;
}

std::optional<ClosedForm> closed_form_lookup(const std::string& tag) {
  if (tag == "geometric")
    return ClosedForm{[](Complex s) { return 1.0 / (std::exp(s) - 1.0); }};
  if (tag == "geometric_derivative")
    return ClosedForm{[](Complex s) {
      const Complex e = std::exp(s);
      return -e / ((e - 1.0) * (e - 1.0));
    }};
  if (tag == "zeta_plus_1")
    return ClosedForm{[](Complex s) { return zeta_euler_maclaurin(s + 1.0); }};
  if (tag == "zeta_plus_2")
    return ClosedForm{[](Complex s) { return zeta_euler_maclaurin(s + 2.0); }};
  if (tag == "identity")
    return ClosedForm{[](Complex s) { return s; }};
  return std::nullopt;
}

Evaluator make_series_evaluator(const GeneralDirichletSeries& series) {
  return [series](Complex s, double tol) {
    const EvaluationResult r = evaluate(series, s, tol);
    return EvalSample{r.value, r.tol_met, r.tail_bound};
  };
}

Evaluator make_closed_form_evaluator(ClosedForm f) {
  return [f = std::move(f)](Complex s, double) {
    return EvalSample{f(s), true, 0.0};
  };
}

Evaluator evaluator_for(const GeneralDirichletSeries& series,
                        bool prefer_closed_form) {
  if (prefer_closed_form) {
    if (auto cf = closed_form_lookup(series.closed_form))
      return make_closed_form_evaluator(*cf);
  }
  return make_series_evaluator(series);
}

}  // namespace dlab
