#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dlab/series.hpp"

namespace dlab {

// Positive measure on the boundary line: atoms plus a piecewise-constant
// density (zero outside the breakpoint window).
struct BoundaryMeasure {
  std::vector<std::pair<double, double>> atoms;  // (location t, mass >= 0)
  Eigen::ArrayXd breakpoints;                    // strictly increasing
  Eigen::ArrayXd values;                         // size = breakpoints - 1, >= 0
};

BoundaryMeasure make_measure(std::vector<std::pair<double, double>> atoms,
                             Eigen::ArrayXd breakpoints, Eigen::ArrayXd values);

double total_mass(const BoundaryMeasure& mu);
// Mass of the closed interval [lo, hi].
double mass_on(const BoundaryMeasure& mu, double lo, double hi);

// Poisson kernel of the right half-plane: sigma / (sigma^2 + (t - t0)^2).
double poisson_kernel(double t0, Complex s);

// h(s) = (sigma/pi) * integral of |s - i zeta|^{-2} d mu(zeta); atoms summed
// exactly, density integrated by adaptive quadrature (relative 1e-10).
double poisson_integral(const BoundaryMeasure& mu, Complex s);

// Moves the mass of I = [lo, hi] to two endpoint atoms of mass mu(I) each and
// keeps the rest of mu untouched.
BoundaryMeasure h1_decompose(const BoundaryMeasure& mu, double lo, double hi);

// The compact vertical segment K = [i t_lo, i t_hi].
struct SegmentK {
  double t_lo;
  double t_hi;
};

bool on_segment(const SegmentK& k, Complex s);

// Green function of C \ K with pole at `pole`, via the inverse-Joukowski map
// of the segment complement onto the exterior of the unit disc (branch with
// |w| > 1; the cut sits on K). Returns +infinity when s == pole.
double green_segment(const SegmentK& k, Complex pole, Complex s);

// Smallest empirical c with |S_m| <= max{sup_K |S_m|, 1} exp(c lambda_m G)
// over the provided m values and sample points:
// max over (m, s) of [log(|S_m(s)| / b_m)]^+ / (lambda_m G(sigma0 - 1, s)).
// Terms with lambda_m = 0 are skipped (trivial case).
double lemma_l_constant(const GeneralDirichletSeries& series, const SegmentK& k,
                        double sigma0, std::span<const Index> m_set,
                        std::span<const Complex> samples);

// ---- walk-on-spheres harmonic measure ----

struct DiscDomain {
  Complex center;
  double radius;
};

struct RectDomain {
  double x0, x1, y0, y1;
};

using WosDomain = std::variant<DiscDomain, RectDomain>;

// Counterclockwise arc of a disc boundary between angles a0 < a1 (radians).
struct ArcPart {
  double a0, a1;
};

// Straight boundary piece between two endpoints.
struct SegmentPart {
  Complex p, q;
};

struct BoundaryPart {
  std::string label;
  std::variant<ArcPart, SegmentPart> shape;
};

struct WalkConfig {
  std::uint64_t seed = 1;
  int walks = 100000;
  double eps_boundary = 0.0;  // 0 -> 1e-6 * domain diameter
  int max_steps = 10000;
};

struct WosResult {
  std::vector<std::string> labels;
  std::vector<double> frequency;  // sums to 1 exactly
  std::vector<double> std_error;  // binomial
  int failed_walks = 0;
};

// Maximal-disc jumps until within eps of the boundary, then attributes the
// walk to the nearest part. Deterministic given cfg.seed (per-walk counter
// RNG streams). Throws when more than 1% of walks exceed max_steps.
WosResult harmonic_measure_wos(const WosDomain& domain, Complex z,
                               const std::vector<BoundaryPart>& parts,
                               const WalkConfig& cfg);

}  // namespace dlab
