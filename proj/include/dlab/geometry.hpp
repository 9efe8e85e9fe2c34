#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "dlab/series.hpp"

namespace dlab {

// phi(y) = scale * |y|^alpha
struct PowerProfile {
  double scale = 1.0;
  double alpha = 2.0;
};

// phi sampled on an increasing grid, linearly interpolated between nodes.
struct SampledProfile {
  Eigen::ArrayXd y;
  Eigen::ArrayXd phi;
  double lipschitz_bound = 0.0;
};

using CuspProfile = std::variant<PowerProfile, SampledProfile>;

double profile_value(const CuspProfile& profile, double y);

// Stolz sector at i t0: |s - i t0| < radius and |arg(s - i t0)| < pi/2 - delta,
// the argument measured from the inward normal. delta is the aperture
// complement, in (0, pi/2).
struct StolzRegion {
  double t0 = 0.0;
  double delta = 0.25;
  double radius = 1.0;
};

// Half-disc tangent to the axis at i t0: |s - (a + i t0)| < a and sigma < a.
struct HalfDiscRegion {
  double t0 = 0.0;
  double radius = 1.0;
};

// Fat approach region {sigma + it : |t - t0| < a, phi(t - t0) < sigma < b}.
struct FatRegion {
  double t0 = 0.0;
  double a = 1.0;
  double b = 1.0;
  CuspProfile profile;
};

using ApproachRegion = std::variant<StolzRegion, HalfDiscRegion, FatRegion>;

// Validates profile coverage of [-a, a], nonnegativity, and grid Lipschitz
// bound for sampled profiles; throws std::invalid_argument.
FatRegion make_fat_region(double t0, double a, double b, CuspProfile profile);

// Open triangle with vertices i t0, i t0 + 1 + i, i t0 + 1 - i.
struct TriangleGamma {
  double t0 = 0.0;
};

bool contains(const ApproachRegion& region, Complex s);
bool contains(const TriangleGamma& triangle, Complex s);

// Fatness criterion: integral of y^{-2} phi(y) over [-a, a] finite.
// Analytic for the named variants (half-disc and Stolz are fat, power cusps
// iff alpha > 1); sampled profiles get the dyadic-window quadrature verdict.
bool is_fat(const ApproachRegion& region);
// True when the verdict comes from the divergence heuristic rather than an
// analytic criterion.
bool fatness_verdict_is_heuristic(const ApproachRegion& region);

// For each radius r, points i t0 + r e^{i theta} at theta in
// {-(pi/2 - delta), 0, +(pi/2 - delta)} from the inward normal.
std::vector<Complex> stolz_sample(double t0, double delta,
                                  std::span<const double> radii);

// Sup of |f| over the mesh lattice {(i*mesh, t0 + j*mesh)} intersected with
// the region; a lower bound for the true sup, nondecreasing when the mesh
// halves. Throws std::domain_error when the lattice misses the region.
double region_sup(const std::function<Complex(Complex)>& f,
                  const ApproachRegion& region, double mesh);

}  // namespace dlab
