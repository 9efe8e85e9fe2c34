#include "dlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dlab/quadrature.hpp"

namespace dlab {

namespace {

constexpr double kPi = std::numbers::pi;

double sampled_value(const SampledProfile& p, double y) {
  const Index n = p.y.size();
  if (y <= p.y[0]) return p.phi[0];
  if (y >= p.y[n - 1]) return p.phi[n - 1];
  // binary search for the bracketing interval
  Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    (p.y[mid] <= y ? lo : hi) = mid;
  }
  const double w = (y - p.y[lo]) / (p.y[hi] - p.y[lo]);
  return (1.0 - w) * p.phi[lo] + w * p.phi[hi];
}

struct Box {
  double sigma_max;
  double half_width;  // |t - t0| < half_width
  double t0;
};

Box bounding_box(const ApproachRegion& region) {
  return std::visit(
      [](const auto& r) -> Box {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StolzRegion>)
          return {r.radius, r.radius, r.t0};
        else if constexpr (std::is_same_v<T, HalfDiscRegion>)
          return {r.radius, r.radius, r.t0};
        else
          return {r.b, r.a, r.t0};
      },
      region);
}

}  // namespace

double profile_value(const CuspProfile& profile, double y) {
  return std::visit(
      [y](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerProfile>)
          return p.scale * std::pow(std::abs(y), p.alpha);
        else
          return sampled_value(p, y);
      },
      profile);
}

FatRegion make_fat_region(double t0, double a, double b, CuspProfile profile) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("fat region needs a, b > 0");
  if (const auto* p = std::get_if<PowerProfile>(&profile)) {
    if (!(p->scale > 0.0) || !(p->alpha > 0.0))
      throw std::invalid_argument("power profile needs c, alpha > 0");
  }
  if (const auto* p = std::get_if<SampledProfile>(&profile)) {
    const Index n = p->y.size();
    if (n < 2 || p->phi.size() != n)
      throw std::invalid_argument("sampled profile needs matching grids, n >= 2");
    if (p->y[0] > -a || p->y[n - 1] < a)
      throw std::invalid_argument("sampled profile grid must cover [-a, a]");
    if ((p->phi < 0.0).any())
      throw std::invalid_argument("profile must be nonnegative");
    for (Index i = 0; i + 1 < n; ++i) {
      if (!(p->y[i] < p->y[i + 1]))
        throw std::invalid_argument("sampled profile grid must increase");
      const double slope =
          std::abs(p->phi[i + 1] - p->phi[i]) / (p->y[i + 1] - p->y[i]);
      if (slope > p->lipschitz_bound * (1.0 + 1e-12))
        throw std::invalid_argument("sampled profile violates its Lipschitz bound");
    }
  }
  return FatRegion{t0, a, b, std::move(profile)};
}

bool contains(const ApproachRegion& region, Complex s) {
  const double sigma = s.real();
  if (!(sigma > 0.0)) return false;
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        const double dt = s.imag() - r.t0;
        if constexpr (std::is_same_v<T, StolzRegion>) {
          const Complex d{sigma, dt};
          return std::abs(d) < r.radius &&
                 std::abs(std::arg(d)) < kPi / 2.0 - r.delta;
        } else if constexpr (std::is_same_v<T, HalfDiscRegion>) {
          const Complex center{r.radius, r.t0};
          return std::abs(s - center) < r.radius && sigma < r.radius;
        } else {
          return std::abs(dt) < r.a && profile_value(r.profile, dt) < sigma &&
                 sigma < r.b;
        }
      },
      region);
}

bool contains(const TriangleGamma& triangle, Complex s) {
  const double sigma = s.real();
  const double dt = s.imag() - triangle.t0;
  return sigma > 0.0 && sigma < 1.0 && std::abs(dt) < sigma;
}

namespace {

// Dyadic-window quadrature heuristic: integrate y^{-2} phi(y) over
// [-a, a] \ (-eta_j, eta_j) with eta_j = a 2^{-j}; call the integral
// divergent when the window values still grow by more than 5% across the
// last five refinements.
bool sampled_is_fat(const SampledProfile& p, double a) {
  const auto integrand = [&](double y) {
    return sampled_value(p, y) / (y * y);
  };
  std::vector<double> partials;
  for (int j = 1; j <= 30; ++j) {
    const double eta = a * std::ldexp(1.0, -j);
    const double right = adaptive_simpson(integrand, eta, a, 1e-9);
    const double left = adaptive_simpson(integrand, -a, -eta, 1e-9);
    partials.push_back(left + right);
  }
  const double tail = partials.back();
  const double earlier = partials[partials.size() - 6];
  if (earlier <= 0.0) return true;  // profile vanishes near 0
  return tail <= 1.05 * earlier;
}

}  // namespace

bool is_fat(const ApproachRegion& region) {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, StolzRegion>)
          return true;
        else if constexpr (std::is_same_v<T, HalfDiscRegion>)
          return true;
        else {
          if (const auto* pw = std::get_if<PowerProfile>(&r.profile))
            return pw->alpha > 1.0;
          return sampled_is_fat(std::get<SampledProfile>(r.profile), r.a);
        }
      },
      region);
}

bool fatness_verdict_is_heuristic(const ApproachRegion& region) {
  const auto* fat = std::get_if<FatRegion>(&region);
  return fat != nullptr && std::holds_alternative<SampledProfile>(fat->profile);
}

std::vector<Complex> stolz_sample(double t0, double delta,
                                  std::span<const double> radii) {
  if (!(delta > 0.0) || !(delta < kPi / 2.0))
    throw std::invalid_argument("stolz_sample requires 0 < delta < pi/2");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] > radii[i + 1]))
      throw std::invalid_argument("radii must be positive and strictly decreasing");
  const double theta = kPi / 2.0 - delta;
  std::vector<Complex> out;
  out.reserve(3 * radii.size());
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
    for (double ang : {-theta, 0.0, theta})
      out.push_back(Complex{0.0, t0} + std::polar(r, ang));
  }
  return out;
}

double region_sup(const std::function<Complex(Complex)>& f,
                  const ApproachRegion& region, double mesh) {
  if (!(mesh > 0.0)) throw std::invalid_argument("region_sup requires mesh > 0");
  const Box box = bounding_box(region);
  const auto j_max = static_cast<long>(std::floor(box.half_width / mesh));
  const auto i_max = static_cast<long>(std::floor(box.sigma_max / mesh));
  double sup = -1.0;
  for (long i = 1; i <= i_max; ++i) {
    const double sigma = static_cast<double>(i) * mesh;
    for (long j = -j_max; j <= j_max; ++j) {
      const Complex s{sigma, box.t0 + static_cast<double>(j) * mesh};
      if (!contains(region, s)) continue;
      sup = std::max(sup, std::abs(f(s)));
    }
  }
  if (sup < 0.0)
    throw std::domain_error("region_sup: lattice does not meet the region");
  return sup;
}

}  // namespace dlab
