#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dlab/geometry.hpp"

using namespace dlab;

namespace {

constexpr double kPi = std::numbers::pi;

SampledProfile sampled_abs(double a, int nodes) {
  SampledProfile p;
  p.y = Eigen::ArrayXd::LinSpaced(nodes, -a, a);
  p.phi = p.y.abs();
  p.lipschitz_bound = 1.0;
  return p;
}

}  // namespace

TEST_CASE("contains follows the open-region definitions") {
  const ApproachRegion half_disc = HalfDiscRegion{0.0, 1.0};
  CHECK(contains(half_disc, Complex(0.5, 0.0)));
  CHECK_FALSE(contains(half_disc, Complex(0.0, 0.0)));  // vertex: open region
  CHECK_FALSE(contains(half_disc, Complex(2.5, 0.0)));

  const ApproachRegion fat =
      make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 2.0});
  CHECK_FALSE(contains(fat, Complex(0.005, 0.1)));  // phi(0.1)=0.01 > 0.005
  CHECK(contains(fat, Complex(0.05, 0.1)));
  CHECK_FALSE(contains(fat, Complex(0.0, 0.0)));

  const ApproachRegion stolz = StolzRegion{2.0, kPi / 4.0, 1.0};
  CHECK(contains(stolz, Complex(0.5, 2.0)));             // on the normal ray
  CHECK_FALSE(contains(stolz, Complex(0.01, 2.5)));      // outside the sector
  CHECK_FALSE(contains(stolz, Complex(0.0, 2.0)));
}

TEST_CASE("triangle gamma membership") {
  const TriangleGamma tri{3.0};
  for (double eps : {0.1, 0.5, 0.9})
    CHECK(contains(tri, Complex(eps, 3.0)));
  CHECK_FALSE(contains(tri, Complex(0.0, 3.0)));
  CHECK_FALSE(contains(tri, Complex(0.2, 3.5)));  // |dt| > sigma
  CHECK_FALSE(contains(tri, Complex(1.5, 3.0)));
}

TEST_CASE("contains is invariant under vertical translation") {
  const double shift = -4.25;
  const ApproachRegion before =
      make_fat_region(1.0, 0.5, 0.75, PowerProfile{2.0, 1.5});
  const ApproachRegion after =
      make_fat_region(1.0 + shift, 0.5, 0.75, PowerProfile{2.0, 1.5});
  const std::vector<Complex> probes = {Complex(0.2, 1.1), Complex(0.01, 1.3),
                                       Complex(0.7, 0.9), Complex(0.4, 1.45)};
  for (Complex s : probes)
    CHECK(contains(before, s) == contains(after, s + Complex(0.0, shift)));
}

TEST_CASE("profile interpolation and validation") {
  const SampledProfile p = sampled_abs(1.0, 21);
  const CuspProfile profile = p;
  CHECK(profile_value(profile, 0.0) == doctest::Approx(0.0));
  CHECK(profile_value(profile, 0.525) == doctest::Approx(0.525));
  CHECK(profile_value(profile, 2.0) == doctest::Approx(1.0));  // clamped

  SampledProfile bad = p;
  bad.lipschitz_bound = 0.5;  // actual slope is 1
  CHECK_THROWS_AS(make_fat_region(0.0, 1.0, 1.0, bad), std::invalid_argument);

  SampledProfile narrow = sampled_abs(0.5, 11);
  CHECK_THROWS_AS(make_fat_region(0.0, 1.0, 1.0, narrow), std::invalid_argument);
  CHECK_THROWS_AS(make_fat_region(0.0, -1.0, 1.0, PowerProfile{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("fatness classification by the integral criterion") {
  CHECK_FALSE(is_fat(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 0.5})));
  CHECK_FALSE(is_fat(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 1.0})));
  CHECK(is_fat(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 1.01})));
  CHECK(is_fat(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 2.0})));
  CHECK(is_fat(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 3.0})));
  CHECK(is_fat(ApproachRegion{HalfDiscRegion{0.0, 1.0}}));
  CHECK(is_fat(ApproachRegion{StolzRegion{0.0, 0.3, 1.0}}));

  const ApproachRegion linear =
      make_fat_region(0.0, 1.0, 1.0, sampled_abs(1.0, 801));
  CHECK_FALSE(is_fat(linear));
  CHECK(fatness_verdict_is_heuristic(linear));

  SampledProfile quad;
  quad.y = Eigen::ArrayXd::LinSpaced(801, -1.0, 1.0);
  quad.phi = quad.y.square();
  quad.lipschitz_bound = 2.0;
  const ApproachRegion fat_sampled = make_fat_region(0.0, 1.0, 1.0, quad);
  CHECK(is_fat(fat_sampled));
  CHECK_FALSE(
      fatness_verdict_is_heuristic(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 2.0})));
}

TEST_CASE("is_fat is monotone in the power exponent") {
  bool previous = false;
  for (double alpha : {0.3, 0.7, 1.0, 1.2, 1.8, 2.5}) {
    const bool fat = is_fat(make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, alpha}));
    CHECK((fat || !previous));  // once fat, stays fat as alpha grows
    previous = fat;
  }
}

TEST_CASE("stolz_sample produces sector points on three rays") {
  const double t0 = 1.5, delta = kPi / 4.0;
  const std::vector<double> radii = {1.0, 0.5, 0.25};
  const auto points = stolz_sample(t0, delta, radii);
  REQUIRE(points.size() == 9);
  const ApproachRegion sector = StolzRegion{t0, delta - 1e-9, 1.0 + 1e-9};
  const ApproachRegion half_disc = HalfDiscRegion{t0, 1.0 + 1e-9};
  for (Complex s : points) {
    CHECK(s.real() > 0.0);
    const Complex d = s - Complex(0.0, t0);
    CHECK(std::abs(std::arg(d)) <= kPi / 2.0 - delta + 1e-12);
    CHECK(contains(sector, s));
    CHECK(contains(half_disc, s));
  }

  CHECK_THROWS_AS(stolz_sample(t0, 0.0, radii), std::invalid_argument);
  const std::vector<double> unsorted = {0.5, 1.0};
  CHECK_THROWS_AS(stolz_sample(t0, delta, unsorted), std::invalid_argument);
}

TEST_CASE("fat regions contain Stolz points near the vertex") {
  const ApproachRegion fat =
      make_fat_region(0.0, 1.0, 1.0, PowerProfile{1.0, 2.0});
  for (double delta : {kPi / 3.0, kPi / 4.0, kPi / 8.0}) {
    // below threshold r < cos(theta) / sin(theta)^2 every sector point is in
    const double theta = kPi / 2.0 - delta;
    const double threshold =
        std::min(0.9, 0.9 * std::cos(theta) / (std::sin(theta) * std::sin(theta) + 1e-12));
    const std::vector<double> radii = {threshold, threshold / 2, threshold / 4};
    for (Complex s : stolz_sample(0.0, delta, radii)) CHECK(contains(fat, s));
  }
}

TEST_CASE("region_sup reports a lattice sup that grows under refinement") {
  const ApproachRegion half_disc = HalfDiscRegion{0.0, 1.0};
  const auto f = [](Complex s) { return Complex(s.real(), 0.0); };
  const double coarse = region_sup(f, half_disc, 0.25);
  const double fine = region_sup(f, half_disc, 0.125);
  const double finer = region_sup(f, half_disc, 0.0625);
  CHECK(coarse <= fine);
  CHECK(fine <= finer);
  CHECK(finer <= 2.0);  // true sup of sigma over the region

  const auto constant = [](Complex) { return Complex(3.0, -4.0); };
  CHECK(region_sup(constant, half_disc, 0.2) == doctest::Approx(5.0));

  CHECK_THROWS_AS(region_sup(f, half_disc, 0.0), std::invalid_argument);
  const ApproachRegion tiny =
      make_fat_region(0.0, 1e-3, 1e-3, PowerProfile{1.0, 2.0});
  CHECK_THROWS_AS(region_sup(f, tiny, 0.5), std::domain_error);
}
