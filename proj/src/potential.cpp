#include "dlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dlab/kahan.hpp"
#include "dlab/quadrature.hpp"
#include "dlab/rng.hpp"

namespace dlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

BoundaryMeasure make_measure(std::vector<std::pair<double, double>> atoms,
                             Eigen::ArrayXd breakpoints, Eigen::ArrayXd values) {
  for (const auto& [t, mass] : atoms)
    if (!(mass >= 0.0)) throw std::invalid_argument("atom masses must be >= 0");
  if (breakpoints.size() > 0) {
    if (values.size() != breakpoints.size() - 1)
      throw std::invalid_argument("density needs one value per breakpoint interval");
    for (Index i = 0; i + 1 < breakpoints.size(); ++i)
      if (!(breakpoints[i] < breakpoints[i + 1]))
        throw std::invalid_argument("breakpoints must be strictly increasing");
    if (values.size() > 0 && (values < 0.0).any())
      throw std::invalid_argument("density values must be >= 0");
  } else if (values.size() != 0) {
    throw std::invalid_argument("density values without breakpoints");
  }
  return BoundaryMeasure{std::move(atoms), std::move(breakpoints), std::move(values)};
}

double total_mass(const BoundaryMeasure& mu) {
  KahanReal acc;
  for (const auto& [t, mass] : mu.atoms) acc += mass;
  for (Index i = 0; i < mu.values.size(); ++i)
    acc += mu.values[i] * (mu.breakpoints[i + 1] - mu.breakpoints[i]);
  return acc.value();
}

double mass_on(const BoundaryMeasure& mu, double lo, double hi) {
  if (!(lo < hi)) throw std::domain_error("mass_on: empty interval");
  KahanReal acc;
  for (const auto& [t, mass] : mu.atoms)
    if (t >= lo && t <= hi) acc += mass;
  for (Index i = 0; i < mu.values.size(); ++i) {
    const double a = std::max(lo, mu.breakpoints[i]);
    const double b = std::min(hi, mu.breakpoints[i + 1]);
    if (a < b) acc += mu.values[i] * (b - a);
  }
  return acc.value();
}

double poisson_kernel(double t0, Complex s) {
  const double sigma = s.real();
  if (!(sigma > 0.0)) throw std::domain_error("poisson_kernel requires Re s > 0");
  const double dt = s.imag() - t0;
  return sigma / (sigma * sigma + dt * dt);
}

double poisson_integral(const BoundaryMeasure& mu, Complex s) {
  const double sigma = s.real();
  if (!(sigma > 0.0)) throw std::domain_error("poisson_integral requires Re s > 0");
  const double t = s.imag();
  KahanReal acc;
  for (const auto& [loc, mass] : mu.atoms) {
    const double dt = t - loc;
    acc += mass / (sigma * sigma + dt * dt);
  }
  for (Index i = 0; i < mu.values.size(); ++i) {
    const double v = mu.values[i];
    if (v == 0.0) continue;
    const auto integrand = [&](double zeta) {
      const double dt = t - zeta;
      return v / (sigma * sigma + dt * dt);
    };
    acc += adaptive_simpson_rel(integrand, mu.breakpoints[i], mu.breakpoints[i + 1],
                                1e-10);
  }
  return sigma / kPi * acc.value();
}

BoundaryMeasure h1_decompose(const BoundaryMeasure& mu, double lo, double hi) {
  if (!(lo < hi)) throw std::domain_error("h1_decompose: empty interval");
  const double mass_i = mass_on(mu, lo, hi);

  BoundaryMeasure out;
  for (const auto& [t, mass] : mu.atoms)
    if (t < lo || t > hi) out.atoms.emplace_back(t, mass);
  out.atoms.emplace_back(lo, mass_i);
  out.atoms.emplace_back(hi, mass_i);

  // split density intervals at the I-boundary and drop the part inside I
  struct Piece { double a, b, v; };
  std::vector<Piece> pieces;
  for (Index i = 0; i < mu.values.size(); ++i) {
    const double a = mu.breakpoints[i];
    const double b = mu.breakpoints[i + 1];
    if (a < std::min(b, lo)) pieces.push_back({a, std::min(b, lo), mu.values[i]});
    if (std::max(a, hi) < b) pieces.push_back({std::max(a, hi), b, mu.values[i]});
  }
  if (!pieces.empty()) {
    std::vector<double> bp{pieces.front().a};
    std::vector<double> vv;
    for (const Piece& p : pieces) {
      if (bp.back() < p.a) {  // zero-valued gap between surviving pieces
        bp.push_back(p.a);
        vv.push_back(0.0);
      }
      bp.push_back(p.b);
      vv.push_back(p.v);
    }
    out.breakpoints = Eigen::Map<Eigen::ArrayXd>(bp.data(), static_cast<Index>(bp.size()));
    out.values = Eigen::Map<Eigen::ArrayXd>(vv.data(), static_cast<Index>(vv.size()));
  }
  return out;
}

bool on_segment(const SegmentK& k, Complex s) {
  return s.real() == 0.0 && s.imag() >= k.t_lo && s.imag() <= k.t_hi;
}

namespace {

// Inverse Joukowski: w = z + sqrt(z^2 - 1) with the branch |w| > 1.
Complex joukowski_exterior(Complex z) {
  Complex r = std::sqrt(z * z - 1.0);
  if ((std::conj(z) * r).real() < 0.0) r = -r;
  return z + r;
}

}  // namespace

double green_segment(const SegmentK& k, Complex pole, Complex s) {
  if (!(k.t_lo < k.t_hi)) throw std::invalid_argument("segment needs t_lo < t_hi");
  if (on_segment(k, pole) || on_segment(k, s))
    throw std::domain_error("green_segment: point on K");
  if (pole == s) return std::numeric_limits<double>::infinity();
  const Complex center{0.0, 0.5 * (k.t_lo + k.t_hi)};
  const Complex scale{0.0, 0.5 * (k.t_hi - k.t_lo)};
  const Complex wp = joukowski_exterior((pole - center) / scale);
  const Complex ws = joukowski_exterior((s - center) / scale);
  return std::log(std::abs(wp * std::conj(ws) - 1.0) / std::abs(wp - ws));
}

double lemma_l_constant(const GeneralDirichletSeries& series, const SegmentK& k,
                        double sigma0, std::span<const Index> m_set,
                        std::span<const Complex> samples) {
  if (!(sigma0 < 0.0)) throw std::invalid_argument("lemma_l_constant: sigma0 < 0 required");
  for (Complex s : samples) {
    if (!(s.real() > sigma0) || on_segment(k, s))
      throw std::invalid_argument("samples must lie in {sigma > sigma0} \\ K");
  }
  const Complex pole{sigma0 - 1.0, 0.0};

  // sup_K |S_m| over a fixed segment mesh
  constexpr Index kMeshPoints = 257;
  std::vector<Complex> mesh(kMeshPoints);
  for (Index i = 0; i < kMeshPoints; ++i) {
    const double t = k.t_lo + (k.t_hi - k.t_lo) * static_cast<double>(i) /
                                  static_cast<double>(kMeshPoints - 1);
    mesh[static_cast<std::size_t>(i)] = Complex{0.0, t};
  }

  double c = 0.0;
  for (Index m : m_set) {
    if (m < 1 || m > series.size())
      throw std::out_of_range("lemma_l_constant: m outside prefix");
    const double lambda_m = series.exponents[m - 1];
    if (!(lambda_m > 0.0)) continue;  // trivial lambda = 0 case
    double b_m = 1.0;
    for (Complex z : mesh) b_m = std::max(b_m, std::abs(partial_sum(series, m, z)));
    for (Complex s : samples) {
      const double v = std::abs(partial_sum(series, m, s));
      if (v <= b_m) continue;  // positive-part clamp
      const double g = green_segment(k, pole, s);
      if (!(g > 0.0))
        throw std::runtime_error("lemma_l_constant: nonpositive Green value off K");
      c = std::max(c, std::log(v / b_m) / (lambda_m * g));
    }
  }
  return c;
}

namespace {

double dist_to_boundary(const WosDomain& domain, Complex z) {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, DiscDomain>) {
          return d.radius - std::abs(z - d.center);
        } else {
          return std::min(std::min(z.real() - d.x0, d.x1 - z.real()),
                          std::min(z.imag() - d.y0, d.y1 - z.imag()));
        }
      },
      domain);
}

double domain_diameter(const WosDomain& domain) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, DiscDomain>)
          return 2.0 * d.radius;
        else
          return std::hypot(d.x1 - d.x0, d.y1 - d.y0);
      },
      domain);
}

double dist_to_segment(Complex x, Complex p, Complex q) {
  const Complex u = q - p;
  const double uu = std::norm(u);
  double t = uu > 0.0 ? ((std::conj(u) * (x - p)).real() / uu) : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(x - (p + t * u));
}

double dist_to_part(const WosDomain& domain, Complex x, const BoundaryPart& part) {
  return std::visit(
      [&](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, SegmentPart>) {
          return dist_to_segment(x, shape.p, shape.q);
        } else {
          const auto* disc = std::get_if<DiscDomain>(&domain);
          if (disc == nullptr)
            throw std::invalid_argument("arc parts belong to disc domains");
          double ang = std::arg(x - disc->center);
          // place the angle in [a0, a0 + 2 pi)
          while (ang < shape.a0) ang += 2.0 * kPi;
          const double radial = std::abs(std::abs(x - disc->center) - disc->radius);
          if (ang <= shape.a1) return radial;
          const Complex e0 = disc->center + std::polar(disc->radius, shape.a0);
          const Complex e1 = disc->center + std::polar(disc->radius, shape.a1);
          return std::min(std::abs(x - e0), std::abs(x - e1));
        }
      },
      part.shape);
}

}  // namespace

WosResult harmonic_measure_wos(const WosDomain& domain, Complex z,
                               const std::vector<BoundaryPart>& parts,
                               const WalkConfig& cfg) {
  if (parts.empty()) throw std::invalid_argument("boundary partition is empty");
  if (cfg.walks <= 0 || cfg.max_steps <= 0)
    throw std::invalid_argument("walk config must be positive");
  if (!(dist_to_boundary(domain, z) > 0.0))
    throw std::domain_error("start point must be interior");
  const double eps = cfg.eps_boundary > 0.0
                         ? cfg.eps_boundary
                         : 1e-6 * domain_diameter(domain);

  std::vector<long> counts(parts.size(), 0);
  int failed = 0;
  for (int walk = 0; walk < cfg.walks; ++walk) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(walk));
    Complex x = z;
    bool absorbed = false;
    for (int step = 0; step < cfg.max_steps; ++step) {
      const double d = dist_to_boundary(domain, x);
      if (d < eps) {
        absorbed = true;
        break;
      }
      x += std::polar(d, 2.0 * kPi * rng.next_double());
    }
    if (!absorbed) {
      ++failed;
      continue;
    }
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const double dist = dist_to_part(domain, x, parts[i]);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    ++counts[best];
  }
  if (failed > cfg.walks / 100)
    throw std::runtime_error("harmonic_measure_wos: too many walks hit max_steps");

  const long done = cfg.walks - failed;
  WosResult res;
  res.failed_walks = failed;
  KahanReal running;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    res.labels.push_back(parts[i].label);
    double p;
    if (i + 1 == parts.size()) {
      p = 1.0 - running.value();  // frequencies sum to 1 exactly
    } else {
      p = static_cast<double>(counts[i]) / static_cast<double>(done);
      running += p;
    }
    res.frequency.push_back(p);
    res.std_error.push_back(std::sqrt(std::max(p * (1.0 - p), 0.0) /
                                      static_cast<double>(done)));
  }
  return res;
}

}  // namespace dlab
