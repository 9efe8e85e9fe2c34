#include "dlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dlab::io {

std::string format_double(double v) {
  char buf[40];
  // %.17g round-trips IEEE doubles; trailing precision is stable across runs
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  return format_double(v.real()) + "," + format_double(v.imag());
}

json to_json(Complex v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error("complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const GeneralDirichletSeries& series) {
  json exponents = json::array();
  json coefficients = json::array();
  for (Index n = 0; n < series.size(); ++n) {
    exponents.push_back(series.exponents[n]);
    coefficients.push_back(to_json(series.coefficients[n]));
  }
  json j = {{"exponents", std::move(exponents)},
            {"coefficients", std::move(coefficients)},
            {"finite", series.finite}};
  if (series.closed_form.empty())
    j["closed_form"] = nullptr;
  else
    j["closed_form"] = series.closed_form;
  return j;
}

GeneralDirichletSeries series_from_json(const json& j) {
  const json& ex = j.at("exponents");
  const json& co = j.at("coefficients");
  if (!ex.is_array() || !co.is_array())
    throw std::runtime_error("series: exponents/coefficients must be arrays");
  const Index n = static_cast<Index>(ex.size());
  Eigen::ArrayXd exponents(n);
  Eigen::ArrayXcd coefficients(static_cast<Index>(co.size()));
  for (Index i = 0; i < n; ++i) exponents[i] = ex[static_cast<std::size_t>(i)].get<double>();
  for (Index i = 0; i < coefficients.size(); ++i)
    coefficients[i] = complex_from_json(co[static_cast<std::size_t>(i)]);
  const bool finite = j.value("finite", true);
  std::string tag;
  if (j.contains("closed_form") && !j["closed_form"].is_null())
    tag = j["closed_form"].get<std::string>();
  return make_series(std::move(exponents), std::move(coefficients), finite,
                     std::move(tag));
}

namespace {

json profile_to_json(const CuspProfile& profile) {
  if (const auto* p = std::get_if<PowerProfile>(&profile))
    return {{"kind", "power"}, {"scale", p->scale}, {"alpha", p->alpha}};
  const auto& s = std::get<SampledProfile>(profile);
  json y = json::array(), phi = json::array();
  for (Index i = 0; i < s.y.size(); ++i) {
    y.push_back(s.y[i]);
    phi.push_back(s.phi[i]);
  }
  return {{"kind", "sampled"},
          {"y", std::move(y)},
          {"phi", std::move(phi)},
          {"lipschitz_bound", s.lipschitz_bound}};
}

CuspProfile profile_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power")
    return PowerProfile{j.at("scale").get<double>(), j.at("alpha").get<double>()};
  if (kind != "sampled") throw std::runtime_error("unknown profile kind " + kind);
  const json& y = j.at("y");
  const json& phi = j.at("phi");
  SampledProfile s;
  s.y.resize(static_cast<Index>(y.size()));
  s.phi.resize(static_cast<Index>(phi.size()));
  for (Index i = 0; i < s.y.size(); ++i) s.y[i] = y[static_cast<std::size_t>(i)].get<double>();
  for (Index i = 0; i < s.phi.size(); ++i)
    s.phi[i] = phi[static_cast<std::size_t>(i)].get<double>();
  s.lipschitz_bound = j.value("lipschitz_bound", 0.0);
  return s;
}

}  // namespace

json to_json(const ApproachRegion& region) {
  if (const auto* r = std::get_if<StolzRegion>(&region))
    return {{"kind", "stolz"},
            {"t0", r->t0},
            {"delta", r->delta},
            {"radius", r->radius}};
  if (const auto* r = std::get_if<HalfDiscRegion>(&region))
    return {{"kind", "half_disc"}, {"t0", r->t0}, {"radius", r->radius}};
  const auto& r = std::get<FatRegion>(region);
  return {{"kind", "fat"},
          {"t0", r.t0},
          {"a", r.a},
          {"b", r.b},
          {"profile", profile_to_json(r.profile)}};
}

ApproachRegion region_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "stolz")
    return StolzRegion{j.at("t0").get<double>(), j.at("delta").get<double>(),
                       j.at("radius").get<double>()};
  if (kind == "half_disc")
    return HalfDiscRegion{j.at("t0").get<double>(), j.at("radius").get<double>()};
  if (kind != "fat") throw std::runtime_error("unknown region kind " + kind);
  return make_fat_region(j.at("t0").get<double>(), j.at("a").get<double>(),
                         j.at("b").get<double>(),
                         profile_from_json(j.at("profile")));
}

json to_json(const BoundaryMeasure& mu) {
  json atoms = json::array();
  for (const auto& [t, mass] : mu.atoms) atoms.push_back(json::array({t, mass}));
  json breaks = json::array(), values = json::array();
  for (Index i = 0; i < mu.breakpoints.size(); ++i) breaks.push_back(mu.breakpoints[i]);
  for (Index i = 0; i < mu.values.size(); ++i) values.push_back(mu.values[i]);
  return {{"atoms", std::move(atoms)},
          {"breakpoints", std::move(breaks)},
          {"values", std::move(values)}};
}

BoundaryMeasure measure_from_json(const json& j) {
  std::vector<std::pair<double, double>> atoms;
  for (const json& a : j.value("atoms", json::array()))
    atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
  const json& br = j.value("breakpoints", json::array());
  const json& va = j.value("values", json::array());
  Eigen::ArrayXd breaks(static_cast<Index>(br.size()));
  Eigen::ArrayXd values(static_cast<Index>(va.size()));
  for (Index i = 0; i < breaks.size(); ++i) breaks[i] = br[static_cast<std::size_t>(i)].get<double>();
  for (Index i = 0; i < values.size(); ++i) values[i] = va[static_cast<std::size_t>(i)].get<double>();
  return make_measure(std::move(atoms), std::move(breaks), std::move(values));
}

json to_json(const ConvergenceReport& report) {
  json samples = json::array();
  for (const auto& [param, value] : report.samples)
    samples.push_back(json::array({param, value.real(), value.imag()}));
  return {{"status", to_string(report.status)},
          {"limit", to_json(report.limit)},
          {"error_estimate", report.error_estimate},
          {"accelerated", report.accelerated},
          {"diagnostic", report.diagnostic},
          {"samples", std::move(samples)}};
}

json to_json(const EvaluationResult& result) {
  return {{"value", to_json(result.value)},
          {"terms_used", result.terms_used},
          {"tail_bound", result.tail_bound},
          {"tol_met", result.tol_met},
          {"certified", result.certified}};
}

json to_json(const OstrowskiGapReport& report) {
  json pairs = json::array();
  for (const auto& [p, q] : report.pairs) pairs.push_back(json::array({p, q}));
  return {{"pairs", std::move(pairs)}, {"ratios", report.ratios}};
}

json to_json(const BoundaryScan& scan) {
  json points = json::array();
  for (const BoundaryPointReport& p : scan.points) {
    points.push_back({{"t", p.t},
                      {"subsequence", to_json(p.subsequence)},
                      {"nontangential", to_json(p.nontangential)},
                      {"both_converged", p.both_converged},
                      {"mismatch", p.mismatch},
                      {"anomaly", p.anomaly},
                      {"isolated", p.isolated}});
  }
  return {{"points", std::move(points)},
          {"both_converged_count", scan.both_converged_count},
          {"comparison_max", scan.comparison_max},
          {"comparison_mean", scan.comparison_mean},
          {"tol", scan.tol}};
}

json to_json(const Theorem3Report& report) {
  json gaps = json::array();
  for (const auto& [m, gap] : report.conclusion_gaps)
    gaps.push_back(json::array({m, gap}));
  return {{"gap_ratios", report.gap_ratios},
          {"gap_ratios_increasing", report.gap_ratios_increasing},
          {"interval_sup", report.interval_sup},
          {"derivative_region_sup", report.derivative_region_sup},
          {"region_is_fat", report.region_is_fat},
          {"boundary_value", to_json(report.boundary_value)},
          {"conclusion_gaps", std::move(gaps)},
          {"settled_at", report.settled_at},
          {"status", to_string(report.status)},
          {"diagnostic", report.diagnostic},
          {"tol", report.tol}};
}

json to_json(const Theorem2Report& report) {
  json ladder = json::array();
  for (const auto& [sigma_min, sup] : report.rectangle_ladder)
    ladder.push_back(json::array({sigma_min, sup}));
  return {{"weighted_region_sup",
           json::array({report.weighted_region_sup[0], report.weighted_region_sup[1]})},
          {"interval_sup", report.interval_sup},
          {"rectangle_ladder", std::move(ladder)},
          {"stabilized", report.stabilized},
          {"final_sup", report.final_sup}};
}

json to_json(const Corollary6Report& report) {
  return {{"gaps", to_json(report.gaps)}, {"inner", to_json(report.inner)}};
}

json to_json(const CounterexampleTable& table) {
  json rows = json::array();
  for (const CounterexampleRow& row : table.rows)
    rows.push_back({{"m", row.m},
                    {"sup_on_mesh", row.sup_on_mesh},
                    {"value_at_pi", to_json(row.value_at_pi)}});
  return {{"rows", std::move(rows)},
          {"mesh_points", table.mesh.size()},
          {"bound", table.bound},
          {"max_sup", table.max_sup},
          {"derivative_sup", table.derivative_sup},
          {"last_gap_ratio", table.last_gap_ratio},
          {"nt_at_pi", to_json(table.nt_at_pi)},
          {"gap_hypothesis_holds", table.gap_hypothesis_holds},
          {"conclusion_fails", table.conclusion_fails}};
}

json to_json(const WosResult& result) {
  return {{"labels", result.labels},
          {"frequency", result.frequency},
          {"std_error", result.std_error},
          {"failed_walks", result.failed_walks}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dlab::io
