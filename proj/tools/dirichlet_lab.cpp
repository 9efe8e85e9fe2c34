#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlab/boundary.hpp"
#include "dlab/io.hpp"
#include "dlab/potential.hpp"
#include "dlab/series.hpp"

namespace {

using dlab::Complex;
using dlab::Index;
using dlab::io::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitIo = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

dlab::GeneralDirichletSeries series_from_config(const json& cfg) {
  if (!cfg.contains("series")) throw ConfigError("config is missing \"series\"");
  const json& s = cfg["series"];
  try {
    if (s.contains("file")) {
      const json inner = dlab::io::read_json_file(s["file"].get<std::string>());
      return dlab::io::series_from_json(inner);
    }
    if (s.contains("builtin")) {
      const std::string name = s["builtin"].get<std::string>();
      const Index terms = s.value("terms", 40);
      if (name == "geometric") return dlab::make_geometric(terms);
      if (name == "zeta") return dlab::make_zeta_shifted(terms, s.value("power", 1.0));
      if (name == "factorial_lacunary") return dlab::make_factorial_lacunary(terms);
      if (name == "high_indices") return dlab::make_high_indices(terms);
      throw ConfigError("unknown builtin series \"" + name + "\"");
    }
    return dlab::io::series_from_json(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid series: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid series: ") + e.what());
  }
}

dlab::SubsequenceSelector selector_from_config(const json& cfg, Index n) {
  if (!cfg.contains("selector")) return dlab::SubsequenceSelector::full(n);
  const json& s = cfg["selector"];
  if (s.is_array()) {
    std::vector<Index> indices;
    for (const json& v : s) indices.push_back(v.get<Index>());
    return dlab::SubsequenceSelector::from(std::move(indices));
  }
  const std::string kind = s.value("kind", "full");
  const Index count = s.value("n", n);
  if (kind == "full") return dlab::SubsequenceSelector::full(count);
  if (kind == "even") return dlab::SubsequenceSelector::even(count);
  throw ConfigError("unknown selector kind \"" + kind + "\"");
}

std::vector<double> grid_from_config(const json& cfg) {
  if (!cfg.contains("grid")) throw ConfigError("config is missing \"grid\"");
  const json& g = cfg["grid"];
  std::vector<double> grid;
  if (g.is_array()) {
    for (const json& v : g) grid.push_back(v.get<double>());
  } else {
    const double from = g.at("from").get<double>();
    const double to = g.at("to").get<double>();
    const int count = g.at("count").get<int>();
    if (count < 1 || !(to >= from)) throw ConfigError("bad grid range");
    for (int i = 0; i < count; ++i)
      grid.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
  }
  if (grid.empty()) throw ConfigError("grid is empty");
  return grid;
}

Complex complex_param(const json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw ConfigError("config is missing \"" + key + "\"");
  return dlab::io::complex_from_json(cfg[key]);
}

dlab::Acceleration accel_from_config(const json& cfg) {
  return cfg.value("accelerate", false) ? dlab::Acceleration::shanks
                                        : dlab::Acceleration::none;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string fd(double v) { return dlab::io::format_double(v); }

struct Outcome {
  json report;
  std::string csv;
  bool undecided_critical = false;
};

Outcome run_eval(const json& cfg) {
  const auto series = series_from_config(cfg);
  const Complex s = complex_param(cfg, "s");
  const double tol = cfg.value("tol", 1e-10);
  const dlab::EvaluationResult result = dlab::evaluate(series, s, tol);
  Outcome out;
  out.report["evaluation"] = dlab::io::to_json(result);
  out.csv = csv_line({"value_re", "value_im", "terms_used", "tail_bound",
                      "tol_met", "certified"});
  out.csv += csv_line({fd(result.value.real()), fd(result.value.imag()),
                       std::to_string(result.terms_used), fd(result.tail_bound),
                       result.tol_met ? "1" : "0", result.certified ? "1" : "0"});
  out.undecided_critical = !result.tol_met;
  return out;
}

std::string scan_csv(const dlab::BoundaryScan& scan, bool with_nt) {
  std::string csv = with_nt
      ? csv_line({"t", "sub_status", "sub_re", "sub_im", "nt_status", "nt_re",
                  "nt_im", "both_converged", "mismatch", "anomaly", "isolated"})
      : csv_line({"t", "status", "limit_re", "limit_im", "error_estimate"});
  for (const dlab::BoundaryPointReport& p : scan.points) {
    if (with_nt) {
      csv += csv_line({fd(p.t), to_string(p.subsequence.status),
                       fd(p.subsequence.limit.real()), fd(p.subsequence.limit.imag()),
                       to_string(p.nontangential.status),
                       fd(p.nontangential.limit.real()),
                       fd(p.nontangential.limit.imag()),
                       p.both_converged ? "1" : "0", fd(p.mismatch),
                       p.anomaly ? "1" : "0", p.isolated ? "1" : "0"});
    } else {
      csv += csv_line({fd(p.t), to_string(p.subsequence.status),
                       fd(p.subsequence.limit.real()),
                       fd(p.subsequence.limit.imag()),
                       fd(p.subsequence.error_estimate)});
    }
  }
  return csv;
}

bool scan_has_undecided(const dlab::BoundaryScan& scan, bool with_nt) {
  for (const dlab::BoundaryPointReport& p : scan.points) {
    if (p.subsequence.status == dlab::ConvergenceStatus::undecided) return true;
    if (with_nt && p.nontangential.status == dlab::ConvergenceStatus::undecided)
      return true;
  }
  return false;
}

Outcome run_scan(const json& cfg) {
  const auto series = series_from_config(cfg);
  const auto sel = selector_from_config(cfg, series.size());
  const auto grid = grid_from_config(cfg);
  const double tol = cfg.value("tol", 1e-8);
  const dlab::BoundaryScan scan =
      dlab::subsequence_limits(series, sel, grid, tol, accel_from_config(cfg));
  Outcome out;
  out.report["scan"] = dlab::io::to_json(scan);
  out.csv = scan_csv(scan, false);
  out.undecided_critical = scan_has_undecided(scan, false);
  return out;
}

Outcome run_theorem1(const json& cfg) {
  const auto series = series_from_config(cfg);
  const auto sel = selector_from_config(cfg, series.size());
  const auto grid = grid_from_config(cfg);
  const double tol = cfg.value("tol", 1e-6);
  const double delta = cfg.value("delta", 0.7853981633974483);
  const dlab::BoundaryScan scan = dlab::theorem1_compare(
      series, sel, grid, delta, tol, accel_from_config(cfg),
      cfg.value("prefer_closed_form", true));
  Outcome out;
  out.report["scan"] = dlab::io::to_json(scan);
  out.csv = scan_csv(scan, true);
  out.undecided_critical = scan_has_undecided(scan, true);
  return out;
}

Outcome run_theorem3(const json& cfg) {
  const auto series = series_from_config(cfg);
  const auto sel = selector_from_config(cfg, series.size());
  const double t0 = cfg.value("t0", 0.0);
  const json& iv = cfg.at("interval");
  const auto region = dlab::io::region_from_json(cfg.at("region"));
  const double tol = cfg.value("tol", 1e-8);
  dlab::Theorem3Options opts;
  opts.mesh = cfg.value("mesh", opts.mesh);
  opts.prefer_closed_form = cfg.value("prefer_closed_form", true);
  const dlab::Theorem3Report report = dlab::theorem3_run(
      series, sel, t0, {iv.at(0).get<double>(), iv.at(1).get<double>()}, region,
      tol, opts);
  Outcome out;
  out.report["theorem3"] = dlab::io::to_json(report);
  out.csv = csv_line({"k", "m", "conclusion_gap"});
  for (std::size_t k = 0; k < report.conclusion_gaps.size(); ++k)
    out.csv += csv_line({std::to_string(k + 1),
                         std::to_string(report.conclusion_gaps[k].first),
                         fd(report.conclusion_gaps[k].second)});
  out.undecided_critical = report.status == dlab::ConvergenceStatus::undecided;
  return out;
}

Outcome run_theorem2(const json& cfg) {
  const auto series = series_from_config(cfg);
  const auto sel = selector_from_config(cfg, series.size());
  const double t1 = cfg.at("t1").get<double>();
  const double t2 = cfg.at("t2").get<double>();
  const json& regions_json = cfg.at("regions");
  const std::array<dlab::ApproachRegion, 2> regions = {
      dlab::io::region_from_json(regions_json.at(0)),
      dlab::io::region_from_json(regions_json.at(1))};
  const dlab::BoundaryMeasure mu =
      cfg.contains("measure") ? dlab::io::measure_from_json(cfg["measure"])
                              : dlab::BoundaryMeasure{};
  const double rect_eps = cfg.value("rect_eps", 0.2);
  const double mesh = cfg.value("mesh", 0.02);
  const dlab::Theorem2Report report =
      dlab::theorem2_probe(series, sel, t1, t2, regions, mu, rect_eps, mesh);
  Outcome out;
  out.report["theorem2"] = dlab::io::to_json(report);
  out.csv = csv_line({"sigma_min", "rectangle_sup"});
  for (const auto& [sigma_min, sup] : report.rectangle_ladder)
    out.csv += csv_line({fd(sigma_min), fd(sup)});
  out.undecided_critical = !report.stabilized;
  return out;
}

Outcome run_corollary6(const json& cfg) {
  const json& coeff_json = cfg.at("taylor_coefficients");
  std::vector<Complex> coeffs;
  for (const json& c : coeff_json) coeffs.push_back(dlab::io::complex_from_json(c));
  const Complex w = complex_param(cfg, "w");
  if (std::abs(std::abs(w) - 1.0) > 1e-12) throw ConfigError("|w| must be 1");
  const json& sel_json = cfg.at("degrees");
  std::vector<Index> degrees;
  for (const json& v : sel_json) degrees.push_back(v.get<Index>());
  const json& arc = cfg.at("arc");
  const auto region = dlab::io::region_from_json(cfg.at("region"));
  const double tol = cfg.value("tol", 1e-8);
  const dlab::Corollary6Report report = dlab::corollary6_run(
      coeffs, w, dlab::SubsequenceSelector::from(std::move(degrees)),
      {arc.at(0).get<double>(), arc.at(1).get<double>()}, region, tol,
      cfg.value("ratio_min", 2.0));
  Outcome out;
  out.report["corollary6"] = dlab::io::to_json(report);
  out.csv = csv_line({"k", "m", "conclusion_gap"});
  for (std::size_t k = 0; k < report.inner.conclusion_gaps.size(); ++k)
    out.csv += csv_line({std::to_string(k + 1),
                         std::to_string(report.inner.conclusion_gaps[k].first),
                         fd(report.inner.conclusion_gaps[k].second)});
  out.undecided_critical =
      report.inner.status == dlab::ConvergenceStatus::undecided;
  return out;
}

Outcome run_counterexample(const json& cfg) {
  const dlab::CounterexampleTable table = dlab::counterexample_reproduce(
      cfg.value("mesh_points", 1000), cfg.value("pairs", 20));
  Outcome out;
  out.report["counterexample"] = dlab::io::to_json(table);
  out.csv = csv_line({"k", "m", "sup_on_mesh", "at_pi_re", "at_pi_im", "bound",
                      "nt_limit_re", "nt_limit_im"});
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const dlab::CounterexampleRow& row = table.rows[k];
    out.csv += csv_line({std::to_string(k + 1), std::to_string(row.m),
                         fd(row.sup_on_mesh), fd(row.value_at_pi.real()),
                         fd(row.value_at_pi.imag()), fd(table.bound),
                         fd(table.nt_at_pi.limit.real()),
                         fd(table.nt_at_pi.limit.imag())});
  }
  out.undecided_critical =
      table.nt_at_pi.status == dlab::ConvergenceStatus::undecided;
  return out;
}

dlab::WosDomain domain_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disc")
    return dlab::DiscDomain{dlab::io::complex_from_json(j.at("center")),
                            j.at("radius").get<double>()};
  if (kind != "rect") throw ConfigError("unknown domain kind \"" + kind + "\"");
  return dlab::RectDomain{j.at("x0").get<double>(), j.at("x1").get<double>(),
                          j.at("y0").get<double>(), j.at("y1").get<double>()};
}

Outcome run_potential(const json& cfg, std::optional<std::uint64_t> seed) {
  const dlab::WosDomain domain = domain_from_json(cfg.at("domain"));
  const Complex z = complex_param(cfg, "z");
  std::vector<dlab::BoundaryPart> parts;
  for (const json& p : cfg.at("parts")) {
    dlab::BoundaryPart part;
    part.label = p.at("label").get<std::string>();
    if (p.contains("arc"))
      part.shape = dlab::ArcPart{p["arc"].at(0).get<double>(),
                                 p["arc"].at(1).get<double>()};
    else if (p.contains("segment"))
      part.shape =
          dlab::SegmentPart{dlab::io::complex_from_json(p["segment"].at(0)),
                            dlab::io::complex_from_json(p["segment"].at(1))};
    else
      throw ConfigError("boundary part needs \"arc\" or \"segment\"");
    parts.push_back(std::move(part));
  }
  dlab::WalkConfig wc;
  wc.seed = seed.value_or(cfg.value("seed", std::uint64_t{1}));
  wc.walks = cfg.value("walks", 100000);
  wc.eps_boundary = cfg.value("eps_boundary", 0.0);
  wc.max_steps = cfg.value("max_steps", 10000);
  const dlab::WosResult result = dlab::harmonic_measure_wos(domain, z, parts, wc);
  Outcome out;
  out.report["potential"] = dlab::io::to_json(result);
  out.report["potential"]["seed"] = wc.seed;
  out.csv = csv_line({"label", "frequency", "std_error"});
  for (std::size_t i = 0; i < result.labels.size(); ++i)
    out.csv += csv_line({result.labels[i], fd(result.frequency[i]),
                         fd(result.std_error[i])});
  return out;
}

std::vector<std::string> validate_config(const json& cfg) {
  std::vector<std::string> diagnostics;
  const std::string command = cfg.value("command", "");
  if (command.empty()) {
    diagnostics.push_back("config has no \"command\" field");
    return diagnostics;
  }

  const bool needs_series = command == "eval" || command == "scan" ||
                            command == "theorem1" || command == "theorem2" ||
                            command == "theorem3";
  if (needs_series) {
    try {
      (void)series_from_config(cfg);
    } catch (const std::exception& e) {
      diagnostics.push_back(e.what());
    }
  }

  const auto check_region = [&diagnostics](const json& j, bool require_fat) {
    try {
      const dlab::ApproachRegion region = dlab::io::region_from_json(j);
      if (require_fat && !dlab::is_fat(region))
        diagnostics.push_back(
            "region fails the fatness test (integral criterion); the gap "
            "theorem requires a fat approach region");
    } catch (const std::exception& e) {
      diagnostics.push_back(std::string("invalid region: ") + e.what());
    }
  };

  const auto require_keys = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys)
      if (!cfg.contains(key))
        diagnostics.push_back(std::string("missing required key \"") + key +
                              "\" for command " + command);
  };

  if (command == "eval") require_keys({"s"});
  if (command == "scan" || command == "theorem1") require_keys({"grid"});
  if (command == "theorem3") {
    require_keys({"interval", "region"});
    if (cfg.contains("region")) check_region(cfg["region"], true);
  }
  if (command == "theorem2") {
    require_keys({"t1", "t2", "regions"});
    if (cfg.contains("regions") && cfg["regions"].is_array())
      for (const json& r : cfg["regions"]) check_region(r, true);
  }
  if (command == "corollary6")
    require_keys({"taylor_coefficients", "w", "degrees", "arc", "region"});
  if (command == "potential") require_keys({"domain", "z", "parts"});
  return diagnostics;
}

int dispatch(const std::string& command, const std::string& config_path,
             const std::string& out_prefix, bool strict,
             std::optional<std::uint64_t> seed) {
  json cfg;
  try {
    cfg = dlab::io::read_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (command == "validate") {
    const std::vector<std::string> diagnostics = validate_config(cfg);
    for (const std::string& d : diagnostics) std::cout << d << "\n";
    std::cout << (diagnostics.empty() ? "ok: no violations\n" : "") << std::flush;
    return kExitOk;
  }

  Outcome outcome;
  try {
    if (command == "eval") outcome = run_eval(cfg);
    else if (command == "scan") outcome = run_scan(cfg);
    else if (command == "theorem1") outcome = run_theorem1(cfg);
    else if (command == "theorem2") outcome = run_theorem2(cfg);
    else if (command == "theorem3") outcome = run_theorem3(cfg);
    else if (command == "corollary6") outcome = run_corollary6(cfg);
    else if (command == "counterexample") outcome = run_counterexample(cfg);
    else if (command == "potential") outcome = run_potential(cfg, seed);
    else {
      std::cerr << "unknown command " << command << "\n";
      return kExitConfig;
    }
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  outcome.report["command"] = command;
  outcome.report["config"] = cfg;
  try {
    dlab::io::write_text_file(out_prefix + ".report.json",
                              outcome.report.dump(2) + "\n");
    dlab::io::write_text_file(out_prefix + ".csv", outcome.csv);
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }

  if (strict && outcome.undecided_critical) {
    std::cerr << "undecided outcome under --strict\n";
    return kExitUndecided;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dirichlet-lab: boundary behaviour experiments for general "
               "Dirichlet series"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_prefix = "out";
  bool strict = false;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  if (const char* env = std::getenv("DIRICHLET_LAB_THREADS"))
    threads = std::atoi(env);

  const std::vector<std::string> commands = {
      "eval",       "scan",           "theorem1",  "theorem2", "theorem3",
      "corollary6", "counterexample", "potential", "validate"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("--out", out_prefix, "output path prefix");
    sub->add_flag("--strict", strict, "exit 3 on undecided critical outcomes");
    sub->add_option("--seed", seed, "RNG seed override (potential command)");
    sub->add_option("--threads", threads, "worker thread budget");
  }

  CLI11_PARSE(app, argc, argv);
  if (threads < 0) {
    std::cerr << "config error: thread count must be nonnegative\n";
    return kExitConfig;
  }
  return dispatch(app.get_subcommands().front()->get_name(), config_path,
                  out_prefix, strict, seed);
}
