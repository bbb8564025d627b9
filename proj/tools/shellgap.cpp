// shellgap: band structure, band-gap edges and parameter sweeps for square
// arrays of thin elastic shells in a fluid.
//
// Exit codes: 0 success, 2 usage or config error, 3 numerical failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shellgap/cpa.hpp"
#include "shellgap/errors.hpp"
#include "shellgap/foldy.hpp"
#include "shellgap/io.hpp"
#include "shellgap/rayleigh.hpp"
#include "shellgap/sweep.hpp"

namespace {

using namespace shellgap;

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::string out_path;  // empty: stdout
};

bool wants_json(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

// Write only after the computation succeeded, so failures leave no file.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("write failed for '" + path + "'");
}

ArrayConfig load(const std::string& path) {
  ArrayConfig cfg = load_config(path);
  for (const auto& w : cfg.shell.warnings()) std::cerr << "warning: " << w << '\n';
  return cfg;
}

std::vector<MethodId> parse_methods(const std::vector<std::string>& names) {
  std::vector<MethodId> out;
  for (const auto& n : names) {
    if (n.empty()) continue;
    const auto m = parse_method(n);
    if (!m) throw UsageError("unknown method '" + n + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  if (out.empty()) throw UsageError("no methods requested");
  return out;
}

struct BandArgs {
  std::string method = "rayleigh";
  int N = 5;
  int grid = 2000;
  int points = 64;
  double f_lo = 0.0;
  double f_hi = 0.0;
  bool gamma_x_only = false;
  unsigned threads = 0;
};

int cmd_band_structure(const Common& c, const BandArgs& a) {
  const ArrayConfig cfg = load(c.config_path);
  const auto method = parse_method(a.method);
  if (!method) throw UsageError("unknown method '" + a.method + "'");
  auto [f_lo, f_hi] = default_scan_window(cfg);
  if (a.f_lo > 0.0) f_lo = a.f_lo;
  if (a.f_hi > 0.0) f_hi = a.f_hi;
  if (!(f_hi > f_lo)) throw UsageError("frequency window needs f-lo < f-hi");

  std::vector<DispersionCurve> curves;
  switch (*method) {
    case MethodId::Rayleigh: {
      RayleighOptions opts;
      opts.N = a.N;
      opts.grid = a.grid;
      opts.points_per_segment = a.points;
      opts.threads = a.threads;
      curves = trace_bands(brillouin_path(cfg.lattice, a.points, a.gamma_x_only), f_lo, f_hi, cfg, opts);
      break;
    }
    case MethodId::Foldy: curves = foldy_curves(cfg, f_lo, f_hi, a.grid); break;
    case MethodId::CPA: curves = cpa_curves(cfg, f_lo, f_hi, a.grid); break;
    case MethodId::MAE: throw UsageError("mae yields a gap edge, not dispersion curves; use `gaps`");
  }

  std::ostringstream out;
  if (wants_json(c.out_path)) {
    nlohmann::json j = {{"config", cfg}, {"method", std::string(to_string(*method))}, {"curves", curves}};
    out << j.dump(2) << '\n';
  } else {
    write_curves_csv(out, curves, cfg);
  }
  emit(c.out_path, out.str());
  return 0;
}

int cmd_gaps(const Common& c, const std::vector<std::string>& method_names, unsigned threads) {
  const auto methods = parse_methods(method_names);
  const ArrayConfig cfg = load(c.config_path);
  std::vector<GapRecord> records;
  bool any_ok = false;
  for (MethodId m : methods) {
    // Rayleigh gets the full band-structure grid here; sweeps use a coarse one.
    const MethodGaps g = evaluate_method(m, cfg, RayleighOptions{}.grid, threads);
    for (auto& r : gap_records(g)) {
      any_ok = any_ok || r.gap.has_value();
      if (!r.gap) std::cerr << "warning: " << to_string(r.method) << " n=" << r.n_mode << ": " << r.status << '\n';
      records.push_back(std::move(r));
    }
  }
  if (!any_ok) {
    std::cerr << "error: every requested method failed\n";
    return kExitSolver;
  }
  std::ostringstream out;
  if (wants_json(c.out_path)) {
    nlohmann::json j = {{"config", cfg}, {"gaps", records}};
    out << j.dump(2) << '\n';
  } else {
    write_gaps_csv(out, records);
  }
  emit(c.out_path, out.str());
  return 0;
}

struct SweepArgs {
  std::string var;
  double lo = 0.0;
  double hi = 0.0;
  int samples = 0;
  std::vector<std::string> methods{"foldy", "mae", "cpa"};
  bool rayleigh = false;
  int rayleigh_grid = 500;
  unsigned threads = 0;
};

int cmd_sweep(const Common& c, const SweepArgs& a) {
  SweepSpec spec;
  const auto var = parse_sweep_variable(a.var);
  if (!var) throw UsageError("unknown sweep variable '" + a.var + "'");
  spec.variable = *var;
  spec.lo = a.lo;
  spec.hi = a.hi;
  spec.samples = a.samples;
  spec.methods = parse_methods(a.methods);
  if (a.rayleigh && std::find(spec.methods.begin(), spec.methods.end(), MethodId::Rayleigh) == spec.methods.end()) {
    spec.methods.push_back(MethodId::Rayleigh);
  }
  spec.rayleigh_grid = a.rayleigh_grid;
  spec.threads = a.threads;
  spec.base = load(c.config_path);
  try {
    spec.validate();
  } catch (const SolverError& e) {
    throw UsageError(e.what());
  }
  const auto rows = run_sweep(spec);

  bool any_ok = false;
  for (const auto& row : rows) {
    for (const auto& g : row.gaps) any_ok = any_ok || g.n0 || g.n1;
  }
  if (!any_ok) {
    std::cerr << "error: no method produced a gap on any row\n";
    return kExitSolver;
  }
  std::ostringstream out;
  if (wants_json(c.out_path)) {
    std::vector<std::string> names;
    for (MethodId m : spec.methods) names.emplace_back(to_string(m));
    nlohmann::json j = {{"variable", std::string(to_string(spec.variable))},
                        {"lo", spec.lo},
                        {"hi", spec.hi},
                        {"samples", spec.samples},
                        {"methods", names},
                        {"config", spec.base},
                        {"rows", rows}};
    out << j.dump(2) << '\n';
  } else {
    write_sweep_csv(out, spec, rows);
  }
  emit(c.out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant band gaps of square arrays of thin elastic shells"};
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "key = value config file")->required();
    sub->add_option("-o,--out", common.out_path, "output file (.json for JSON, CSV otherwise; default stdout)");
  };

  BandArgs band;
  auto* bs = app.add_subcommand("band-structure", "dispersion curves along the Brillouin path");
  add_common(bs);
  bs->add_option("-m,--method", band.method, "rayleigh, foldy or cpa")->capture_default_str();
  bs->add_option("-N,--order", band.N, "multipole truncation (orders -N..N)")->capture_default_str();
  bs->add_option("--grid", band.grid, "frequency samples")->capture_default_str();
  bs->add_option("--points", band.points, "Bloch samples per path segment")->capture_default_str();
  bs->add_option("--f-lo", band.f_lo, "window start [Hz] (default 0.05 x Bragg)");
  bs->add_option("--f-hi", band.f_hi, "window end [Hz] (default Bragg)");
  bs->add_flag("--gamma-x-only", band.gamma_x_only, "stop the path at X");
  bs->add_option("--threads", band.threads, "worker threads (0: SHELLGAP_THREADS or all cores)");

  std::vector<std::string> gap_methods{"foldy", "mae", "cpa"};
  unsigned gap_threads = 0;
  auto* gp = app.add_subcommand("gaps", "band-gap edges per method");
  add_common(gp);
  gp->add_option("-m,--methods", gap_methods, "comma-separated: rayleigh,foldy,mae,cpa")
      ->delimiter(',')
      ->capture_default_str();
  gp->add_option("--threads", gap_threads, "worker threads for rayleigh");

  SweepArgs sw;
  auto* sp = app.add_subcommand("sweep", "gap edges across one parameter");
  add_common(sp);
  sp->add_option("--var", sw.var, "radius, lattice, thickness (full 2h) or youngs")->required();
  sp->add_option("--lo", sw.lo, "first value [SI]")->required();
  sp->add_option("--hi", sw.hi, "last value [SI]")->required();
  sp->add_option("--samples", sw.samples, "number of rows (>= 2)")->required();
  sp->add_option("-m,--methods", sw.methods, "comma-separated: foldy,mae,cpa[,rayleigh]")
      ->delimiter(',')
      ->capture_default_str();
  sp->add_flag("--rayleigh", sw.rayleigh, "add the (slow) rayleigh reference");
  sp->add_option("--rayleigh-grid", sw.rayleigh_grid, "frequency samples for rayleigh rows")->capture_default_str();
  sp->add_option("--threads", sw.threads, "worker threads (0: SHELLGAP_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (bs->parsed()) return cmd_band_structure(common, band);
    if (gp->parsed()) return cmd_gaps(common, gap_methods, gap_threads);
    if (sp->parsed()) return cmd_sweep(common, sw);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidSpec ? kExitUsage : kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
