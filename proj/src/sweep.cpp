#include "shellgap/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "shellgap/cpa.hpp"
#include "shellgap/errors.hpp"
#include "shellgap/foldy.hpp"
#include "shellgap/mae.hpp"
#include "shellgap/parallel.hpp"
#include "shellgap/rayleigh.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

std::string_view to_string(SweepVariable v) noexcept {
  switch (v) {
    case SweepVariable::Radius: return "radius";
    case SweepVariable::LatticeConstant: return "lattice_constant";
    case SweepVariable::Thickness: return "thickness";
    case SweepVariable::YoungsModulus: return "youngs_modulus";
  }
  return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "radius" || s == "a") return SweepVariable::Radius;
  if (s == "lattice" || s == "lattice_constant" || s == "l") return SweepVariable::LatticeConstant;
  if (s == "thickness") return SweepVariable::Thickness;
  if (s == "youngs" || s == "youngs_modulus" || s == "e") return SweepVariable::YoungsModulus;
  return std::nullopt;
}

double SweepSpec::value_at(int i) const {
  if (i == samples - 1) return hi;
  return lo + (hi - lo) * i / (samples - 1);
}

ArrayConfig SweepSpec::config_at(int i) const {
  ArrayConfig cfg = base;
  const double x = value_at(i);
  switch (variable) {
    case SweepVariable::Radius: cfg.shell.a = x; break;
    case SweepVariable::LatticeConstant: cfg.lattice.L = x; break;
    case SweepVariable::Thickness: cfg.shell.h = 0.5 * x; break;
    case SweepVariable::YoungsModulus: cfg.shell.E = x; break;
  }
  return cfg;
}

void SweepSpec::validate() const {
  if (samples < 2) throw SolverError(ErrorKind::InvalidSpec, "sweep needs at least 2 samples");
  if (!(lo < hi)) throw SolverError(ErrorKind::InvalidSpec, "sweep range needs lo < hi");
  if (methods.empty()) throw SolverError(ErrorKind::InvalidSpec, "sweep needs at least one method");
  for (int i = 0; i < samples; ++i) {
    try {
      config_at(i).validate();
    } catch (const SolverError& e) {
      throw SolverError(ErrorKind::InvalidSpec, "sweep row " + std::to_string(i) + ": " + e.what());
    }
  }
}

namespace {

template <typename Fn>
void try_gap(std::optional<BandGap>& slot, std::string& error, Fn&& fn) {
  try {
    slot = fn();
  } catch (const SolverError& e) {
    error = std::string(to_string(e.kind()));
  }
}

}  // namespace

MethodGaps evaluate_method(MethodId method, const ArrayConfig& cfg, int rayleigh_grid, unsigned threads) {
  MethodGaps out;
  out.method = method;
  switch (method) {
    case MethodId::Foldy:
      try_gap(out.n0, out.n0_error, [&] { return foldy_gap_n0(cfg); });
      try_gap(out.n1, out.n1_error, [&] { return foldy_gap_n1(cfg); });
      break;
    case MethodId::MAE:
      try_gap(out.n0, out.n0_error, [&] { return mae_gap_n0(cfg); });
      break;
    case MethodId::CPA:
      try_gap(out.n0, out.n0_error, [&] { return cpa_gap_n0(cfg); });
      try_gap(out.n1, out.n1_error, [&] { return cpa_gap_n1(cfg); });
      break;
    case MethodId::Rayleigh: {
      RayleighOptions opts;
      opts.grid = rayleigh_grid;
      opts.threads = threads;
      std::vector<DispersionCurve> curves;
      try {
        const auto [f_lo, f_hi] = default_scan_window(cfg);
        curves = trace_bands(brillouin_path(cfg.lattice, opts.points_per_segment, true), f_lo, f_hi, cfg, opts);
      } catch (const SolverError& e) {
        out.n0_error = out.n1_error = std::string(to_string(e.kind()));
        break;
      }
      try_gap(out.n0, out.n0_error, [&] { return extract_gap(curves, 0, cfg); });
      try_gap(out.n1, out.n1_error, [&] { return extract_gap(curves, 1, cfg); });
      break;
    }
  }
  return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.samples));
  parallel_for(rows.size(), spec.threads, [&](std::size_t i) {
    const ArrayConfig cfg = spec.config_at(static_cast<int>(i));
    SweepRow& row = rows[i];
    row.x = spec.value_at(static_cast<int>(i));
    row.F = cfg.filling_fraction();
    const double outer = cfg.shell.a + cfg.shell.h;
    row.F_outer = special::kPi * outer * outer / cfg.lattice.area();
    row.bragg_f = cfg.bragg_frequency();

    const ResonanceParams p = cfg.params();
    if (cfg.to_hz(p.K0_hat) > row.bragg_f) row.flags.emplace_back("n0_above_bragg");
    if (cfg.to_hz(p.K1) > row.bragg_f) row.flags.emplace_back("n1_above_bragg");

    for (MethodId m : spec.methods) {
      MethodGaps g = evaluate_method(m, cfg, spec.rayleigh_grid, 1);  // rows already run concurrently
      const std::string name(to_string(m));
      if (!g.n0_error.empty()) row.flags.push_back(name + "_n0_" + g.n0_error);
      if (!g.n1_error.empty()) row.flags.push_back(name + "_n1_" + g.n1_error);
      row.gaps.push_back(std::move(g));
    }
  });
  return rows;
}

std::vector<WidthSummary> gap_width_report(const std::vector<SweepRow>& rows) {
  std::vector<WidthSummary> out;
  if (rows.empty()) return out;
  for (std::size_t j = 0; j < rows.front().gaps.size(); ++j) {
    const MethodId method = rows.front().gaps[j].method;
    for (int mode = 0; mode <= 1; ++mode) {
      if (method == MethodId::MAE && mode == 1) continue;
      WidthSummary s;
      s.method = method;
      s.n_mode = mode;
      for (const auto& row : rows) {
        const auto& g = mode == 0 ? row.gaps[j].n0 : row.gaps[j].n1;
        if (!g) {
          s.widths.emplace_back();
          continue;
        }
        const double w = g->width();
        s.widths.emplace_back(w);
        s.min = s.min ? std::min(*s.min, w) : w;
        s.max = s.max ? std::max(*s.max, w) : w;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace shellgap
