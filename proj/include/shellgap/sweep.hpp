#pragma once

// One-parameter sweeps over the array: every method is evaluated per row,
// independently, and failures are recorded on the row instead of aborting.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shellgap/config.hpp"

namespace shellgap {

enum class SweepVariable {
  Radius,           ///< shell.a [m]
  LatticeConstant,  ///< lattice.L [m]
  Thickness,        ///< full wall 2h [m]
  YoungsModulus,    ///< shell.E [Pa]
};

std::string_view to_string(SweepVariable v) noexcept;
/// Accepts the long names and the CLI short forms (radius, lattice, thickness, youngs).
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::Radius;
  double lo = 0.0;
  double hi = 0.0;
  int samples = 2;
  ArrayConfig base = ArrayConfig::latex_default();
  std::vector<MethodId> methods{MethodId::Foldy, MethodId::MAE, MethodId::CPA};
  int rayleigh_grid = 500;  ///< coarser than the band-structure default
  unsigned threads = 0;

  /// Throws SolverError(InvalidSpec) on lo >= hi, samples < 2, no methods,
  /// or any generated config that fails validation.
  void validate() const;

  /// Config of row i.
  [[nodiscard]] ArrayConfig config_at(int i) const;
  [[nodiscard]] double value_at(int i) const;
};

struct MethodGaps {
  MethodId method = MethodId::Foldy;
  std::optional<BandGap> n0;
  std::optional<BandGap> n1;
  std::string n0_error;  ///< error kind when n0 is absent
  std::string n1_error;
};

struct SweepRow {
  double x = 0.0;
  double F = 0.0;        ///< pi a^2 / L^2, mid-surface radius
  double F_outer = 0.0;  ///< pi (a + h)^2 / L^2, outer radius
  double bragg_f = 0.0;  ///< c_o / (2L) [Hz]
  std::vector<MethodGaps> gaps;  ///< same order as SweepSpec::methods
  std::vector<std::string> flags;
};

/// Gaps of one method for one configuration. MAE has no n = 1 result.
/// Rayleigh traces the Gamma-X leg on `rayleigh_grid` frequencies.
MethodGaps evaluate_method(MethodId method, const ArrayConfig& cfg, int rayleigh_grid = 500, unsigned threads = 1);

/// Rows in ascending x. Rows run concurrently; output order is fixed.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct WidthSummary {
  MethodId method = MethodId::Foldy;
  int n_mode = 0;
  std::vector<std::optional<double>> widths;  ///< per row [Hz]
  std::optional<double> min;
  std::optional<double> max;
};

/// Width per row and min/max over the sweep, per method and mode.
std::vector<WidthSummary> gap_width_report(const std::vector<SweepRow>& rows);

}  // namespace shellgap
