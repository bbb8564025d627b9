#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "shellgap/lattice.hpp"
#include "shellgap/shell.hpp"

namespace shellgap {

enum class MethodId { Rayleigh, Foldy, MAE, CPA };

std::string_view to_string(MethodId method) noexcept;
std::optional<MethodId> parse_method(std::string_view name);

/// A square array of identical shells in a host fluid.
struct ArrayConfig {
  ShellSpec shell;
  FluidSpec fluid;
  SquareLattice lattice;

  /// pi a^2 / L^2, with a the mid-surface radius.
  [[nodiscard]] double filling_fraction() const;
  [[nodiscard]] ResonanceParams params() const { return resonance_params(shell, fluid); }
  /// First Bragg frequency c_o / (2L) [Hz].
  [[nodiscard]] double bragg_frequency() const;

  [[nodiscard]] double to_hz(double k_o) const;
  [[nodiscard]] double to_wavenumber(double f_hz) const;

  /// Shells must not overlap: a < L/2, on top of the shell/fluid invariants.
  void validate() const;

  /// Latex-like shell in air, a = 27.5 mm, 2h = 0.25 mm, L = 80 mm. The
  /// material values are a plausible stand-in, not measured data.
  static ArrayConfig latex_default();
};

/// Frequency interval without propagating Bloch waves.
struct BandGap {
  int n_mode = 0;  ///< 0 (breathing) or 1 (dipole)
  double f_lower = 0.0;
  double f_upper = 0.0;
  MethodId method = MethodId::Foldy;

  [[nodiscard]] double width() const noexcept { return f_upper - f_lower; }
  [[nodiscard]] double center() const noexcept { return 0.5 * (f_upper + f_lower); }
};

struct CurvePoint {
  double betaL = 0.0;  ///< Bloch coordinate along the sampled path, in units of 1/L
  double k_oL = 0.0;
};

struct DispersionCurve {
  MethodId method = MethodId::Rayleigh;
  int branch_index = 0;
  std::vector<CurvePoint> points;
};

}  // namespace shellgap
