#pragma once

// Foldy-type effective dispersion beta^2 = k^2 - (4/A) F with the far-field
// pattern truncated to F = Z_0 + 2 Z_1 (soft-shell forms), and the band-gap
// intervals it implies near the n = 0 and n = 1 shell resonances.

#include <vector>

#include "shellgap/config.hpp"

namespace shellgap {

struct FoldyDispersion {
  double beta_sq = 0.0;       ///< [1/m^2]; negative inside a gap
  double far_field = 0.0;     ///< F = Z_0 + 2 Z_1
  bool consistent = true;     ///< (4/A) |F| L^2 < 1
};

FoldyDispersion foldy_beta_squared(double k_o, const ArrayConfig& cfg);

/// Leading-order-in-filling-fraction intervals.
BandGap foldy_gap_n0(const ArrayConfig& cfg);
BandGap foldy_gap_n1(const ArrayConfig& cfg);

/// Unexpanded upper edges (the full radicals); lower edges K0_hat and K1.
/// Throw DegenerateDenominator when the radical's denominator vanishes.
BandGap foldy_gap_n0_full(const ArrayConfig& cfg);
BandGap foldy_gap_n1_full(const ArrayConfig& cfg);

/// Near-resonance forms of the Foldy relation at beta = 0 whose positive
/// roots are the full-radical upper edges. Arguments and results are in the
/// dimensionless variable x = (k a)^2.
double foldy_reduced_n0(double x, const ArrayConfig& cfg);
double foldy_reduced_n1(double x, const ArrayConfig& cfg);

/// Dispersion branches beta(k) sampled on `grid` frequencies in
/// [f_lo, f_hi], restricted to 0 <= beta L <= pi.
std::vector<DispersionCurve> foldy_curves(const ArrayConfig& cfg, double f_lo, double f_hi, int grid);

}  // namespace shellgap
