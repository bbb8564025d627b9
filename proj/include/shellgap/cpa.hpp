#pragma once

// Self-consistent (coherent-potential) effective medium for the shell array.
// A composite inclusion (shell plus host annulus out to R_o = a / sqrt(F)) is
// embedded in the trial medium; requiring it to be invisible at leading order
// in eta = k R_o gives
//
//   B_eff / B_o   = 1 / (1 - Z_{0,0})
//   rho_eff / rho_o = (1 - Z_{1,0}) / (1 + Z_{1,0})
//
// with Z_0 = (eta/2)^2 pi Z_{0,0} and Z_1 = (eta/2)^2 pi Z_{1,0}.

#include <vector>

#include "shellgap/config.hpp"

namespace shellgap {

struct EffectiveMedium {
  double B_eff_ratio = 1.0;    ///< B_eff / B_o
  double rho_eff_ratio = 1.0;  ///< rho_eff / rho_o
  double k_eff_sq = 0.0;       ///< [1/m^2], negative inside a gap
};

/// R_o = a / sqrt(F).
double composite_radius(const ArrayConfig& cfg);

/// Z_{n,0} for n in {0, 1}, from the leading-order soft-shell Z_n.
double z_scaled(int n, double k_o, const ArrayConfig& cfg);

/// Same scaling applied to a caller-supplied Z_n (n in {0, 1}).
double z_scaled_from(int n, double z_n, double k_o, double composite_radius);

/// Leading-order relations. Throws PoleProximity at Z00 = 1 and Z10 = +-1.
EffectiveMedium effective_params_generic(double Z00, double Z10, double k_o);

/// Closed forms for the thin shell. Throws PoleProximity on either pole.
EffectiveMedium effective_params_shell(double k_o, const ArrayConfig& cfg);

/// [K0_hat, upper] where B_eff < 0.
BandGap cpa_gap_n0(const ArrayConfig& cfg);

/// Interval where rho_eff < 0. Throws DegenerateRadicand.
BandGap cpa_gap_n1(const ArrayConfig& cfg);

/// Relative mismatch of the unexpanded interface condition for harmonic n,
///   [J_n' + Z_n Y_n'] / [J_n + Z_n Y_n] (k R_o)
///     vs (rho_o/rho_eff) (k_eff/k) J_n'(k_eff R_o) / J_n(k_eff R_o),
/// evaluated at the closed-form medium with the exact shell factor. Only
/// defined where k_eff^2 > 0. Small in the homogenisation regime.
double cpa_interface_residual(int n, double k_o, const ArrayConfig& cfg);

/// Effective-medium branches beta = k_eff on `grid` frequencies, 0 <= beta L <= pi.
std::vector<DispersionCurve> cpa_curves(const ArrayConfig& cfg, double f_lo, double f_hi, int grid);

}  // namespace shellgap
