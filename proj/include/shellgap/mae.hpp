#pragma once

// Periodicity-corrected upper edge of the n = 0 gap at beta L = 0: the root of
// Z_0 sigma_0^Y(k, 0) - 1 = 0 with the full reciprocal S-sum, cleared of the
// J_0 denominator.

#include "shellgap/config.hpp"

namespace shellgap {

enum class Z0Form {
  Soft,   ///< soft-shell expansion (default)
  Exact,  ///< full thin-shell factor, for sensitivity studies
};

struct MaeOptions {
  int M = 8;
  Z0Form z0 = Z0Form::Soft;
  double xi_over_L = 0.5;
  Truncation truncation = Truncation::Square;
  double scan_step = 1e-3;  ///< bracketing step in k_o L
  double rel_tol = 1e-10;   ///< bisection tolerance, relative in k_o L
};

/// (k_oL)^2 J_0(k xi) (Z_0 sigma_0^Y - 1)
///   = Z_0 {4 - (k_oL)^2 [Y_0(k xi) - 4 S]} - (k_oL)^2 J_0(k xi).
double mae_matching_residual(double kL, const ArrayConfig& cfg, const MaeOptions& opts = {});

/// First root above K0_hat L, searched below the first Bragg point k_o L = pi.
/// Returns the frequency in Hz; throws NoRootFound.
double mae_upper_edge_n0(const ArrayConfig& cfg, const MaeOptions& opts = {});

/// [K0_hat, MAE upper edge] as a BandGap.
BandGap mae_gap_n0(const ArrayConfig& cfg, const MaeOptions& opts = {});

}  // namespace shellgap
