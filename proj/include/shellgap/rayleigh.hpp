#pragma once

// Truncated Rayleigh Identity: the multipole coefficients of a Bloch wave
// satisfy (I - S Z) B = 0 with S(n,p) = (-1)^{p-n} sigma^Y_{p-n}(k, beta) and
// Z = diag(Z_p), orders -N..N. Bloch eigenfrequencies are the real k where
// the matrix is singular; the smallest singular value is the root surrogate.

#include <Eigen/Dense>
#include <vector>

#include "shellgap/config.hpp"
#include "shellgap/lattice.hpp"

namespace shellgap {

/// Which impedance factor fills diag(Z).
enum class ZModel {
  Exact,  ///< full thin-shell factor for every order
  Soft,   ///< soft-shell Z_0, Z_1 (log term kept); exact for |p| >= 2
  Rigid,  ///< sound-hard cylinder
  None,   ///< vacuum scatterers, Z = 0
};

struct RayleighOptions {
  int N = 5;
  int grid = 2000;  ///< frequency samples across the scan window
  LatticeSumOptions sums{32, Truncation::Smooth};
  double xi_over_L = 0.5;
  ZModel z_model = ZModel::Exact;
  int points_per_segment = 64;
  double refine_rel_tol = 1e-10;  ///< golden-section stop, relative in k_o
  double scan_threshold = 0.2;    ///< grid minima above this are not candidates
  double accept_tol = 1e-6;       ///< refined indicator must fall below this
  unsigned threads = 0;           ///< 0 = SHELLGAP_THREADS or hardware
  /// Throw BranchAmbiguity on two roots inside one grid cell. Off by default:
  /// the dipole pair is degenerate at Gamma, so every grid meets such pairs
  /// near it, and roots found from separate minima are resolved anyway.
  bool strict_cells = false;
};

struct RayleighSystem {
  int N = 0;
  Eigen::MatrixXcd matrix;
  double k_o = 0.0;
  BlochVector beta;
};

/// Z_p under the chosen model.
double z_factor(ZModel model, int p, double k_o, const ArrayConfig& cfg);

/// Matrix at one (k, beta). Propagates PoleProximity / BesselZero.
RayleighSystem build_system(double k_o, BlochVector beta, const ArrayConfig& cfg, int N,
                            const RayleighOptions& opts = {});

/// Smallest singular value of the system after a fixed diagonal rescaling
/// (order balancing, then column p divided by max(1, |Z_p|)); the zeros of
/// det are unchanged. Vacuum scatterers give exactly 1.
double dispersion_indicator(double k_o, BlochVector beta, const ArrayConfig& cfg, int N,
                            const RayleighOptions& opts = {});

/// Everything fixed at one Bloch vector; cheap repeated evaluation in k.
class RayleighOperator {
 public:
  RayleighOperator(BlochVector beta, const ArrayConfig& cfg, const RayleighOptions& opts);

  [[nodiscard]] Eigen::MatrixXcd matrix(double k_o) const;
  [[nodiscard]] double indicator(double k_o) const;

  /// Refined roots in k_o L on a uniform grid over [kL_lo, kL_hi], ascending.
  /// With strict_cells, throws BranchAmbiguity when two distinct roots share
  /// one grid cell.
  [[nodiscard]] std::vector<double> roots(double kL_lo, double kL_hi, int grid) const;

 private:
  Eigen::MatrixXcd scaled(double k_o) const;
  [[nodiscard]] double coarse_indicator(double k_o) const;

  BlochVector beta_;
  ArrayConfig cfg_;
  RayleighOptions opts_;
  LatticeSumTable table_;
};

struct PathPoint {
  BlochVector beta;
  double coordinate = 0.0;  ///< arc length along the path, in units of 1/L
  int segment = 0;          ///< 0: Gamma-X, 1: X-M
};

/// (0,0) - (pi,0) - (pi,pi) in beta L, `points_per_segment` samples per leg
/// with shared corners listed once. `gamma_x_only` stops at X.
std::vector<PathPoint> brillouin_path(const SquareLattice& lattice, int points_per_segment,
                                      bool gamma_x_only = false);

/// Default frequency window [0.05, 1.0] x first Bragg frequency.
std::pair<double, double> default_scan_window(const ArrayConfig& cfg);

/// Roots along the path, grouped into branches by nearest continuation.
std::vector<DispersionCurve> trace_bands(const std::vector<PathPoint>& path, double f_lo, double f_hi,
                                         const ArrayConfig& cfg, const RayleighOptions& opts = {});

/// Resonance gap from curves: the frequency hole left by the union of branch
/// ranges on the Gamma-X leg (betaL <= pi), picked by overlap with (or
/// distance to) the Foldy estimate of mode `n_mode`. Throws NoGap.
BandGap extract_gap(const std::vector<DispersionCurve>& curves, int n_mode, const ArrayConfig& cfg);

}  // namespace shellgap
