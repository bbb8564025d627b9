#include "shellgap/mae.hpp"

#include <algorithm>
#include <cmath>

#include "shellgap/errors.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kPi;

namespace {

double z0_value(double k_o, const ArrayConfig& cfg, Z0Form form) {
  if (form == Z0Form::Exact) return z_shell_exact(0, k_o, cfg.shell, cfg.fluid);
  return z0_soft_approx(k_o, cfg.params(), cfg.shell.a);
}

}  // namespace

double mae_matching_residual(double kL, const ArrayConfig& cfg, const MaeOptions& opts) {
  if (!(kL > 0.0)) throw SolverError(ErrorKind::Domain, "mae_matching_residual requires kL > 0");
  const double k_o = kL / cfg.lattice.L;
  const double x = kL * opts.xi_over_L;
  const double z0 = z0_value(k_o, cfg, opts.z0);
  const double s = s_sum(kL, opts.M, opts.xi_over_L, opts.truncation);
  const double kl_sq = kL * kL;
  return z0 * (4.0 - kl_sq * (special::bessel_y(0, x) - 4.0 * s)) - kl_sq * special::bessel_j(0, x);
}

double mae_upper_edge_n0(const ArrayConfig& cfg, const MaeOptions& opts) {
  cfg.validate();
  if (opts.M < 1 || !(opts.scan_step > 0.0)) throw SolverError(ErrorKind::Domain, "mae: bad options");
  const double L = cfg.lattice.L;
  const double start = cfg.params().K0_hat * L;
  const double stop = kPi;
  if (!(start < stop)) {
    throw SolverError(ErrorKind::NoRootFound, "K0_hat lies above the first Bragg point");
  }
  const auto residual = [&](double kl) { return mae_matching_residual(kl, cfg, opts); };

  // Step off the Z_0 pole at K0_hat before bracketing.
  double lo = start * (1.0 + 1e-9);
  double f_lo = residual(lo);
  while (lo < stop) {
    const double hi = std::min(lo + opts.scan_step, stop);
    const double f_hi = residual(hi);
    if (f_lo == 0.0) return cfg.to_hz(lo / L);
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      double a = lo;
      double b = hi;
      double fa = f_lo;
      while (b - a > opts.rel_tol * b) {
        const double mid = 0.5 * (a + b);
        const double fm = residual(mid);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      // A sign change through a pole of Z_0 leaves a large residual behind.
      if (std::abs(residual(root)) <= std::max(std::abs(f_lo), std::abs(f_hi))) {
        return cfg.to_hz(root / L);
      }
    }
    lo = hi;
    f_lo = f_hi;
    if (hi >= stop) break;
  }
  throw SolverError(ErrorKind::NoRootFound, "no sign change of the matching residual in (K0_hat L, pi)");
}

BandGap mae_gap_n0(const ArrayConfig& cfg, const MaeOptions& opts) {
  const double upper = mae_upper_edge_n0(cfg, opts);
  return BandGap{0, cfg.to_hz(cfg.params().K0_hat), upper, MethodId::MAE};
}

}  // namespace shellgap
