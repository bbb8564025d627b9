#include "shellgap/cpa.hpp"

#include <algorithm>
#include <cmath>

#include "shellgap/errors.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kPi;

namespace {

constexpr double kPoleTol = 1e-12;

}  // namespace

double composite_radius(const ArrayConfig& cfg) {
  const double F = cfg.filling_fraction();
  if (!(F > 0.0)) throw SolverError(ErrorKind::Domain, "composite_radius requires F > 0");
  return cfg.shell.a / std::sqrt(F);
}

double z_scaled_from(int n, double z_n, double k_o, double radius) {
  if (n != 0 && n != 1) throw SolverError(ErrorKind::Domain, "z_scaled: only n = 0, 1");
  const double half_eta = 0.5 * k_o * radius;
  // 0! 1! = 1 for n = 1.
  return z_n / (half_eta * half_eta * kPi);
}

double z_scaled(int n, double k_o, const ArrayConfig& cfg) {
  const ResonanceParams p = cfg.params();
  const double z = n == 0 ? z0_soft_approx(k_o, p, cfg.shell.a)
                          : z1_soft_approx(k_o, p, cfg.shell, cfg.fluid, /*with_log_term=*/false);
  return z_scaled_from(n, z, k_o, composite_radius(cfg));
}

EffectiveMedium effective_params_generic(double Z00, double Z10, double k_o) {
  if (std::abs(1.0 - Z00) < kPoleTol) throw SolverError(ErrorKind::PoleProximity, "B_eff pole at Z00 = 1");
  if (std::abs(1.0 + Z10) < kPoleTol) throw SolverError(ErrorKind::PoleProximity, "rho_eff pole at Z10 = -1");
  // rho_eff = 0 here, so rho_o / rho_eff blows up.
  if (std::abs(1.0 - Z10) < kPoleTol) throw SolverError(ErrorKind::PoleProximity, "1/rho_eff pole at Z10 = 1");
  EffectiveMedium m;
  m.B_eff_ratio = 1.0 / (1.0 - Z00);
  m.rho_eff_ratio = (1.0 - Z10) / (1.0 + Z10);
  m.k_eff_sq = m.rho_eff_ratio / m.B_eff_ratio * k_o * k_o;
  return m;
}

EffectiveMedium effective_params_shell(double k_o, const ArrayConfig& cfg) {
  const ResonanceParams p = cfg.params();
  const double F = cfg.filling_fraction();
  const double Kr = p.K_rho;
  const double Kc = p.K_c;
  const double x = (k_o * cfg.shell.a) * (k_o * cfg.shell.a);

  const double b_num = Kc + Kr - x;
  const double b_den = Kc * (1.0 - F) + Kr - x * (1.0 - F);
  const double r_num = Kc * (2.0 + F * (2.0 - Kr)) - x * (1.0 + F * (1.0 - Kr));
  const double r_den = Kc * (2.0 - F * (2.0 - Kr)) - x * (1.0 - F * (1.0 - Kr));
  if (std::abs(b_den) < kPoleTol * (Kc + Kr + x)) {
    throw SolverError(ErrorKind::PoleProximity, "effective bulk modulus pole");
  }
  if (std::abs(r_den) < kPoleTol * (2.0 * Kc + x)) {
    throw SolverError(ErrorKind::PoleProximity, "effective density pole");
  }
  if (std::abs(b_num) < kPoleTol * (Kc + Kr + x)) {
    throw SolverError(ErrorKind::PoleProximity, "effective bulk modulus vanishes (k_eff pole)");
  }
  EffectiveMedium m;
  m.B_eff_ratio = b_num / b_den;
  m.rho_eff_ratio = r_num / r_den;
  m.k_eff_sq = m.rho_eff_ratio / m.B_eff_ratio * k_o * k_o;
  return m;
}

BandGap cpa_gap_n0(const ArrayConfig& cfg) {
  cfg.validate();
  const ResonanceParams p = cfg.params();
  const double F = cfg.filling_fraction();
  if (!(F < 1.0)) throw SolverError(ErrorKind::Domain, "cpa_gap_n0 requires F < 1");
  const double base = p.c3 / (2.0 * kPi * cfg.shell.a);
  const double ratio = p.K_rho / p.K_c;
  return BandGap{0, base * std::sqrt(1.0 + ratio), base * std::sqrt(1.0 + ratio * (1.0 + F / (1.0 - F))),
                 MethodId::CPA};
}

BandGap cpa_gap_n1(const ArrayConfig& cfg) {
  cfg.validate();
  const ResonanceParams p = cfg.params();
  const double F = cfg.filling_fraction();
  const double shift = F * (1.0 - p.K_rho);
  if (!(1.0 - shift > 0.0)) {
    throw SolverError(ErrorKind::DegenerateRadicand, "cpa_gap_n1 requires 1 - F (1 - K_rho) > 0");
  }
  const double lower_sq = 1.0 - F * p.K_rho / (2.0 * (1.0 - shift));
  const double upper_sq = 1.0 + F * p.K_rho / (2.0 * (1.0 + shift));
  if (!(lower_sq > 0.0) || !(upper_sq > 0.0)) {
    throw SolverError(ErrorKind::DegenerateRadicand, "cpa_gap_n1: negative radicand");
  }
  const double base = std::sqrt(2.0) * p.c3 / (2.0 * kPi * cfg.shell.a);
  return BandGap{1, base * std::sqrt(lower_sq), base * std::sqrt(upper_sq), MethodId::CPA};
}

double cpa_interface_residual(int n, double k_o, const ArrayConfig& cfg) {
  const EffectiveMedium m = effective_params_shell(k_o, cfg);
  if (!(m.k_eff_sq > 0.0)) {
    throw SolverError(ErrorKind::Domain, "cpa_interface_residual: k_eff is imaginary (inside a gap)");
  }
  const double R = composite_radius(cfg);
  const double k_eff = std::sqrt(m.k_eff_sq);
  const double z = z_shell_exact(n, k_o, cfg.shell, cfg.fluid);
  const double x = k_o * R;
  const double lhs = (special::bessel_j_prime(n, x) + z * special::bessel_y_prime(n, x)) /
                     (special::bessel_j(n, x) + z * special::bessel_y(n, x));
  const double xe = k_eff * R;
  const double rhs = (k_eff / k_o) / m.rho_eff_ratio * special::bessel_j_prime(n, xe) / special::bessel_j(n, xe);
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

std::vector<DispersionCurve> cpa_curves(const ArrayConfig& cfg, double f_lo, double f_hi, int grid) {
  if (grid < 2 || !(f_hi > f_lo) || !(f_lo > 0.0)) {
    throw SolverError(ErrorKind::Domain, "cpa_curves: need grid >= 2 and 0 < f_lo < f_hi");
  }
  const double L = cfg.lattice.L;
  std::vector<DispersionCurve> curves;
  DispersionCurve current{MethodId::CPA, 0, {}};
  const auto flush = [&] {
    if (!current.points.empty()) {
      std::sort(current.points.begin(), current.points.end(),
                [](const CurvePoint& l, const CurvePoint& r) { return l.betaL < r.betaL; });
      current.branch_index = static_cast<int>(curves.size());
      curves.push_back(std::move(current));
      current = DispersionCurve{MethodId::CPA, 0, {}};
    }
  };
  for (int i = 0; i < grid; ++i) {
    const double f = f_lo + (f_hi - f_lo) * i / (grid - 1);
    const double k = cfg.to_wavenumber(f);
    double k_eff_sq;
    try {
      k_eff_sq = effective_params_shell(k, cfg).k_eff_sq;
    } catch (const SolverError&) {
      flush();
      continue;
    }
    const double betaL = k_eff_sq >= 0.0 ? std::sqrt(k_eff_sq) * L : -1.0;
    if (betaL < 0.0 || betaL > kPi) {
      flush();
      continue;
    }
    current.points.push_back({betaL, k * L});
  }
  flush();
  return curves;
}

}  // namespace shellgap
