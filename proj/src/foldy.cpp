#include "shellgap/foldy.hpp"

#include <algorithm>
#include <cmath>

#include "shellgap/errors.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kPi;

namespace {

struct Dimensionless {
  double Kr, Kc, F, a, c3;
};

Dimensionless dimensionless(const ArrayConfig& cfg) {
  cfg.validate();
  const ResonanceParams p = cfg.params();
  return {p.K_rho, p.K_c, cfg.filling_fraction(), cfg.shell.a, p.c3};
}

// Frequency of the dimensionless wavenumber squared x = (k a)^2.
double hz_of_x(double x, const ArrayConfig& cfg) {
  return cfg.to_hz(std::sqrt(x) / cfg.shell.a);
}

void check_denominator(double den, double scale, const char* what) {
  if (std::abs(den) < 1e-14 * scale) throw SolverError(ErrorKind::DegenerateDenominator, what);
}

}  // namespace

FoldyDispersion foldy_beta_squared(double k_o, const ArrayConfig& cfg) {
  const ResonanceParams p = cfg.params();
  const double z0 = z0_soft_approx(k_o, p, cfg.shell.a);
  const double z1 = z1_soft_approx(k_o, p, cfg.shell, cfg.fluid);
  FoldyDispersion out;
  out.far_field = z0 + 2.0 * z1;
  const double area = cfg.lattice.area();
  out.beta_sq = k_o * k_o - 4.0 / area * out.far_field;
  out.consistent = 4.0 / area * std::abs(out.far_field) * cfg.lattice.L * cfg.lattice.L < 1.0;
  return out;
}

BandGap foldy_gap_n0(const ArrayConfig& cfg) {
  const auto d = dimensionless(cfg);
  const double base = d.c3 / (2.0 * kPi * d.a);
  const double ratio = d.Kr / d.Kc;
  return BandGap{0, base * std::sqrt(1.0 + ratio), base * std::sqrt(1.0 + ratio * (1.0 + d.F)),
                 MethodId::Foldy};
}

BandGap foldy_gap_n1(const ArrayConfig& cfg) {
  const auto d = dimensionless(cfg);
  const double base = std::sqrt(2.0) * d.c3 / (2.0 * kPi * d.a);
  return BandGap{1, base, base * std::sqrt(1.0 + d.F * d.Kr), MethodId::Foldy};
}

BandGap foldy_gap_n0_full(const ArrayConfig& cfg) {
  const auto d = dimensionless(cfg);
  const double den = d.Kr - d.Kc - d.F * (d.Kc + 2.0 * d.Kr * d.Kr);
  check_denominator(den, std::abs(d.Kr) + std::abs(d.Kc) + d.F * (d.Kc + 2.0 * d.Kr * d.Kr),
                    "foldy_gap_n0_full: K_rho - K_c - F (K_c + 2 K_rho^2) = 0");
  const double x_up = d.Kr + d.Kc + d.F * d.Kr * (d.Kr - d.Kc) / den;
  if (!(x_up > 0.0)) throw SolverError(ErrorKind::DegenerateRadicand, "foldy_gap_n0_full: negative radicand");
  return BandGap{0, hz_of_x(d.Kr + d.Kc, cfg), hz_of_x(x_up, cfg), MethodId::Foldy};
}

BandGap foldy_gap_n1_full(const ArrayConfig& cfg) {
  const auto d = dimensionless(cfg);
  const double diff = d.Kc - d.Kr;
  const double den = diff + d.F * (2.0 * diff * (1.0 - d.Kr) - d.Kc * (1.0 + 2.0 * d.Kr));
  check_denominator(den, std::abs(diff) + d.F * (2.0 * std::abs(diff * (1.0 - d.Kr)) + d.Kc * (1.0 + 2.0 * d.Kr)),
                    "foldy_gap_n1_full: degenerate denominator");
  const double x_up = 2.0 * d.Kc + 2.0 * d.F * d.Kr * d.Kc * diff / den;
  if (!(x_up > 0.0)) throw SolverError(ErrorKind::DegenerateRadicand, "foldy_gap_n1_full: negative radicand");
  return BandGap{1, hz_of_x(2.0 * d.Kc, cfg), hz_of_x(x_up, cfg), MethodId::Foldy};
}

double foldy_reduced_n0(double x, const ArrayConfig& cfg) {
  const auto d = dimensionless(cfg);
  return d.F * d.Kr * (d.Kc - d.Kr) +
         (x - (d.Kc + d.Kr)) * ((1.0 + d.F) * (d.Kr - d.Kc) - d.F * d.Kr * (1.0 + 2.0 * d.Kr));
}

double foldy_reduced_n1(double x, const ArrayConfig& cfg) {
  const auto d = dimensionless(cfg);
  return 2.0 * d.F * d.Kr * d.Kc * (d.Kr - d.Kc) +
         (x - 2.0 * d.Kc) *
             ((1.0 + 2.0 * d.F - 2.0 * d.F * d.Kr) * (d.Kc - d.Kr) - d.F * d.Kc * (1.0 + 2.0 * d.Kr));
}

std::vector<DispersionCurve> foldy_curves(const ArrayConfig& cfg, double f_lo, double f_hi, int grid) {
  if (grid < 2 || !(f_hi > f_lo) || !(f_lo > 0.0)) {
    throw SolverError(ErrorKind::Domain, "foldy_curves: need grid >= 2 and 0 < f_lo < f_hi");
  }
  const double L = cfg.lattice.L;
  std::vector<DispersionCurve> curves;
  DispersionCurve current{MethodId::Foldy, 0, {}};
  const auto flush = [&] {
    if (!current.points.empty()) {
      std::sort(current.points.begin(), current.points.end(),
                [](const CurvePoint& l, const CurvePoint& r) { return l.betaL < r.betaL; });
      current.branch_index = static_cast<int>(curves.size());
      curves.push_back(std::move(current));
      current = DispersionCurve{MethodId::Foldy, 0, {}};
    }
  };
  for (int i = 0; i < grid; ++i) {
    const double f = f_lo + (f_hi - f_lo) * i / (grid - 1);
    const double k = cfg.to_wavenumber(f);
    double beta_sq;
    try {
      beta_sq = foldy_beta_squared(k, cfg).beta_sq;
    } catch (const SolverError&) {
      flush();
      continue;
    }
    const double betaL = beta_sq >= 0.0 ? std::sqrt(beta_sq) * L : -1.0;
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
