#include "shellgap/shell.hpp"

#include <cmath>
#include <cstdlib>

#include "shellgap/errors.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kEulerGamma;
using special::kPi;

namespace {

constexpr double kPoleTol = 1e-14;

void require(bool ok, const std::string& what) {
  if (!ok) throw SolverError(ErrorKind::InvalidSpec, what);
}

void check_pole(double denominator, double scale, const char* what) {
  if (!(std::abs(denominator) >= kPoleTol * std::abs(scale))) {
    throw SolverError(ErrorKind::PoleProximity, what);
  }
}

}  // namespace

void ShellSpec::validate() const {
  require(a > 0.0, "shell radius must be positive");
  require(h > 0.0 && h < a, "shell half-thickness must lie in (0, a)");
  require(rho > 0.0, "shell density must be positive");
  require(E > 0.0, "Young's modulus must be positive");
  require(nu > -1.0 && nu < 0.5, "Poisson ratio must lie in (-1, 0.5)");
}

std::vector<std::string> ShellSpec::warnings() const {
  std::vector<std::string> out;
  if (h >= a / 10.0) out.emplace_back("half-thickness h >= a/10: thin-shell theory is questionable");
  return out;
}

void FluidSpec::validate() const {
  require(rho > 0.0, "fluid density must be positive");
  require(c > 0.0, "fluid sound speed must be positive");
}

double dilatational_speed(const ShellSpec& shell) {
  return std::sqrt(shell.E / (shell.rho * (1.0 - shell.nu * shell.nu)));
}

ResonanceParams resonance_params(const ShellSpec& shell, const FluidSpec& fluid) {
  ResonanceParams p;
  p.c3 = dilatational_speed(shell);
  p.K_rho = (fluid.rho / shell.rho) * (shell.a / shell.h);
  const double ratio = p.c3 / fluid.c;
  p.K_c = ratio * ratio;
  p.K0 = std::sqrt(p.K_c) / shell.a;
  p.K0_hat = std::sqrt(p.K_rho + p.K_c) / shell.a;
  p.K1 = std::sqrt(2.0) * p.K0;
  return p;
}

double z_shell_exact(int n, double k_o, const ShellSpec& shell, const FluidSpec& fluid) {
  if (!(k_o > 0.0)) throw SolverError(ErrorKind::Domain, "z_shell_exact requires k_o > 0");
  n = std::abs(n);
  const double ka = k_o * shell.a;
  const double k3a = ka * fluid.c / dilatational_speed(shell);
  const double nn = static_cast<double>(n) * n;
  const double elastic = 1.0 - k3a * k3a + nn;
  // Fluid mass loading; 1/k_o^2 keeps the term dimensionless.
  const double mass = fluid.rho / (shell.rho * kPi * shell.a * shell.h * k_o * k_o);
  const double jp = special::bessel_j_prime(n, ka);
  const double yp = special::bessel_y_prime(n, ka);
  const double t1 = jp * yp * elastic;
  const double t2 = (nn - k3a * k3a) * mass;
  const double den = t1 + t2;
  check_pole(den, std::abs(t1) + std::abs(t2), "z_shell_exact denominator vanishes");
  return -jp * jp * elastic / den;
}

double z_rigid(int n, double k_o, double a) {
  const double x = k_o * a;
  const double jp = special::bessel_j_prime(n, x);
  const double yp = special::bessel_y_prime(n, x);
  const double scale = std::abs(special::bessel_y(n - 1, x)) + std::abs(special::bessel_y(n + 1, x));
  check_pole(yp, scale, "z_rigid: Y_n' vanishes");
  return -jp / yp;
}

double z0_soft_approx(double k_o, const ResonanceParams& params, double a) {
  const double eps = k_o * a;
  const double k2 = k_o * k_o;
  const double den = params.K0_hat * params.K0_hat - k2;
  check_pole(den, params.K0_hat * params.K0_hat, "z0_soft_approx at K0_hat");
  return eps * eps * kPi / 4.0 * (params.K0 * params.K0 - k2) / den;
}

double z1_soft_approx(double k_o, const ResonanceParams& params, const ShellSpec& shell,
                      const FluidSpec& fluid, bool with_log_term) {
  const double eps = k_o * shell.a;
  const double k2 = k_o * k_o;
  const double K0sq = params.K0 * params.K0;
  const double den = 2.0 * K0sq - k2;
  check_pole(den, 2.0 * K0sq, "z1_soft_approx at k_o^2 = 2 K0^2");
  const double loading = (fluid.rho * shell.a) / (shell.rho * shell.h);
  double bracket = -1.0 + loading * (K0sq - k2) / den;
  if (with_log_term) {
    bracket += eps * eps * (0.5 * std::log(eps / 2.0) + (5.0 + 4.0 * kEulerGamma) / 8.0);
  }
  return eps * eps * kPi / 4.0 * bracket;
}

}  // namespace shellgap
