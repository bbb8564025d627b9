#pragma once

// Thin elastic shell in a fluid: resonance wavenumbers and the impedance
// factor Z_n entering the multipole (Rayleigh) formulation.

#include <string>
#include <vector>

namespace shellgap {

/// One thin cylindrical shell. `h` is the HALF-thickness; inputs that speak of
/// "thickness" mean the full wall 2h.
struct ShellSpec {
  double a = 0.0;    ///< mid-surface radius [m]
  double h = 0.0;    ///< half-thickness [m]
  double rho = 0.0;  ///< material density [kg/m^3]
  double E = 0.0;    ///< Young's modulus [Pa]
  double nu = 0.0;   ///< Poisson ratio

  static ShellSpec from_full_thickness(double a, double thickness, double rho, double E, double nu) {
    return ShellSpec{a, 0.5 * thickness, rho, E, nu};
  }

  /// Throws SolverError(InvalidSpec) on a hard violation.
  void validate() const;

  /// Non-fatal diagnostics (h >= a/10 breaks the thin-shell assumption).
  [[nodiscard]] std::vector<std::string> warnings() const;
};

struct FluidSpec {
  double rho = 0.0;  ///< density rho_o [kg/m^3]
  double c = 0.0;    ///< sound speed c_o [m/s]

  void validate() const;
};

/// Dimensionless resonance parameters and the associated wavenumbers.
struct ResonanceParams {
  double c3 = 0.0;      ///< plate dilatational speed [m/s]
  double K_rho = 0.0;   ///< (rho_o/rho)(a/h)
  double K_c = 0.0;     ///< (c3/c_o)^2
  double K0 = 0.0;      ///< in-vacuo breathing resonance [1/m]
  double K0_hat = 0.0;  ///< fluid-loaded breathing resonance [1/m]
  double K1 = 0.0;      ///< leading-order dipole resonance, sqrt(2) K0 [1/m]
};

double dilatational_speed(const ShellSpec& shell);

ResonanceParams resonance_params(const ShellSpec& shell, const FluidSpec& fluid);

/// Full thin-shell impedance factor Z_n (even in n). Throws PoleProximity when
/// the denominator vanishes relative to its terms.
double z_shell_exact(int n, double k_o, const ShellSpec& shell, const FluidSpec& fluid);

/// Sound-hard cylinder: -J_n'(k a) / Y_n'(k a).
double z_rigid(int n, double k_o, double a);

/// Soft-shell small-argument form of Z_0.
double z0_soft_approx(double k_o, const ResonanceParams& params, double a);

/// Soft-shell small-argument form of Z_1. With `with_log_term` false the
/// O(eps^4) logarithmic correction is dropped, leaving the leading order only.
double z1_soft_approx(double k_o, const ResonanceParams& params, const ShellSpec& shell,
                      const FluidSpec& fluid, bool with_log_term = true);

/// eps = k a below this bound keeps the soft-shell expansions meaningful.
inline constexpr double kSoftRegimeLimit = 0.5;

}  // namespace shellgap
