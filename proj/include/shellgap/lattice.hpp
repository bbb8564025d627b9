#pragma once

// Square-lattice geometry and the quasi-periodic lattice sums sigma_n^Y in
// their reciprocal-lattice representation
//
//   sigma_n^Y = (4 i^n / A) sum_m J_n(beta_m xi) e^{i n tau_m} / (J_n(k xi) (k^2 - beta_m^2))
//               - delta_{n0} Y_0(k xi) / J_0(k xi),
//
// with beta_m = beta + 2 pi m / L. The value is independent of xi in (0, L)
// in exact arithmetic; truncation breaks that only at the truncation error.

#include <complex>
#include <span>
#include <vector>

namespace shellgap {

struct SquareLattice {
  double L = 0.0;  ///< lattice constant [m]

  [[nodiscard]] double area() const noexcept { return L * L; }
  void validate() const;
};

/// Bloch wavevector in polar form: (q1, q2) = beta (cos tau, sin tau).
struct BlochVector {
  double beta = 0.0;  ///< magnitude [1/m]
  double tau = 0.0;   ///< angle [rad]

  static BlochVector from_components(double q1, double q2);
  [[nodiscard]] double q1() const;
  [[nodiscard]] double q2() const;
};

enum class Truncation {
  Square,  ///< sharp cut-off |m1|, |m2| <= M
  Smooth,  ///< C-infinity radial window, flat up to half of 2 pi M / L
};

struct LatticeSumOptions {
  int M = 8;
  Truncation truncation = Truncation::Square;
};

struct LatticeSumValue {
  std::complex<double> value;
  int n = 0;
  int truncation = 0;  ///< M used
};

/// Reciprocal representation of sigma_n^Y at a single order.
/// Throws PoleProximity (k on an empty-lattice line) or BesselZero.
LatticeSumValue sigma_y(int n, double k_o, BlochVector beta, const SquareLattice& lat, double xi,
                        const LatticeSumOptions& opts = {});

/// Same with xi = L/2, falling back to xi = 0.45 L when J_n(k L/2) ~ 0.
LatticeSumValue sigma_y(int n, double k_o, BlochVector beta, const SquareLattice& lat,
                        const LatticeSumOptions& opts = {});

/// Leading term of the pole expansion: (i^n / A) 4 / (k^2 - beta^2).
std::complex<double> sigma_y_single_pole(int n, double k_o, BlochVector beta, const SquareLattice& lat);

/// sum_{m != 0} J_0(2 pi |m| xi/L) / ((kL)^2 - 4 pi^2 |m|^2); the default
/// xi = L/2 gives the J_0(pi |m|) numerators.
double s_sum(double kL, int M, double xi_over_L = 0.5, Truncation truncation = Truncation::Square);

/// sigma_0^Y at beta = 0 assembled from s_sum:
/// [4/(kL)^2 - Y_0(k xi) + 4 S] / J_0(k xi).
double sigma0_at_gamma(double kL, int M, double xi_over_L = 0.5,
                       Truncation truncation = Truncation::Square);

/// Window weight for the smooth truncation; t = |beta_m| / (2 pi M / L).
double smooth_window(double t);

/// All orders -Q..Q at one Bloch vector, for repeated evaluation in k.
/// Everything independent of k is tabulated once at construction.
class LatticeSumTable {
 public:
  LatticeSumTable(BlochVector beta, const SquareLattice& lat, int max_order, double xi,
                  const LatticeSumOptions& opts);

  /// out[q + Q] = sigma_q^Y(k_o), q = -Q..Q. out.size() must be 2Q+1.
  void evaluate(double k_o, std::span<std::complex<double>> out) const;

  [[nodiscard]] int max_order() const noexcept { return max_order_; }
  [[nodiscard]] double xi() const noexcept { return xi_; }
  [[nodiscard]] std::size_t terms() const noexcept { return beta_sq_.size(); }

 private:
  int max_order_;
  double xi_;
  double area_;
  double L_;
  std::vector<double> beta_sq_;  // |beta_m|^2 per retained term
  std::vector<double> cos_part_;  // [q * terms + m] = w J_q(beta_m xi) cos(q tau_m)
  std::vector<double> sin_part_;
};

}  // namespace shellgap
