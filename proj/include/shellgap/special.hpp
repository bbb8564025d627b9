#pragma once

// Cylindrical Bessel functions of integer order and real argument.
//
// J_n uses the ascending series for small arguments and Miller's backward
// recurrence (normalised by J_0 + 2 sum J_2k = 1) elsewhere. Y_0 comes from the
// Neumann series over the same J_2k sequence, Y_1 from its term-wise
// derivative, and Y_n (n >= 2) from the stable forward recurrence.
// Negative orders use J_{-n} = (-1)^n J_n and Y_{-n} = (-1)^n Y_n.

#include <span>

namespace shellgap::special {

inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// J_n(x). Throws SolverError(Domain) for x < 0.
double bessel_j(int n, double x);

/// Y_n(x). Throws SolverError(Domain) for x <= 0.
double bessel_y(int n, double x);

/// dJ_n/dx via (J_{n-1} - J_{n+1}) / 2.
double bessel_j_prime(int n, double x);

/// dY_n/dx via (Y_{n-1} - Y_{n+1}) / 2.
double bessel_y_prime(int n, double x);

/// Fills out[k] = J_k(x) for k = 0 .. out.size()-1 from a single recurrence
/// pass. Used by the lattice sums, which need every order at each argument.
void bessel_j_sequence(double x, std::span<double> out);

/// Fills out[k] = Y_k(x) for k = 0 .. out.size()-1.
void bessel_y_sequence(double x, std::span<double> out);

}  // namespace shellgap::special
