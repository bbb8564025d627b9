#include "shellgap/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "shellgap/errors.hpp"

namespace shellgap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::BesselZero: return "BesselZero";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::DegenerateRadicand: return "DegenerateRadicand";
    case ErrorKind::NoGap: return "NoGap";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
  }
  return "Unknown";
}

namespace special {
namespace {

constexpr double kSeriesLimit = 2.0;
constexpr double kRescale = 1e250;

// Ascending series; every term is bounded by 1 for x <= 2, so no cancellation.
double j_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  if (term == 0.0) return 0.0;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

int miller_start(int nmax, double x) {
  const int base = std::max(nmax, static_cast<int>(x));
  int m = base + 20 + static_cast<int>(std::sqrt(40.0 * (base + 1)));
  return m + (m % 2);
}

// Miller backward recurrence for J_0 .. J_{out.size()-1}, x > 0.
void j_miller(double x, std::span<double> out) {
  const int nmax = static_cast<int>(out.size()) - 1;
  const int start = miller_start(nmax, x);
  std::fill(out.begin(), out.end(), 0.0);
  double jp1 = 0.0;
  double j = 1e-300;
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;
    // j now holds the unnormalised J_{k-1}
    const int order = k - 1;
    if (order <= nmax) out[order] = j;
    if (order % 2 == 0) norm += (order == 0 ? j : 2.0 * j);
    if (std::abs(j) > kRescale) {
      j /= kRescale;
      jp1 /= kRescale;
      norm /= kRescale;
      for (int i = order; i <= nmax; ++i) out[i] /= kRescale;
    }
  }
  for (double& v : out) v /= norm;
}

}  // namespace

void bessel_j_sequence(double x, std::span<double> out) {
  if (out.empty()) return;
  if (x < 0.0 || std::isnan(x)) {
    throw SolverError(ErrorKind::Domain, "bessel_j requires x >= 0, got " + std::to_string(x));
  }
  if (x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  if (x <= kSeriesLimit) {
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = j_series(static_cast<int>(n), x);
    return;
  }
  j_miller(x, out);
}

double bessel_j(int n, double x) {
  const int an = std::abs(n);
  double value;
  if (x <= kSeriesLimit && x >= 0.0) {
    value = j_series(an, x);
  } else {
    std::vector<double> seq(static_cast<std::size_t>(an) + 1);
    bessel_j_sequence(x, seq);
    value = seq[an];
  }
  return (n < 0 && (an % 2) == 1) ? -value : value;
}

void bessel_y_sequence(double x, std::span<double> out) {
  if (out.empty()) return;
  if (!(x > 0.0)) {
    throw SolverError(ErrorKind::Domain, "bessel_y requires x > 0, got " + std::to_string(x));
  }
  // Neumann series for Y_0 and its derivative for Y_1; both need J up to the
  // order where J_2k is negligible.
  const int kmax = miller_start(0, x) / 2 + 2;
  std::vector<double> j(static_cast<std::size_t>(2 * kmax + 2));
  bessel_j_sequence(x, j);

  const double lg = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * j[2 * k] / k;
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  const double y0 = (2.0 / kPi) * (lg * j[0] - 2.0 * s0);
  out[0] = y0;
  if (out.size() == 1) return;
  const double y1 = -(2.0 / kPi) * (j[0] / x - lg * j[1] - s1);
  out[1] = y1;
  for (std::size_t n = 2; n < out.size(); ++n) {
    out[n] = (2.0 * static_cast<double>(n - 1) / x) * out[n - 1] - out[n - 2];
  }
}

double bessel_y(int n, double x) {
  const int an = std::abs(n);
  std::vector<double> seq(static_cast<std::size_t>(an) + 1);
  bessel_y_sequence(x, seq);
  const double value = seq[an];
  return (n < 0 && (an % 2) == 1) ? -value : value;
}

double bessel_j_prime(int n, double x) {
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

double bessel_y_prime(int n, double x) {
  return 0.5 * (bessel_y(n - 1, x) - bessel_y(n + 1, x));
}

}  // namespace special
}  // namespace shellgap
