#include "shellgap/lattice.hpp"

#include <cmath>
#include <string>

#include "shellgap/errors.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kPi;
using cplx = std::complex<double>;

namespace {

// |k^2 - beta_m^2| L^2 below this is treated as sitting on the pole.
constexpr double kPoleWindow = 1e-12;
// |J_n(x)| <= kZeroTol |x J_n'(x)| flags a genuine zero (not small-x decay).
constexpr double kZeroTol = 1e-8;

cplx i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_bessel_zero(int n, double x, double jn) {
  const double deriv = special::bessel_j_prime(n, x);
  if (std::abs(jn) <= kZeroTol * std::abs(x * deriv)) {
    throw SolverError(ErrorKind::BesselZero,
                      "J_" + std::to_string(n) + "(k xi) vanishes at k xi = " + std::to_string(x));
  }
}

void check_pole(double k_sq, double beta_sq, double L) {
  if (std::abs(k_sq - beta_sq) * L * L < kPoleWindow) {
    throw SolverError(ErrorKind::PoleProximity, "k_o on an empty-lattice pole k = |beta_m|");
  }
}

}  // namespace

void SquareLattice::validate() const {
  if (!(L > 0.0)) throw SolverError(ErrorKind::InvalidSpec, "lattice constant must be positive");
}

BlochVector BlochVector::from_components(double q1, double q2) {
  return BlochVector{std::hypot(q1, q2), (q1 == 0.0 && q2 == 0.0) ? 0.0 : std::atan2(q2, q1)};
}

double BlochVector::q1() const { return beta * std::cos(tau); }
double BlochVector::q2() const { return beta * std::sin(tau); }

double smooth_window(double t) {
  constexpr double flat = 0.5;
  if (t <= flat) return 1.0;
  if (t >= 1.0) return 0.0;
  const double s = (t - flat) / (1.0 - flat);
  const auto bump = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  const double up = bump(1.0 - s);
  return up / (up + bump(s));
}

LatticeSumTable::LatticeSumTable(BlochVector beta, const SquareLattice& lat, int max_order, double xi,
                                 const LatticeSumOptions& opts)
    : max_order_(max_order), xi_(xi), area_(lat.area()), L_(lat.L) {
  lat.validate();
  if (max_order < 0) throw SolverError(ErrorKind::Domain, "lattice sum order must be >= 0");
  if (opts.M < 1) throw SolverError(ErrorKind::Domain, "lattice sum truncation M must be >= 1");
  if (!(xi > 0.0 && xi < lat.L)) throw SolverError(ErrorKind::Domain, "xi must lie in (0, L)");

  const double g = 2.0 * kPi / lat.L;
  const double radius = g * opts.M;
  const int span = opts.truncation == Truncation::Smooth ? opts.M + 2 : opts.M;
  const double q1 = beta.q1();
  const double q2 = beta.q2();

  std::vector<double> weight;
  std::vector<double> tau;
  std::vector<double> arg;
  for (int m1 = -span; m1 <= span; ++m1) {
    for (int m2 = -span; m2 <= span; ++m2) {
      const double b1 = q1 + g * m1;
      const double b2 = q2 + g * m2;
      const double bm = std::hypot(b1, b2);
      double w = 1.0;
      if (opts.truncation == Truncation::Smooth) {
        w = smooth_window(bm / radius);
        if (w == 0.0) continue;
      }
      weight.push_back(w);
      beta_sq_.push_back(bm * bm);
      tau.push_back(bm == 0.0 ? 0.0 : std::atan2(b2, b1));
      arg.push_back(bm * xi);
    }
  }

  const std::size_t terms = beta_sq_.size();
  const std::size_t orders = static_cast<std::size_t>(max_order) + 1;
  cos_part_.resize(orders * terms);
  sin_part_.resize(orders * terms);
  std::vector<double> jseq(orders);
  for (std::size_t m = 0; m < terms; ++m) {
    special::bessel_j_sequence(arg[m], jseq);
    const cplx step = std::polar(1.0, tau[m]);
    cplx phase{1.0, 0.0};
    for (std::size_t q = 0; q < orders; ++q) {
      const double a = weight[m] * jseq[q];
      cos_part_[q * terms + m] = a * phase.real();
      sin_part_[q * terms + m] = a * phase.imag();
      phase *= step;
    }
  }
}

void LatticeSumTable::evaluate(double k_o, std::span<cplx> out) const {
  const int Q = max_order_;
  if (out.size() != static_cast<std::size_t>(2 * Q + 1)) {
    throw SolverError(ErrorKind::Domain, "LatticeSumTable::evaluate: output span has wrong size");
  }
  const double k_sq = k_o * k_o;
  const std::size_t terms = beta_sq_.size();
  std::vector<double> inv(terms);
  for (std::size_t m = 0; m < terms; ++m) {
    check_pole(k_sq, beta_sq_[m], L_);
    inv[m] = 1.0 / (k_sq - beta_sq_[m]);
  }

  const double x = k_o * xi_;
  std::vector<double> jk(static_cast<std::size_t>(Q) + 1);
  special::bessel_j_sequence(x, jk);

  for (int q = 0; q <= Q; ++q) {
    check_bessel_zero(q, x, jk[q]);
    const double* c = cos_part_.data() + static_cast<std::size_t>(q) * terms;
    const double* s = sin_part_.data() + static_cast<std::size_t>(q) * terms;
    double sc = 0.0;
    double ss = 0.0;
    for (std::size_t m = 0; m < terms; ++m) {
      sc += c[m] * inv[m];
      ss += s[m] * inv[m];
    }
    const double scale = 4.0 / (area_ * jk[q]);
    out[Q + q] = i_pow(q) * scale * cplx(sc, ss);
    if (q > 0) out[Q - q] = i_pow(-q) * scale * cplx(sc, -ss);
  }
  out[Q] -= special::bessel_y(0, x) / jk[0];
}

LatticeSumValue sigma_y(int n, double k_o, BlochVector beta, const SquareLattice& lat, double xi,
                        const LatticeSumOptions& opts) {
  const int order = std::abs(n);
  const LatticeSumTable table(beta, lat, order, xi, opts);
  std::vector<cplx> all(static_cast<std::size_t>(2 * order + 1));
  table.evaluate(k_o, all);
  return LatticeSumValue{all[static_cast<std::size_t>(n + order)], n, opts.M};
}

LatticeSumValue sigma_y(int n, double k_o, BlochVector beta, const SquareLattice& lat,
                        const LatticeSumOptions& opts) {
  try {
    return sigma_y(n, k_o, beta, lat, 0.5 * lat.L, opts);
  } catch (const SolverError& e) {
    if (e.kind() != ErrorKind::BesselZero) throw;
  }
  return sigma_y(n, k_o, beta, lat, 0.45 * lat.L, opts);
}

cplx sigma_y_single_pole(int n, double k_o, BlochVector beta, const SquareLattice& lat) {
  const double k_sq = k_o * k_o;
  const double b_sq = beta.beta * beta.beta;
  check_pole(k_sq, b_sq, lat.L);
  return i_pow(n) / lat.area() * (4.0 / (k_sq - b_sq));
}

double s_sum(double kL, int M, double xi_over_L, Truncation truncation) {
  if (!(kL > 0.0)) throw SolverError(ErrorKind::Domain, "s_sum requires kL > 0");
  const double kl_sq = kL * kL;
  const double radius = static_cast<double>(M);
  const int span = truncation == Truncation::Smooth ? M + 1 : M;
  double sum = 0.0;
  for (int m1 = -span; m1 <= span; ++m1) {
    for (int m2 = -span; m2 <= span; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const double rho_sq = static_cast<double>(m1) * m1 + static_cast<double>(m2) * m2;
      const double rho = std::sqrt(rho_sq);
      double w = 1.0;
      if (truncation == Truncation::Smooth) {
        w = smooth_window(rho / radius);
        if (w == 0.0) continue;
      }
      const double den = kl_sq - 4.0 * kPi * kPi * rho_sq;
      if (std::abs(den) < 1e-9) {
        throw SolverError(ErrorKind::PoleProximity, "s_sum: kL on an empty-lattice pole");
      }
      sum += w * special::bessel_j(0, 2.0 * kPi * xi_over_L * rho) / den;
    }
  }
  return sum;
}

double sigma0_at_gamma(double kL, int M, double xi_over_L, Truncation truncation) {
  const double x = kL * xi_over_L;
  const double j0 = special::bessel_j(0, x);
  check_bessel_zero(0, x, j0);
  const double s = s_sum(kL, M, xi_over_L, truncation);
  return (4.0 / (kL * kL) - special::bessel_y(0, x) + 4.0 * s) / j0;
}

}  // namespace shellgap
