#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "shellgap/errors.hpp"
#include "shellgap/lattice.hpp"
#include "shellgap/special.hpp"

using namespace shellgap;
using cd = std::complex<double>;

namespace {

constexpr double kPi = special::kPi;
const SquareLattice kLat{0.08};

// Brute-force square-window reciprocal sum on top of libstdc++'s Bessel
// functions, sharing no code with the library.
cd sigma_oracle(int n, double k, double q1, double q2, double L, double xi, int M) {
  const auto jn = [](int order, double x) {
    const double v = std::cyl_bessel_j(std::abs(order), x);
    return (order < 0 && (-order) % 2) ? -v : v;
  };
  cd sum = 0.0;
  for (int m1 = -M; m1 <= M; ++m1) {
    for (int m2 = -M; m2 <= M; ++m2) {
      const double b1 = q1 + 2 * kPi * m1 / L;
      const double b2 = q2 + 2 * kPi * m2 / L;
      const double b = std::hypot(b1, b2);
      const double tau = std::atan2(b2, b1);
      sum += jn(n, b * xi) / jn(n, k * xi) * std::polar(1.0, n * tau) / (k * k - b * b);
    }
  }
  cd value = 4.0 * std::pow(cd(0.0, 1.0), n) / (L * L) * sum;
  if (n == 0) value -= std::cyl_neumann(0.0, k * xi) / std::cyl_bessel_j(0.0, k * xi);
  return value;
}

BlochVector along_x(double betaL) { return BlochVector{betaL / kLat.L, 0.0}; }

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("reciprocal sum matches a brute-force oracle") {
  const LatticeSumOptions sq{8, Truncation::Square};
  for (int n : {-3, -1, 0, 1, 2, 4}) {
    for (double kL : {0.4, 1.7, 2.9}) {
      for (auto [b1, b2] : {std::pair{0.3, 0.0}, std::pair{2.0, 1.1}, std::pair{3.1, 3.1}}) {
        const double k = kL / kLat.L;
        const auto beta = BlochVector::from_components(b1 / kLat.L, b2 / kLat.L);
        const cd got = sigma_y(n, k, beta, kLat, 0.5 * kLat.L, sq).value;
        const cd want = sigma_oracle(n, k, b1 / kLat.L, b2 / kLat.L, kLat.L, 0.5 * kLat.L, 8);
        CAPTURE(n);
        CAPTURE(kL);
        CHECK(rel(got, want) < 1e-10);
      }
    }
  }
}

TEST_CASE("the table agrees with single-order evaluation") {
  const LatticeSumOptions opts{12, Truncation::Smooth};
  const auto beta = BlochVector::from_components(1.3 / kLat.L, 0.4 / kLat.L);
  const LatticeSumTable table(beta, kLat, 6, 0.5 * kLat.L, opts);
  std::vector<cd> out(13);
  const double k = 2.2 / kLat.L;
  table.evaluate(k, out);
  for (int q = -6; q <= 6; ++q) {
    CAPTURE(q);
    CHECK(rel(out[q + 6], sigma_y(q, k, beta, kLat, 0.5 * kLat.L, opts).value) < 1e-12);
  }
  std::vector<cd> wrong(5);
  CHECK_THROWS_AS(table.evaluate(k, wrong), SolverError);
}

TEST_CASE("single-pole term") {
  const SquareLattice unit{1.0};
  CHECK(std::abs(sigma_y_single_pole(0, 2.0, BlochVector{0.0, 0.0}, unit) - cd(1.0, 0.0)) < 1e-15);
  const auto beta = BlochVector{1.0, 0.0};
  CHECK(sigma_y_single_pole(0, 0.99, beta, unit).real() < 0.0);
  CHECK(sigma_y_single_pole(0, 1.01, beta, unit).real() > 0.0);
  CHECK_THROWS_AS(sigma_y_single_pole(0, 1.0, beta, unit), SolverError);
  CHECK(std::abs(sigma_y_single_pole(1, 2.0, BlochVector{0.0, 0.0}, unit) - cd(0.0, 1.0)) < 1e-15);
}

TEST_CASE("the single pole dominates at small k and beta") {
  {
    const double k = 0.3 / kLat.L;
    const auto beta = along_x(0.1);
    const cd full = sigma_y(0, k, beta, kLat).value;
    const cd lead = sigma_y_single_pole(0, k, beta, kLat);
    CHECK(std::abs(full / lead - 1.0) < 0.1);
  }
  {
    const double k = 0.1 / kLat.L;
    const auto beta = along_x(0.2);
    const cd full = sigma_y(0, k, beta, kLat).value;
    const cd lead = sigma_y_single_pole(0, k, beta, kLat);
    CHECK(std::abs(full / lead - 1.0) < 0.1);
  }
}

TEST_CASE("truncation error shrinks with M; the smooth window converges faster") {
  // The square window alone does not reach three decimals for n >= 1 at M = 8:
  // its tail decays only like M^-1/2.
  const double k = 2.0 / kLat.L;
  const auto beta = along_x(kPi);
  const auto at = [&](int n, int M, Truncation t) { return sigma_y(n, k, beta, kLat, LatticeSumOptions{M, t}).value; };
  for (int n = 0; n <= 4; ++n) {
    CAPTURE(n);
    const double sq8 = std::abs(at(n, 8, Truncation::Square) - at(n, 16, Truncation::Square));
    const double sq16 = std::abs(at(n, 16, Truncation::Square) - at(n, 32, Truncation::Square));
    const double sm8 = std::abs(at(n, 8, Truncation::Smooth) - at(n, 16, Truncation::Smooth));
    CHECK(sq16 < sq8);
    CHECK(sm8 < sq8);
  }
  CHECK(std::abs(at(0, 8, Truncation::Square) - at(0, 16, Truncation::Square)) < 1e-3);
}

TEST_CASE("i^-n sigma_n is real on the x axis") {
  for (int n = 0; n <= 4; ++n) {
    for (double kL : {0.7, 2.3}) {
      const cd v = sigma_y(n, kL / kLat.L, along_x(1.1), kLat).value;
      const cd r = v * std::pow(cd(0.0, 1.0), -n);
      CAPTURE(n);
      CHECK(std::abs(r.imag()) <= 1e-9 * std::abs(v));
    }
  }
}

TEST_CASE("the value does not depend on xi beyond truncation error") {
  const LatticeSumOptions smooth{32, Truncation::Smooth};
  for (int n : {0, 1, 2}) {
    for (double kL : {0.8, 2.1}) {
      const double k = kL / kLat.L;
      const auto beta = BlochVector::from_components(0.9 / kLat.L, 0.3 / kLat.L);
      const cd half = sigma_y(n, k, beta, kLat, 0.5 * kLat.L, smooth).value;
      const cd other = sigma_y(n, k, beta, kLat, 0.45 * kLat.L, smooth).value;
      CAPTURE(n);
      CAPTURE(kL);
      CHECK(rel(other, half) < 1e-3);
    }
  }
}

TEST_CASE("Bessel zero in the denominator") {
  const double j01 = 2.404825557695773;
  const double k = j01 / (0.5 * kLat.L);
  CHECK_THROWS_WITH_AS(sigma_y(0, k, along_x(0.5), kLat, 0.5 * kLat.L), doctest::Contains("BesselZero"), SolverError);
  // The default overload steps to xi = 0.45 L.
  CHECK_NOTHROW(sigma_y(0, k, along_x(0.5), kLat));
}

TEST_CASE("empty-lattice poles are simple") {
  CHECK_THROWS_AS(sigma_y(0, 0.5 / kLat.L, along_x(0.5), kLat), SolverError);
  // Approach the (1, 0) line k L = 2 pi at beta = 0.
  const double d1 = 1e-4, d2 = 1e-6;
  const double k1 = 2 * kPi * (1.0 - d1) / kLat.L;
  const double k2 = 2 * kPi * (1.0 - d2) / kLat.L;
  const double v1 = std::abs(sigma_y(0, k1, along_x(0.0), kLat).value);
  const double v2 = std::abs(sigma_y(0, k2, along_x(0.0), kLat).value);
  const double slope = std::log(v2 / v1) / std::log(d2 / d1);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("S sum") {
  CHECK(std::abs(s_sum(1.5, 8) - s_sum(1.5, 16)) < 5e-4);
  // Single (1, 0) term by hand.
  const double kL = 1.5;
  const double term = std::cyl_bessel_j(0.0, kPi) / (kL * kL - 4 * kPi * kPi);
  CHECK(term == doctest::Approx(special::bessel_j(0, kPi) / (kL * kL - 4 * kPi * kPi)));
  CHECK_THROWS_AS(s_sum(2 * kPi, 8), SolverError);
  CHECK_THROWS_AS(s_sum(-1.0, 8), SolverError);

  // Brute force.
  double sum = 0.0;
  for (int m1 = -8; m1 <= 8; ++m1) {
    for (int m2 = -8; m2 <= 8; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const double r2 = m1 * m1 + m2 * m2;
      sum += std::cyl_bessel_j(0.0, kPi * std::sqrt(r2)) / (kL * kL - 4 * kPi * kPi * r2);
    }
  }
  CHECK(s_sum(kL, 8) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("S sum is monotone in (kL)^2 below the first pole") {
  double prev = s_sum(0.05, 8);
  bool monotone = true;
  for (double kL = 0.1; kL < 6.2; kL += 0.05) {
    const double v = s_sum(kL, 8);
    monotone = monotone && (v > prev);
    prev = v;
  }
  CHECK(monotone);
}

TEST_CASE("sigma_0 at Gamma") {
  // Two code paths for the same quantity.
  const double kL = 1.2;
  const cd general = sigma_y(0, kL / kLat.L, along_x(1e-9), kLat, 0.5 * kLat.L, LatticeSumOptions{12, Truncation::Square}).value;
  CHECK(std::abs(sigma0_at_gamma(kL, 12) / general.real() - 1.0) < 1e-6);

  CHECK(std::abs(sigma0_at_gamma(2.5, 12) - sigma0_at_gamma(2.5, 24)) <= 1e-3);

  const double tiny = 1e-4;
  CHECK(sigma0_at_gamma(tiny, 8) * tiny * tiny / 4.0 == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(sigma0_at_gamma(2 * 2.404825557695773, 8), SolverError);
}

TEST_CASE("smooth window") {
  CHECK(smooth_window(0.0) == 1.0);
  CHECK(smooth_window(0.4) == 1.0);
  CHECK(smooth_window(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(smooth_window(1.5) == 0.0);
  double prev = 1.0;
  for (double t = 0.5; t <= 1.0; t += 0.01) {
    CHECK(smooth_window(t) <= prev);
    prev = smooth_window(t);
  }
}

TEST_CASE("Bloch vector components") {
  const auto b = BlochVector::from_components(3.0, -4.0);
  CHECK(b.beta == doctest::Approx(5.0));
  CHECK(b.q1() == doctest::Approx(3.0));
  CHECK(b.q2() == doctest::Approx(-4.0));
  CHECK_THROWS_AS(SquareLattice{0.0}.validate(), SolverError);
}
