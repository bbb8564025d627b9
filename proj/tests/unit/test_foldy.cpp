#include <cmath>

#include "doctest.h"
#include "shellgap/errors.hpp"
#include "shellgap/foldy.hpp"
#include "shellgap/special.hpp"

using namespace shellgap;

namespace {

ArrayConfig with_radius(double a) {
  ArrayConfig cfg = ArrayConfig::latex_default();
  cfg.shell.a = a;
  return cfg;
}

ArrayConfig with_filling(double F) { return with_radius(std::sqrt(F / special::kPi) * 0.08); }

// Edges recomputed from the dimensionless groups, by hand.
struct Groups {
  double Kr, Kc, F, base;
};

Groups groups(const ArrayConfig& cfg) {
  const double c3 = std::sqrt(cfg.shell.E / (cfg.shell.rho * (1.0 - cfg.shell.nu * cfg.shell.nu)));
  const double Kr = cfg.fluid.rho / cfg.shell.rho * cfg.shell.a / cfg.shell.h;
  const double Kc = (c3 / cfg.fluid.c) * (c3 / cfg.fluid.c);
  const double F = special::kPi * cfg.shell.a * cfg.shell.a / (cfg.lattice.L * cfg.lattice.L);
  return {Kr, Kc, F, c3 / (2.0 * special::kPi * cfg.shell.a)};
}

}  // namespace

TEST_CASE("leading-order intervals") {
  const ArrayConfig cfg = ArrayConfig::latex_default();
  const auto g = groups(cfg);
  const BandGap n0 = foldy_gap_n0(cfg);
  const BandGap n1 = foldy_gap_n1(cfg);
  CHECK(n0.f_lower == doctest::Approx(g.base * std::sqrt(1.0 + g.Kr / g.Kc)).epsilon(1e-13));
  CHECK(n0.f_upper == doctest::Approx(g.base * std::sqrt(1.0 + g.Kr / g.Kc * (1.0 + g.F))).epsilon(1e-13));
  CHECK(n1.f_lower == doctest::Approx(std::sqrt(2.0) * g.base).epsilon(1e-13));
  CHECK(n1.f_upper == doctest::Approx(std::sqrt(2.0) * g.base * std::sqrt(1.0 + g.F * g.Kr)).epsilon(1e-13));
  CHECK(n0.method == MethodId::Foldy);
  CHECK(n0.n_mode == 0);
  CHECK(n1.n_mode == 1);
  CHECK(n0.f_lower == doctest::Approx(cfg.to_hz(cfg.params().K0_hat)).epsilon(1e-13));
  // Width of the order of 10 Hz near F = 0.4.
  CHECK(n1.width() > 3.0);
  CHECK(n1.width() < 30.0);
}

TEST_CASE("degenerate limits give zero width") {
  ArrayConfig sparse = ArrayConfig::latex_default();
  sparse.lattice.L = 1e3;
  CHECK(foldy_gap_n0(sparse).width() / foldy_gap_n0(sparse).center() < 1e-8);
  CHECK(foldy_gap_n1(sparse).width() / foldy_gap_n1(sparse).center() < 1e-8);

  ArrayConfig massless = ArrayConfig::latex_default();
  massless.fluid.rho = 1e-300;
  CHECK(foldy_gap_n0(massless).width() / foldy_gap_n0(massless).center() < 1e-12);
}

TEST_CASE("n = 1 lower edge ignores the fluid") {
  ArrayConfig a = ArrayConfig::latex_default();
  ArrayConfig b = a;
  b.fluid = FluidSpec{1000.0, 1480.0};
  CHECK(foldy_gap_n1(a).f_lower == foldy_gap_n1(b).f_lower);
}

TEST_CASE("full radicals are the roots of the near-resonance relations") {
  for (double F : {0.05, 0.37, 0.69}) {
    const ArrayConfig cfg = with_filling(F);
    const double a = cfg.shell.a;
    for (int mode : {0, 1}) {
      const BandGap g = mode == 0 ? foldy_gap_n0_full(cfg) : foldy_gap_n1_full(cfg);
      const double x = std::pow(cfg.to_wavenumber(g.f_upper) * a, 2);
      const auto rel = [&](double xx) { return mode == 0 ? foldy_reduced_n0(xx, cfg) : foldy_reduced_n1(xx, cfg); };
      // The relations are linear in x; normalise by the slope.
      const double slope = rel(x + 1.0) - rel(x);
      CAPTURE(F);
      CAPTURE(mode);
      CHECK(std::abs(rel(x) / (slope * x)) < 1e-9);
    }
  }
}

TEST_CASE("full and leading forms agree to first order in F") {
  const double F = 1e-3;
  const ArrayConfig cfg = with_filling(F);
  const double r0 = foldy_gap_n0_full(cfg).f_upper / foldy_gap_n0(cfg).f_upper - 1.0;
  const double r1 = foldy_gap_n1_full(cfg).f_upper / foldy_gap_n1(cfg).f_upper - 1.0;
  CHECK(std::abs(r0) < 10 * F * F);
  CHECK(std::abs(r1) < 10 * F * F);
  CHECK(foldy_gap_n0_full(cfg).f_lower == doctest::Approx(foldy_gap_n0(cfg).f_lower).epsilon(1e-14));
}

TEST_CASE("equal resonance groups cancel the full-radical correction") {
  ArrayConfig cfg = ArrayConfig::latex_default();
  const auto p = cfg.params();
  cfg.fluid.c = p.c3 / std::sqrt(p.K_rho);  // K_c = K_rho
  const auto q = cfg.params();
  REQUIRE(q.K_c == doctest::Approx(q.K_rho).epsilon(1e-12));
  CHECK(foldy_gap_n0_full(cfg).f_upper == doctest::Approx(cfg.to_hz(q.K0_hat)).epsilon(1e-9));
}

TEST_CASE("beta^2 of the Foldy relation") {
  const ArrayConfig cfg = ArrayConfig::latex_default();
  const auto p = cfg.params();
  const auto in_gap = foldy_beta_squared(p.K0_hat * 1.01, cfg);
  CHECK(in_gap.beta_sq < 0.0);
  CHECK(foldy_beta_squared(p.K0_hat * (1.0 + 1e-7), cfg).consistent == false);
  CHECK(foldy_beta_squared(0.3 * p.K1, cfg).consistent);
  CHECK_THROWS_AS(foldy_beta_squared(p.K0_hat, cfg), SolverError);

  // Tiny scatterers: free-medium dispersion.
  ArrayConfig tiny = cfg;
  tiny.shell.a = 1e-5;
  tiny.shell.h = 1e-7;
  const double k = 0.5 / tiny.lattice.L;
  CHECK(foldy_beta_squared(k, tiny).beta_sq / (k * k) == doctest::Approx(1.0).epsilon(1e-6));
  const auto d = foldy_beta_squared(k, cfg);
  CHECK(d.beta_sq == doctest::Approx(k * k - 4.0 / cfg.lattice.area() * d.far_field).epsilon(1e-14));
}

TEST_CASE("interval properties across the filling fraction") {
  double prev_upper = 0.0;
  for (double F : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}) {
    const ArrayConfig cfg = with_filling(F);
    const BandGap n0 = foldy_gap_n0(cfg);
    const BandGap n1 = foldy_gap_n1(cfg);
    CAPTURE(F);
    CHECK(n0.f_lower < n0.f_upper);
    CHECK(n1.f_lower < n1.f_upper);
    // Width grows with F at fixed a; the edge itself moves with a, so
    // compare the dimensionless ratio.
    const double ratio = n0.f_upper / n0.f_lower;
    CHECK(ratio > prev_upper);
    prev_upper = ratio;
    const auto g = groups(cfg);
    if (g.Kc > g.Kr * (1.0 + g.F)) {
      CHECK(n1.f_lower > n0.f_upper);
    } else {
      CHECK(n1.f_upper < n0.f_lower);
    }
  }
  // A stiff shell puts the dipole resonance above the breathing one.
  ArrayConfig stiff = ArrayConfig::latex_default();
  stiff.shell.E = 1e9;
  const auto g = groups(stiff);
  REQUIRE(g.Kc > g.Kr * (1.0 + g.F));
  CHECK(foldy_gap_n1(stiff).f_lower > foldy_gap_n0(stiff).f_upper);
}

TEST_CASE("n = 0 upper edge rises with F at fixed radius") {
  ArrayConfig cfg = ArrayConfig::latex_default();
  double prev = 0.0;
  for (double F : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7}) {
    cfg.lattice.L = cfg.shell.a * std::sqrt(special::kPi / F);
    const double up = foldy_gap_n0(cfg).f_upper;
    CHECK(up > prev);
    prev = up;
  }
}

TEST_CASE("curves stay inside the first zone") {
  const ArrayConfig cfg = ArrayConfig::latex_default();
  const auto curves = foldy_curves(cfg, 100.0, 2000.0, 3000);
  REQUIRE(curves.size() >= 3);
  for (const auto& c : curves) {
    CHECK(c.method == MethodId::Foldy);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      CHECK(c.points[i].betaL >= 0.0);
      CHECK(c.points[i].betaL <= special::kPi);
      if (i > 0) CHECK(c.points[i].betaL >= c.points[i - 1].betaL);
    }
  }
  CHECK_THROWS_AS(foldy_curves(cfg, 100.0, 50.0, 10), SolverError);
}
