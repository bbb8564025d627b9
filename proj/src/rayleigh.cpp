#include "shellgap/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <tuple>

#include "shellgap/errors.hpp"
#include "shellgap/foldy.hpp"
#include "shellgap/parallel.hpp"
#include "shellgap/special.hpp"

namespace shellgap {

using special::kPi;
using cplx = std::complex<double>;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Roots closer than this (relative) are the same root seen from two minima.
constexpr double kSameRoot = 1e-6;

// Branches whose relative frequency spread over Gamma-X is below this are
// treated as flat resonance lines by extract_gap.
constexpr double kFlatBand = 2e-3;

void check_order(int N) {
  if (N < 0) throw SolverError(ErrorKind::Domain, "truncation order N must be >= 0");
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

double z_factor(ZModel model, int p, double k_o, const ArrayConfig& cfg) {
  const int n = std::abs(p);
  switch (model) {
    case ZModel::Exact:
      return z_shell_exact(n, k_o, cfg.shell, cfg.fluid);
    case ZModel::Soft:
      if (n == 0) return z0_soft_approx(k_o, cfg.params(), cfg.shell.a);
      if (n == 1) return z1_soft_approx(k_o, cfg.params(), cfg.shell, cfg.fluid);
      return z_shell_exact(n, k_o, cfg.shell, cfg.fluid);
    case ZModel::Rigid:
      return z_rigid(n, k_o, cfg.shell.a);
    case ZModel::None:
      return 0.0;
  }
  return 0.0;
}

RayleighOperator::RayleighOperator(BlochVector beta, const ArrayConfig& cfg, const RayleighOptions& opts)
    : beta_(beta),
      cfg_(cfg),
      opts_(opts),
      table_(beta, cfg.lattice, 2 * std::max(opts.N, 0), opts.xi_over_L * cfg.lattice.L, opts.sums) {
  check_order(opts.N);
}

Eigen::MatrixXcd RayleighOperator::matrix(double k_o) const {
  const int N = opts_.N;
  const int Q = 2 * N;
  std::vector<cplx> sigma(static_cast<std::size_t>(2 * Q + 1));
  table_.evaluate(k_o, sigma);
  std::vector<double> z(static_cast<std::size_t>(N) + 1);
  for (int p = 0; p <= N; ++p) z[p] = z_factor(opts_.z_model, p, k_o, cfg_);

  const int dim = 2 * N + 1;
  Eigen::MatrixXcd m(dim, dim);
  for (int n = -N; n <= N; ++n) {
    for (int p = -N; p <= N; ++p) {
      const int q = p - n;
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      m(n + N, p + N) = (n == p ? 1.0 : 0.0) - sign * sigma[static_cast<std::size_t>(q + Q)] * z[std::abs(p)];
    }
  }
  return m;
}

Eigen::MatrixXcd RayleighOperator::scaled(double k_o) const {
  // Similarity D M D^-1 with D_n = (k xi / 2)^|n|. At low k the order-q sums
  // grow like (2 / k xi)^|q| and Z_p decays like (k a / 2)^(2|p|); unscaled,
  // the off-diagonal blocks dwarf the identity and the smallest singular
  // value is tiny with no Bloch root nearby. The scaling is fixed in advance,
  // not read off the entries, so lattice-sum poles are not amplified, and it
  // keeps the identity (vacuum) as is. Columns are then divided by
  // max(1, |Z_p|) to tame the poles of Z_p.
  Eigen::MatrixXcd m = matrix(k_o);
  const int N = opts_.N;
  const double w = 0.5 * k_o * opts_.xi_over_L * cfg_.lattice.L;
  std::vector<double> d(static_cast<std::size_t>(N) + 1, 1.0);
  for (int n = 1; n <= N; ++n) d[n] = d[n - 1] * w;
  for (int n = -N; n <= N; ++n) {
    for (int p = -N; p <= N; ++p) m(n + N, p + N) *= d[std::abs(n)] / d[std::abs(p)];
  }
  for (int p = -N; p <= N; ++p) {
    const double zp = std::abs(z_factor(opts_.z_model, p, k_o, cfg_));
    if (zp > 1.0) m.col(p + N) /= zp;
  }
  return m;
}

double RayleighOperator::indicator(double k_o) const {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled(k_o));
  return svd.singularValues().minCoeff();
}

double RayleighOperator::coarse_indicator(double k_o) const {
  // sqrt(lambda_min(M^H M)): an order of magnitude cheaper than the SVD and
  // accurate well below the scan threshold, though not near machine zero.
  const Eigen::MatrixXcd m = scaled(k_o);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(eig.eigenvalues()(0), 0.0));
}

std::vector<double> RayleighOperator::roots(double kL_lo, double kL_hi, int grid) const {
  if (grid < 3 || !(kL_hi > kL_lo) || !(kL_lo > 0.0)) {
    throw SolverError(ErrorKind::Domain, "roots: need grid >= 3 and 0 < kL_lo < kL_hi");
  }
  const double L = cfg_.lattice.L;
  const double step = (kL_hi - kL_lo) / (grid - 1);
  const auto guarded = [&](double kL, bool coarse) {
    try {
      return coarse ? coarse_indicator(kL / L) : indicator(kL / L);
    } catch (const SolverError& e) {
      if (e.kind() == ErrorKind::PoleProximity || e.kind() == ErrorKind::BesselZero) return kNaN;
      throw;
    }
  };
  const auto safe = [&](double kL) { return guarded(kL, false); };

  std::vector<double> s(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) s[i] = guarded(kL_lo + step * i, true);

  std::vector<double> found;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 1; i + 1 < grid; ++i) {
    if (!(s[i] < opts_.scan_threshold) || !(s[i] < s[i - 1]) || !(s[i] <= s[i + 1])) continue;
    double a = kL_lo + step * (i - 1);
    double b = kL_lo + step * (i + 1);
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = safe(c);
    double fd = safe(d);
    bool ok = true;
    while (b - a > opts_.refine_rel_tol * b) {
      if (std::isnan(fc) || std::isnan(fd)) {
        ok = false;
        break;
      }
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - golden * (b - a);
        fc = safe(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + golden * (b - a);
        fd = safe(d);
      }
    }
    if (!ok) continue;
    const double root = 0.5 * (a + b);
    const double value = safe(root);
    if (value < opts_.accept_tol) found.push_back(root);
  }

  std::vector<double> out;
  for (double r : found) {
    if (!out.empty()) {
      const double gap = r - out.back();
      if (gap <= kSameRoot * r) continue;
      if (gap < step && opts_.strict_cells) {
        throw SolverError(ErrorKind::BranchAmbiguity, "two Bloch roots inside one frequency cell; refine the grid");
      }
    }
    out.push_back(r);
  }
  return out;
}

RayleighSystem build_system(double k_o, BlochVector beta, const ArrayConfig& cfg, int N,
                            const RayleighOptions& opts) {
  RayleighOptions local = opts;
  local.N = N;
  const RayleighOperator op(beta, cfg, local);
  return RayleighSystem{N, op.matrix(k_o), k_o, beta};
}

double dispersion_indicator(double k_o, BlochVector beta, const ArrayConfig& cfg, int N,
                            const RayleighOptions& opts) {
  RayleighOptions local = opts;
  local.N = N;
  return RayleighOperator(beta, cfg, local).indicator(k_o);
}

std::vector<PathPoint> brillouin_path(const SquareLattice& lattice, int points_per_segment, bool gamma_x_only) {
  lattice.validate();
  if (points_per_segment < 2) throw SolverError(ErrorKind::Domain, "need at least 2 points per segment");
  const double L = lattice.L;
  const int P = points_per_segment;
  std::vector<PathPoint> path;
  for (int i = 0; i < P; ++i) {
    const double s = kPi * i / (P - 1);
    path.push_back({BlochVector::from_components(s / L, 0.0), s, 0});
  }
  if (!gamma_x_only) {
    for (int i = 1; i < P; ++i) {
      const double s = kPi * i / (P - 1);
      path.push_back({BlochVector::from_components(kPi / L, s / L), kPi + s, 1});
    }
  }
  return path;
}

std::pair<double, double> default_scan_window(const ArrayConfig& cfg) {
  const double fb = cfg.bragg_frequency();
  return {0.05 * fb, fb};
}

std::vector<DispersionCurve> trace_bands(const std::vector<PathPoint>& path, double f_lo, double f_hi,
                                         const ArrayConfig& cfg, const RayleighOptions& opts) {
  cfg.validate();
  check_order(opts.N);
  if (!(f_lo > 0.0) || !(f_hi > f_lo)) throw SolverError(ErrorKind::Domain, "trace_bands: need 0 < f_lo < f_hi");
  const double L = cfg.lattice.L;
  const double kL_lo = cfg.to_wavenumber(f_lo) * L;
  const double kL_hi = cfg.to_wavenumber(f_hi) * L;

  std::vector<std::vector<double>> roots(path.size());
  parallel_for(path.size(), opts.threads, [&](std::size_t i) {
    const RayleighOperator op(path[i].beta, cfg, opts);
    roots[i] = op.roots(kL_lo, kL_hi, opts.grid);
  });

  // Jump tolerance from the typical root movement between neighbouring path points.
  std::vector<double> moves;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    for (double r : roots[i]) {
      double best = std::numeric_limits<double>::infinity();
      for (double q : roots[i - 1]) best = std::min(best, std::abs(r - q));
      if (std::isfinite(best)) moves.push_back(best);
    }
  }
  const double cell = (kL_hi - kL_lo) / (opts.grid - 1);
  const double base_tol = std::max(3.0 * median(moves), 3.0 * cell);

  struct Branch {
    std::vector<CurvePoint> points;
    bool open = true;
  };
  std::vector<Branch> branches;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double coord = path[i].coordinate;
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      if (!branches[b].open) continue;
      const auto& pts = branches[b].points;
      const double last = pts.back().k_oL;
      const double slope = pts.size() >= 2 ? last - pts[pts.size() - 2].k_oL : 0.0;
      const double predicted = last + slope;
      // A fresh branch has no slope yet; bound its first move by the light
      // line, |d(kL)| <= |d(beta L)|, with some slack.
      const double fresh = pts.size() == 1 ? 1.5 * (coord - pts.back().betaL) : 0.0;
      const double tol = std::max({base_tol, 3.0 * std::abs(slope), fresh});
      for (std::size_t r = 0; r < roots[i].size(); ++r) {
        const double dist = std::abs(roots[i][r] - predicted);
        if (dist <= tol) pairs.emplace_back(dist, b, r);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> branch_used(branches.size(), false);
    std::vector<bool> root_used(roots[i].size(), false);
    for (const auto& [dist, b, r] : pairs) {
      if (branch_used[b] || root_used[r]) continue;
      branch_used[b] = true;
      root_used[r] = true;
      branches[b].points.push_back({coord, roots[i][r]});
    }
    for (std::size_t b = 0; b < branch_used.size(); ++b) {
      if (!branch_used[b]) branches[b].open = false;
    }
    for (std::size_t r = 0; r < roots[i].size(); ++r) {
      if (!root_used[r]) branches.push_back({{{coord, roots[i][r]}}, true});
    }
  }

  std::vector<DispersionCurve> curves;
  for (auto& b : branches) {
    curves.push_back({MethodId::Rayleigh, static_cast<int>(curves.size()), std::move(b.points)});
  }
  return curves;
}

BandGap extract_gap(const std::vector<DispersionCurve>& curves, int n_mode, const ArrayConfig& cfg) {
  if (n_mode != 0 && n_mode != 1) throw SolverError(ErrorKind::Domain, "extract_gap: n_mode must be 0 or 1");
  std::vector<std::pair<double, double>> ranges;
  for (const auto& c : curves) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    int count = 0;
    for (const auto& p : c.points) {
      if (p.betaL > kPi * (1.0 + 1e-12)) continue;
      lo = std::min(lo, p.k_oL);
      hi = std::max(hi, p.k_oL);
      ++count;
    }
    if (count == 0) continue;
    // Resonances of order |n| >= 2 couple so weakly that they leave flat
    // lines across the resonance gaps; they do not bound a gap.
    if (count > 1 && hi - lo < kFlatBand * hi) continue;
    ranges.emplace_back(lo, hi);
  }
  if (ranges.empty()) throw SolverError(ErrorKind::NoGap, "no dispersion branches on the Gamma-X leg");
  std::sort(ranges.begin(), ranges.end());

  std::vector<std::pair<double, double>> holes;
  double reach = ranges.front().second;
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].first > reach) holes.emplace_back(reach, ranges[i].first);
    reach = std::max(reach, ranges[i].second);
  }
  if (holes.empty()) throw SolverError(ErrorKind::NoGap, "branches overlap; no band gap");

  const double L = cfg.lattice.L;
  const BandGap ref = n_mode == 0 ? foldy_gap_n0(cfg) : foldy_gap_n1(cfg);
  const double ref_lo = cfg.to_wavenumber(ref.f_lower) * L;
  const double ref_hi = cfg.to_wavenumber(ref.f_upper) * L;

  // Largest overlap wins; without any overlap, the nearest hole.
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const double overlap = std::min(holes[i].second, ref_hi) - std::max(holes[i].first, ref_lo);
    if (overlap > best_score) {
      best_score = overlap;
      best = i;
    }
  }
  const MethodId method = curves.front().method;
  return BandGap{n_mode, cfg.to_hz(holes[best].first / L), cfg.to_hz(holes[best].second / L), method};
}

}  // namespace shellgap
